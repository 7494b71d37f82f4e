#pragma once

// Small finite fields F_q, q = p^k <= 10^6. Elements are encoded as integers
// sum c_i p^i (coefficients of a polynomial in the generator, constant term
// first), so 0 and 1 are the field's zero and one.

#include <cstdint>
#include <vector>

namespace tamagawa {

/// Monic modulus of F_{p^k} as coefficients c_0..c_k (c_k = 1).
struct PinnedModulus {
  unsigned long p;
  unsigned degree;
  std::vector<unsigned> coefficients;
};

/// The moduli used for non-prime fields. Fields absent from the table use the
/// lexicographically smallest monic irreducible polynomial (c_0 first, then c_1, ...).
const std::vector<PinnedModulus>& pinned_moduli();

class FiniteField {
 public:
  using Element = std::uint32_t;

  explicit FiniteField(unsigned long q);

  unsigned long order() const { return q_; }
  unsigned long characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  /// Coefficients c_0..c_k of the modulus (degree 1: x).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Element from_integer(long value) const;
  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws InputError for zero.
  Element inv(Element a) const;
  Element pow(Element a, unsigned long e) const;
  bool is_square(Element a) const;

 private:
  std::vector<unsigned> digits(Element a) const;
  Element encode(const std::vector<unsigned>& digits) const;

  unsigned long q_ = 0;
  unsigned long p_ = 0;
  unsigned k_ = 1;
  std::vector<unsigned> modulus_;
};

}  // namespace tamagawa
