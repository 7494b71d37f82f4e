#pragma once

// Elliptic curves y^2 = x^3 + a x + b over F_q (characteristic > 3):
// point enumeration, the chord-tangent group law and torsion counts.

#include <cstdint>
#include <vector>

#include "tamagawa/ffield.hpp"

namespace tamagawa {

struct CurvePoint {
  bool infinity = true;
  FiniteField::Element x = 0;
  FiniteField::Element y = 0;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(FiniteField::Element x, FiniteField::Element y) { return {false, x, y}; }
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

class EllipticCurve {
 public:
  /// a, b are field elements in the encoding of FiniteField. Throws InputError
  /// for characteristic 2 or 3, q > 10^5, or a singular curve.
  EllipticCurve(unsigned long q, FiniteField::Element a, FiniteField::Element b);
  /// Integer coefficients reduced into the prime subfield.
  static EllipticCurve from_integers(unsigned long q, long a, long b);

  const FiniteField& field() const { return field_; }
  FiniteField::Element a() const { return a_; }
  FiniteField::Element b() const { return b_; }

  bool contains(const CurvePoint& p) const;
  /// All points, the point at infinity first.
  std::vector<CurvePoint> points() const;
  std::uint64_t point_count() const;

  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint neg(const CurvePoint& p) const;
  CurvePoint scalar_mul(long k, const CurvePoint& p) const;

  /// |E(F_q)[n]|.
  std::uint64_t torsion_count(unsigned long n) const;

 private:
  CurvePoint add_unchecked(const CurvePoint& p, const CurvePoint& q) const;
  FiniteField::Element rhs(FiniteField::Element x) const;

  FiniteField field_;
  FiniteField::Element a_;
  FiniteField::Element b_;
};

}  // namespace tamagawa
