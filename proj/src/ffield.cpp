#include "tamagawa/ffield.hpp"

#include <string>

#include "tamagawa/errors.hpp"
#include "tamagawa/grporders.hpp"

namespace tamagawa {

namespace {

using Poly = std::vector<unsigned>;  // coefficients, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned long inverse_mod(unsigned long a, unsigned long p) {
  // p is prime: a^(p-2)
  unsigned long result = 1;
  unsigned long base = a % p;
  for (unsigned long e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

// a mod m over F_p, m monic.
Poly poly_mod(Poly a, const Poly& m, unsigned long p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const unsigned long lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = static_cast<unsigned>((a[shift + i] + p * p - lead * m[i] % p) % p);
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& m, unsigned long p) {
  // No monic factor of degree <= deg/2; fine for the small degrees used here.
  const unsigned deg = static_cast<unsigned>(m.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    unsigned long count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned long idx = 0; idx < count; ++idx) {
      Poly f(d + 1, 0);
      unsigned long rest = idx;
      for (unsigned i = 0; i < d; ++i) {
        f[i] = static_cast<unsigned>(rest % p);
        rest /= p;
      }
      f[d] = 1;
      if (poly_mod(m, f, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(unsigned long p, unsigned k) {
  unsigned long count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (unsigned long idx = 0; idx < count; ++idx) {
    Poly m(k + 1, 0);
    unsigned long rest = idx;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    m[k] = 1;
    if (is_irreducible(m, p)) return m;
  }
  throw InputError("no irreducible polynomial found");
}

}  // namespace

const std::vector<PinnedModulus>& pinned_moduli() {
  static const std::vector<PinnedModulus> table = {
      {2, 2, {1, 1, 1}},          {2, 3, {1, 1, 0, 1}},       {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}}, {3, 2, {2, 2, 1}},          {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 0, 0, 2, 1}},    {5, 2, {2, 4, 1}},          {5, 3, {3, 3, 0, 1}},
      {7, 2, {3, 6, 1}},          {11, 2, {2, 7, 1}},         {13, 2, {2, 12, 1}},
  };
  return table;
}

FiniteField::FiniteField(unsigned long q) : q_(q) {
  const auto pp = prime_power_decomposition(q);
  p_ = pp.p;
  k_ = pp.exponent;
  if (k_ == 1) {
    modulus_ = {0, 1};
    return;
  }
  for (const auto& entry : pinned_moduli()) {
    if (entry.p == p_ && entry.degree == k_) {
      modulus_ = entry.coefficients;
      return;
    }
  }
  modulus_ = smallest_irreducible(p_, k_);
}

std::vector<unsigned> FiniteField::digits(Element a) const {
  std::vector<unsigned> d(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = static_cast<unsigned>(a % p_);
    a /= static_cast<Element>(p_);
  }
  return d;
}

FiniteField::Element FiniteField::encode(const std::vector<unsigned>& d) const {
  Element a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = static_cast<Element>(a * p_ + d[i]);
  return a;
}

FiniteField::Element FiniteField::from_integer(long value) const {
  const long p = static_cast<long>(p_);
  return static_cast<Element>(((value % p) + p) % p);
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
  if (k_ == 1) return static_cast<Element>((a + static_cast<unsigned long>(b)) % p_);
  auto x = digits(a);
  const auto y = digits(b);
  for (unsigned i = 0; i < k_; ++i) x[i] = static_cast<unsigned>((x[i] + y[i]) % p_);
  return encode(x);
}

FiniteField::Element FiniteField::neg(Element a) const {
  if (k_ == 1) return static_cast<Element>((p_ - a) % p_);
  auto x = digits(a);
  for (auto& c : x) c = static_cast<unsigned>((p_ - c) % p_);
  return encode(x);
}

FiniteField::Element FiniteField::sub(Element a, Element b) const { return add(a, neg(b)); }

FiniteField::Element FiniteField::mul(Element a, Element b) const {
  if (k_ == 1) return static_cast<Element>(static_cast<unsigned long>(a) * b % p_);
  const auto x = digits(a);
  const auto y = digits(b);
  Poly prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j)
      prod[i + j] = static_cast<unsigned>((prod[i + j] + static_cast<unsigned long>(x[i]) * y[j]) % p_);
  Poly r = poly_mod(prod, modulus_, p_);
  r.resize(k_, 0);
  return encode(r);
}

FiniteField::Element FiniteField::pow(Element a, unsigned long e) const {
  Element result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (a == 0) throw InputError("division by zero in F_" + std::to_string(q_));
  if (k_ == 1) return static_cast<Element>(inverse_mod(a, p_));
  return pow(a, q_ - 2);
}

bool FiniteField::is_square(Element a) const {
  if (a == 0 || p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

}  // namespace tamagawa
