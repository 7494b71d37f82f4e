#include "tamagawa/ellcurve.hpp"

#include <string>

#include "tamagawa/errors.hpp"

namespace tamagawa {

using Element = FiniteField::Element;

EllipticCurve::EllipticCurve(unsigned long q, Element a, Element b) : field_(q), a_(a), b_(b) {
  if (field_.characteristic() <= 3) throw InputError("elliptic curves need characteristic > 3");
  if (q > 100'000) throw InputError("q too large for point enumeration (limit 10^5)");
  if (a >= q || b >= q) throw InputError("curve coefficient is not a field element");
  const auto& f = field_;
  const Element disc = f.add(f.mul(f.from_integer(4), f.pow(a, 3)), f.mul(f.from_integer(27), f.mul(b, b)));
  if (disc == 0) throw InputError("singular curve: 4a^3 + 27b^2 = 0");
}

EllipticCurve EllipticCurve::from_integers(unsigned long q, long a, long b) {
  const FiniteField f(q);
  return EllipticCurve(q, f.from_integer(a), f.from_integer(b));
}

Element EllipticCurve::rhs(Element x) const {
  const auto& f = field_;
  return f.add(f.add(f.pow(x, 3), f.mul(a_, x)), b_);
}

bool EllipticCurve::contains(const CurvePoint& p) const {
  if (p.infinity) return true;
  if (p.x >= field_.order() || p.y >= field_.order()) return false;
  return field_.mul(p.y, p.y) == rhs(p.x);
}

std::vector<CurvePoint> EllipticCurve::points() const {
  const auto q = static_cast<Element>(field_.order());
  std::vector<std::vector<Element>> roots(q);
  for (Element y = 0; y < q; ++y) roots[field_.mul(y, y)].push_back(y);
  std::vector<CurvePoint> out{CurvePoint::at_infinity()};
  for (Element x = 0; x < q; ++x)
    for (Element y : roots[rhs(x)]) out.push_back(CurvePoint::affine(x, y));
  return out;
}

std::uint64_t EllipticCurve::point_count() const { return points().size(); }

CurvePoint EllipticCurve::neg(const CurvePoint& p) const {
  if (!contains(p)) throw InputError("point is not on the curve");
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, field_.neg(p.y));
}

CurvePoint EllipticCurve::add_unchecked(const CurvePoint& p, const CurvePoint& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const auto& f = field_;
  Element slope;
  if (p.x == q.x) {
    if (f.add(p.y, q.y) == 0) return CurvePoint::at_infinity();
    // tangent: (3x^2 + a) / 2y
    slope = f.mul(f.add(f.mul(f.from_integer(3), f.mul(p.x, p.x)), a_), f.inv(f.mul(f.from_integer(2), p.y)));
  } else {
    slope = f.mul(f.sub(q.y, p.y), f.inv(f.sub(q.x, p.x)));
  }
  const Element x3 = f.sub(f.sub(f.mul(slope, slope), p.x), q.x);
  const Element y3 = f.sub(f.mul(slope, f.sub(p.x, x3)), p.y);
  return CurvePoint::affine(x3, y3);
}

CurvePoint EllipticCurve::add(const CurvePoint& p, const CurvePoint& q) const {
  if (!contains(p) || !contains(q)) throw InputError("point is not on the curve");
  return add_unchecked(p, q);
}

CurvePoint EllipticCurve::scalar_mul(long k, const CurvePoint& p) const {
  CurvePoint base = k < 0 ? neg(p) : p;
  if (!contains(base)) throw InputError("point is not on the curve");
  unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
  CurvePoint result = CurvePoint::at_infinity();
  while (e > 0) {
    if (e & 1) result = add_unchecked(result, base);
    base = add_unchecked(base, base);
    e >>= 1;
  }
  return result;
}

std::uint64_t EllipticCurve::torsion_count(unsigned long n) const {
  if (n == 0) throw InputError("torsion order must be positive");
  std::uint64_t count = 0;
  for (const auto& p : points()) count += scalar_mul(static_cast<long>(n), p).infinity;
  return count;
}

}  // namespace tamagawa
