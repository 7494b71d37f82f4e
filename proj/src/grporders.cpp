#include "tamagawa/grporders.hpp"

#include <numeric>

#include "tamagawa/errors.hpp"

namespace tamagawa {

PrimePower prime_power_decomposition(unsigned long q) {
  if (q < 2 || q > 1'000'000) throw InputError("q must be a prime power in [2, 10^6], got " + std::to_string(q));
  unsigned long p = 0;
  for (unsigned long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned long rest = q;
  unsigned k = 0;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw InputError("q = " + std::to_string(q) + " is not a prime power");
  return {p, k};
}

std::string to_string(Twist twist) {
  switch (twist) {
    case Twist::split: return "split";
    case Twist::outer_a: return "2A";
    case Twist::outer_d: return "2D";
    case Twist::triality: return "3D4";
    default: return "2E6";
  }
}

Twist parse_twist(const std::string& text) {
  for (auto t : {Twist::split, Twist::outer_a, Twist::outer_d, Twist::triality, Twist::outer_e6}) {
    if (to_string(t) == text) return t;
  }
  throw InputError("unknown twist '" + text + "' (expected split, 2A, 2D, 3D4 or 2E6)");
}

void validate_group_order_spec(const GroupOrderSpec& s) {
  validate_cartan_type(s.type);
  prime_power_decomposition(s.q);
  if (s.isogeny != "sc" && s.isogeny != "adjoint" && s.isogeny != "intermediate") {
    throw InputError("unknown isogeny label '" + s.isogeny + "'");
  }
  const auto& t = s.type;
  bool ok = true;
  switch (s.twist) {
    case Twist::split: break;
    case Twist::outer_a: ok = t.family == 'A' && t.rank >= 2; break;
    case Twist::outer_d: ok = t.family == 'D'; break;
    case Twist::triality: ok = t.family == 'D' && t.rank == 4; break;
    case Twist::outer_e6: ok = t.family == 'E' && t.rank == 6; break;
  }
  if (!ok) throw InputError("twist " + to_string(s.twist) + " is not defined for type " + t.to_string());
}

std::vector<unsigned> fundamental_degrees(const CartanType& t) {
  validate_cartan_type(t);
  const unsigned n = t.rank;
  std::vector<unsigned> d;
  switch (t.family) {
    case 'A':
      for (unsigned i = 2; i <= n + 1; ++i) d.push_back(i);
      break;
    case 'B':
    case 'C':
      for (unsigned i = 1; i <= n; ++i) d.push_back(2 * i);
      break;
    case 'D':
      for (unsigned i = 1; i < n; ++i) d.push_back(2 * i);
      d.push_back(n);
      break;
    case 'E':
      if (n == 6) d = {2, 5, 6, 8, 9, 12};
      else if (n == 7) d = {2, 6, 8, 10, 12, 14, 18};
      else d = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
    case 'F': d = {2, 6, 8, 12}; break;
    default: d = {2, 6}; break;
  }
  return d;
}

Integer weyl_group_order(const CartanType& t) {
  Integer w = 1;
  for (unsigned d : fundamental_degrees(t)) w *= d;
  return w;
}

unsigned long group_dimension(const CartanType& t) { return t.rank + 2 * positive_root_count(t); }

Integer reductive_group_order(const GroupOrderSpec& s) {
  validate_group_order_spec(s);
  const Integer q = s.q;
  auto q_pow = [&](unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), e);
    return r;
  };
  Integer order = q_pow(positive_root_count(s.type));
  const auto degrees = fundamental_degrees(s.type);
  bool triality_pair_done = false;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const unsigned d = degrees[i];
    int eps = 1;
    switch (s.twist) {
      case Twist::outer_a: eps = d % 2 == 0 ? 1 : -1; break;
      // the extra degree n of D_n is the last entry
      case Twist::outer_d: eps = i + 1 == degrees.size() ? -1 : 1; break;
      case Twist::outer_e6: eps = (d == 5 || d == 9) ? -1 : 1; break;
      case Twist::triality:
        // the two degree-4 invariants carry the primitive cube roots of unity;
        // (q^4 - w)(q^4 - w^2) = q^8 + q^4 + 1
        if (d == 4) {
          if (!triality_pair_done) order *= q_pow(8) + q_pow(4) + 1;
          triality_pair_done = true;
          continue;
        }
        break;
      default: break;
    }
    order *= q_pow(d) - eps;
  }
  return order;
}

Rational parahoric_volume(const GroupOrderSpec& s) {
  Integer denominator;
  mpz_pow_ui(denominator.get_mpz_t(), Integer(s.q).get_mpz_t(), group_dimension(s.type));
  Rational v(reductive_group_order(s), denominator);
  v.canonicalize();
  return v;
}

unsigned long count_roots_of_unity(unsigned long q, unsigned long n) {
  prime_power_decomposition(q);
  if (n == 0) throw InputError("n must be positive");
  return std::gcd(n, q - 1);
}

unsigned long norm_torus_component_index(unsigned long e) {
  if (e == 0) throw InputError("ramification index must be positive");
  return e;
}

}  // namespace tamagawa
