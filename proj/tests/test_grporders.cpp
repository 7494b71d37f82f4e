#include <array>
#include <set>
#include <vector>

#include "doctest.h"
#include "tamagawa/errors.hpp"
#include "tamagawa/ffield.hpp"
#include "tamagawa/grporders.hpp"

using namespace tamagawa;

namespace {

using El = FiniteField::Element;

El det3(const FiniteField& f, const std::array<El, 9>& m) {
  auto term = [&](int a, int b, int c) { return f.mul(m[a], f.mul(m[b], m[c])); };
  El plus = f.add(f.add(term(0, 4, 8), term(1, 5, 6)), term(2, 3, 7));
  El minus = f.add(f.add(term(2, 4, 6), term(0, 5, 7)), term(1, 3, 8));
  return f.sub(plus, minus);
}

struct MatrixCounts {
  unsigned long general = 0;
  unsigned long special = 0;
};

// Brute force over all n x n matrices over F_q, n <= 3.
MatrixCounts count_gl(unsigned long q, unsigned n) {
  const FiniteField f(q);
  MatrixCounts c;
  unsigned long total = 1;
  for (unsigned i = 0; i < n * n; ++i) total *= q;
  for (unsigned long idx = 0; idx < total; ++idx) {
    std::array<El, 9> m{};
    // embed into the top-left corner of a 3x3 identity
    m = {0, 0, 0, 0, 0, 0, 0, 0, 0};
    for (unsigned i = 0; i < 3; ++i) m[4 * i] = 1;
    unsigned long rest = idx;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        m[3 * i + j] = static_cast<El>(rest % q);
        rest /= q;
      }
    const El d = det3(f, m);
    c.general += d != 0;
    c.special += d == 1;
  }
  return c;
}

// |SU_3(2)|: A over F_4 with conj(A)^T A = I and det A = 1, conj(x) = x^2.
unsigned long count_su3_f4() {
  const FiniteField f(4);
  unsigned long count = 0;
  std::array<El, 9> m{};
  for (unsigned long idx = 0; idx < (1ul << 18); ++idx) {
    unsigned long rest = idx;
    for (auto& e : m) {
      e = static_cast<El>(rest % 4);
      rest /= 4;
    }
    bool unitary = true;
    for (int i = 0; i < 3 && unitary; ++i)
      for (int j = 0; j < 3 && unitary; ++j) {
        El s = 0;
        for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(f.pow(m[3 * k + i], 2), m[3 * k + j]));
        unitary = s == (i == j ? 1u : 0u);
      }
    count += unitary && det3(f, m) == 1;
  }
  return count;
}

// |W| as the size of the Weyl orbit of rho (W acts simply transitively on it).
std::size_t weyl_orbit_size(const CartanType& t) {
  const IntMatrix c = cartan_matrix(t);
  const std::size_t n = t.rank;
  using V = std::vector<long>;
  std::set<V> orbit{V(n, 1)};
  std::vector<V> frontier{V(n, 1)};
  while (!frontier.empty()) {
    const V v = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      V s = v;
      for (std::size_t j = 0; j < n; ++j) s[j] -= v[i] * c(i, j).get_si();
      if (orbit.insert(s).second) frontier.push_back(s);
    }
  }
  return orbit.size();
}

}  // namespace

TEST_CASE("prime powers") {
  CHECK(prime_power_decomposition(2).p == 2);
  CHECK(prime_power_decomposition(9).exponent == 2);
  CHECK(prime_power_decomposition(125).p == 5);
  CHECK(prime_power_decomposition(999983).exponent == 1);
  for (unsigned long bad : {0ul, 1ul, 6ul, 12ul, 100ul, 2'000'000ul}) CHECK_THROWS_AS(prime_power_decomposition(bad), InputError);
}

TEST_CASE("fundamental degrees") {
  const std::vector<CartanType> types = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'C', 3},
                                         {'D', 4}, {'D', 5}, {'G', 2}, {'F', 4}, {'E', 6}};
  for (const auto& t : types) {
    CAPTURE(t.to_string());
    CHECK(weyl_group_order(t) == weyl_orbit_size(t));
    unsigned long exponents = 0;
    for (unsigned d : fundamental_degrees(t)) exponents += d - 1;
    CHECK(exponents == positive_root_count(t));
  }
  CHECK(weyl_group_order({'E', 7}) == 2903040);
  CHECK(weyl_group_order({'E', 8}) == 696729600);
  for (unsigned n = 1; n <= 8; ++n) CHECK(group_dimension({'A', n}) == (n + 1) * (n + 1) - 1);
}

TEST_CASE("orders against brute force") {
  SUBCASE("SL_2(F_3), SL_3(F_2), PGL_2(F_3)") {
    CHECK(count_gl(3, 2).special == 24);
    CHECK(reductive_group_order({{'A', 1}, "sc", Twist::split, 3}) == 24);
    CHECK(count_gl(2, 3).special == 168);
    CHECK(reductive_group_order({{'A', 2}, "sc", Twist::split, 2}) == 168);
    CHECK(count_gl(3, 2).general / 2 == 24);
    CHECK(reductive_group_order({{'A', 1}, "adjoint", Twist::split, 3}) == 24);
  }
  SUBCASE("SL_n divides GL_n for q <= 4, n <= 3") {
    for (unsigned long q : {2ul, 3ul, 4ul})
      for (unsigned n = 1; n <= 3; ++n) {
        CAPTURE(q);
        CAPTURE(n);
        const auto c = count_gl(q, n);
        if (n == 1) {
          CHECK(c.general == q - 1);
          continue;
        }
        const Integer sl = reductive_group_order({{'A', n - 1}, "sc", Twist::split, q});
        CHECK(sl == c.special);
        CHECK(Integer(c.general) == sl * (q - 1));
      }
  }
  SUBCASE("SU_3(F_4 / F_2)") {
    const unsigned long su = count_su3_f4();
    CHECK(su == 216);
    CHECK(reductive_group_order({{'A', 2}, "sc", Twist::outer_a, 2}) == su);
  }
  SUBCASE("catalogued simple group orders") {
    CHECK(reductive_group_order({{'G', 2}, "sc", Twist::split, 2}) == 12096);
    CHECK(reductive_group_order({{'D', 4}, "sc", Twist::triality, 2}) == 211341312);
    CHECK(reductive_group_order({{'D', 4}, "sc", Twist::outer_d, 2}) == 197406720);
    CHECK(reductive_group_order({{'B', 2}, "sc", Twist::split, 3}) == 51840);
  }
}

TEST_CASE("isogenous groups have the same order") {
  const std::vector<CartanType> types = {{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'D', 4}, {'E', 6}, {'E', 7}};
  for (unsigned long q : {2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 9ul})
    for (const auto& t : types) {
      CHECK(reductive_group_order({t, "sc", Twist::split, q}) == reductive_group_order({t, "adjoint", Twist::split, q}));
      // B_n and C_n (Spin vs PSp) share the same degrees
      if (t.family == 'B')
        CHECK(reductive_group_order({t, "sc", Twist::split, q}) == reductive_group_order({{'C', t.rank}, "adjoint", Twist::split, q}));
    }
}

TEST_CASE("parahoric volumes") {
  CHECK(parahoric_volume({{'A', 1}, "sc", Twist::split, 3}) == Rational(8, 9));
  CHECK(parahoric_volume({{'A', 1}, "sc", Twist::split, 5}) == Rational(24, 25));
  const std::vector<GroupOrderSpec> specs = {{{'A', 3}, "sc", Twist::split, 7},   {{'A', 4}, "adjoint", Twist::outer_a, 9},
                                             {{'E', 6}, "sc", Twist::outer_e6, 4}, {{'D', 4}, "sc", Twist::triality, 5},
                                             {{'G', 2}, "sc", Twist::split, 11},  {{'F', 4}, "sc", Twist::split, 2}};
  for (const auto& s : specs) {
    const Rational v = parahoric_volume(s);
    CHECK(v > 0);
    CHECK(v < 1);
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), Integer(s.q).get_mpz_t(), group_dimension(s.type));
    const Rational back = v * Rational(scale);
    CHECK(back.get_den() == 1);
    CHECK(back.get_num() == reductive_group_order(s));
  }
}

TEST_CASE("twist validation") {
  CHECK_THROWS_AS(reductive_group_order({{'B', 3}, "sc", Twist::outer_a, 3}), InputError);
  CHECK_THROWS_AS(reductive_group_order({{'D', 5}, "sc", Twist::triality, 3}), InputError);
  CHECK_THROWS_AS(reductive_group_order({{'A', 1}, "sc", Twist::outer_a, 3}), InputError);
  CHECK_THROWS_AS(reductive_group_order({{'A', 2}, "weird", Twist::split, 3}), InputError);
  CHECK_THROWS_AS(reductive_group_order({{'A', 2}, "sc", Twist::split, 6}), InputError);
  CHECK(parse_twist("3D4") == Twist::triality);
  CHECK_THROWS_AS(parse_twist("2B"), InputError);
}

TEST_CASE("roots of unity and component indices") {
  CHECK(count_roots_of_unity(3, 2) == 2);
  CHECK(count_roots_of_unity(9, 8) == 8);
  CHECK(count_roots_of_unity(5, 3) == 1);
  for (unsigned long q : {3ul, 4ul, 5ul, 7ul, 8ul, 9ul, 25ul, 27ul}) {
    const FiniteField f(q);
    for (unsigned long n = 1; n <= 12; ++n) {
      unsigned long count = 0;
      for (El x = 1; x < q; ++x) count += f.pow(x, n) == 1;
      CHECK(count_roots_of_unity(q, n) == count);
    }
  }
  CHECK(norm_torus_component_index(1) == 1);
  unsigned long prod = norm_torus_component_index(2);
  for (int i = 0; i < 3; ++i) prod *= norm_torus_component_index(2);
  CHECK(prod == 16);
  CHECK_THROWS_AS(norm_torus_component_index(0), InputError);
}
