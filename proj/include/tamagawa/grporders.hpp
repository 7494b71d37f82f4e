#pragma once

// Orders of finite reductive groups G(F_q), the parahoric volume
// |G(F_q)| * q^(-dim G), and the small torus indices of the worked examples.

#include <string>
#include <vector>

#include "tamagawa/intlat.hpp"
#include "tamagawa/rootdata.hpp"

namespace tamagawa {

struct PrimePower {
  unsigned long p = 0;
  unsigned exponent = 0;
};

/// Trial factorisation; throws InputError unless q = p^k with k >= 1 and q <= 10^6.
PrimePower prime_power_decomposition(unsigned long q);

enum class Twist { split, outer_a, outer_d, triality, outer_e6 };

/// "split", "2A", "2D", "3D4", "2E6".
std::string to_string(Twist twist);
Twist parse_twist(const std::string& text);

struct GroupOrderSpec {
  CartanType type;
  /// "sc", "adjoint" or "intermediate"; the order does not depend on it.
  std::string isogeny = "sc";
  Twist twist = Twist::split;
  unsigned long q = 2;
};

void validate_group_order_spec(const GroupOrderSpec& s);

/// Degrees of the basic invariants of the Weyl group.
std::vector<unsigned> fundamental_degrees(const CartanType& type);

Integer weyl_group_order(const CartanType& type);

/// rank + 2 * (number of positive roots).
unsigned long group_dimension(const CartanType& type);

/// q^N * prod_i (q^{d_i} - eps_i).
Integer reductive_group_order(const GroupOrderSpec& s);

/// reductive_group_order(s) / q^{dim G}.
Rational parahoric_volume(const GroupOrderSpec& s);

/// |{x in F_q : x^n = 1}| = gcd(n, q - 1).
unsigned long count_roots_of_unity(unsigned long q, unsigned long n);

/// Number of connected components of the Neron model of the norm torus at a tame place.
unsigned long norm_torus_component_index(unsigned long e);

}  // namespace tamagawa
