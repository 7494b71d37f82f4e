#pragma once

// Root data catalogue: Cartan matrices (Bourbaki ordering), fundamental
// groups, diagram automorphisms, and the character-lattice pairs
// X*(T) within X*(T^sc) whose quotient is the dual F^ of the fundamental group.
//
// Weight coordinates: X*(T^sc) = P = Z^r with the fundamental weights as basis.
// The simple root alpha_i has coordinates given by row i of the Cartan matrix
// C_ij = <alpha_i, alpha_j^vee>, so Q is the column span of C^T.

#include <string>
#include <vector>

#include "tamagawa/galmod.hpp"
#include "tamagawa/intlat.hpp"

namespace tamagawa {

struct CartanType {
  char family = 'A';  // 'A'..'G'
  unsigned rank = 1;

  std::string to_string() const { return std::string(1, family) + std::to_string(rank); }
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Parses "A3", "e6", "G2". Throws InputError for unknown families or ranks.
CartanType parse_cartan_type(const std::string& text);
void validate_cartan_type(const CartanType& type);

IntMatrix cartan_matrix(const CartanType& type);

/// P/Q = coker(C^T).
FinAbGroup fundamental_group(const CartanType& type);

unsigned long positive_root_count(const CartanType& type);

/// Node permutation (0-based) of the diagram automorphism of the given order:
/// order 1 is the identity; order 2 exists for A_n (n >= 2), D_n, E_6; order 3 for D_4.
std::vector<std::size_t> diagram_automorphism(const CartanType& type, unsigned order);

/// Matrix sending the i-th basis vector to the perm[i]-th one.
IntMatrix permutation_matrix(const std::vector<std::size_t>& perm);

/// Acting group on X*(T^sc) together with the sublattice X*(T).
struct CharacterLattices {
  std::size_t rank = 0;
  std::vector<GroupGenerator> generators;  // actions on X*(T^sc) = Z^rank
  IntMatrix sublattice;                    // basis of X*(T), as columns
};

struct RootDatum {
  CartanType type;
  /// Generators (weight coordinates) of X*(T)/Q inside P/Q. All fundamental
  /// weights for the simply connected group, none for the adjoint group.
  std::vector<std::vector<long>> lattice_generators;
  std::string lattice_label = "adjoint";
  /// Order of the diagram automorphism defining the quasi-split form (1 = split).
  unsigned twist_order = 1;

  static RootDatum simply_connected(const CartanType& type, unsigned twist_order = 1);
  static RootDatum adjoint(const CartanType& type, unsigned twist_order = 1);
  static RootDatum intermediate(const CartanType& type, std::vector<std::vector<long>> generators,
                                unsigned twist_order = 1);

  /// Basis of X*(T) in weight coordinates: Q + span(lattice_generators).
  IntMatrix character_lattice() const;
  /// Order of the lattice choice X*(T)/Q.
  Integer lattice_choice_order() const;
};

/// Checks type, generator lengths, and that the twist stabilises X*(T).
void validate_root_datum(const RootDatum& rd);

/// One generator of a (local or global) Galois group acting through a power
/// of the diagram automorphism of `rd`.
struct TwistGenerator {
  std::string label;
  unsigned long order = 1;
  /// Exponent of the diagram automorphism by which this generator acts.
  unsigned long twist_power = 0;
};

CharacterLattices root_datum_lattices(const RootDatum& rd, const std::vector<TwistGenerator>& generators);

/// F^ = X*(T^sc)/X*(T) with the induced action, e.g. F^_infty under Frobenius and inertia.
GaloisModule center_dual_module(const RootDatum& rd, const std::vector<TwistGenerator>& generators);

/// F^ = X*(T^sc)/X*(T) for any character-lattice pair.
GaloisModule quotient_module(const CharacterLattices& lattices);

/// |cok(X*(T^sc)^Gamma -> ... )| realised as the index [X*(T^sc)^Gamma : X*(T)^Gamma].
Integer invariant_index(const CharacterLattices& lattices);

/// H^1(Gamma, X*(T)) for trivial or cyclic Gamma (one generator).
FinAbGroup sublattice_h1(const CharacterLattices& lattices);

enum class ExtensionKind { constant_field, kummer_quadratic, carlitz_cyclotomic, abstract_cyclic };

std::string to_string(ExtensionKind kind);
ExtensionKind parse_extension_kind(const std::string& text);

struct RamifiedPlace {
  std::string label;
  unsigned long e = 1;
};

struct InfinityData {
  unsigned long e = 1;
  unsigned long f = 1;
};

/// A cyclic extension L/K of F_q(t) described by its ramification data.
struct FieldExtensionSpec {
  ExtensionKind kind = ExtensionKind::abstract_cyclic;
  unsigned long degree = 1;
  /// Degree of the constant field extension contained in L.
  unsigned long constant_degree = 1;
  std::vector<RamifiedPlace> ramified_places;
  InfinityData infinity;

  unsigned long places_over_infinity() const { return degree / (infinity.e * infinity.f); }
};

/// Structural and tameness checks, plus the shape each named kind must have.
void validate_extension(const FieldExtensionSpec& ext, unsigned long q);

/// (Z/n)[Gamma]/<Sigma> on Z^[L:K] with Gamma = C_[L:K] acting by cyclic shift.
GaloisModule weil_restriction_center_dual(unsigned long n, const FieldExtensionSpec& ext, unsigned long q);

/// X*(R_{L/K}(G_m)) = Z[Gamma] with X*(T) = n Z[Gamma] + Z Sigma for T dual to (Z/n)[Gamma]/<Sigma>.
CharacterLattices norm_one_lattices(unsigned long n, unsigned long degree);

/// Z[C_n]/(Sigma) in the basis e_0, ..., e_{n-2}, with the shift.
LatticeAction norm_one_character_lattice(const FieldExtensionSpec& ext);

/// Cyclic shift on Z^n (e_i -> e_{i+1 mod n}).
IntMatrix cyclic_shift(std::size_t n);

}  // namespace tamagawa
