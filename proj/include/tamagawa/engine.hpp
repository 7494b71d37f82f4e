#pragma once

// Relative Tamagawa numbers tau(G) = h_infty * t_infty / j_infty for
// quasi-split groups over F_q(t) (and split PGL_n over an elliptic curve),
// with Ono's formula |F^Gamma| / |Sha^1(F^)| as an independent route.

#include <optional>
#include <string>
#include <vector>

#include "tamagawa/galmod.hpp"
#include "tamagawa/intlat.hpp"
#include "tamagawa/rootdata.hpp"

namespace tamagawa {

inline constexpr const char* kEngineVersion = "1.0.0";

enum class GroupKind { split, quasi_split, ono };

std::string to_string(GroupKind kind);
GroupKind parse_group_kind(const std::string& text);

/// y^2 = x^3 + a x + b over the prime field of F_q.
struct CurveSpec {
  long a = 0;
  long b = 0;
};

struct ClassNumberRatio {
  Rational value;  // h(T) / h(T^sc)
  std::string provenance;
};

/// Replaces the natural local module F^_infty when computing t_infty.
struct LocalModuleOverride {
  IntMatrix relations;
  std::vector<GroupGenerator> generators;
};

struct Scenario {
  std::string name;
  std::string description;
  unsigned long q = 3;
  std::optional<CurveSpec> curve;  // genus 1 when present, genus 0 otherwise

  GroupKind kind = GroupKind::split;
  // split and quasi_split
  CartanType type{'A', 1};
  std::string lattice = "adjoint";  // sc, adjoint or intermediate
  std::vector<std::vector<long>> lattice_generators;
  unsigned twist_order = 1;
  // ono: F = R^(1)_{L/K}(mu_n)
  unsigned long n = 2;

  std::optional<FieldExtensionSpec> extension;
  std::optional<ClassNumberRatio> class_number_ratio;
  std::optional<Integer> cok_pi_K;
  std::optional<LocalModuleOverride> local_module_override;
};

enum class FlagStatus { pass, fail, warn, skipped };
std::string to_string(FlagStatus status);

struct ConsistencyFlag {
  std::string name;
  FlagStatus status = FlagStatus::skipped;
  std::string detail;
};

struct TamagawaReport {
  Integer t_infty;
  Rational j_infty;
  Integer h_infty;
  Rational tau;
  Rational ono_tau;

  Integer module_order;         // |F^|
  Integer global_fixed_points;  // |F^Gamma|
  Integer sha1_order;
  Integer cok_pi_K;
  Integer cok_pi_K_computed;
  Integer component_index_product;
  Integer unit_index;
  std::optional<Rational> class_number_ratio;
  std::optional<Rational> bd_tau;
  Integer local_fixed_points_natural;  // |F^_infty^{g_infty}| from the natural local module
  std::optional<Integer> h1_character_lattice;
  std::optional<std::uint64_t> curve_points;

  std::vector<ConsistencyFlag> flags;

  /// No failed flag; with `strict`, no warning either.
  bool consistent(bool strict) const;
  const ConsistencyFlag* flag(const std::string& name) const;
};

struct EngineOptions {
  CohomologyOptions cohomology;
  /// Also run brute-force enumeration oracles and compare.
  bool oracle = false;
};

/// Structural validation; throws InputError / UnsupportedRegime.
void validate_scenario(const Scenario& s);

/// X*(T^sc), X*(T) and the Gamma-action for the global group.
CharacterLattices global_lattices(const Scenario& s);
/// F^ as a Gamma = Gal(L/K)-module.
GaloisModule global_module(const Scenario& s);
/// F^_infty restricted to the decomposition group at infinity, generated by
/// "frobenius" (order e f) and "inertia" (order e).
GaloisModule natural_local_module(const Scenario& s);

Integer compute_t_infty(const Scenario& s);
Rational compute_j_infty(const Scenario& s);
Integer compute_h_infty(const Scenario& s);
Rational ono_tau(const Scenario& s, const CohomologyOptions& options = {});
TamagawaReport compute_tau(const Scenario& s, const EngineOptions& options = {});
std::vector<ConsistencyFlag> consistency_chain(const Scenario& s, const EngineOptions& options = {});

}  // namespace tamagawa
