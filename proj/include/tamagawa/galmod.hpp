#pragma once

// Finite Galois modules M = Z^k / L with an abelian group acting through
// integer matrices, and the cohomology the engine needs: fixed points,
// H^1 for cyclic groups and lattices, H^1 by cocycle enumeration, and the
// Shafarevich-Tate kernel.

#include <cstdint>
#include <string>
#include <vector>

#include "tamagawa/intlat.hpp"

namespace tamagawa {

/// One cyclic factor of the acting group, together with its action on Z^k.
struct GroupGenerator {
  std::string label;
  unsigned long order = 1;
  IntMatrix action;
};

/// M = Z^k / span(relations), acted on by the direct product of the cyclic
/// groups <g_i | g_i^order_i>, g_i acting by `action`.
class GaloisModule {
 public:
  GaloisModule() = default;
  GaloisModule(IntMatrix relations, std::vector<GroupGenerator> generators);

  std::size_t ambient_rank() const { return relations_.rows(); }
  const IntMatrix& relations() const { return relations_; }
  const std::vector<GroupGenerator>& generators() const { return generators_; }
  /// |Gamma| as the product of the declared generator orders.
  Integer group_order() const;
  /// |M|; throws InputError when the relations do not have full rank.
  Integer order() const;
  FinAbGroup structure() const;

  /// Same module, acting group replaced.
  GaloisModule with_generators(std::vector<GroupGenerator> generators) const;

 private:
  IntMatrix relations_;
  std::vector<GroupGenerator> generators_;
};

/// Checks finiteness, A*L within L, commutation and A^order = 1 on M.
/// Returns |M|. Throws InputError naming the failing generator.
Integer validate_module(const GaloisModule& m);

/// A module with exactly one generator.
class CyclicAction {
 public:
  explicit CyclicAction(GaloisModule module);
  const GaloisModule& module() const { return module_; }
  const IntMatrix& sigma() const { return module_.generators().front().action; }
  unsigned long order() const { return module_.generators().front().order; }

 private:
  GaloisModule module_;
};

/// A free Z-module Z^r with a cyclic group of order `order` acting by `action`.
struct LatticeAction {
  IntMatrix action;
  unsigned long order = 1;
};

struct CohomologyOptions {
  /// Maximum of |Gamma| * |M| and of cocycle search steps.
  std::uint64_t budget = 10'000'000;
  /// Return the trivial group for Sha^1 at once when Gamma is cyclic.
  bool cyclic_shortcut = true;
};

/// M^Gamma, computed lattice-theoretically (no element enumeration).
FinAbGroup fixed_points(const GaloisModule& m);

/// ker(N) / im(sigma - 1) on the finite module.
FinAbGroup h1_cyclic(const CyclicAction& c);

/// H^1(Gamma, M) by enumerating 1-cocycles on the generators.
FinAbGroup h1_small(const GaloisModule& m, const CohomologyOptions& options = {});

/// ker(H^1(Gamma, M) -> prod over cyclic C <= Gamma of H^1(C, M)).
FinAbGroup sha1(const GaloisModule& m, const CohomologyOptions& options = {});

/// H^1(C_n, Z^r) = ker(N) / im(A - 1) for an integral representation.
FinAbGroup h1_lattice_cyclic(const LatticeAction& lattice);

/// True when the declared generator orders are pairwise coprime (Gamma cyclic).
bool is_cyclic_group(const GaloisModule& m);

/// |M^Gamma| by brute-force element enumeration. Throws ResourceError over budget.
Integer enumerate_fixed_points(const GaloisModule& m, std::uint64_t budget = 10'000'000);

/// Pontryagin dual Hom(M, Q/Z) = Z^k / B^T Z^k with the contragredient action,
/// where B is a square basis of the relation lattice.
GaloisModule dual_module(const GaloisModule& m);

/// Coinvariants M / sum_i (g_i - 1) M, with the remaining generators acting.
/// `quotient_by` lists the generator indices to take coinvariants under.
GaloisModule coinvariants(const GaloisModule& m, const std::vector<std::size_t>& quotient_by);

/// Action of the generator matrices restricted to a Gamma-stable full-rank
/// sublattice with basis `basis` (columns), expressed in that basis.
LatticeAction restrict_to_sublattice(const IntMatrix& action, unsigned long order, const IntMatrix& basis);

/// Sublattice of Z^k fixed by every generator (a saturated basis, as columns).
IntMatrix invariant_sublattice(std::size_t rank, const std::vector<IntMatrix>& actions);

}  // namespace tamagawa
