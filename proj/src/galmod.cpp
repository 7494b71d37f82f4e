#include "tamagawa/galmod.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "tamagawa/errors.hpp"

namespace tamagawa {

GaloisModule::GaloisModule(IntMatrix relations, std::vector<GroupGenerator> generators)
    : relations_(std::move(relations)), generators_(std::move(generators)) {}

Integer GaloisModule::group_order() const {
  Integer n = 1;
  for (const auto& g : generators_) n *= g.order;
  return n;
}

FinAbGroup GaloisModule::structure() const { return cokernel_structure(relations_); }

Integer GaloisModule::order() const {
  const FinAbGroup s = structure();
  if (!s.is_finite()) throw InputError("Galois module is infinite: relations do not have full rank");
  return s.order();
}

GaloisModule GaloisModule::with_generators(std::vector<GroupGenerator> generators) const {
  return GaloisModule(relations_, std::move(generators));
}

Integer validate_module(const GaloisModule& m) {
  const std::size_t k = m.ambient_rank();
  const Integer order = m.order();
  const IntMatrix& rel = m.relations();
  const IntMatrix id = IntMatrix::identity(k);
  for (const auto& g : m.generators()) {
    if (g.action.rows() != k || g.action.cols() != k) {
      throw InputError("generator '" + g.label + "': action matrix must be " + std::to_string(k) + "x" +
                       std::to_string(k));
    }
    if (g.order == 0) throw InputError("generator '" + g.label + "': order must be positive");
    if (!in_lattice(g.action * rel, rel)) {
      throw InputError("generator '" + g.label + "': action does not preserve the relation lattice");
    }
    if (!in_lattice(matrix_power(g.action, g.order) - id, rel)) {
      throw InputError("generator '" + g.label + "': group relation violated (g^" + std::to_string(g.order) +
                       " does not act trivially)");
    }
  }
  const auto& gens = m.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const IntMatrix commutator = gens[i].action * gens[j].action - gens[j].action * gens[i].action;
      if (!in_lattice(commutator, rel)) {
        throw InputError("generators '" + gens[i].label + "' and '" + gens[j].label +
                         "': group relation violated (actions do not commute)");
      }
    }
  return order;
}

CyclicAction::CyclicAction(GaloisModule module) : module_(std::move(module)) {
  if (module_.generators().size() != 1) throw InputError("cyclic action needs exactly one generator");
}

namespace {

// {x in Z^k : M_i x in L for every i}, returned as generators (columns).
IntMatrix preimage_lattice(const std::vector<IntMatrix>& maps, const IntMatrix& relations, std::size_t k) {
  if (maps.empty()) return IntMatrix::identity(k);
  const std::size_t r = maps.size();
  const std::size_t m = relations.cols();
  IntMatrix system(r * k, k + r * m);
  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) system(b * k + i, j) = maps[b](i, j);
      for (std::size_t j = 0; j < m; ++j) system(b * k + i, k + b * m + j) = -relations(i, j);
    }
  return kernel_basis(system).rows_range(0, k);
}

IntMatrix norm_matrix(const IntMatrix& a, unsigned long order) {
  IntMatrix n(a.rows(), a.cols());
  IntMatrix power = IntMatrix::identity(a.rows());
  for (unsigned long i = 0; i < order; ++i) {
    n = n + power;
    power = power * a;
  }
  return n;
}

std::uint64_t to_u64(const Integer& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 63) throw ResourceError("value exceeds enumeration range");
  return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

// Explicit element table of a finite module in Smith coordinates.
class ElementTable {
 public:
  ElementTable(const GaloisModule& m, std::uint64_t budget) : k_(m.ambient_rank()) {
    const SmithForm s = snf(m.relations());
    if (s.rank != k_) throw InputError("Galois module is infinite");
    left_ = s.left;
    left_inverse_ = *solve_in_basis(left_, IntMatrix::identity(k_));
    for (std::size_t i = 0; i < k_; ++i)
      if (s.diagonal(i, i) != 1) {
        rows_.push_back(i);
        moduli_.push_back(to_u64(s.diagonal(i, i)));
      }
    size_ = 1;
    for (auto d : moduli_) {
      if (size_ > budget / d) throw ResourceError("module too large for element enumeration (budget " +
                                                  std::to_string(budget) + ")");
      size_ *= d;
    }
    for (const auto& g : m.generators()) actions_.push_back(build_action(g.action));
  }

  std::uint64_t size() const { return size_; }
  std::size_t generator_count() const { return actions_.size(); }

  std::vector<std::uint64_t> decode(std::uint64_t idx) const {
    std::vector<std::uint64_t> c(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      c[i] = idx % moduli_[i];
      idx /= moduli_[i];
    }
    return c;
  }

  std::uint64_t encode(const std::vector<std::uint64_t>& c) const {
    std::uint64_t idx = 0;
    for (std::size_t i = moduli_.size(); i-- > 0;) idx = idx * moduli_[i] + c[i];
    return idx;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    auto ca = decode(a);
    const auto cb = decode(b);
    for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % moduli_[i];
    return encode(ca);
  }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    auto ca = decode(a);
    const auto cb = decode(b);
    for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + moduli_[i] - cb[i]) % moduli_[i];
    return encode(ca);
  }

  std::uint64_t act(std::size_t gen, std::uint64_t a) const { return actions_[gen][a]; }

  /// Representative of the element in Z^k.
  IntMatrix lift(std::uint64_t idx) const {
    const auto c = decode(idx);
    IntMatrix v(k_, 1);
    for (std::size_t i = 0; i < rows_.size(); ++i) v(rows_[i], 0) = static_cast<unsigned long>(c[i]);
    return left_inverse_ * v;
  }

 private:
  std::vector<std::uint64_t> build_action(const IntMatrix& a) const {
    const IntMatrix t = left_ * a * left_inverse_;
    const std::size_t n = rows_.size();
    std::vector<std::vector<std::uint64_t>> coeff(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), t(rows_[i], rows_[j]).get_mpz_t(), moduli_[i]);
        coeff[i][j] = r.get_ui();
      }
    std::vector<std::uint64_t> table(size_);
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
      const auto c = decode(idx);
      std::vector<std::uint64_t> out(n);
      for (std::size_t i = 0; i < n; ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += static_cast<unsigned __int128>(coeff[i][j]) * c[j];
        out[i] = static_cast<std::uint64_t>(acc % moduli_[i]);
      }
      table[idx] = encode(out);
    }
    return table;
  }

  std::size_t k_;
  IntMatrix left_;
  IntMatrix left_inverse_;
  std::vector<std::size_t> rows_;
  std::vector<std::uint64_t> moduli_;
  std::uint64_t size_ = 1;
  std::vector<std::vector<std::uint64_t>> actions_;
};

// Grows a lattice one vector at a time, skipping vectors already inside.
class LatticeAccumulator {
 public:
  explicit LatticeAccumulator(IntMatrix initial) : basis_(lattice_basis(initial)) {}
  void add(const IntMatrix& v) {
    if (in_lattice(v, basis_)) return;
    basis_ = lattice_basis(hstack(basis_, v));
  }
  const IntMatrix& basis() const { return basis_; }

 private:
  IntMatrix basis_;
};

IntMatrix block_diagonal(const IntMatrix& b, std::size_t copies) {
  IntMatrix out(b.rows() * copies, b.cols() * copies);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(c * b.rows() + i, c * b.cols() + j) = b(i, j);
  return out;
}

using Cocycle = std::vector<std::uint64_t>;  // values on the generators

void check_budget(const GaloisModule& m, std::uint64_t budget) {
  const Integer work = m.group_order() * m.order();
  if (work > Integer(std::to_string(budget))) {
    std::ostringstream os;
    os << "cocycle enumeration needs |Gamma|*|M| = " << work << " table entries, budget is " << budget;
    throw ResourceError(os.str());
  }
}

std::vector<Cocycle> enumerate_cocycles(const GaloisModule& m, const ElementTable& table, std::uint64_t budget) {
  const auto& gens = m.generators();
  const std::size_t r = gens.size();
  const std::uint64_t size = table.size();

  // Candidates for each generator value: N_g m = 0.
  std::vector<std::vector<std::uint64_t>> candidates(r);
  for (std::size_t g = 0; g < r; ++g)
    for (std::uint64_t x = 0; x < size; ++x) {
      std::uint64_t acc = 0;
      std::uint64_t power = x;
      for (unsigned long i = 0; i < gens[g].order; ++i) {
        acc = table.add(acc, power);
        power = table.act(g, power);
      }
      if (acc == 0) candidates[g].push_back(x);
    }

  std::vector<Cocycle> out;
  Cocycle current(r);
  std::uint64_t steps = 0;
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == r) {
      out.push_back(current);
      return;
    }
    for (std::uint64_t x : candidates[g]) {
      if (++steps > budget) throw ResourceError("cocycle search exceeded budget of " + std::to_string(budget) + " steps");
      bool ok = true;
      // (g_i - 1) m_g == (g_g - 1) m_i for every earlier generator i.
      for (std::size_t i = 0; i < g && ok; ++i)
        ok = table.sub(table.act(i, x), x) == table.sub(table.act(g, current[i]), current[i]);
      if (!ok) continue;
      current[g] = x;
      self(self, g + 1);
    }
  };
  rec(rec, 0);
  return out;
}

IntMatrix lift_cocycle(const ElementTable& table, const Cocycle& c, std::size_t k) {
  IntMatrix v(k * c.size(), 1);
  for (std::size_t g = 0; g < c.size(); ++g) {
    const IntMatrix x = table.lift(c[g]);
    for (std::size_t i = 0; i < k; ++i) v(g * k + i, 0) = x(i, 0);
  }
  return v;
}

// Lattice of coboundaries plus L^r, in Z^{rk}.
IntMatrix coboundary_generators(const GaloisModule& m) {
  const std::size_t k = m.ambient_rank();
  const std::size_t r = m.generators().size();
  IntMatrix stacked(r * k, k);
  const IntMatrix id = IntMatrix::identity(k);
  for (std::size_t g = 0; g < r; ++g) {
    const IntMatrix d = m.generators()[g].action - id;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) stacked(g * k + i, j) = d(i, j);
  }
  return hstack(stacked, block_diagonal(m.relations(), r));
}

FinAbGroup cocycle_quotient(const GaloisModule& m, const ElementTable& table, const std::vector<Cocycle>& cocycles) {
  const std::size_t k = m.ambient_rank();
  const std::size_t r = m.generators().size();
  if (r == 0) return FinAbGroup::trivial();
  const IntMatrix boundaries = coboundary_generators(m);
  LatticeAccumulator acc(boundaries);
  for (const auto& c : cocycles) acc.add(lift_cocycle(table, c, k));
  return quotient_structure(acc.basis(), boundaries);
}

// Exponent vectors of all elements of prod C_{n_i}.
std::vector<std::vector<unsigned long>> group_elements(const GaloisModule& m) {
  std::vector<std::vector<unsigned long>> out{{}};
  for (const auto& g : m.generators()) {
    std::vector<std::vector<unsigned long>> next;
    for (const auto& e : out)
      for (unsigned long a = 0; a < g.order; ++a) {
        auto f = e;
        f.push_back(a);
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

bool is_cyclic_group(const GaloisModule& m) {
  unsigned long lcm_so_far = 1;
  for (const auto& g : m.generators()) {
    if (std::gcd(lcm_so_far, g.order) != 1) return false;
    lcm_so_far = std::lcm(lcm_so_far, g.order);
  }
  return true;
}

FinAbGroup fixed_points(const GaloisModule& m) {
  validate_module(m);
  const std::size_t k = m.ambient_rank();
  std::vector<IntMatrix> maps;
  const IntMatrix id = IntMatrix::identity(k);
  for (const auto& g : m.generators()) maps.push_back(g.action - id);
  return quotient_structure(preimage_lattice(maps, m.relations(), k), m.relations());
}

FinAbGroup h1_cyclic(const CyclicAction& c) {
  const GaloisModule& m = c.module();
  validate_module(m);
  const std::size_t k = m.ambient_rank();
  const IntMatrix kernel_of_norm = preimage_lattice({norm_matrix(c.sigma(), c.order())}, m.relations(), k);
  const IntMatrix image = hstack(c.sigma() - IntMatrix::identity(k), m.relations());
  return quotient_structure(kernel_of_norm, image);
}

FinAbGroup h1_small(const GaloisModule& m, const CohomologyOptions& options) {
  validate_module(m);
  check_budget(m, options.budget);
  const ElementTable table(m, options.budget);
  return cocycle_quotient(m, table, enumerate_cocycles(m, table, options.budget));
}

FinAbGroup sha1(const GaloisModule& m, const CohomologyOptions& options) {
  validate_module(m);
  if (options.cyclic_shortcut && is_cyclic_group(m)) return FinAbGroup::trivial();
  check_budget(m, options.budget);
  const ElementTable table(m, options.budget);
  const auto cocycles = enumerate_cocycles(m, table, options.budget);
  const auto elements = group_elements(m);
  const std::size_t r = m.generators().size();
  const std::uint64_t size = table.size();

  auto act_by = [&](const std::vector<unsigned long>& e, std::uint64_t x) {
    for (std::size_t g = 0; g < r; ++g)
      for (unsigned long a = 0; a < e[g]; ++a) x = table.act(g, x);
    return x;
  };

  // One generator per cyclic subgroup, together with the set (gamma - 1) M.
  struct Test {
    std::vector<unsigned long> gamma;
    std::vector<bool> boundary;
  };
  std::vector<Test> tests;
  std::set<std::set<std::vector<unsigned long>>> seen;
  for (const auto& gamma : elements) {
    std::set<std::vector<unsigned long>> subgroup;
    std::vector<unsigned long> power(r, 0);
    do {
      subgroup.insert(power);
      for (std::size_t g = 0; g < r; ++g) power[g] = (power[g] + gamma[g]) % m.generators()[g].order;
    } while (!subgroup.contains(power));
    if (!seen.insert(subgroup).second) continue;
    Test t{gamma, std::vector<bool>(size, false)};
    for (std::uint64_t x = 0; x < size; ++x) t.boundary[table.sub(act_by(gamma, x), x)] = true;
    tests.push_back(std::move(t));
  }

  // f(g^a) = sum_{j<a} g^j f(g); f(xy) = f(x) + x f(y).
  auto evaluate = [&](const Cocycle& c, const std::vector<unsigned long>& e) {
    std::uint64_t value = 0;
    for (std::size_t g = r; g-- > 0;) {
      std::uint64_t part = 0;
      std::uint64_t term = c[g];
      for (unsigned long a = 0; a < e[g]; ++a) {
        part = table.add(part, term);
        term = table.act(g, term);
      }
      // value currently holds f(g_{g+1}^.. ...); prepend g^{e_g}.
      std::uint64_t shifted = value;
      for (unsigned long a = 0; a < e[g]; ++a) shifted = table.act(g, shifted);
      value = table.add(part, shifted);
    }
    return value;
  };

  std::vector<Cocycle> locally_trivial;
  for (const auto& c : cocycles) {
    const bool trivial_everywhere = std::all_of(tests.begin(), tests.end(), [&](const Test& t) {
      return t.boundary[evaluate(c, t.gamma)];
    });
    if (trivial_everywhere) locally_trivial.push_back(c);
  }
  return cocycle_quotient(m, table, locally_trivial);
}

FinAbGroup h1_lattice_cyclic(const LatticeAction& lattice) {
  const IntMatrix& a = lattice.action;
  if (a.rows() != a.cols()) throw InputError("lattice action must be square");
  const IntMatrix id = IntMatrix::identity(a.rows());
  if (lattice.order == 0 || !(matrix_power(a, lattice.order) == id)) {
    throw InputError("lattice action is not of order dividing " + std::to_string(lattice.order));
  }
  const IntMatrix kernel_of_norm = kernel_basis(norm_matrix(a, lattice.order));
  return quotient_structure(kernel_of_norm, a - id);
}

Integer enumerate_fixed_points(const GaloisModule& m, std::uint64_t budget) {
  validate_module(m);
  const ElementTable table(m, budget);
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    bool fixed = true;
    for (std::size_t g = 0; g < table.generator_count() && fixed; ++g) fixed = table.act(g, x) == x;
    count += fixed;
  }
  return Integer(std::to_string(count));
}

GaloisModule dual_module(const GaloisModule& m) {
  validate_module(m);
  const IntMatrix basis = lattice_basis(m.relations());
  std::vector<GroupGenerator> gens;
  for (const auto& g : m.generators()) {
    // g^{-1} acts on M as g^{order-1}.
    const IntMatrix inverse = matrix_power(g.action, g.order - 1);
    const auto conjugated = solve_in_basis(basis, inverse * basis);
    if (!conjugated) throw InputError("generator '" + g.label + "': action does not preserve the relation lattice");
    gens.push_back(GroupGenerator{g.label, g.order, conjugated->transpose()});
  }
  return GaloisModule(basis.transpose(), std::move(gens));
}

GaloisModule coinvariants(const GaloisModule& m, const std::vector<std::size_t>& quotient_by) {
  IntMatrix relations = m.relations();
  const IntMatrix id = IntMatrix::identity(m.ambient_rank());
  for (std::size_t g : quotient_by) relations = hstack(relations, m.generators().at(g).action - id);
  std::vector<GroupGenerator> remaining;
  for (std::size_t g = 0; g < m.generators().size(); ++g)
    if (std::find(quotient_by.begin(), quotient_by.end(), g) == quotient_by.end())
      remaining.push_back(m.generators()[g]);
  return GaloisModule(lattice_basis(relations), std::move(remaining));
}

LatticeAction restrict_to_sublattice(const IntMatrix& action, unsigned long order, const IntMatrix& basis) {
  const auto coords = solve_in_basis(basis, action * basis);
  if (!coords) throw InputError("sublattice is not stable under the action");
  return LatticeAction{*coords, order};
}

IntMatrix invariant_sublattice(std::size_t rank, const std::vector<IntMatrix>& actions) {
  IntMatrix stacked(0, rank);
  const IntMatrix id = IntMatrix::identity(rank);
  for (const auto& a : actions) stacked = vstack(stacked, a - id);
  return kernel_basis(stacked);
}

}  // namespace tamagawa
