#include "tamagawa/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <utility>

#include "tamagawa/errors.hpp"

namespace tamagawa {

namespace {

using Edge = std::pair<std::size_t, std::size_t>;

// Simply-laced edges (1-based, Bourbaki) for the chain part of each diagram.
std::vector<Edge> simple_edges(const CartanType& t) {
  std::vector<Edge> edges;
  const std::size_t n = t.rank;
  switch (t.family) {
    case 'A':
    case 'B':
    case 'C':
    case 'F':
    case 'G':
      for (std::size_t i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case 'D':
      for (std::size_t i = 1; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 2, n);
      break;
    case 'E':
      edges = {{1, 3}, {3, 4}, {4, 5}, {2, 4}};
      for (std::size_t i = 5; i < n; ++i) edges.emplace_back(i, i + 1);
      break;
    default:
      break;
  }
  return edges;
}

IntMatrix power_of(const IntMatrix& a, unsigned long exponent) { return matrix_power(a, exponent); }

}  // namespace

void validate_cartan_type(const CartanType& t) {
  const unsigned n = t.rank;
  bool ok = false;
  switch (t.family) {
    case 'A': ok = n >= 1; break;
    case 'B': ok = n >= 2; break;
    case 'C': ok = n >= 2; break;
    case 'D': ok = n >= 4; break;
    case 'E': ok = n >= 6 && n <= 8; break;
    case 'F': ok = n == 4; break;
    case 'G': ok = n == 2; break;
    default: throw InputError("unknown root system family '" + std::string(1, t.family) + "'");
  }
  if (!ok) throw InputError("unsupported rank for type " + t.to_string());
}

CartanType parse_cartan_type(const std::string& text) {
  if (text.size() < 2) throw InputError("root system type must look like A3, got '" + text + "'");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const std::string digits = text.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      digits.size() > 3) {
    throw InputError("root system type must look like A3, got '" + text + "'");
  }
  CartanType t{family, static_cast<unsigned>(std::stoul(digits))};
  validate_cartan_type(t);
  return t;
}

IntMatrix cartan_matrix(const CartanType& t) {
  validate_cartan_type(t);
  const std::size_t n = t.rank;
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 2;
  for (const auto& [i, j] : simple_edges(t)) {
    c(i - 1, j - 1) = -1;
    c(j - 1, i - 1) = -1;
  }
  switch (t.family) {
    case 'B': c(n - 2, n - 1) = -2; break;
    case 'C': c(n - 1, n - 2) = -2; break;
    case 'F': c(1, 2) = -2; break;
    case 'G': c(1, 0) = -3; break;
    default: break;
  }
  return c;
}

FinAbGroup fundamental_group(const CartanType& t) { return cokernel_structure(cartan_matrix(t).transpose()); }

unsigned long positive_root_count(const CartanType& t) {
  validate_cartan_type(t);
  const unsigned long n = t.rank;
  switch (t.family) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    default: return 6;
  }
}

std::vector<std::size_t> diagram_automorphism(const CartanType& t, unsigned order) {
  validate_cartan_type(t);
  const std::size_t n = t.rank;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (order == 1) return perm;
  if (order == 2 && t.family == 'A' && n >= 2) {
    std::reverse(perm.begin(), perm.end());
    return perm;
  }
  if (order == 2 && t.family == 'D') {
    std::swap(perm[n - 2], perm[n - 1]);
    return perm;
  }
  if (order == 2 && t.family == 'E' && n == 6) {
    std::swap(perm[0], perm[5]);
    std::swap(perm[2], perm[4]);
    return perm;
  }
  if (order == 3 && t.family == 'D' && n == 4) {
    perm[0] = 2;
    perm[2] = 3;
    perm[3] = 0;
    return perm;
  }
  throw InputError("type " + t.to_string() + " has no diagram automorphism of order " + std::to_string(order));
}

IntMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  IntMatrix p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(perm[i], i) = 1;
  return p;
}

RootDatum RootDatum::simply_connected(const CartanType& type, unsigned twist_order) {
  std::vector<std::vector<long>> gens;
  for (std::size_t i = 0; i < type.rank; ++i) {
    std::vector<long> e(type.rank, 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return RootDatum{type, std::move(gens), "sc", twist_order};
}

RootDatum RootDatum::adjoint(const CartanType& type, unsigned twist_order) {
  return RootDatum{type, {}, "adjoint", twist_order};
}

RootDatum RootDatum::intermediate(const CartanType& type, std::vector<std::vector<long>> generators,
                                  unsigned twist_order) {
  return RootDatum{type, std::move(generators), "intermediate", twist_order};
}

IntMatrix RootDatum::character_lattice() const {
  IntMatrix gens = cartan_matrix(type).transpose();
  for (const auto& g : lattice_generators) {
    if (g.size() != type.rank) throw InputError("lattice generator has the wrong length for " + type.to_string());
    IntMatrix col(type.rank, 1);
    for (std::size_t i = 0; i < g.size(); ++i) col(i, 0) = g[i];
    gens = hstack(gens, col);
  }
  return lattice_basis(gens);
}

Integer RootDatum::lattice_choice_order() const {
  return sublattice_index(character_lattice(), cartan_matrix(type).transpose());
}

void validate_root_datum(const RootDatum& rd) {
  validate_cartan_type(rd.type);
  const IntMatrix lattice = rd.character_lattice();
  const IntMatrix p = permutation_matrix(diagram_automorphism(rd.type, rd.twist_order));
  if (!in_lattice(p * lattice, lattice)) {
    throw InputError("diagram automorphism of " + rd.type.to_string() + " does not preserve the chosen lattice");
  }
}

CharacterLattices root_datum_lattices(const RootDatum& rd, const std::vector<TwistGenerator>& generators) {
  validate_root_datum(rd);
  const IntMatrix p = permutation_matrix(diagram_automorphism(rd.type, rd.twist_order));
  CharacterLattices out;
  out.rank = rd.type.rank;
  out.sublattice = rd.character_lattice();
  for (const auto& g : generators) out.generators.push_back({g.label, g.order, power_of(p, g.twist_power)});
  return out;
}

GaloisModule quotient_module(const CharacterLattices& lattices) {
  GaloisModule m(lattices.sublattice, lattices.generators);
  validate_module(m);
  return m;
}

GaloisModule center_dual_module(const RootDatum& rd, const std::vector<TwistGenerator>& generators) {
  return quotient_module(root_datum_lattices(rd, generators));
}

Integer invariant_index(const CharacterLattices& lattices) {
  std::vector<IntMatrix> actions;
  std::vector<IntMatrix> restricted;
  const IntMatrix& basis = lattices.sublattice;
  for (const auto& g : lattices.generators) {
    actions.push_back(g.action);
    restricted.push_back(restrict_to_sublattice(g.action, g.order, basis).action);
  }
  const IntMatrix big = invariant_sublattice(lattices.rank, actions);
  const IntMatrix small = basis * invariant_sublattice(basis.cols(), restricted);
  if (big.cols() == 0) return 1;
  return sublattice_index(big, small);
}

FinAbGroup sublattice_h1(const CharacterLattices& lattices) {
  if (lattices.generators.empty()) return FinAbGroup::trivial();
  IntMatrix action = IntMatrix::identity(lattices.rank);
  unsigned long order = 1;
  for (const auto& g : lattices.generators) {
    if (std::gcd(order, g.order) != 1) throw UnsupportedRegime("H^1 of the character lattice needs a cyclic group");
    action = action * g.action;
    order *= g.order;
  }
  return h1_lattice_cyclic(restrict_to_sublattice(action, order, lattices.sublattice));
}

std::string to_string(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::constant_field: return "constant-field";
    case ExtensionKind::kummer_quadratic: return "kummer-quadratic";
    case ExtensionKind::carlitz_cyclotomic: return "carlitz-cyclotomic";
    default: return "abstract-cyclic";
  }
}

ExtensionKind parse_extension_kind(const std::string& text) {
  for (auto k : {ExtensionKind::constant_field, ExtensionKind::kummer_quadratic, ExtensionKind::carlitz_cyclotomic,
                 ExtensionKind::abstract_cyclic}) {
    if (to_string(k) == text) return k;
  }
  throw InputError("unknown extension kind '" + text + "'");
}

void validate_extension(const FieldExtensionSpec& ext, unsigned long q) {
  if (ext.degree == 0) throw InputError("extension degree must be positive");
  const auto& inf = ext.infinity;
  if (inf.e == 0 || inf.f == 0 || ext.degree % (inf.e * inf.f) != 0) {
    throw InputError("e_infty * f_infty must divide the extension degree");
  }
  if (ext.constant_degree == 0 || ext.degree % ext.constant_degree != 0 || inf.f % ext.constant_degree != 0) {
    throw InputError("constant field degree must divide both the degree and f_infty");
  }
  auto check_tame = [&](const std::string& label, unsigned long e) {
    if (e == 0 || ext.degree % e != 0) throw InputError("ramification index at " + label + " must divide the degree");
    if (std::gcd(e, q) != 1) throw InputError("wild ramification at " + label + " (e = " + std::to_string(e) + ")");
  };
  check_tame("infinity", inf.e);
  for (const auto& p : ext.ramified_places) check_tame(p.label, p.e);

  switch (ext.kind) {
    case ExtensionKind::constant_field:
      if (ext.constant_degree != ext.degree || !ext.ramified_places.empty() || inf.e != 1 || inf.f != ext.degree) {
        throw InputError("a constant field extension is unramified with infinity inert");
      }
      break;
    case ExtensionKind::kummer_quadratic:
      if (ext.degree != 2 || q % 2 == 0 || ext.constant_degree != 1 || ext.ramified_places.empty()) {
        throw InputError("a Kummer quadratic extension needs odd q, degree 2 and ramified places");
      }
      for (const auto& p : ext.ramified_places)
        if (p.e != 2) throw InputError("ramified places of a quadratic extension have e = 2");
      break;
    case ExtensionKind::carlitz_cyclotomic: {
      Integer power = q;
      while (power - 1 < ext.degree) power *= q;
      if (power - 1 != ext.degree) throw InputError("a Carlitz cyclotomic extension has degree q^d - 1");
      if (inf.e != q - 1 || inf.f != 1 || ext.constant_degree != 1 || ext.ramified_places.size() != 1 ||
          ext.ramified_places.front().e != ext.degree) {
        throw InputError("a Carlitz cyclotomic extension has e_infty = q - 1, f_infty = 1 and one totally ramified place");
      }
      break;
    }
    case ExtensionKind::abstract_cyclic:
      break;
  }
}

IntMatrix cyclic_shift(std::size_t n) {
  IntMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s((i + 1) % n, i) = 1;
  return s;
}

CharacterLattices norm_one_lattices(unsigned long n, unsigned long degree) {
  if (n < 2) throw InputError("n must be at least 2");
  if (degree == 0) throw InputError("extension degree must be positive");
  IntMatrix sigma(degree, 1);
  for (std::size_t i = 0; i < degree; ++i) sigma(i, 0) = 1;
  CharacterLattices out;
  out.rank = degree;
  out.generators.push_back({"sigma", degree, cyclic_shift(degree)});
  out.sublattice = lattice_basis(hstack(Integer(n) * IntMatrix::identity(degree), sigma));
  return out;
}

GaloisModule weil_restriction_center_dual(unsigned long n, const FieldExtensionSpec& ext, unsigned long q) {
  if (std::gcd(n, q) != 1) throw InputError("wild case: gcd(n, q) != 1");
  return quotient_module(norm_one_lattices(n, ext.degree));
}

LatticeAction norm_one_character_lattice(const FieldExtensionSpec& ext) {
  const std::size_t n = ext.degree;
  if (n < 2) return LatticeAction{IntMatrix(0, 0), 1};
  IntMatrix a(n - 1, n - 1);
  for (std::size_t i = 0; i + 2 < n; ++i) a(i + 1, i) = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, n - 2) = -1;
  return LatticeAction{a, n};
}

}  // namespace tamagawa
