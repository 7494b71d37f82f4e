#include "tamagawa/engine.hpp"

#include <algorithm>
#include <numeric>

#include "tamagawa/ellcurve.hpp"
#include "tamagawa/errors.hpp"
#include "tamagawa/grporders.hpp"

namespace tamagawa {

namespace {

std::string str(const Integer& v) { return v.get_str(); }
std::string str(const Rational& v) { return v.get_str(); }

RootDatum root_datum(const Scenario& s) {
  if (s.lattice == "sc") return RootDatum::simply_connected(s.type, s.twist_order);
  if (s.lattice == "adjoint") return RootDatum::adjoint(s.type, s.twist_order);
  if (s.lattice == "intermediate") return RootDatum::intermediate(s.type, s.lattice_generators, s.twist_order);
  throw InputError("unknown lattice '" + s.lattice + "' (expected sc, adjoint or intermediate)");
}

bool is_elliptic(const Scenario& s) { return s.curve.has_value(); }

unsigned long pgl_rank(const Scenario& s) { return s.type.rank + 1; }

EllipticCurve make_curve(const Scenario& s) { return EllipticCurve::from_integers(s.q, s.curve->a, s.curve->b); }

struct LocalShape {
  unsigned long degree = 1;
  unsigned long e = 1;
  unsigned long f = 1;
};

LocalShape local_shape(const Scenario& s) {
  if (s.kind == GroupKind::split || !s.extension) return {};
  return {s.extension->degree, s.extension->infinity.e, s.extension->infinity.f};
}

Integer order_of(const GaloisModule& m) { return validate_module(m); }

Integer fixed_count(const GaloisModule& m) { return fixed_points(m).order(); }

bool gamma_is_cyclic(const CharacterLattices& lattices) {
  unsigned long acc = 1;
  for (const auto& g : lattices.generators) {
    if (std::gcd(acc, g.order) != 1) return false;
    acc *= g.order;
  }
  return true;
}

GaloisModule local_module_used(const Scenario& s) {
  if (s.local_module_override) {
    GaloisModule m(s.local_module_override->relations, s.local_module_override->generators);
    validate_module(m);
    return m;
  }
  return natural_local_module(s);
}

struct GenusZeroInputs {
  Rational ratio;
  Integer cok_computed;
  Integer cok;
  Integer component_product = 1;
  Integer unit_index = 1;
};

Rational default_ratio(const Scenario& s) {
  if (s.class_number_ratio) return s.class_number_ratio->value;
  if (s.kind == GroupKind::split) return 1;
  if (s.kind == GroupKind::quasi_split && s.extension && s.extension->kind == ExtensionKind::constant_field) return 1;
  throw InputError("scenario needs inputs.class_number_ratio (h(T)/h(T^sc))");
}

GenusZeroInputs genus_zero_inputs(const Scenario& s, const CharacterLattices& lattices) {
  GenusZeroInputs in;
  in.ratio = default_ratio(s);
  in.cok_computed = invariant_index(lattices);
  in.cok = s.cok_pi_K ? *s.cok_pi_K : in.cok_computed;
  if (s.kind == GroupKind::ono) {
    const auto& ext = *s.extension;
    in.component_product = norm_torus_component_index(ext.infinity.e);
    for (const auto& p : ext.ramified_places) in.component_product *= norm_torus_component_index(p.e);
    in.unit_index = count_roots_of_unity(s.q, ext.degree / ext.constant_degree);
  }
  return in;
}

Integer h_from(const GenusZeroInputs& in, const Integer& t) {
  Rational h = in.ratio * Rational(in.cok * in.component_product) / Rational(t * in.unit_index);
  h.canonicalize();
  if (h.get_den() != 1) {
    throw ConsistencyError("class number formula gives the non-integral value h_infty = " + str(h) +
                           " (ratio " + str(in.ratio) + ", cok " + str(in.cok) + ", component product " +
                           str(in.component_product) + ", t_infty " + str(t) + ", unit index " + str(in.unit_index) + ")");
  }
  return h.get_num();
}

ConsistencyFlag compare(const std::string& name, const Rational& a, const Rational& b, const std::string& what_a,
                        const std::string& what_b, FlagStatus on_mismatch = FlagStatus::fail) {
  ConsistencyFlag f{name, a == b ? FlagStatus::pass : on_mismatch, ""};
  f.detail = what_a + " = " + str(a) + ", " + what_b + " = " + str(b);
  return f;
}

ConsistencyFlag skipped(const std::string& name, const std::string& why) { return {name, FlagStatus::skipped, why}; }

// |(dual M)_{inertia}^{frobenius}|, which equals |M^D| by duality and the
// Herbrand quotient of a finite module.
Integer inertia_route(const GaloisModule& local) {
  const GaloisModule dual = dual_module(local);
  std::vector<std::size_t> inertia;
  for (std::size_t i = 0; i < dual.generators().size(); ++i)
    if (dual.generators()[i].label == "inertia") inertia.push_back(i);
  return fixed_count(coinvariants(dual, inertia));
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::split: return "split";
    case GroupKind::quasi_split: return "quasi-split";
    default: return "ono";
  }
}

GroupKind parse_group_kind(const std::string& text) {
  for (auto k : {GroupKind::split, GroupKind::quasi_split, GroupKind::ono})
    if (to_string(k) == text) return k;
  throw InputError("unknown group kind '" + text + "' (expected split, quasi-split or ono)");
}

std::string to_string(FlagStatus status) {
  switch (status) {
    case FlagStatus::pass: return "pass";
    case FlagStatus::fail: return "fail";
    case FlagStatus::warn: return "warn";
    default: return "skipped";
  }
}

bool TamagawaReport::consistent(bool strict) const {
  return std::none_of(flags.begin(), flags.end(), [&](const ConsistencyFlag& f) {
    return f.status == FlagStatus::fail || (strict && f.status == FlagStatus::warn);
  });
}

const ConsistencyFlag* TamagawaReport::flag(const std::string& name) const {
  for (const auto& f : flags)
    if (f.name == name) return &f;
  return nullptr;
}

void validate_scenario(const Scenario& s) {
  const auto pp = prime_power_decomposition(s.q);
  if (s.extension) validate_extension(*s.extension, s.q);
  switch (s.kind) {
    case GroupKind::split:
      if (s.twist_order != 1) throw InputError("a split group has no diagram twist");
      validate_root_datum(root_datum(s));
      break;
    case GroupKind::quasi_split:
      if (is_elliptic(s)) throw UnsupportedRegime("quasi-split groups are only supported in genus 0");
      if (!s.extension) throw InputError("a quasi-split group needs the splitting extension");
      if (s.twist_order < 2) throw InputError("a quasi-split scenario needs a diagram twist of order >= 2");
      if (s.extension->degree % s.twist_order != 0) {
        throw InputError("the twist order must divide the extension degree");
      }
      if (s.lattice == "intermediate") {
        throw UnsupportedRegime("non-split intermediate isogeny types are not supported");
      }
      validate_root_datum(root_datum(s));
      break;
    case GroupKind::ono:
      if (is_elliptic(s)) throw UnsupportedRegime("the norm-one construction is only supported in genus 0");
      if (!s.extension) throw InputError("the norm-one construction needs the extension L/K");
      if (s.n < 2) throw InputError("n must be at least 2");
      if (std::gcd(s.n, pp.p) != 1) throw InputError("wild case: the characteristic divides n");
      break;
  }
  if (is_elliptic(s)) {
    if (s.kind != GroupKind::split || s.type.family != 'A' || s.lattice != "adjoint") {
      throw UnsupportedRegime(
          "genus > 0 is only supported for split PGL_n; the general formula j_infty = |H^1_et(O_infty, F)| / "
          "|F(O_infty)| is not implemented");
    }
    if (std::gcd(pgl_rank(s), pp.p) != 1) throw InputError("wild case: the characteristic divides n");
    make_curve(s);
  }
  if (s.class_number_ratio && s.class_number_ratio->value <= 0) throw InputError("class_number_ratio must be positive");
  if (s.cok_pi_K && *s.cok_pi_K <= 0) throw InputError("cok_pi_K must be positive");
  if (s.local_module_override) local_module_used(s);
  const Integer order = order_of(global_module(s));
  if (order % pp.p == 0) throw InputError("the characteristic divides |F| = " + str(order));
}

CharacterLattices global_lattices(const Scenario& s) {
  switch (s.kind) {
    case GroupKind::split: return root_datum_lattices(root_datum(s), {});
    case GroupKind::quasi_split: return root_datum_lattices(root_datum(s), {{"sigma", s.extension->degree, 1}});
    default: return norm_one_lattices(s.n, s.extension->degree);
  }
}

GaloisModule global_module(const Scenario& s) { return quotient_module(global_lattices(s)); }

GaloisModule natural_local_module(const Scenario& s) {
  const LocalShape shape = local_shape(s);
  const unsigned long ef = shape.e * shape.f;
  const unsigned long frob_power = shape.degree / ef;
  const unsigned long inertia_power = shape.degree / shape.e;
  if (s.kind == GroupKind::ono) {
    const IntMatrix sigma = cyclic_shift(shape.degree);
    CharacterLattices lattices = norm_one_lattices(s.n, shape.degree);
    lattices.generators = {{"frobenius", ef, matrix_power(sigma, frob_power)},
                           {"inertia", shape.e, matrix_power(sigma, inertia_power)}};
    return quotient_module(lattices);
  }
  return center_dual_module(root_datum(s), {{"frobenius", ef, frob_power % shape.degree},
                                            {"inertia", shape.e, inertia_power % shape.degree}});
}

Integer compute_t_infty(const Scenario& s) {
  validate_scenario(s);
  return fixed_count(local_module_used(s));
}

Rational compute_j_infty(const Scenario& s) {
  validate_scenario(s);
  if (!is_elliptic(s)) return 1;
  return Rational(static_cast<unsigned long>(make_curve(s).torsion_count(pgl_rank(s))));
}

Integer compute_h_infty(const Scenario& s) {
  validate_scenario(s);
  if (is_elliptic(s)) return static_cast<unsigned long>(make_curve(s).torsion_count(pgl_rank(s)));
  return h_from(genus_zero_inputs(s, global_lattices(s)), fixed_count(local_module_used(s)));
}

Rational ono_tau(const Scenario& s, const CohomologyOptions& options) {
  validate_scenario(s);
  const GaloisModule m = global_module(s);
  return Rational(fixed_count(m)) / Rational(sha1(m, options).order());
}

TamagawaReport compute_tau(const Scenario& s, const EngineOptions& options) {
  validate_scenario(s);
  TamagawaReport r;
  const CharacterLattices lattices = global_lattices(s);
  const GaloisModule global = quotient_module(lattices);
  const GaloisModule natural = natural_local_module(s);
  const GaloisModule local = local_module_used(s);

  r.module_order = order_of(global);
  r.local_fixed_points_natural = fixed_count(natural);
  r.t_infty = fixed_count(local);
  r.global_fixed_points = fixed_count(global);
  r.sha1_order = sha1(global, options.cohomology).order();
  r.ono_tau = Rational(r.global_fixed_points) / Rational(r.sha1_order);
  r.cok_pi_K_computed = invariant_index(lattices);
  r.cok_pi_K = s.cok_pi_K ? *s.cok_pi_K : r.cok_pi_K_computed;

  if (is_elliptic(s)) {
    const EllipticCurve curve = make_curve(s);
    const auto torsion = curve.torsion_count(pgl_rank(s));
    r.curve_points = curve.point_count();
    r.component_index_product = 1;
    r.unit_index = 1;
    r.h_infty = static_cast<unsigned long>(torsion);
    r.j_infty = Rational(static_cast<unsigned long>(torsion));
  } else {
    const GenusZeroInputs in = genus_zero_inputs(s, lattices);
    r.class_number_ratio = in.ratio;
    r.component_index_product = in.component_product;
    r.unit_index = in.unit_index;
    r.j_infty = 1;
    r.h_infty = h_from(in, r.t_infty);
    r.bd_tau = Rational(in.cok * in.component_product) * in.ratio / Rational(in.unit_index);
  }
  r.tau = Rational(r.h_infty * r.t_infty) / r.j_infty;
  r.tau.canonicalize();

  const bool cyclic = gamma_is_cyclic(lattices);
  if (cyclic) r.h1_character_lattice = sublattice_h1(lattices).order();

  auto& flags = r.flags;
  {
    Rational product = Rational(r.h_infty * r.t_infty) / r.j_infty;
    product.canonicalize();
    flags.push_back(compare("main_theorem_identity", r.tau, product, "tau", "h_infty * t_infty / j_infty"));
  }
  flags.push_back(compare("ono_agreement", r.tau, r.ono_tau, "tau", "|F^Gamma| / |Sha^1|"));
  if (r.bd_tau) flags.push_back(compare("bd_route", *r.bd_tau, r.tau, "cok * ratio * prod / unit index", "tau"));
  else flags.push_back(skipped("bd_route", "genus 0 only"));
  if (r.h1_character_lattice) {
    flags.push_back(compare("cok_identity", Rational(r.cok_pi_K_computed * *r.h1_character_lattice),
                            Rational(r.global_fixed_points), "|cok| * |H^1(Gamma, X*(T))|", "|F^Gamma|"));
  } else {
    flags.push_back(skipped("cok_identity", "Gamma is not cyclic"));
  }
  if (s.cok_pi_K) {
    flags.push_back(compare("cok_input", Rational(*s.cok_pi_K), Rational(r.cok_pi_K_computed), "supplied cok",
                            "lattice cok", FlagStatus::warn));
  } else {
    flags.push_back(skipped("cok_input", "computed from the character lattices"));
  }
  flags.push_back(compare("inertia_route", Rational(inertia_route(local)), Rational(r.t_infty),
                          "|(dual F^_infty)_I^Frob|", "t_infty"));
  if (s.local_module_override) {
    auto f = compare("local_model", Rational(r.local_fixed_points_natural), Rational(r.t_infty),
                     "natural local fixed points", "override t_infty", FlagStatus::warn);
    flags.push_back(f);
  } else {
    flags.push_back(skipped("local_model", "no local module override"));
  }
  if (cyclic) {
    flags.push_back(compare("sha1_cyclic", Rational(r.sha1_order), 1, "|Sha^1|", "1"));
  } else {
    flags.push_back(skipped("sha1_cyclic", "Gamma is not cyclic"));
  }
  if (is_elliptic(s)) {
    flags.push_back(compare("elliptic_h_equals_j", Rational(r.h_infty), r.j_infty, "h_infty", "j_infty"));
  } else {
    flags.push_back(skipped("elliptic_h_equals_j", "genus 0"));
  }

  if (options.oracle) {
    const std::uint64_t budget = options.cohomology.budget;
    auto guarded = [&](const std::string& name, auto&& body) {
      try {
        flags.push_back(body());
      } catch (const ResourceError& e) {
        flags.push_back(skipped(name, std::string("over budget: ") + e.what()));
      }
    };
    guarded("oracle_global_fixed_points", [&] {
      return compare("oracle_global_fixed_points", Rational(enumerate_fixed_points(global, budget)),
                     Rational(r.global_fixed_points), "enumerated", "lattice");
    });
    guarded("oracle_local_fixed_points", [&] {
      return compare("oracle_local_fixed_points", Rational(enumerate_fixed_points(local, budget)), Rational(r.t_infty),
                     "enumerated", "lattice");
    });
    guarded("oracle_sha1", [&] {
      CohomologyOptions full = options.cohomology;
      full.cyclic_shortcut = false;
      return compare("oracle_sha1", Rational(sha1(global, full).order()), Rational(r.sha1_order), "enumerated",
                     "reported");
    });
  }
  return r;
}

std::vector<ConsistencyFlag> consistency_chain(const Scenario& s, const EngineOptions& options) {
  return compute_tau(s, options).flags;
}

}  // namespace tamagawa
