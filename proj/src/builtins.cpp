#include <string>

#include "tamagawa/errors.hpp"
#include "tamagawa/scenario_io.hpp"

namespace tamagawa {

namespace {

Scenario quadratic_constant(unsigned long q, const std::string& name) {
  Scenario s;
  s.name = name;
  s.description = "F = R^(1)(mu_2) for L = F_{q^2}(t) over F_" + std::to_string(q) + "(t); infinity inert";
  s.q = q;
  s.kind = GroupKind::ono;
  s.n = 2;
  s.extension = FieldExtensionSpec{ExtensionKind::constant_field, 2, 2, {}, {1, 2}};
  s.class_number_ratio = ClassNumberRatio{2, "imported: L/K imaginary and totally unramified gives h(T)/h(T^sc) = 2"};
  return s;
}

Scenario quadratic_ramified(unsigned m) {
  Scenario s;
  s.name = "quadratic-ramified-m" + std::to_string(m);
  s.description = "F = R^(1)(mu_2) for L = K(sqrt(d)), d a product of " + std::to_string(m) +
                  " primes, over F_3(t); infinity ramified";
  s.q = 3;
  s.kind = GroupKind::ono;
  s.n = 2;
  FieldExtensionSpec ext{ExtensionKind::kummer_quadratic, 2, 1, {}, {2, 1}};
  for (unsigned i = 1; i <= m; ++i) ext.ramified_places.push_back({"p" + std::to_string(i), 2});
  s.extension = ext;
  Rational ratio(1);
  for (unsigned i = 1; i < m; ++i) ratio /= 2;
  s.class_number_ratio = ClassNumberRatio{ratio, "imported: h(T^sc)/h(T) = 2^(m-1) for m ramified finite primes"};
  return s;
}

Scenario cyclotomic(unsigned d) {
  const unsigned long q = 3;
  unsigned long n = 1;
  for (unsigned i = 0; i < d; ++i) n *= q;
  n -= 1;
  Scenario s;
  s.name = "cyclotomic-q3-d" + std::to_string(d);
  s.description = "F = R^(1)(mu_n) for the Carlitz f-cyclotomic extension, deg f = " + std::to_string(d) +
                  ", q = 3, n = " + std::to_string(n);
  s.q = q;
  s.kind = GroupKind::ono;
  s.n = n;
  s.extension = FieldExtensionSpec{ExtensionKind::carlitz_cyclotomic, n, 1, {{"f", n}}, {q - 1, 1}};
  s.class_number_ratio = ClassNumberRatio{1, "imported: h(T)/h(T^sc) = 1 for the cyclotomic extension"};
  if (d > 1) {
    // mu_n with trivial local action; the natural restriction of the shift module has more fixed points.
    LocalModuleOverride o;
    o.relations = IntMatrix{{static_cast<long>(n)}};
    o.generators = {{"frobenius", q - 1, IntMatrix{{1}}}, {"inertia", q - 1, IntMatrix{{1}}}};
    s.local_module_override = o;
  }
  return s;
}

// q = 3 unless the characteristic would divide |F| = rank + 1.
unsigned long tame_field(unsigned rank) { return (rank + 1) % 3 == 0 ? 5 : 3; }

Scenario split_adjoint(unsigned rank) {
  Scenario s;
  s.q = tame_field(rank);
  s.name = "split-a" + std::to_string(rank);
  s.description = "split PGL_" + std::to_string(rank + 1) + " over F_" + std::to_string(s.q) + "(t)";
  s.kind = GroupKind::split;
  s.type = {'A', rank};
  s.lattice = "adjoint";
  return s;
}

Scenario outer_adjoint(unsigned rank) {
  Scenario s;
  s.q = tame_field(rank);
  s.name = "outer-a" + std::to_string(rank) + "-adjoint";
  s.description = "quasi-split adjoint 2A_" + std::to_string(rank) + " split by F_" + std::to_string(s.q * s.q) +
                  "(t) over F_" + std::to_string(s.q) + "(t)";
  s.kind = GroupKind::quasi_split;
  s.type = {'A', rank};
  s.lattice = "adjoint";
  s.twist_order = 2;
  s.extension = FieldExtensionSpec{ExtensionKind::constant_field, 2, 2, {}, {1, 2}};
  return s;
}

Scenario elliptic(const std::string& name, unsigned rank, long a, long b) {
  Scenario s;
  s.name = name;
  s.description = "split PGL_" + std::to_string(rank + 1) + " over the function field of y^2 = x^3 + (" +
                  std::to_string(a) + ")x + (" + std::to_string(b) + ") over F_5";
  s.q = 5;
  s.curve = CurveSpec{a, b};
  s.kind = GroupKind::split;
  s.type = {'A', rank};
  s.lattice = "adjoint";
  return s;
}

std::vector<Scenario> make_catalogue() {
  std::vector<Scenario> out;
  out.push_back(quadratic_constant(3, "quadratic-constant"));
  out.push_back(quadratic_constant(5, "quadratic-constant-q5"));
  out.push_back(quadratic_constant(9, "quadratic-constant-q9"));
  for (unsigned m = 1; m <= 3; ++m) out.push_back(quadratic_ramified(m));
  out.push_back(cyclotomic(1));
  out.push_back(cyclotomic(2));
  for (unsigned r = 1; r <= 4; ++r) out.push_back(split_adjoint(r));
  out.push_back(outer_adjoint(2));
  out.push_back(outer_adjoint(3));
  out.push_back(elliptic("pgl2-elliptic-f5", 1, -1, 0));
  out.push_back(elliptic("pgl3-elliptic-f5-cubic", 2, 0, 1));
  out.push_back(elliptic("pgl3-elliptic-f5-coprime", 2, -1, 0));
  return out;
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> catalogue = make_catalogue();
  return catalogue;
}

const Scenario& find_builtin(const std::string& name) {
  for (const auto& s : builtin_scenarios())
    if (s.name == name) return s;
  throw InputError("unknown built-in scenario '" + name + "' (see 'tamagawa list')");
}

}  // namespace tamagawa
