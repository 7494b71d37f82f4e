#include "tamagawa/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tamagawa/errors.hpp"

namespace tamagawa {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError((path_.empty() ? "/" : path_) + ": " + message);
  }

  const json& value() const { return value_; }
  const std::string& path() const { return path_; }

  void expect_object(const std::set<std::string>& allowed) const {
    if (!value_.is_object()) fail("expected an object");
    for (const auto& [key, _] : value_.items())
      if (!allowed.count(key)) Reader(value_[key], child_path(key)).fail("unknown key");
  }

  bool has(const std::string& key) const { return value_.contains(key) && !value_[key].is_null(); }

  Reader at(const std::string& key) const {
    if (!value_.contains(key)) Reader(value_, child_path(key)).fail("missing required key");
    return Reader(value_[key], child_path(key));
  }

  Reader index(std::size_t i) const { return Reader(value_[i], path_ + "/" + std::to_string(i)); }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  Integer integer() const {
    if (value_.is_number_integer()) return Integer(value_.dump());
    if (value_.is_string()) {
      const std::string text = value_.get<std::string>();
      Integer v;
      if (text.empty() || v.set_str(text, 10) != 0) fail("expected a decimal integer string");
      return v;
    }
    fail("expected an integer (number or decimal string)");
  }

  long small_integer() const {
    const Integer v = integer();
    if (!v.fits_slong_p()) fail("integer out of range");
    return v.get_si();
  }

  unsigned long positive() const {
    const Integer v = integer();
    if (v <= 0 || !v.fits_ulong_p()) fail("expected a positive integer");
    return v.get_ui();
  }

  std::size_t array_size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }

 private:
  std::string child_path(const std::string& key) const {
    std::string escaped;
    for (char c : key) {
      if (c == '~') escaped += "~0";
      else if (c == '/') escaped += "~1";
      else escaped += c;
    }
    return path_ + "/" + escaped;
  }

  const json& value_;
  std::string path_;
};

IntMatrix read_matrix(const Reader& r, std::size_t expected_rows) {
  const std::size_t rows = r.array_size();
  if (rows != expected_rows) r.fail("expected " + std::to_string(expected_rows) + " rows");
  std::size_t cols = 0;
  std::vector<std::vector<Integer>> data;
  for (std::size_t i = 0; i < rows; ++i) {
    const Reader row = r.index(i);
    const std::size_t n = row.array_size();
    if (i == 0) cols = n;
    else if (n != cols) row.fail("ragged matrix");
    std::vector<Integer> entries;
    for (std::size_t j = 0; j < n; ++j) entries.push_back(row.index(j).integer());
    data.push_back(entries);
  }
  return IntMatrix::from_rows(data, cols);
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.to_rows()) {
    json out = json::array();
    for (const auto& v : row) out.push_back(v.get_str());
    rows.push_back(out);
  }
  return rows;
}

json rational_json(const Rational& q) { return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Rational read_rational(const Reader& r, std::set<std::string> extra = {}) {
  extra.insert({"num", "den"});
  r.expect_object(extra);
  const Integer num = r.at("num").integer();
  const Integer den = r.at("den").integer();
  if (den == 0) r.at("den").fail("denominator is zero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

FieldExtensionSpec read_extension(const Reader& r) {
  r.expect_object({"kind", "degree", "constant_degree", "ramified_places", "infinity"});
  FieldExtensionSpec ext;
  try {
    ext.kind = parse_extension_kind(r.at("kind").string());
  } catch (const InputError& e) {
    r.at("kind").fail(e.what());
  }
  ext.degree = r.at("degree").positive();
  ext.constant_degree = r.has("constant_degree") ? r.at("constant_degree").positive()
                        : ext.kind == ExtensionKind::constant_field ? ext.degree
                                                                    : 1;
  if (r.has("ramified_places")) {
    const Reader places = r.at("ramified_places");
    for (std::size_t i = 0; i < places.array_size(); ++i) {
      const Reader p = places.index(i);
      p.expect_object({"label", "e"});
      ext.ramified_places.push_back({p.at("label").string(), p.at("e").positive()});
    }
  }
  const Reader inf = r.at("infinity");
  inf.expect_object({"e", "f"});
  ext.infinity = {inf.at("e").positive(), inf.at("f").positive()};
  return ext;
}

void read_group(const Reader& r, Scenario& s) {
  r.expect_object({"kind", "type", "rank", "lattice", "lattice_generators", "twist", "n"});
  try {
    s.kind = parse_group_kind(r.at("kind").string());
  } catch (const InputError& e) {
    r.at("kind").fail(e.what());
  }
  if (s.kind == GroupKind::ono) {
    for (const char* key : {"type", "rank", "lattice", "lattice_generators", "twist"})
      if (r.has(key)) r.at(key).fail("not used by the norm-one construction");
    s.n = r.at("n").positive();
    return;
  }
  if (r.has("n")) r.at("n").fail("only used by the norm-one construction");
  const std::string type = r.at("type").string();
  if (type.size() != 1) r.at("type").fail("expected a single family letter A..G");
  try {
    s.type = parse_cartan_type(type + std::to_string(r.at("rank").positive()));
  } catch (const InputError& e) {
    r.at("rank").fail(e.what());
  }
  s.lattice = r.at("lattice").string();
  if (s.lattice != "sc" && s.lattice != "adjoint" && s.lattice != "intermediate") {
    r.at("lattice").fail("expected sc, adjoint or intermediate");
  }
  if (r.has("lattice_generators")) {
    if (s.lattice != "intermediate") r.at("lattice_generators").fail("only allowed for an intermediate lattice");
    const Reader gens = r.at("lattice_generators");
    for (std::size_t i = 0; i < gens.array_size(); ++i) {
      const Reader g = gens.index(i);
      std::vector<long> v;
      for (std::size_t j = 0; j < g.array_size(); ++j) v.push_back(g.index(j).small_integer());
      if (v.size() != s.type.rank) g.fail("expected " + std::to_string(s.type.rank) + " weight coordinates");
      s.lattice_generators.push_back(v);
    }
  } else if (s.lattice == "intermediate") {
    r.fail("an intermediate lattice needs lattice_generators");
  }
  s.twist_order = r.has("twist") ? static_cast<unsigned>(r.at("twist").positive()) : 1;
}

LocalModuleOverride read_override(const Reader& r) {
  r.expect_object({"relations", "generators"});
  LocalModuleOverride o;
  const Reader rel = r.at("relations");
  const std::size_t rows = rel.array_size();
  if (rows == 0) rel.fail("expected a non-empty matrix");
  o.relations = read_matrix(rel, rows);
  const Reader gens = r.at("generators");
  for (std::size_t i = 0; i < gens.array_size(); ++i) {
    const Reader g = gens.index(i);
    g.expect_object({"label", "order", "action"});
    o.generators.push_back({g.at("label").string(), g.at("order").positive(), read_matrix(g.at("action"), rows)});
    if (o.generators.back().action.cols() != rows) g.at("action").fail("expected a square matrix");
  }
  return o;
}

void read_inputs(const Reader& r, Scenario& s) {
  r.expect_object({"class_number_ratio", "cok_pi_K", "local_module_override"});
  if (r.has("class_number_ratio")) {
    const Reader c = r.at("class_number_ratio");
    const Rational v = read_rational(c, {"provenance"});
    s.class_number_ratio = ClassNumberRatio{v, c.has("provenance") ? c.at("provenance").string() : ""};
  }
  if (r.has("cok_pi_K")) s.cok_pi_K = r.at("cok_pi_K").integer();
  if (r.has("local_module_override")) s.local_module_override = read_override(r.at("local_module_override"));
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  const Reader r(doc, "");
  r.expect_object({"name", "description", "q", "genus", "curve", "group", "extension", "inputs"});
  Scenario s;
  if (r.has("name")) s.name = r.at("name").string();
  if (r.has("description")) s.description = r.at("description").string();
  s.q = r.at("q").positive();
  if (r.has("curve")) {
    const Reader c = r.at("curve");
    c.expect_object({"a", "b"});
    s.curve = CurveSpec{c.at("a").small_integer(), c.at("b").small_integer()};
  }
  if (r.has("genus")) {
    const long g = r.at("genus").small_integer();
    if (g != 0 && g != 1) r.at("genus").fail("expected 0 or 1");
    if ((g == 1) != s.curve.has_value()) r.at("genus").fail("genus 1 requires a curve and genus 0 forbids one");
  }
  read_group(r.at("group"), s);
  if (r.has("extension")) s.extension = read_extension(r.at("extension"));
  if (r.has("inputs")) read_inputs(r.at("inputs"), s);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["description"] = s.description;
  doc["q"] = s.q;
  doc["genus"] = s.curve ? 1 : 0;
  if (s.curve) doc["curve"] = {{"a", s.curve->a}, {"b", s.curve->b}};
  json group{{"kind", to_string(s.kind)}};
  if (s.kind == GroupKind::ono) {
    group["n"] = s.n;
  } else {
    group["type"] = std::string(1, s.type.family);
    group["rank"] = s.type.rank;
    group["lattice"] = s.lattice;
    if (!s.lattice_generators.empty()) group["lattice_generators"] = s.lattice_generators;
    group["twist"] = s.twist_order;
  }
  doc["group"] = group;
  if (s.extension) {
    const auto& e = *s.extension;
    json places = json::array();
    for (const auto& p : e.ramified_places) places.push_back({{"label", p.label}, {"e", p.e}});
    doc["extension"] = {{"kind", to_string(e.kind)},
                        {"degree", e.degree},
                        {"constant_degree", e.constant_degree},
                        {"ramified_places", places},
                        {"infinity", {{"e", e.infinity.e}, {"f", e.infinity.f}}}};
  }
  json inputs = json::object();
  if (s.class_number_ratio) {
    json c = rational_json(s.class_number_ratio->value);
    c["provenance"] = s.class_number_ratio->provenance;
    inputs["class_number_ratio"] = c;
  }
  if (s.cok_pi_K) inputs["cok_pi_K"] = s.cok_pi_K->get_str();
  if (s.local_module_override) {
    json gens = json::array();
    for (const auto& g : s.local_module_override->generators)
      gens.push_back({{"label", g.label}, {"order", g.order}, {"action", matrix_json(g.action)}});
    inputs["local_module_override"] = {{"relations", matrix_json(s.local_module_override->relations)},
                                       {"generators", gens}};
  }
  if (!inputs.empty()) doc["inputs"] = inputs;
  return doc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  Scenario s = scenario_from_json(doc);
  if (s.name.empty()) s.name = path;
  return s;
}

json report_to_json(const Scenario& s, const TamagawaReport& r) {
  json out;
  out["engine_version"] = kEngineVersion;
  out["scenario"] = scenario_to_json(s);
  json v;
  v["t_infty"] = r.t_infty.get_str();
  v["j_infty"] = rational_json(r.j_infty);
  v["h_infty"] = r.h_infty.get_str();
  v["tau"] = rational_json(r.tau);
  v["ono_tau"] = rational_json(r.ono_tau);
  v["module_order"] = r.module_order.get_str();
  v["global_fixed_points"] = r.global_fixed_points.get_str();
  v["sha1_order"] = r.sha1_order.get_str();
  v["cok_pi_K"] = r.cok_pi_K.get_str();
  v["cok_pi_K_computed"] = r.cok_pi_K_computed.get_str();
  v["component_index_product"] = r.component_index_product.get_str();
  v["unit_index"] = r.unit_index.get_str();
  v["local_fixed_points_natural"] = r.local_fixed_points_natural.get_str();
  if (r.class_number_ratio) v["class_number_ratio"] = rational_json(*r.class_number_ratio);
  if (r.bd_tau) v["bd_tau"] = rational_json(*r.bd_tau);
  if (r.h1_character_lattice) v["h1_character_lattice"] = r.h1_character_lattice->get_str();
  if (r.curve_points) v["curve_points"] = std::to_string(*r.curve_points);
  out["values"] = v;
  json flags = json::array();
  for (const auto& f : r.flags) flags.push_back({{"name", f.name}, {"status", to_string(f.status)}, {"detail", f.detail}});
  out["flags"] = flags;
  return out;
}

std::string report_to_text(const Scenario& s, const TamagawaReport& r) {
  std::ostringstream os;
  os << "scenario: " << s.name << "\n";
  if (!s.description.empty()) os << "  " << s.description << "\n";
  os << "  tau      = " << r.tau << "\n"
     << "  h_infty  = " << r.h_infty << "\n"
     << "  t_infty  = " << r.t_infty << "\n"
     << "  j_infty  = " << r.j_infty << "\n"
     << "  ono tau  = " << r.ono_tau << "  (|F^Gamma| = " << r.global_fixed_points << ", |Sha^1| = " << r.sha1_order
     << ")\n"
     << "  |F^|     = " << r.module_order << "\n"
     << "  cok      = " << r.cok_pi_K << " (lattice: " << r.cok_pi_K_computed << ")\n"
     << "  prod e_p = " << r.component_index_product << ", unit index = " << r.unit_index << "\n";
  if (r.class_number_ratio) os << "  h(T)/h(T^sc) = " << *r.class_number_ratio << "\n";
  if (r.curve_points) os << "  #E(F_q) = " << *r.curve_points << "\n";
  os << "flags:\n";
  for (const auto& f : r.flags) os << "  " << to_string(f.status) << "  " << f.name << "  (" << f.detail << ")\n";
  return os.str();
}

}  // namespace tamagawa

namespace tamagawa {

std::string scenario_to_text(const Scenario& s) {
  std::ostringstream os;
  os << "scenario: " << s.name << "\n";
  if (!s.description.empty()) os << "  " << s.description << "\n";
  os << "  q = " << s.q << ", genus " << (s.curve ? 1 : 0);
  if (s.curve) os << ", curve y^2 = x^3 + (" << s.curve->a << ")x + (" << s.curve->b << ")";
  os << "\n  group: " << to_string(s.kind);
  if (s.kind == GroupKind::ono) os << ", n = " << s.n;
  else os << ", type " << s.type.to_string() << ", lattice " << s.lattice << ", twist order " << s.twist_order;
  os << "\n";
  if (s.extension) {
    const auto& e = *s.extension;
    os << "  extension: " << to_string(e.kind) << ", degree " << e.degree << ", constant degree " << e.constant_degree
       << "\n  ramification indices: [";
    for (const auto& p : e.ramified_places) os << p.e << ", ";
    os << e.infinity.e << "] (finite places, then infinity; f_infty = " << e.infinity.f << ")\n";
  }
  if (s.class_number_ratio)
    os << "  class number ratio h(T)/h(T^sc) = " << s.class_number_ratio->value << "  ["
       << s.class_number_ratio->provenance << "]\n";
  if (s.cok_pi_K) os << "  cok_pi_K = " << *s.cok_pi_K << "\n";
  if (s.local_module_override) os << "  local module override present\n";
  return os.str();
}

}  // namespace tamagawa
