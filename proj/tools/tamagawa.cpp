#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tamagawa/engine.hpp"
#include "tamagawa/errors.hpp"
#include "tamagawa/grporders.hpp"
#include "tamagawa/rootdata.hpp"
#include "tamagawa/scenario_io.hpp"

using namespace tamagawa;

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kConsistency = 3, kResource = 4 };

struct Outcome {
  int code = kOk;
  std::string output;
  std::string error;
};

Scenario resolve(const std::string& target) {
  const std::string prefix = "example:";
  if (target.rfind(prefix, 0) == 0) return find_builtin(target.substr(prefix.size()));
  return load_scenario_file(target);
}

Outcome run_one(const std::string& target, bool strict, const EngineOptions& options, bool text) {
  Outcome out;
  try {
    const Scenario s = resolve(target);
    const TamagawaReport r = compute_tau(s, options);
    out.output = text ? report_to_text(s, r) : report_to_json(s, r).dump(2);
    if (!r.consistent(strict)) {
      out.code = kConsistency;
      for (const auto& f : r.flags) {
        if (f.status == FlagStatus::fail || (strict && f.status == FlagStatus::warn))
          out.error += target + ": consistency " + to_string(f.status) + " in " + f.name + ": " + f.detail + "\n";
      }
    }
  } catch (const ConsistencyError& e) {
    out.code = kConsistency;
    out.error = target + ": " + e.what() + "\n";
  } catch (const ResourceError& e) {
    out.code = kResource;
    out.error = target + ": resource budget exceeded: " + e.what() + "\n";
  } catch (const InputError& e) {
    out.code = kInputError;
    out.error = target + ": invalid input: " + e.what() + "\n";
  }
  return out;
}

int cmd_run(const std::vector<std::string>& targets, bool strict, bool oracle, const std::string& format,
            std::uint64_t budget, bool enumerate_sha) {
  EngineOptions options;
  options.oracle = oracle;
  options.cohomology.budget = budget;
  options.cohomology.cyclic_shortcut = !enumerate_sha;
  const bool text = format == "text";
  std::vector<std::future<Outcome>> jobs;
  for (const auto& t : targets) jobs.push_back(std::async(std::launch::async, run_one, t, strict, options, text));
  std::vector<Outcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());

  int code = kOk;
  if (!text && outcomes.size() > 1) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& o : outcomes)
      if (!o.output.empty()) all.push_back(nlohmann::json::parse(o.output));
    std::cout << all.dump(2) << "\n";
  }
  for (const auto& o : outcomes) {
    if (!o.output.empty() && (text || outcomes.size() == 1)) std::cout << o.output << (text ? "" : "\n");
    std::cerr << o.error;
    if (code == kOk) code = o.code;
  }
  return code;
}

int cmd_list() {
  for (const auto& s : builtin_scenarios()) std::cout << s.name << "\t" << s.description << "\n";
  return kOk;
}

int cmd_describe(const std::string& name, const std::string& format) {
  const Scenario& s = find_builtin(name);
  if (format == "json") std::cout << scenario_to_json(s).dump(2) << "\n";
  else std::cout << scenario_to_text(s);
  return kOk;
}

int cmd_rootdata(const std::string& type_text, unsigned long q, const std::string& twist) {
  const CartanType type = parse_cartan_type(type_text);
  std::cout << "type: " << type.to_string() << "\n";
  std::cout << "cartan matrix: " << cartan_matrix(type) << "\n";
  std::cout << "fundamental group: " << fundamental_group(type) << "\n";
  std::cout << "degrees:";
  for (unsigned d : fundamental_degrees(type)) std::cout << " " << d;
  std::cout << "\npositive roots: " << positive_root_count(type) << "\n";
  std::cout << "dimension: " << group_dimension(type) << "\n";
  std::cout << "|W|: " << weyl_group_order(type) << "\n";
  if (q != 0) {
    const GroupOrderSpec spec{type, "sc", parse_twist(twist), q};
    std::cout << "|G(F_" << q << ")| (" << twist << "): " << reductive_group_order(spec) << "\n";
    std::cout << "parahoric volume: " << parahoric_volume(spec) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative Tamagawa numbers of quasi-split groups over global function fields"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Evaluate scenarios (files or example:NAME)");
  std::vector<std::string> targets;
  bool strict = false;
  bool oracle = false;
  std::string format = "json";
  std::uint64_t budget = 10'000'000;
  run->add_option("targets", targets, "Scenario files or example:NAME")->required();
  run->add_flag("--strict", strict, "Treat consistency warnings as failures");
  run->add_flag("--oracle", oracle, "Also run brute-force enumeration oracles");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  bool enumerate_sha = false;
  run->add_option("--budget", budget, "Enumeration budget for cohomology and oracles");
  run->add_flag("--enumerate-sha", enumerate_sha, "Compute Sha^1 by cocycle enumeration even for cyclic Gamma");

  auto* list = app.add_subcommand("list", "List built-in scenarios");
  auto* describe = app.add_subcommand("describe", "Print a built-in scenario as JSON");
  std::string name;
  std::string describe_format = "text";
  describe->add_option("name", name, "Built-in scenario name")->required();
  describe->add_option("--format", describe_format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* rootdata = app.add_subcommand("rootdata", "Print root datum tables for a type such as A3");
  std::string type;
  unsigned long q = 0;
  std::string twist = "split";
  rootdata->add_option("type", type, "Type and rank, e.g. E6")->required();
  rootdata->add_option("--q", q, "Field size for |G(F_q)|");
  rootdata->add_option("--twist", twist, "split, 2A, 2D, 3D4 or 2E6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*run) return cmd_run(targets, strict, oracle, format, budget, enumerate_sha);
    if (*list) return cmd_list();
    if (*describe) return cmd_describe(name, describe_format);
    if (*rootdata) return cmd_rootdata(type, q, twist);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  }
  return kOk;
}
