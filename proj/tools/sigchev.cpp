// sigchev: run .sigma scenarios and the embedded builtins.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sigchev/cli.hpp"

using namespace sigchev;

namespace {

int run(const std::string& file, const std::string& builtin_name, const std::string& json_out, cli::RunOptions opt) {
  cli::Scenario scenario;
  try {
    std::string text;
    if (!builtin_name.empty()) {
      text = cli::builtin(builtin_name).text;
      opt.name = builtin_name;
    } else {
      std::ifstream in(file);
      if (!in) {
        std::cerr << "sigchev: cannot read " << file << "\n";
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
      opt.name = file;
    }
    scenario = cli::parse_scenario(text);
  } catch (const SigmaError& e) {
    std::cerr << "sigchev: " << e.what() << "\n";
    return 2;
  }

  const auto result = cli::run_scenario(scenario, opt);
  const auto& report = result.report;
  for (const auto& c : report["commands"]) {
    std::cout << (c["status"] == "ok" ? "[ok]    " : "[error] ") << c["op"].get<std::string>();
    for (const auto& a : c["args"]) std::cout << " " << a.get<std::string>();
    std::cout << "\n";
    if (c["status"] == "error") std::cout << "        " << c["error"]["message"].get<std::string>() << "\n";
    for (const auto& x : c["expectations"])
      if (!x["passed"].get<bool>())
        std::cout << "        expect " << x["path"].get<std::string>() << " = " << x["expected"].dump()
                  << ", got " << x["actual"].dump() << "\n";
  }
  const auto& s = report["summary"];
  std::cout << s["commands"] << " commands, " << s["errors"] << " errors, " << s["expectations"] << " expectations, "
            << s["failed_expectations"] << " failed\n";

  if (!json_out.empty()) {
    const std::string text = report.dump(2) + "\n";
    if (json_out == "-") {
      std::cout << text;
    } else {
      std::ofstream out(json_out);
      if (!out) {
        std::cerr << "sigchev: cannot write " << json_out << "\n";
        return 3;
      }
      out << text;
    }
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact difference-algebra scenarios"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a scenario file or a builtin");
  std::string file, builtin_name, json_out;
  bool assert_mode = false;
  unsigned max_power = 0, bound = 0;
  std::uint64_t seed = 1;
  run_cmd->add_option("file", file, "Scenario file (.sigma)");
  run_cmd->add_option("--builtin", builtin_name, "Builtin scenario name");
  run_cmd->add_flag("--assert", assert_mode, "Fail (exit 1) on mismatched expectations");
  run_cmd->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");
  run_cmd->add_option("--max-power", max_power, "Default l_max for lift, witness and pv")->check(CLI::PositiveNumber);
  run_cmd->add_option("--bound", bound, "Default search bound")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", seed, "Seed for sampled property checks");

  auto* list_cmd = app.add_subcommand("list", "List builtin scenarios");

  auto* render_cmd = app.add_subcommand("render", "Print the canonical form of a scenario");
  std::string render_file;
  render_cmd->add_option("file", render_file, "Scenario file")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a JSON report against schema v1");
  std::string report_file;
  validate_cmd->add_option("file", report_file, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*list_cmd) {
    for (const auto& b : cli::builtins()) std::cout << b.name << "  " << b.description << "\n";
    return 0;
  }
  if (*render_cmd) {
    std::ifstream in(render_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      std::cout << cli::render_scenario(cli::parse_scenario(ss.str()));
    } catch (const SigmaError& e) {
      std::cerr << "sigchev: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }
  if (*validate_cmd) {
    std::ifstream in(report_file);
    const auto j = cli::Json::parse(in, nullptr, false);
    const std::string problem = j.is_discarded() ? "not JSON" : cli::validate_report(j);
    if (!problem.empty()) {
      std::cerr << "sigchev: " << problem << "\n";
      return 2;
    }
    std::cout << "valid\n";
    return 0;
  }

  if (file.empty() == builtin_name.empty()) {
    std::cerr << "sigchev: give exactly one of a scenario file or --builtin\n";
    return 2;
  }
  cli::RunOptions opt;
  opt.assert_mode = assert_mode;
  if (max_power) opt.max_power = max_power;
  if (bound) opt.bound = bound;
  opt.seed = seed;
  return run(file, builtin_name, json_out, opt);
}
