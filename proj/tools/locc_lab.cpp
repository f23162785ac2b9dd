// locc-lab: run protocols from JSON configs, sweep parameters, print closed-form costs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "locc/errors.hpp"
#include "locc/formulas.hpp"
#include "locc/report.hpp"

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw locc::Error("cannot write '" + path + "'");
  out << body;
}

std::vector<std::string> split_grid(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& out_path) {
  auto config = locc::load_config(config_path);
  if (seed) config.options.seed = *seed;
  if (out_path) config.output = *out_path;
  const auto report = locc::run(config);
  const std::string body = locc::dump_report(report);
  if (config.output) {
    write_file(*config.output, body);
    std::cerr << "wrote " << *config.output << '\n';
  } else {
    std::cout << body;
  }
  if (config.transcript) write_file(*config.transcript, locc::transcript_json(report.transcript).dump(2) + "\n");
  const auto failures = locc::check_invariants(report);
  for (const auto& f : failures) std::cerr << "invariant failed: " << f << '\n';
  return failures.empty() ? 0 : 3;
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& grid,
              const std::optional<std::string>& out_path) {
  const auto config = locc::load_config(config_path);
  const auto table = locc::sweep(config, param, split_grid(grid));
  std::cout << table.text();
  const auto csv_path = out_path ? out_path : config.curve_csv;
  if (csv_path) {
    write_file(*csv_path, table.csv());
    std::cerr << "wrote " << *csv_path << '\n';
  } else {
    std::cout << '\n' << table.csv();
  }
  for (const auto& row : table.rows)
    if (row.failed) return 3;
  return 0;
}

int cmd_formulas(const std::string& protocol, const std::string& params_text) {
  nlohmann::json params;
  try {
    params = nlohmann::json::parse(params_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw locc::ConfigError(std::string("--params is not valid JSON: ") + e.what(), 1);
  }
  const auto value = locc::formula(protocol, params);
  nlohmann::ordered_json out;
  out["protocol"] = protocol;
  out["params"] = nlohmann::ordered_json(params);
  out["formula_bits"] = value.bits;
  out["formula_ref"] = value.ref;
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-party LOCC protocol simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  auto* run = app.add_subcommand("run", "Run one protocol configuration and emit its report");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_path, "Report output path (default: stdout)");

  std::string param;
  std::string grid;
  auto* sweep = app.add_subcommand("sweep", "Rerun a config over a parameter grid");
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--param", param, "Parameter to vary")->required();
  sweep->add_option("--grid", grid, "Comma-separated values")->required();
  sweep->add_option("--out", out_path, "CSV output path (default: config curve_csv, else stdout)");

  std::string protocol;
  std::string params_text = "{}";
  auto* formulas = app.add_subcommand("formulas", "Print the closed-form classical cost");
  formulas->add_option("--protocol", protocol, "Protocol name")->required();
  formulas->add_option("--params", params_text, "Inline JSON parameters");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config_path, seed, out_path);
    if (*sweep) return cmd_sweep(config_path, param, grid, out_path);
    if (*formulas) return cmd_formulas(protocol, params_text);
  } catch (const locc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
