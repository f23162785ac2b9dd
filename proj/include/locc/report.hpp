#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "locc/protocols.hpp"

namespace locc {

// ---------------------------------------------------------------- JSON

/// Report fields in fixed order, followed by "metrics".
nlohmann::ordered_json to_json(const ProtocolReport& report);
std::string dump_report(const ProtocolReport& report);

nlohmann::ordered_json to_json(const Event& event);
nlohmann::ordered_json transcript_json(const std::vector<Event>& events);

nlohmann::ordered_json to_json(const BlockPartition& partition);
BlockPartition partition_from_json(const nlohmann::json& doc, std::size_t universe = 0);
nlohmann::ordered_json to_json(const Codebook& codebook);

/// The field names every serialized report carries.
const std::vector<std::string>& report_fields();

// ---------------------------------------------------------------- config

struct RunConfig {
  std::string protocol;
  nlohmann::json params = nlohmann::json::object();
  RunOptions options;
  /// Typicality window as written; absent means the protocol default.
  std::optional<double> delta;
  std::optional<std::string> output;
  std::optional<std::string> curve_csv;
  std::optional<std::string> transcript;
  /// Source text, kept for line-precise errors during later validation.
  std::string text;
};

/// Throws ConfigError carrying the line of the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

const std::vector<std::string>& protocol_names();

/// Builds the protocol inputs from `config.params` and runs it.
ProtocolReport run(const RunConfig& config);

/// Invariant checks applied to every CLI run; empty when all hold.
std::vector<std::string> check_invariants(const ProtocolReport& report);

// ---------------------------------------------------------------- sweeps

struct CostRow {
  std::string value;
  bool failed = false;
  std::string error;
  std::size_t signals = 1;
  double entropy = 0.0;
  double baseline = 0.0;
  double formula = 0.0;
  double accounting = 0.0;
  double measured = 0.0;
  double measured_exact = 0.0;
  double bits_exact = 0.0;
  std::size_t bits_ceiling = 0;
  double ebits = 0.0;
  double fidelity = 0.0;

  /// Per-signal figures.
  double saving() const { return baseline - measured; }
  double formula_saving() const { return baseline - formula; }
};

struct CostTable {
  std::string protocol;
  std::string param;
  std::vector<CostRow> rows;

  /// `param,bits_exact,bits_ceiling,ebits,fidelity`
  std::string csv() const;
  std::string text() const;
};

CostRow cost_row(const ProtocolReport& report, std::string value);

/// Reruns `base` once per grid value with `param` replaced. `param` names a
/// protocol parameter, or one of delta, seed, runs.
CostTable sweep(const RunConfig& base, const std::string& param, const std::vector<std::string>& grid);

}  // namespace locc
