#include <cmath>
#include <iomanip>
#include <sstream>

#include "locc/errors.hpp"
#include "locc/report.hpp"

namespace locc {

namespace {

double metric(const ProtocolReport& r, const char* key, double fallback) {
  return r.metrics.contains(key) && r.metrics[key].is_number() ? r.metrics[key].get<double>() : fallback;
}

std::size_t signal_count(const ProtocolReport& r) {
  for (const char* key : {"N_tot", "N"})
    if (r.params.contains(key) && r.params[key].is_number_unsigned()) return r.params[key].get<std::size_t>();
  return 1;
}

nlohmann::json grid_value(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    return text;
  }
}

}  // namespace

std::vector<std::string> check_invariants(const ProtocolReport& report) {
  std::vector<std::string> failures;
  if (!(report.fidelity_expected >= 0.0 && report.fidelity_expected <= 1.0 + 1e-9))
    failures.push_back("expected fidelity outside [0, 1]");
  for (const auto& b : report.fidelity_branches)
    if (!(b.fidelity >= 0.0 && b.fidelity <= 1.0 + 1e-9)) failures.push_back("branch fidelity outside [0, 1]");
  if (metric(report, "bits_b_to_a", 0.0) != 0.0) failures.push_back("a message travelled from Bob to Alice");
  if (report.metrics.contains("probability_covered") && report.protocol != "pauli_randomize" &&
      report.metrics.value("evaluation", "") != "path") {
    const double covered = metric(report, "probability_covered", 1.0);
    if (std::abs(covered - 1.0) > 1e-8) failures.push_back("branch probabilities do not sum to 1");
  }
  double ledger = 0.0;
  for (const auto& e : report.transcript) {
    if (e.type != EventType::Message) continue;
    ledger += *e.bits;
    if (std::abs(*e.bits - std::log2(static_cast<double>(*e.domain))) > 1e-12)
      failures.push_back("message bits differ from log2 of the domain");
  }
  if (!report.transcript.empty() && std::abs(ledger - report.cost.bits_total()) > 1e-9)
    failures.push_back("bit ledger differs from the transcript sum");
  return failures;
}

CostRow cost_row(const ProtocolReport& report, std::string value) {
  CostRow row;
  row.value = std::move(value);
  row.signals = signal_count(report);
  const double n = static_cast<double>(row.signals);
  row.entropy = metric(report, "entropy_S", 0.0);
  row.baseline = metric(report, "baseline_bits", 2.0 * n * row.entropy) / n;
  row.formula = report.formula_bits / n;
  row.accounting = metric(report, "block_accounting_per_signal", row.formula);
  row.measured = static_cast<double>(report.bits_ceiling) / n;
  row.measured_exact = report.bits_exact / n;
  row.bits_exact = report.bits_exact;
  row.bits_ceiling = report.bits_ceiling;
  row.ebits = report.ebits;
  row.fidelity = report.fidelity_expected;
  return row;
}

std::string CostTable::csv() const {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "param,bits_exact,bits_ceiling,ebits,fidelity\n";
  for (const auto& r : rows) {
    if (r.failed) {
      os << r.value << ",nan,nan,nan,nan\n";
      continue;
    }
    os << r.value << ',' << r.bits_exact << ',' << r.bits_ceiling << ',' << r.ebits << ',' << r.fidelity << '\n';
  }
  return os.str();
}

std::string CostTable::text() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << protocol << " over " << param << " (per signal; saving = baseline - measured ceiling)\n";
  os << std::setw(10) << param << std::setw(9) << "S" << std::setw(10) << "baseline" << std::setw(10) << "formula"
     << std::setw(12) << "accounting" << std::setw(10) << "measured" << std::setw(10) << "exact" << std::setw(10)
     << "saving" << std::setw(12) << "f_saving" << std::setw(10) << "fidelity" << '\n';
  for (const auto& r : rows) {
    os << std::setw(10) << r.value;
    if (r.failed) {
      os << "  failed: " << r.error << '\n';
      continue;
    }
    os << std::setw(9) << r.entropy << std::setw(10) << r.baseline << std::setw(10) << r.formula << std::setw(12)
       << r.accounting << std::setw(10) << r.measured << std::setw(10) << r.measured_exact << std::setw(10)
       << r.saving() << std::setw(12) << r.formula_saving() << std::setw(10) << r.fidelity << '\n';
  }
  return os.str();
}

CostTable sweep(const RunConfig& base, const std::string& param, const std::vector<std::string>& grid) {
  if (grid.empty()) throw DomainError("sweep grid is empty");
  CostTable table{base.protocol, param, {}};
  for (const auto& value : grid) {
    RunConfig config = base;
    const auto v = grid_value(value);
    try {
      if (param == "delta") {
        if (!v.is_number()) throw DomainError("delta grid values must be numbers");
        config.delta = v.get<double>();
        config.options.mode.delta = *config.delta;
      } else if (param == "seed") {
        if (!v.is_number_unsigned()) throw DomainError("seed grid values must be nonnegative integers");
        config.options.seed = v.get<std::uint64_t>();
      } else if (param == "runs") {
        if (!v.is_number_unsigned()) throw DomainError("runs grid values must be positive integers");
        config.options.evaluation.runs = v.get<std::size_t>();
      } else {
        config.params[param] = v;
      }
      table.rows.push_back(cost_row(run(config), value));
    } catch (const Error& e) {
      CostRow failed;
      failed.value = value;
      failed.failed = true;
      failed.error = e.what();
      table.rows.push_back(std::move(failed));
    }
  }
  return table;
}

}  // namespace locc
