#include <algorithm>
#include <map>

#include "locc/errors.hpp"
#include "locc/formulas.hpp"
#include "locc/protocols.hpp"

namespace locc {

std::string to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "typical"; }

namespace {

std::vector<Branch<BranchOutcome>> run_branches(const RunOptions& options, const ProtocolBody& body) {
  const Session prototype(options.seed, options.max_amplitudes);
  switch (options.evaluation.kind) {
    case Evaluation::Exhaustive:
      return run_exhaustive(prototype, body, options.evaluation.max_paths);
    case Evaluation::Path:
      return {run_path(prototype, body, options.evaluation.path)};
    case Evaluation::Sampled: {
      if (options.evaluation.runs == 0) throw DomainError("sampled evaluation needs at least one run");
      auto runs = run_sampled(prototype, body, options.evaluation.runs, options.seed);
      // Identical outcome paths are merged so the report lists each once.
      std::vector<Branch<BranchOutcome>> merged;
      std::map<std::vector<std::size_t>, std::size_t> index;
      for (auto& r : runs) {
        const auto it = index.find(r.outcomes);
        if (it == index.end()) {
          index.emplace(r.outcomes, merged.size());
          merged.push_back(std::move(r));
        } else {
          merged[it->second].probability += r.probability;
        }
      }
      return merged;
    }
  }
  throw DomainError("unknown evaluation kind");
}

}  // namespace

ProtocolReport evaluate_protocol(std::string name, std::string formula_name, nlohmann::json params,
                                 const RunOptions& options, const ProtocolBody& body) {
  const auto branches = run_branches(options, body);
  ProtocolReport report;
  report.protocol = std::move(name);
  report.mode = to_string(options.mode.mode);
  report.seed = options.seed;
  const auto f = formula(formula_name, params);
  report.formula_bits = f.bits;
  report.formula_ref = f.ref;
  report.params = std::move(params);
  report.transcript = branches.front().result.transcript;
  report.cost = branches.front().result.cost;

  double covered = 0.0;
  double success = 0.0;
  double bits_expected = 0.0;
  double fidelity_projected = 0.0;
  double fidelity_min = 1.0;
  double b_to_a = 0.0;
  std::map<std::string, double> mean;
  std::map<std::string, double> low;
  std::map<std::string, double> high;
  for (const auto& br : branches) {
    const auto& r = br.result;
    report.fidelity_expected += br.probability * r.fidelity;
    report.bits_exact = std::max(report.bits_exact, r.cost.bits_total());
    report.bits_ceiling = std::max(report.bits_ceiling, r.cost.ceiling_total());
    report.ebits = std::max(report.ebits, r.cost.ebits);
    report.fidelity_branches.push_back({br.probability, r.fidelity, r.success, br.outcomes});
    covered += br.probability;
    bits_expected += br.probability * r.cost.bits_total();
    b_to_a = std::max(b_to_a, r.cost.bits_b_to_a);
    fidelity_min = std::min(fidelity_min, r.fidelity);
    if (r.success) {
      success += br.probability;
      fidelity_projected += br.probability * r.fidelity_projected;
    }
    for (const auto& [key, value] : r.metrics) {
      mean[key] += br.probability * value;
      low[key] = low.contains(key) ? std::min(low[key], value) : value;
      high[key] = high.contains(key) ? std::max(high[key], value) : value;
    }
  }
  // A single followed path covers only part of the distribution; expectations are conditional on it.
  if (covered > 0.0) report.fidelity_expected /= covered;
  auto& m = report.metrics;
  m["evaluation"] = options.evaluation.kind == Evaluation::Exhaustive ? "exhaustive"
                    : options.evaluation.kind == Evaluation::Sampled  ? "sampled"
                                                                      : "path";
  m["branch_count"] = branches.size();
  m["probability_covered"] = covered;
  m["success_probability"] = success;
  m["bits_expected"] = covered > 0.0 ? bits_expected / covered : 0.0;
  m["bits_b_to_a"] = b_to_a;
  m["fidelity_min"] = fidelity_min;
  m["fidelity_projected"] = success > 0.0 ? fidelity_projected / success : 0.0;
  m["ebits_consumed"] = report.ebits;
  for (const auto& [key, value] : mean) {
    m["branch_mean"][key] = covered > 0.0 ? value / covered : 0.0;
    m["branch_min"][key] = low[key];
    m["branch_max"][key] = high[key];
  }
  return report;
}

}  // namespace locc
