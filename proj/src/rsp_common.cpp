#include "rsp_common.hpp"

#include <algorithm>
#include <cmath>

#include "locc/formulas.hpp"
#include "locc/gates.hpp"

namespace locc::detail {

Pairs provision_pairs(Session& session, const SharedKnowledge& shared, Provisioning provisioning) {
  Pairs pairs;
  for (std::size_t i = 0; i < shared.signal_count; ++i) {
    const auto [a, b] = provision_pair(session, shared.pair_spectrum, shared.signal_dim, provisioning,
                                       "pair" + std::to_string(i));
    pairs.alice.push_back(a);
    pairs.bob.push_back(b);
  }
  return pairs;
}

PureState pair_target(std::span<const Amplitude> signal) {
  const std::size_t dim = signal.size();
  std::vector<Amplitude> amps(dim * dim);
  for (std::size_t l = 0; l < dim; ++l) amps[l * dim + l] = signal[l];
  return PureState::from_amplitudes({dim, dim}, std::move(amps));
}

void apply_signal_phases(Session& session, RegisterId alice_half, std::span<const Amplitude> signal) {
  std::vector<Amplitude> phases(signal.size(), 1.0);
  for (std::size_t l = 0; l < signal.size(); ++l)
    if (std::abs(signal[l]) > kProbabilityFloor) phases[l] = signal[l] / std::abs(signal[l]);
  const RegisterId regs[] = {alice_half};
  session.local_unitary(Party::Alice, regs, gates::diagonal(phases));
}

void record_step1_fidelity(const Session& session, RegisterId a, RegisterId b, std::span<const Amplitude> signal,
                           BranchOutcome& out) {
  const RegisterId order[] = {a, b};
  const double f = fidelity_on(session, order, pair_target(signal));
  const auto it = out.metrics.find("step1_fidelity");
  out.metrics["step1_fidelity"] = it == out.metrics.end() ? f : std::min(it->second, f);
}

Codebook make_codebook(const SharedKnowledge& shared, ModeSpec mode) {
  return Codebook(typical_set(shared.pair_spectrum, shared.signal_count, mode.window()));
}

void score(const Session& session, const std::optional<std::vector<RegisterId>>& bob, const PureState& target,
           const Codebook& codebook, BranchOutcome& out) {
  if (!bob) {
    out.success = false;
    out.fidelity = 0.0;
    out.fidelity_projected = 0.0;
    return;
  }
  out.fidelity = fidelity_on(session, *bob, target);
  out.fidelity_projected = fidelity_on(session, *bob, project_onto(target, codebook));
}

void finish(const Session& session, BranchOutcome& out) {
  out.cost = session.cost_summary();
  out.transcript = session.transcript();
  if (!out.metrics.contains("step2_bits")) out.metrics["step2_bits"] = 0.0;
}

nlohmann::json signals_json(const SignalSpec& spec) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < spec.shared().signal_count; ++i) {
    nlohmann::json s = nlohmann::json::array();
    for (auto x : signal_for_referee(spec, i)) s.push_back({x.real(), x.imag()});
    out.push_back(std::move(s));
  }
  return out;
}

void add_run_params(nlohmann::json& params, const RunOptions& options) {
  if (options.mode.mode == Mode::Typical) params["delta"] = options.mode.delta;
  if (options.provisioning == Provisioning::Dilution) params["provisioning"] = "dilution";
}

void add_entropy_metrics(ProtocolReport& report, double entropy, std::size_t signals) {
  const double n = static_cast<double>(signals);
  report.metrics["entropy_S"] = entropy;
  report.metrics["baseline_bits"] = teleport_baseline_bits(n, entropy);
  report.metrics["bits_per_signal"] = report.bits_exact / n;
  report.metrics["ceiling_per_signal"] = static_cast<double>(report.bits_ceiling) / n;
  report.metrics["formula_per_signal"] = report.formula_bits / n;
}

}  // namespace locc::detail
