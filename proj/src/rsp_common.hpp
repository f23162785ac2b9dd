#pragma once

#include <optional>
#include <span>
#include <vector>

#include "locc/protocols.hpp"

namespace locc::detail {

struct Pairs {
  std::vector<RegisterId> alice;
  std::vector<RegisterId> bob;
};

Pairs provision_pairs(Session& session, const SharedKnowledge& shared, Provisioning provisioning);

/// sum_l t_l |l>|l>
PureState pair_target(std::span<const Amplitude> signal);

/// Block weights all 1/|I|: the pair already carries the right moduli, so
/// Alice only fixes phases with diag(t_l / |t_l|).
void apply_signal_phases(Session& session, RegisterId alice_half, std::span<const Amplitude> signal);

/// Worst step-one fidelity over signals so far, kept in out.metrics.
void record_step1_fidelity(const Session& session, RegisterId a, RegisterId b, std::span<const Amplitude> signal,
                           BranchOutcome& out);

Codebook make_codebook(const SharedKnowledge& shared, ModeSpec mode);

/// Sets fidelity and fidelity_projected from Bob's registers, or marks the branch aborted.
void score(const Session& session, const std::optional<std::vector<RegisterId>>& bob, const PureState& target,
           const Codebook& codebook, BranchOutcome& out);

void finish(const Session& session, BranchOutcome& out);

nlohmann::json signals_json(const SignalSpec& spec);

/// Adds the mode, delta and provisioning fields to report params.
void add_run_params(nlohmann::json& params, const RunOptions& options);

/// S, baseline 2NS and per-signal figures shared by all remote-preparation reports.
void add_entropy_metrics(ProtocolReport& report, double entropy, std::size_t signals);

}  // namespace locc::detail
