#pragma once

// Two-party protocols built on Session, and their evaluation into reports.
//
// Each protocol comes in two forms: a `*_in_session` body that plays one
// execution inside a caller-provided session (used by tests that inspect
// transcripts), and a wrapper that evaluates the body over its measurement
// branches and summarizes the result as a ProtocolReport.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "locc/exhaustive.hpp"
#include "locc/qcore.hpp"
#include "locc/session.hpp"
#include "locc/signals.hpp"
#include "locc/typspace.hpp"

namespace locc {

enum class Mode { Exact, Typical };

std::string to_string(Mode mode);

struct ModeSpec {
  Mode mode = Mode::Exact;
  double delta = 1.0;

  /// Exact mode keeps the full support, which is the delta >= 1 window.
  double window() const noexcept { return mode == Mode::Exact ? 1.0 : delta; }
};

enum class Evaluation { Exhaustive, Sampled, Path };

struct EvalSpec {
  Evaluation kind = Evaluation::Exhaustive;
  std::size_t runs = 1;
  /// Outcome prefix for Evaluation::Path; later measurements take the first possible outcome.
  std::vector<std::size_t> path;
  std::size_t max_paths = kDefaultMaxPaths;
};

/// Direct: partially entangled pairs are provisioned as-is and charged their entropy.
/// Dilution: maximally entangled pairs are provisioned and reshaped by Alice with one transfer step each.
enum class Provisioning { Direct, Dilution };

struct RunOptions {
  ModeSpec mode;
  EvalSpec evaluation;
  std::uint64_t seed = 0;
  std::size_t max_amplitudes = kDefaultMaxAmplitudes;
  Provisioning provisioning = Provisioning::Direct;
};

/// Result of one execution path.
struct BranchOutcome {
  /// Against the full target state.
  double fidelity = 0.0;
  /// Against the target projected onto the subspace the protocol keeps (equals fidelity in exact mode).
  double fidelity_projected = 0.0;
  bool success = true;
  CostSummary cost;
  std::vector<Event> transcript;
  std::map<std::string, double> metrics;
};

struct BranchSummary {
  double probability = 0.0;
  double fidelity = 0.0;
  bool success = true;
  std::vector<std::size_t> outcomes;
};

struct ProtocolReport {
  std::string protocol;
  nlohmann::json params = nlohmann::json::object();
  /// Worst case over branches.
  double bits_exact = 0.0;
  std::size_t bits_ceiling = 0;
  double ebits = 0.0;
  double fidelity_expected = 0.0;
  std::vector<BranchSummary> fidelity_branches;
  double formula_bits = 0.0;
  std::string formula_ref;
  std::string mode = "exact";
  std::uint64_t seed = 0;
  nlohmann::json metrics = nlohmann::json::object();
  /// Transcript and ledger of the first evaluated branch; not part of the JSON report.
  std::vector<Event> transcript;
  CostSummary cost;
};

using ProtocolBody = std::function<BranchOutcome(Session&)>;

/// Runs `body` per options.evaluation and summarizes. `formula_name` selects
/// the closed form evaluated on `params`.
ProtocolReport evaluate_protocol(std::string name, std::string formula_name, nlohmann::json params,
                                 const RunOptions& options, const ProtocolBody& body);

// ---------------------------------------------------------------- building blocks

/// Fidelity of the registers `order` (jointly) with `target`.
double fidelity_on(const Session& session, std::span<const RegisterId> order, const PureState& target);

/// Pair sum_l sqrt(spectrum[l]) |l>_A |l>_B of local dimension `dim`.
std::pair<RegisterId, RegisterId> provision_pair(Session& session, std::span<const double> spectrum, std::size_t dim,
                                                 Provisioning provisioning, std::string name = "pair");

/// Moves Alice's `input` onto the pair: sum_x c_x |x>_in (sum_y |y y>) becomes sum_x c_x |x x>.
/// Generalized XOR with the pair half as control, measure, send the outcome,
/// both parties reflect. Discards `input`. Returns the outcome.
std::size_t transfer_step1(Session& session, RegisterId pair_a, RegisterId pair_b, RegisterId input);

/// sum_x c_x |x>_A |x>_B -> Bob holds sum_x c_x |x>. Fourier on Alice's side,
/// measure, send, Bob's phase correction. Discards `a`. Returns the outcome.
std::size_t fourier_transfer(Session& session, RegisterId a, RegisterId b);

/// Both parties compress their halves with `codebook`; on success the
/// compressed state is sent by fourier_transfer and Bob decompresses.
/// Returns Bob's signal registers, or nothing on a compression abort.
std::optional<std::vector<RegisterId>> compress_and_transfer(Session& session, std::span<const RegisterId> alice,
                                                             std::span<const RegisterId> bob, const Codebook& codebook,
                                                             BranchOutcome& out);

/// Target with every basis string outside the codebook removed, renormalized.
PureState project_onto(const PureState& target, const Codebook& codebook);

// ---------------------------------------------------------------- teleportation

/// Teleports the first subsystem of `input` (dimension D) using one maximally
/// entangled D-dimensional pair. A second subsystem, if present, is a
/// reference held by Alice and never touched. With stop_after_step1 the
/// input ends spread over the pair instead of on Bob's side.
BranchOutcome teleport_in_session(Session& session, const PureState& input, bool stop_after_step1 = false);

/// Alice prepares a|0> + b|1>; step one of teleportation leaves a|00> + b|11>.
BranchOutcome dilute_in_session(Session& session, Amplitude a, Amplitude b);
/// Same target, built by preparing a|00> + b|11> at Alice and teleporting one half.
BranchOutcome dilute_baseline_in_session(Session& session, Amplitude a, Amplitude b);

ProtocolReport teleport(const PureState& input, bool stop_after_step1, const RunOptions& options);
ProtocolReport teleport_qudit(const PureState& input, const RunOptions& options);
ProtocolReport dilute(Amplitude a, Amplitude b, const RunOptions& options);
ProtocolReport dilute_baseline(Amplitude a, Amplitude b, const RunOptions& options);

// ---------------------------------------------------------------- remote state preparation

/// a|0> + b e^{i theta_i}|1>: Alice rotates her pair halves, then compression and transfer.
BranchOutcome rsp_phase_in_session(Session& session, const SignalSpec& spec, ModeSpec mode, Provisioning provisioning);
/// 4-dimensional signals with fixed pair weights; one ancilla bit per signal.
BranchOutcome rsp_paired_in_session(Session& session, const SignalSpec& spec, ModeSpec mode, Provisioning provisioning);
/// General block partition; ancilla of dimension lcm of block sizes per signal.
BranchOutcome rsp_blocks_in_session(Session& session, const SignalSpec& spec, ModeSpec mode, Provisioning provisioning);
/// Qutrit signals in groups of n1, each group prepared as one block-partitioned signal.
BranchOutcome rsp_qutrit_groups_in_session(Session& session, const SignalSpec& spec, std::size_t n1, ModeSpec mode,
                                           Provisioning provisioning);
/// Phase signals with one extra flag bit per signal folding theta into [0, pi).
BranchOutcome rsp_segmented_in_session(Session& session, const SignalSpec& spec, ModeSpec mode,
                                       Provisioning provisioning);

ProtocolReport rsp_phase(const SignalSpec& spec, const RunOptions& options);
ProtocolReport rsp_paired(const SignalSpec& spec, const RunOptions& options);
ProtocolReport rsp_blocks(const SignalSpec& spec, const RunOptions& options);
ProtocolReport rsp_qutrit_groups(const SignalSpec& spec, std::size_t n1, const RunOptions& options);
ProtocolReport rsp_segmented(const SignalSpec& spec, const RunOptions& options);

/// log2 of the number of distinct per-block shift tuples among the d ancilla
/// outcomes: what the step-one message would cost if only the shifts were sent.
double shift_only_bits(const BlockPartition& partition);

/// The typicality window used for groups of n1 when none is given: 2^(1 - n1).
double default_group_delta(std::size_t n1);

/// Entropy of the average of a|0> + b e^{i theta}|1> over theta uniform on [0, pi),
/// by composite Simpson quadrature.
double folded_phase_entropy(double a_squared, std::size_t intervals = 2000);

// ---------------------------------------------------------------- Pauli randomization

/// (1/|ops|) sum_P P |psi><psi| P^dagger
DensityMatrix pauli_mixture(const PureState& input, std::span<const Unitary> ops);
/// Mixture over {I, X, Y, Z}.
DensityMatrix pauli_randomize(const PureState& input);

}  // namespace locc
