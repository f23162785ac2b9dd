#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "locc/errors.hpp"
#include "locc/formulas.hpp"
#include "locc/gates.hpp"
#include "locc/protocols.hpp"
#include "rsp_common.hpp"

namespace locc {

namespace {

struct BlockRun {
  std::optional<std::vector<RegisterId>> received;
  std::optional<Codebook> codebook;
};

// One signal's step one: ancilla of dimension d, measured and sent, then a
// per-block cyclic shift on both halves.
double block_step1(Session& session, const BlockPartition& live, std::size_t d, RegisterId a, RegisterId b,
                   std::span<const Amplitude> signal) {
  if (d == 1) {
    detail::apply_signal_phases(session, a, signal);
    return 0.0;
  }
  const std::size_t universe = live.universe;
  std::vector<Unitary> controlled(universe, Unitary::identity(d));
  for (std::size_t m = 0; m < live.blocks.size(); ++m) {
    const auto& block = live.blocks[m];
    const std::size_t rows = block.size();
    const std::size_t reps = d / rows;
    const double scale = 1.0 / std::sqrt(live.weights[m] * static_cast<double>(reps));
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Amplitude> image(d);
      for (std::size_t s = 0; s < rows; ++s)
        for (std::size_t t = 0; t < reps; ++t) image[s * reps + t] = signal[block[(r + s) % rows]] * scale;
      controlled[block[r]] = gates::complete_to_unitary(d, {{0, std::move(image)}});
    }
  }
  const RegisterId anc = session.add_ancilla(Party::Alice, d, 0, "ancilla");
  const RegisterId targets[] = {anc};
  session.local_controlled(Party::Alice, a, controlled, targets);
  const auto j = session.local_measure(Party::Alice, targets);
  session.send(Party::Alice, Party::Bob, j.outcome, d);

  double deviation = 0.0;
  for (double p : j.distribution) deviation = std::max(deviation, std::abs(p - 1.0 / static_cast<double>(d)));
  std::vector<std::size_t> shift(universe);
  std::iota(shift.begin(), shift.end(), std::size_t{0});
  bool identity = true;
  for (const auto& block : live.blocks) {
    const std::size_t rows = block.size();
    const std::size_t s = j.outcome / (d / rows);
    if (s % rows == 0) continue;
    identity = false;
    for (std::size_t v = 0; v < rows; ++v) shift[block[v]] = block[(v + s) % rows];
  }
  if (!identity) {
    const auto u = gates::permutation(shift);
    const RegisterId ra[] = {a};
    const RegisterId rb[] = {b};
    session.local_unitary(Party::Alice, ra, u);
    session.local_unitary(Party::Bob, rb, u);
  }
  session.discard(targets);
  return deviation;
}

BlockRun run_blocks(Session& session, const SignalSpec& spec, ModeSpec mode, Provisioning provisioning,
                    BranchOutcome& out) {
  const AliceView alice = spec.alice();
  const BobView bob = spec.bob();
  const auto& shared = bob.shared();
  if (!shared.partition) throw DomainError("block preparation needs a partition");
  const BlockPartition live = shared.partition->without_empty_blocks();
  const std::size_t d = lcm_of_block_sizes(live);
  out.metrics["ancilla_dim"] = static_cast<double>(d);

  const detail::Pairs pairs = detail::provision_pairs(session, shared, provisioning);
  const double provisioning_bits = session.cost_summary().bits_total();
  double deviation = 0.0;
  for (std::size_t i = 0; i < pairs.alice.size(); ++i) {
    deviation = std::max(deviation, block_step1(session, live, d, pairs.alice[i], pairs.bob[i], alice.signal(i)));
    detail::record_step1_fidelity(session, pairs.alice[i], pairs.bob[i], alice.signal(i), out);
  }
  out.metrics["step1_bits"] = session.cost_summary().bits_total() - provisioning_bits;
  out.metrics["step1_outcome_deviation"] = deviation;
  BlockRun run;
  run.codebook.emplace(detail::make_codebook(shared, mode));
  run.received = compress_and_transfer(session, pairs.alice, pairs.bob, *run.codebook, out);
  return run;
}

struct GroupLayout {
  BlockPartition partition;  // compacted and normalized
  std::vector<std::size_t> labels;
  double weight = 0.0;
};

GroupLayout group_layout(std::size_t n1, double c_squared, ModeSpec mode) {
  std::optional<double> delta;
  if (mode.mode == Mode::Typical) delta = mode.delta;
  const BlockPartition full = position_partition(n1, c_squared, delta);
  GroupLayout layout;
  const BlockPartition compact = full.compacted(&layout.labels);
  layout.weight = compact.total_weight();
  layout.partition = compact.normalized();
  return layout;
}

}  // namespace

double shift_only_bits(const BlockPartition& partition) {
  const BlockPartition live = partition.without_empty_blocks();
  const std::size_t d = lcm_of_block_sizes(live);
  std::set<std::vector<std::size_t>> tuples;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::size_t> shifts;
    for (const auto& block : live.blocks) shifts.push_back(j / (d / block.size()));
    tuples.insert(std::move(shifts));
  }
  return std::log2(static_cast<double>(tuples.size()));
}

BranchOutcome rsp_blocks_in_session(Session& session, const SignalSpec& spec, ModeSpec mode, Provisioning provisioning) {
  BranchOutcome out;
  const auto run = run_blocks(session, spec, mode, provisioning, out);
  detail::score(session, run.received, target_state(spec), *run.codebook, out);
  detail::finish(session, out);
  return out;
}

BranchOutcome rsp_qutrit_groups_in_session(Session& session, const SignalSpec& spec, std::size_t n1, ModeSpec mode,
                                           Provisioning provisioning) {
  const AliceView alice = spec.alice();
  const auto& shared = spec.bob().shared();
  if (shared.signal_dim != 3) throw DimensionError("grouped signals are qutrits");
  if (n1 == 0 || shared.signal_count % n1 != 0) throw DomainError("signal count must be a multiple of the group size");
  const double c2 = shared.constants.at("c2");
  const std::size_t groups = shared.signal_count / n1;
  const GroupLayout layout = group_layout(n1, c2, mode);

  // Alice restricts each group's product state to the kept strings.
  std::vector<std::vector<Amplitude>> group_signals;
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<Amplitude> s(layout.labels.size());
    for (std::size_t l = 0; l < layout.labels.size(); ++l) {
      std::size_t label = layout.labels[l];
      Amplitude amp = 1.0 / std::sqrt(layout.weight);
      for (std::size_t j = n1; j-- > 0;) {
        amp *= alice.signal(g * n1 + j)[label % 3];
        label /= 3;
      }
      s[l] = amp;
    }
    group_signals.push_back(std::move(s));
  }
  const SignalSpec grouped = block_ensemble(layout.partition, std::move(group_signals));

  BranchOutcome out;
  out.metrics["group_weight"] = layout.weight;
  const auto run = run_blocks(session, grouped, ModeSpec{Mode::Exact, 1.0}, provisioning, out);
  std::optional<std::vector<RegisterId>> received;
  if (run.received) {
    received.emplace();
    const std::vector<std::size_t> dims(n1, 3);
    std::vector<std::int64_t> map(layout.labels.begin(), layout.labels.end());
    for (auto reg : *run.received) {
      const RegisterId r[] = {reg};
      const auto qutrits = session.local_relabel(Party::Bob, r, dims, map, "signal");
      received->insert(received->end(), qutrits.begin(), qutrits.end());
    }
  }
  if (!received) {
    out.success = false;
  } else {
    const PureState target = target_state(spec);
    out.fidelity = fidelity_on(session, *received, target);
    std::vector<Amplitude> projected(target.amplitudes().begin(), target.amplitudes().end());
    std::vector<bool> label_kept(std::size_t(std::pow(3, n1)), false);
    for (auto l : layout.labels) label_kept[l] = true;
    const std::size_t group_size = label_kept.size();
    for (std::size_t x = 0; x < projected.size(); ++x) {
      std::size_t rest = x;
      for (std::size_t g = 0; g < groups; ++g) {
        if (!label_kept[rest % group_size]) projected[x] = 0.0;
        rest /= group_size;
      }
    }
    out.fidelity_projected =
        fidelity_on(session, *received, PureState::normalized(target.dims(), std::move(projected)));
  }
  detail::finish(session, out);
  return out;
}

double default_group_delta(std::size_t n1) { return std::ldexp(1.0, 1 - static_cast<int>(n1)); }

ProtocolReport rsp_blocks(const SignalSpec& spec, const RunOptions& options) {
  const auto& partition = *spec.shared().partition;
  nlohmann::json params{{"N", spec.shared().signal_count},
                        {"block_sizes", partition.block_sizes()},
                        {"weights", partition.weights},
                        {"blocks", partition.blocks},
                        {"signals", detail::signals_json(spec)}};
  detail::add_run_params(params, options);
  auto report = evaluate_protocol("rsp_blocks", "rsp_blocks", std::move(params), options, [&](Session& s) {
    return rsp_blocks_in_session(s, spec, options.mode, options.provisioning);
  });
  const auto live = partition.without_empty_blocks();
  const auto sizes = live.block_sizes();
  detail::add_entropy_metrics(report, block_entropy(sizes, live.weights), spec.shared().signal_count);
  report.metrics["ancilla_dim"] = lcm_of_block_sizes(live);
  report.metrics["shift_only_bits_per_signal"] = shift_only_bits(live);
  return report;
}

ProtocolReport rsp_qutrit_groups(const SignalSpec& spec, std::size_t n1, const RunOptions& options) {
  const double c2 = spec.shared().constants.at("c2");
  const std::size_t total = spec.shared().signal_count;
  nlohmann::json params{{"N_tot", total}, {"N1", n1}, {"c2", c2}, {"signals", detail::signals_json(spec)}};
  detail::add_run_params(params, options);
  auto report = evaluate_protocol("rsp_qutrit_groups", "rsp_qutrit_groups", std::move(params), options,
                                  [&](Session& s) {
                                    return rsp_qutrit_groups_in_session(s, spec, n1, options.mode,
                                                                        options.provisioning);
                                  });
  const double entropy = qutrit_group_entropy(c2);
  detail::add_entropy_metrics(report, entropy, total);
  const auto layout = group_layout(n1, c2, options.mode);
  const std::size_t d = lcm_of_block_sizes(layout.partition);
  report.metrics["ancilla_dim"] = d;
  report.metrics["block_count"] = layout.partition.blocks.size();
  report.metrics["group_weight"] = layout.weight;
  report.metrics["block_accounting_per_signal"] =
      std::log2(static_cast<double>(d)) / static_cast<double>(n1) + entropy;
  report.metrics["asymptotic_per_signal"] = entropy + 1.0 - c2;
  report.metrics["shift_only_bits_per_signal"] = shift_only_bits(layout.partition) / static_cast<double>(n1);
  return report;
}

}  // namespace locc
