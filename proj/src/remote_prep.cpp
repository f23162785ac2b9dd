#include <cmath>
#include <map>
#include <numbers>

#include "locc/errors.hpp"
#include "locc/formulas.hpp"
#include "locc/gates.hpp"
#include "locc/protocols.hpp"
#include "rsp_common.hpp"

namespace locc {

using detail::Pairs;

BranchOutcome rsp_phase_in_session(Session& session, const SignalSpec& spec, ModeSpec mode, Provisioning provisioning) {
  const AliceView alice = spec.alice();
  const BobView bob = spec.bob();
  if (alice.shared().signal_dim != 2) throw DimensionError("phase signals are qubits");
  BranchOutcome out;
  const Pairs pairs = detail::provision_pairs(session, bob.shared(), provisioning);
  const double provisioning_bits = session.cost_summary().bits_total();
  for (std::size_t i = 0; i < pairs.alice.size(); ++i) {
    detail::apply_signal_phases(session, pairs.alice[i], alice.signal(i));
    detail::record_step1_fidelity(session, pairs.alice[i], pairs.bob[i], alice.signal(i), out);
  }
  out.metrics["step1_bits"] = session.cost_summary().bits_total() - provisioning_bits;
  const Codebook codebook = detail::make_codebook(bob.shared(), mode);
  const auto received = compress_and_transfer(session, pairs.alice, pairs.bob, codebook, out);
  detail::score(session, received, target_state(spec), codebook, out);
  detail::finish(session, out);
  return out;
}

BranchOutcome rsp_paired_in_session(Session& session, const SignalSpec& spec, ModeSpec mode, Provisioning provisioning) {
  const AliceView alice = spec.alice();
  const BobView bob = spec.bob();
  const auto& shared = bob.shared();
  if (shared.signal_dim != 4 || !shared.partition) throw DimensionError("paired signals are 4-dimensional");
  const double low = shared.partition->weights[0];
  const double high = shared.partition->weights[1];

  BranchOutcome out;
  const Pairs pairs = detail::provision_pairs(session, shared, provisioning);
  const double provisioning_bits = session.cost_summary().bits_total();
  double deviation = 0.0;
  for (std::size_t i = 0; i < pairs.alice.size(); ++i) {
    const auto s = alice.signal(i);
    // Column k = |0>_anc |k>_A; image index = anc * 4 + k.
    std::map<std::size_t, std::vector<Amplitude>> prescribed;
    const auto add = [&](std::size_t k, Amplitude first, Amplitude second, double weight) {
      if (weight <= 0.0) return;
      std::vector<Amplitude> image(8);
      image[k] = first / std::sqrt(weight);
      image[4 + k] = second / std::sqrt(weight);
      prescribed.emplace(k, std::move(image));
    };
    add(0, s[0], s[1], low);
    add(1, s[1], s[0], low);
    add(2, s[2], s[3], high);
    add(3, s[3], s[2], high);
    const RegisterId anc = session.add_ancilla(Party::Alice, 2, 0, "ancilla");
    const RegisterId joint[] = {anc, pairs.alice[i]};
    session.local_unitary(Party::Alice, joint, gates::complete_to_unitary(8, prescribed));
    const RegisterId measured[] = {anc};
    const auto m = session.local_measure(Party::Alice, measured);
    for (double p : m.distribution) deviation = std::max(deviation, std::abs(p - 0.5));
    session.send(Party::Alice, Party::Bob, m.outcome, 2);
    if (m.outcome == 1) {
      const auto swap = gates::permutation({1, 0, 3, 2});
      const RegisterId a[] = {pairs.alice[i]};
      const RegisterId b[] = {pairs.bob[i]};
      session.local_unitary(Party::Alice, a, swap);
      session.local_unitary(Party::Bob, b, swap);
    }
    session.discard(measured);
    detail::record_step1_fidelity(session, pairs.alice[i], pairs.bob[i], s, out);
  }
  out.metrics["step1_bits"] = session.cost_summary().bits_total() - provisioning_bits;
  out.metrics["step1_outcome_deviation"] = deviation;
  const Codebook codebook = detail::make_codebook(shared, mode);
  const auto received = compress_and_transfer(session, pairs.alice, pairs.bob, codebook, out);
  detail::score(session, received, target_state(spec), codebook, out);
  detail::finish(session, out);
  return out;
}

BranchOutcome rsp_segmented_in_session(Session& session, const SignalSpec& spec, ModeSpec mode,
                                       Provisioning provisioning) {
  const AliceView alice = spec.alice();
  const BobView bob = spec.bob();
  const auto& shared = bob.shared();
  if (shared.signal_dim != 2) throw DimensionError("phase signals are qubits");
  const std::size_t n = shared.signal_count;

  BranchOutcome out;
  const Pairs pairs = detail::provision_pairs(session, shared, provisioning);
  const double provisioning_bits = session.cost_summary().bits_total();
  std::vector<std::size_t> flags(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = std::fmod(std::fmod(alice.phase(i), 2.0 * std::numbers::pi) + 2.0 * std::numbers::pi,
                                   2.0 * std::numbers::pi);
    flags[i] = theta >= std::numbers::pi ? 1 : 0;
    session.send(Party::Alice, Party::Bob, flags[i], 2);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Amplitude> folded(alice.signal(i).begin(), alice.signal(i).end());
    if (flags[i]) folded[1] = -folded[1];
    detail::apply_signal_phases(session, pairs.alice[i], folded);
    detail::record_step1_fidelity(session, pairs.alice[i], pairs.bob[i], folded, out);
  }
  out.metrics["step1_bits"] = session.cost_summary().bits_total() - provisioning_bits;
  const Codebook codebook = detail::make_codebook(shared, mode);
  const auto received = compress_and_transfer(session, pairs.alice, pairs.bob, codebook, out);
  if (received) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!flags[i]) continue;
      const RegisterId r[] = {(*received)[i]};
      session.local_unitary(Party::Bob, r, gates::phase(std::numbers::pi));
    }
  }
  detail::score(session, received, target_state(spec), codebook, out);
  detail::finish(session, out);
  return out;
}

namespace {

nlohmann::json phase_params(const SignalSpec& spec) {
  const std::size_t n = spec.shared().signal_count;
  std::vector<double> thetas;
  for (std::size_t i = 0; i < n; ++i) thetas.push_back(spec.alice().phase(i));
  return {{"N", n}, {"a2", spec.shared().constants.at("a2")}, {"thetas", thetas}};
}

}  // namespace

ProtocolReport rsp_phase(const SignalSpec& spec, const RunOptions& options) {
  auto params = phase_params(spec);
  detail::add_run_params(params, options);
  auto report = evaluate_protocol("rsp_phase", "rsp_phase", std::move(params), options, [&](Session& s) {
    return rsp_phase_in_session(s, spec, options.mode, options.provisioning);
  });
  const double a2 = spec.shared().constants.at("a2");
  detail::add_entropy_metrics(report, phase_entropy(a2), spec.shared().signal_count);
  if (options.mode.mode == Mode::Typical)
    report.metrics["typical_weight"] = typical_weight(spec.shared().pair_spectrum, spec.shared().signal_count,
                                                      options.mode.delta);
  return report;
}

ProtocolReport rsp_paired(const SignalSpec& spec, const RunOptions& options) {
  const double e2 = spec.shared().constants.at("e2");
  nlohmann::json params{{"N", spec.shared().signal_count}, {"e2", e2}, {"signals", detail::signals_json(spec)}};
  detail::add_run_params(params, options);
  auto report = evaluate_protocol("rsp_paired", "rsp_paired", std::move(params), options, [&](Session& s) {
    return rsp_paired_in_session(s, spec, options.mode, options.provisioning);
  });
  detail::add_entropy_metrics(report, paired_entropy(e2), spec.shared().signal_count);
  return report;
}

ProtocolReport rsp_segmented(const SignalSpec& spec, const RunOptions& options) {
  auto params = phase_params(spec);
  detail::add_run_params(params, options);
  auto report = evaluate_protocol("rsp_segmented", "rsp_segmented", std::move(params), options, [&](Session& s) {
    return rsp_segmented_in_session(s, spec, options.mode, options.provisioning);
  });
  const double a2 = spec.shared().constants.at("a2");
  const auto n = static_cast<double>(spec.shared().signal_count);
  detail::add_entropy_metrics(report, phase_entropy(a2), spec.shared().signal_count);
  report.metrics["ebits_provisioned"] = report.ebits;
  report.metrics["folded_entropy"] = folded_phase_entropy(a2);
  report.ebits = n * report.metrics["folded_entropy"].get<double>();
  return report;
}

double folded_phase_entropy(double a_squared, std::size_t intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw DomainError("Simpson quadrature needs an even interval count");
  const double a = std::sqrt(a_squared);
  const double b = std::sqrt(1.0 - a_squared);
  const double h = std::numbers::pi / static_cast<double>(intervals);
  Amplitude off{0.0, 0.0};
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    off += w * std::polar(1.0, -static_cast<double>(k) * h);
  }
  off *= h / 3.0 / std::numbers::pi * a * b;
  const auto rho = DensityMatrix::from_entries(2, {a_squared, off, std::conj(off), 1.0 - a_squared});
  return von_neumann_entropy(rho);
}

DensityMatrix pauli_mixture(const PureState& input, std::span<const Unitary> ops) {
  if (input.dims() != std::vector<std::size_t>{2}) throw DimensionError("Pauli mixture acts on one qubit");
  if (ops.empty()) throw DomainError("mixture needs at least one operator");
  std::vector<Amplitude> acc(4);
  for (const auto& op : ops) {
    const auto v = op.apply(input.amplitudes());
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) acc[r * 2 + c] += v[r] * std::conj(v[c]);
  }
  for (auto& x : acc) x /= static_cast<double>(ops.size());
  return DensityMatrix::from_entries(2, std::move(acc));
}

DensityMatrix pauli_randomize(const PureState& input) {
  const Unitary ops[] = {Unitary::identity(2), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
  return pauli_mixture(input, ops);
}

}  // namespace locc
