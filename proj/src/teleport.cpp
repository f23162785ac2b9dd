#include <cmath>

#include "locc/errors.hpp"
#include "locc/protocols.hpp"

namespace locc {

namespace {

// sum_x c_{x,r} |x>|x>|r>: the input spread over both halves of the pair.
PureState spread(const PureState& input) {
  const std::size_t dim = input.dims()[0];
  const std::size_t ref = input.size() / dim;
  std::vector<std::size_t> dims{dim, dim};
  if (input.subsystem_count() == 2) dims.push_back(ref);
  std::vector<Amplitude> amps(dim * dim * ref);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t r = 0; r < ref; ++r) amps[(x * dim + x) * ref + r] = input[x * ref + r];
  return PureState::from_amplitudes(std::move(dims), std::move(amps));
}

void finish(Session& session, BranchOutcome& out) {
  out.fidelity_projected = out.fidelity;
  out.cost = session.cost_summary();
  out.transcript = session.transcript();
}

nlohmann::json state_json(const PureState& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (auto a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"dims", s.dims()}, {"amplitudes", amps}};
}

}  // namespace

BranchOutcome teleport_in_session(Session& session, const PureState& input, bool stop_after_step1) {
  if (input.subsystem_count() < 1 || input.subsystem_count() > 2)
    throw DimensionError("teleport input is one register, optionally with a reference");
  const std::size_t dim = input.dims()[0];
  const std::vector<double> flat(dim, 1.0 / static_cast<double>(dim));
  const auto [a, b] = session.add_entangled_pair(flat, dim, dim, "epr");
  const auto in = session.add_local_state(Party::Alice, input, "input");
  std::vector<RegisterId> reference(in.begin() + 1, in.end());

  BranchOutcome out;
  transfer_step1(session, a, b, in[0]);
  out.metrics["step1_bits"] = session.cost_summary().bits_total();
  std::vector<RegisterId> order{a, b};
  order.insert(order.end(), reference.begin(), reference.end());
  out.metrics["step1_fidelity"] = fidelity_on(session, order, spread(input));

  if (stop_after_step1) {
    out.fidelity = out.metrics["step1_fidelity"];
  } else {
    fourier_transfer(session, a, b);
    std::vector<RegisterId> bob{b};
    bob.insert(bob.end(), reference.begin(), reference.end());
    out.fidelity = fidelity_on(session, bob, input);
  }
  finish(session, out);
  return out;
}

BranchOutcome dilute_in_session(Session& session, Amplitude a, Amplitude b) {
  const auto local = PureState::qubit(a, b);
  return teleport_in_session(session, local, true);
}

BranchOutcome dilute_baseline_in_session(Session& session, Amplitude a, Amplitude b) {
  const auto target = PureState::from_amplitudes({2, 2}, {a, 0.0, 0.0, b});
  const auto [ea, eb] = session.add_entangled_pair(std::vector<double>{0.5, 0.5}, 2, 2, "epr");
  const auto held = session.add_local_state(Party::Alice, target, "prepared");
  transfer_step1(session, ea, eb, held[1]);
  fourier_transfer(session, ea, eb);
  BranchOutcome out;
  const RegisterId order[] = {held[0], eb};
  out.fidelity = fidelity_on(session, order, target);
  finish(session, out);
  return out;
}

ProtocolReport teleport(const PureState& input, bool stop_after_step1, const RunOptions& options) {
  if (input.dims()[0] != 2) throw DimensionError("qubit teleportation needs a 2-dimensional input");
  nlohmann::json params{{"input", state_json(input)}, {"stop_after_step1", stop_after_step1}};
  return evaluate_protocol(stop_after_step1 ? "teleport_step1" : "teleport", stop_after_step1 ? "dilute" : "teleport",
                           std::move(params), options,
                           [&](Session& s) { return teleport_in_session(s, input, stop_after_step1); });
}

ProtocolReport teleport_qudit(const PureState& input, const RunOptions& options) {
  const std::size_t dim = input.dims()[0];
  nlohmann::json params{{"D", dim}, {"input", state_json(input)}};
  return evaluate_protocol("teleport_qudit", "teleport_qudit", std::move(params), options,
                           [&](Session& s) { return teleport_in_session(s, input, false); });
}

ProtocolReport dilute(Amplitude a, Amplitude b, const RunOptions& options) {
  nlohmann::json params{{"a", {a.real(), a.imag()}}, {"b", {b.real(), b.imag()}}};
  return evaluate_protocol("dilute", "dilute", std::move(params), options,
                           [&](Session& s) { return dilute_in_session(s, a, b); });
}

ProtocolReport dilute_baseline(Amplitude a, Amplitude b, const RunOptions& options) {
  nlohmann::json params{{"a", {a.real(), a.imag()}}, {"b", {b.real(), b.imag()}}};
  return evaluate_protocol("dilute_baseline", "dilute_baseline", std::move(params), options,
                           [&](Session& s) { return dilute_baseline_in_session(s, a, b); });
}

}  // namespace locc
