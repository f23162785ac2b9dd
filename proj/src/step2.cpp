#include <algorithm>
#include <cmath>
#include <numeric>

#include "locc/errors.hpp"
#include "locc/gates.hpp"
#include "locc/protocols.hpp"

namespace locc {

double fidelity_on(const Session& session, std::span<const RegisterId> order, const PureState& target) {
  const auto& live = session.registers();
  if (order.size() == live.size()) return fidelity_pure(session.state_of(order), target);
  std::vector<std::size_t> keep;
  for (auto id : order) {
    const auto it = std::find_if(live.begin(), live.end(), [&](const Register& r) { return r.id == id; });
    if (it == live.end()) throw DimensionError("register " + std::to_string(id) + " is not live");
    keep.push_back(static_cast<std::size_t>(it - live.begin()));
  }
  return fidelity_mixed(reduced_density(session.state(), keep), target);
}

std::pair<RegisterId, RegisterId> provision_pair(Session& session, std::span<const double> spectrum, std::size_t dim,
                                                 Provisioning provisioning, std::string name) {
  if (spectrum.size() > dim) throw DimensionError("pair spectrum longer than the register dimension");
  if (provisioning == Provisioning::Direct) return session.add_entangled_pair(spectrum, dim, dim, std::move(name));

  const std::vector<double> flat(dim, 1.0 / static_cast<double>(dim));
  const auto pair = session.add_entangled_pair(flat, dim, dim, std::move(name));
  std::vector<Amplitude> local(dim);
  for (std::size_t l = 0; l < spectrum.size(); ++l) local[l] = std::sqrt(spectrum[l]);
  const auto input = session.add_local_state(Party::Alice, PureState::normalized({dim}, std::move(local)), "dilution");
  transfer_step1(session, pair.first, pair.second, input.front());
  return pair;
}

std::size_t transfer_step1(Session& session, RegisterId pair_a, RegisterId pair_b, RegisterId input) {
  const std::size_t dim = session.reg(pair_a).dim;
  if (session.reg(pair_b).dim != dim || session.reg(input).dim != dim)
    throw DimensionError("transfer needs equal register dimensions");
  const RegisterId xor_regs[] = {pair_a, input};
  session.local_unitary(Party::Alice, xor_regs, gates::xor_qudit(dim));
  const RegisterId in[] = {input};
  const std::size_t m = session.local_measure(Party::Alice, in).outcome;
  session.send(Party::Alice, Party::Bob, m, dim);
  // Outcome m leaves sum_x c_{m-x} |x x>; relabeling x -> m - x on both halves restores sum_y c_y |y y>.
  std::vector<std::size_t> reflect(dim);
  for (std::size_t x = 0; x < dim; ++x) reflect[x] = (m + dim - x) % dim;
  bool identity = true;
  for (std::size_t x = 0; x < dim; ++x) identity = identity && reflect[x] == x;
  if (!identity) {
    const auto fix = gates::permutation(reflect);
    const RegisterId a[] = {pair_a};
    const RegisterId b[] = {pair_b};
    session.local_unitary(Party::Alice, a, fix);
    session.local_unitary(Party::Bob, b, fix);
  }
  session.discard(in);
  return m;
}

std::size_t fourier_transfer(Session& session, RegisterId a, RegisterId b) {
  const std::size_t dim = session.reg(a).dim;
  if (session.reg(b).dim != dim) throw DimensionError("transfer needs equal register dimensions");
  const RegisterId ra[] = {a};
  const RegisterId rb[] = {b};
  session.local_unitary(Party::Alice, ra, gates::fourier(dim));
  const std::size_t k = session.local_measure(Party::Alice, ra).outcome;
  session.send(Party::Alice, Party::Bob, k, dim);
  if (k != 0) session.local_unitary(Party::Bob, rb, gates::phase_correction(dim, k));
  session.discard(ra);
  return k;
}

std::optional<std::vector<RegisterId>> compress_and_transfer(Session& session, std::span<const RegisterId> alice,
                                                             std::span<const RegisterId> bob, const Codebook& codebook,
                                                             BranchOutcome& out) {
  const double before = session.cost_summary().bits_total();
  const auto ca = schumacher_compress(session, Party::Alice, alice, codebook);
  const auto cb = schumacher_compress(session, Party::Bob, bob, codebook);
  out.metrics["compression_success_probability"] = ca.success_probability;
  out.metrics["codebook_size"] = static_cast<double>(codebook.size());
  if (!ca.success || !cb.success) return std::nullopt;
  const RegisterId a = *ca.compressed;
  const RegisterId b = *cb.compressed;
  if (codebook.size() >= 2) {
    fourier_transfer(session, a, b);
  } else {
    const RegisterId ra[] = {a};
    session.discard(ra);
  }
  out.metrics["step2_bits"] = session.cost_summary().bits_total() - before;
  return schumacher_decompress(session, Party::Bob, b, codebook);
}

PureState project_onto(const PureState& target, const Codebook& codebook) {
  std::vector<Amplitude> amps(target.amplitudes().begin(), target.amplitudes().end());
  for (std::size_t x = 0; x < amps.size(); ++x)
    if (!codebook.encode(x)) amps[x] = 0.0;
  return PureState::normalized(target.dims(), std::move(amps));
}

}  // namespace locc
