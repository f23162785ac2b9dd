#include "locc/session.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "locc/errors.hpp"

namespace locc {

std::string_view to_string(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::Unitary: return "unitary";
    case EventType::Measure: return "measure";
    case EventType::Message: return "message";
    case EventType::Ancilla: return "ancilla";
    case EventType::Discard: return "discard";
  }
  return "unknown";
}

std::size_t ceil_log2(std::size_t domain) {
  std::size_t k = 0;
  std::size_t reach = 1;
  while (reach < domain) {
    reach <<= 1;
    ++k;
  }
  return k;
}

Session::Session(std::uint64_t seed, std::size_t max_amplitudes)
    : seed_(seed), max_amplitudes_(max_amplitudes), rng_(seed) {}

Session Session::reseeded(std::uint64_t seed) const {
  Session s = *this;
  s.seed_ = seed;
  s.rng_.seed(seed);
  return s;
}

std::size_t Session::position(RegisterId id) const {
  const auto it = std::find_if(registers_.begin(), registers_.end(), [&](const Register& r) { return r.id == id; });
  if (it == registers_.end()) throw DimensionError("register " + std::to_string(id) + " is not live");
  return static_cast<std::size_t>(it - registers_.begin());
}

std::vector<std::size_t> Session::positions(std::span<const RegisterId> ids) const {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(position(id));
  return out;
}

void Session::require_owner(Party party, std::span<const RegisterId> ids) const {
  for (auto id : ids) {
    const Register& r = registers_[position(id)];
    if (r.owner != party)
      throw LocalityViolation(std::string(to_string(party)) + " cannot act on " + std::string(to_string(r.owner)) +
                              "'s register '" + r.name + "'");
  }
}

RegisterId Session::append_register(std::string name, std::size_t dim, Party owner) {
  const RegisterId id = next_id_++;
  registers_.push_back({id, std::move(name), dim, owner});
  return id;
}

const Register& Session::reg(RegisterId id) const { return registers_[position(id)]; }

bool Session::is_live(RegisterId id) const {
  return std::any_of(registers_.begin(), registers_.end(), [&](const Register& r) { return r.id == id; });
}

std::pair<RegisterId, RegisterId> Session::add_entangled_pair(std::span<const double> schmidt_squared,
                                                              std::size_t dim_a, std::size_t dim_b,
                                                              std::string name) {
  if (dim_a < 2 || dim_b < 2) throw DimensionError("register dimension must be at least 2");
  if (schmidt_squared.empty() || schmidt_squared.size() > std::min(dim_a, dim_b))
    throw DomainError("Schmidt coefficient count must be between 1 and min(dimA, dimB)");
  double sum = 0.0;
  for (double c : schmidt_squared) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("Schmidt coefficients must be nonnegative");
    sum += c;
  }
  if (std::abs(sum - 1.0) > kTolerance) throw DomainError("squared Schmidt coefficients must sum to 1");
  std::vector<Amplitude> amps(dim_a * dim_b);
  for (std::size_t l = 0; l < schmidt_squared.size(); ++l) amps[l * dim_b + l] = std::sqrt(schmidt_squared[l]);
  const auto pair = PureState::normalized({dim_a, dim_b}, std::move(amps));
  state_ = tensor(state_, pair, max_amplitudes_);
  const RegisterId a = append_register(name + ".A", dim_a, Party::Alice);
  const RegisterId b = append_register(name + ".B", dim_b, Party::Bob);
  ebits_ += shannon_entropy(schmidt_squared);
  return {a, b};
}

RegisterId Session::add_ancilla(Party party, std::size_t dim, std::size_t basis_value, std::string name) {
  const std::size_t label[] = {basis_value};
  state_ = tensor(state_, PureState::basis({dim}, label), max_amplitudes_);
  const RegisterId id = append_register(std::move(name), dim, party);
  transcript_.push_back({EventType::Ancilla, party, {id}, {}, {}, {}, {}});
  return id;
}

std::vector<RegisterId> Session::add_local_state(Party party, const PureState& local, std::string name) {
  state_ = tensor(state_, local, max_amplitudes_);
  std::vector<RegisterId> ids;
  for (std::size_t i = 0; i < local.subsystem_count(); ++i)
    ids.push_back(append_register(name + "." + std::to_string(i), local.dims()[i], party));
  transcript_.push_back({EventType::Ancilla, party, ids, {}, {}, {}, {}});
  return ids;
}

void Session::local_unitary(Party party, std::span<const RegisterId> registers, const Unitary& u) {
  require_owner(party, registers);
  state_ = apply_unitary(state_, u, positions(registers));
  transcript_.push_back({EventType::Unitary, party, {registers.begin(), registers.end()}, {}, {}, {}, {}});
}

void Session::local_controlled(Party party, RegisterId control, std::span<const Unitary> blocks,
                               std::span<const RegisterId> targets) {
  const RegisterId c[] = {control};
  require_owner(party, c);
  require_owner(party, targets);
  state_ = apply_controlled(state_, position(control), blocks, positions(targets));
  std::vector<RegisterId> touched{control};
  touched.insert(touched.end(), targets.begin(), targets.end());
  transcript_.push_back({EventType::Unitary, party, std::move(touched), {}, {}, {}, {}});
}

double Session::next_uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

std::size_t Session::choose_outcome(std::span<const double> distribution) {
  std::vector<std::size_t> options;
  for (std::size_t o = 0; o < distribution.size(); ++o)
    if (distribution[o] > kProbabilityFloor) options.push_back(o);
  if (options.empty()) throw DomainError("measurement has no outcome with positive probability");
  const std::size_t depth = path_.chosen.size();
  std::size_t outcome;
  if (scripted_) {
    outcome = depth < forced_.size() ? forced_[depth] : options.front();
    if (std::find(options.begin(), options.end(), outcome) == options.end())
      throw DomainError("forced outcome " + std::to_string(outcome) + " has zero probability");
  } else {
    outcome = sample_outcome(distribution, next_uniform());
  }
  path_.chosen.push_back(outcome);
  path_.options.push_back(std::move(options));
  path_.probability *= distribution[outcome];
  return outcome;
}

LocalMeasurement Session::local_measure(Party party, std::span<const RegisterId> registers,
                                        const Coarsening* coarsening) {
  require_owner(party, registers);
  const auto pos = positions(registers);
  auto distribution = outcome_probabilities(state_, pos, coarsening);
  const std::size_t outcome = choose_outcome(distribution);
  state_ = collapse(state_, pos, outcome, coarsening);
  transcript_.push_back({EventType::Measure, party, {registers.begin(), registers.end()}, outcome, {}, {}, {}});
  const double p = distribution[outcome];
  return {outcome, p, std::move(distribution)};
}

std::vector<RegisterId> Session::local_relabel(Party party, std::span<const RegisterId> registers,
                                               const std::vector<std::size_t>& new_dims,
                                               std::span<const std::int64_t> map, std::string name) {
  require_owner(party, registers);
  const std::vector<RegisterId> old(registers.begin(), registers.end());
  state_ = relabel(state_, positions(old), new_dims, map, max_amplitudes_);
  registers_.erase(std::remove_if(registers_.begin(), registers_.end(),
                                  [&](const Register& r) {
                                    return std::find(old.begin(), old.end(), r.id) != old.end();
                                  }),
                   registers_.end());
  std::vector<RegisterId> fresh;
  for (std::size_t i = 0; i < new_dims.size(); ++i)
    fresh.push_back(append_register(new_dims.size() == 1 ? name : name + "." + std::to_string(i), new_dims[i], party));
  // Recorded as the physical sequence: fresh ancillas, a unitary moving the
  // amplitudes over, and the emptied originals discarded.
  transcript_.push_back({EventType::Ancilla, party, fresh, {}, {}, {}, {}});
  std::vector<RegisterId> touched = old;
  touched.insert(touched.end(), fresh.begin(), fresh.end());
  transcript_.push_back({EventType::Unitary, party, std::move(touched), {}, {}, {}, {}});
  transcript_.push_back({EventType::Discard, party, old, {}, {}, {}, {}});
  return fresh;
}

void Session::send(Party from, Party to, std::size_t value, std::size_t domain) {
  if (from == to) throw DomainError("a message needs two distinct parties");
  if (domain < 2) throw DomainError("message domain must be at least 2");
  if (value >= domain) throw DomainError("message value outside its domain");
  const double bits = std::log2(static_cast<double>(domain));
  const int slot = from == Party::Alice ? 0 : 1;
  bits_[slot] += bits;
  ceilings_[slot] += ceil_log2(domain);
  transcript_.push_back({EventType::Message, from, {}, {}, value, domain, bits});
}

void Session::discard(std::span<const RegisterId> registers) {
  if (registers.empty()) return;
  const Party owner = reg(registers.front()).owner;
  require_owner(owner, registers);
  auto rest = factor_out(state_, positions(registers));
  if (!rest) throw NotProduct("registers are still entangled with the rest of the system");
  state_ = std::move(*rest);
  const std::vector<RegisterId> gone(registers.begin(), registers.end());
  registers_.erase(std::remove_if(registers_.begin(), registers_.end(),
                                  [&](const Register& r) {
                                    return std::find(gone.begin(), gone.end(), r.id) != gone.end();
                                  }),
                   registers_.end());
  transcript_.push_back({EventType::Discard, owner, gone, {}, {}, {}, {}});
}

void Session::follow_path(std::vector<std::size_t> forced_outcomes) {
  scripted_ = true;
  forced_ = std::move(forced_outcomes);
}

PureState Session::state_of(std::span<const RegisterId> order) const {
  if (order.size() != registers_.size()) throw DimensionError("state_of must list every live register");
  return permute_subsystems(state_, positions(order));
}

CostSummary Session::cost_summary() const {
  return {bits_[0], bits_[1], ceilings_[0], ceilings_[1], ebits_, transcript_.size()};
}

}  // namespace locc
