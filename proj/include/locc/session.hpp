#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locc/qcore.hpp"

namespace locc {

enum class Party { Alice, Bob };

std::string_view to_string(Party p);
Party other(Party p);

using RegisterId = std::size_t;

struct Register {
  RegisterId id = 0;
  std::string name;
  std::size_t dim = 2;
  Party owner = Party::Alice;
};

enum class EventType { Unitary, Measure, Message, Ancilla, Discard };

std::string_view to_string(EventType t);

struct Event {
  EventType type = EventType::Unitary;
  Party party = Party::Alice;
  std::vector<RegisterId> registers;
  std::optional<std::size_t> outcome;
  std::optional<std::size_t> value;
  std::optional<std::size_t> domain;
  std::optional<double> bits;

  bool operator==(const Event&) const = default;
};

/// Outcome sequence of one run. `options[k]` lists every outcome with
/// nonzero probability at the k-th measurement; `chosen[k]` is the one taken.
struct PathRecord {
  std::vector<std::size_t> chosen;
  std::vector<std::vector<std::size_t>> options;
  double probability = 1.0;
};

struct CostSummary {
  double bits_a_to_b = 0.0;
  double bits_b_to_a = 0.0;
  std::size_t ceiling_a_to_b = 0;
  std::size_t ceiling_b_to_a = 0;
  double ebits = 0.0;
  std::size_t transcript_length = 0;

  double bits_total() const { return bits_a_to_b + bits_b_to_a; }
  std::size_t ceiling_total() const { return ceiling_a_to_b + ceiling_b_to_a; }
};

struct LocalMeasurement {
  std::size_t outcome = 0;
  double probability = 0.0;
  std::vector<double> distribution;
};

/// Smallest k with 2^k >= domain.
std::size_t ceil_log2(std::size_t domain);

/// Two-party runtime. Owns the joint state of every live register (in id
/// order), the transcript, and the bit and ebit ledgers. Every quantum
/// operation is issued on behalf of one party and may only touch that
/// party's registers.
///
/// Measurements draw from a seeded generator unless a forced outcome path
/// is installed with follow_path(); either way the path taken is recorded,
/// which is what the exhaustive evaluator walks.
class Session {
 public:
  explicit Session(std::uint64_t seed = 0, std::size_t max_amplitudes = kDefaultMaxAmplitudes);

  /// Copy of this session with its generator reseeded.
  Session reseeded(std::uint64_t seed) const;

  /// Provisions sum_l sqrt(coeffs[l]) |l>_A |l>_B and charges its entropy of entanglement.
  std::pair<RegisterId, RegisterId> add_entangled_pair(std::span<const double> schmidt_squared, std::size_t dim_a,
                                                       std::size_t dim_b, std::string name = "pair");
  RegisterId add_ancilla(Party party, std::size_t dim, std::size_t basis_value, std::string name = "ancilla");
  /// Appends registers prepared locally by `party` in `state` (one register per subsystem).
  std::vector<RegisterId> add_local_state(Party party, const PureState& state, std::string name = "local");

  void local_unitary(Party party, std::span<const RegisterId> registers, const Unitary& u);
  /// Applies blocks[v] to `targets` where `control` holds v. One transcript event over control + targets.
  void local_controlled(Party party, RegisterId control, std::span<const Unitary> blocks,
                        std::span<const RegisterId> targets);
  LocalMeasurement local_measure(Party party, std::span<const RegisterId> registers,
                                 const Coarsening* coarsening = nullptr);
  /// Isometric relabeling of `registers` into new registers of `new_dims` (see locc::relabel).
  std::vector<RegisterId> local_relabel(Party party, std::span<const RegisterId> registers,
                                        const std::vector<std::size_t>& new_dims, std::span<const std::int64_t> map,
                                        std::string name = "relabeled");
  void send(Party from, Party to, std::size_t value, std::size_t domain);
  /// Removes registers that are in a product state with the rest. All must share an owner.
  void discard(std::span<const RegisterId> registers);

  void follow_path(std::vector<std::size_t> forced_outcomes);
  const PathRecord& path() const noexcept { return path_; }

  const PureState& state() const noexcept { return state_; }
  /// Joint state with subsystems in the given register order; must list every live register.
  PureState state_of(std::span<const RegisterId> order) const;
  const std::vector<Register>& registers() const noexcept { return registers_; }
  const Register& reg(RegisterId id) const;
  bool is_live(RegisterId id) const;
  const std::vector<Event>& transcript() const noexcept { return transcript_; }
  CostSummary cost_summary() const;
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t max_amplitudes() const noexcept { return max_amplitudes_; }

 private:
  std::size_t position(RegisterId id) const;
  std::vector<std::size_t> positions(std::span<const RegisterId> ids) const;
  void require_owner(Party party, std::span<const RegisterId> ids) const;
  RegisterId append_register(std::string name, std::size_t dim, Party owner);
  double next_uniform();
  std::size_t choose_outcome(std::span<const double> distribution);

  std::uint64_t seed_;
  std::size_t max_amplitudes_;
  std::mt19937_64 rng_;
  PureState state_;
  std::vector<Register> registers_;
  RegisterId next_id_ = 0;
  std::vector<Event> transcript_;
  double bits_[2] = {0.0, 0.0};
  std::size_t ceilings_[2] = {0, 0};
  double ebits_ = 0.0;
  bool scripted_ = false;
  std::vector<std::size_t> forced_;
  PathRecord path_;
};

}  // namespace locc
