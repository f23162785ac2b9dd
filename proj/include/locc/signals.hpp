#pragma once

// Signal ensembles and who may read what.
//
// A SignalSpec holds the per-signal coefficients (known to Alice only) and
// the constants both parties agreed on beforehand. Protocol steps run on
// Bob's side receive a BobView, which has no accessor for the coefficients.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "locc/qcore.hpp"
#include "locc/typspace.hpp"

namespace locc {

struct SharedKnowledge {
  std::size_t signal_count = 0;
  std::size_t signal_dim = 2;
  /// Squared Schmidt coefficients of the pair provisioned per signal.
  std::vector<double> pair_spectrum;
  std::optional<BlockPartition> partition;
  std::map<std::string, double> constants;
};

class AliceView;
class BobView;

class SignalSpec {
 public:
  /// Throws DimensionError / DomainError on wrong lengths or unnormalized signals.
  SignalSpec(SharedKnowledge shared, std::vector<std::vector<Amplitude>> signals, std::vector<double> phases = {});

  const SharedKnowledge& shared() const noexcept { return shared_; }
  AliceView alice() const;
  BobView bob() const;

 private:
  friend class AliceView;
  friend PureState target_state(const SignalSpec& spec);
  friend std::vector<Amplitude> signal_for_referee(const SignalSpec& spec, std::size_t i);
  SharedKnowledge shared_;
  std::vector<std::vector<Amplitude>> signals_;
  std::vector<double> phases_;
};

class AliceView {
 public:
  explicit AliceView(const SignalSpec& spec) : spec_(&spec) {}
  const SharedKnowledge& shared() const noexcept { return spec_->shared_; }
  std::span<const Amplitude> signal(std::size_t i) const { return spec_->signals_.at(i); }
  /// The angle a phase signal was built from. Throws DomainError for other ensembles.
  double phase(std::size_t i) const;

 private:
  const SignalSpec* spec_;
};

class BobView {
 public:
  explicit BobView(const SignalSpec& spec) : spec_(&spec) {}
  const SharedKnowledge& shared() const noexcept { return spec_->shared(); }

 private:
  const SignalSpec* spec_;
};

/// Tensor product of all signals, for scoring outside the protocol.
PureState target_state(const SignalSpec& spec);
std::vector<Amplitude> signal_for_referee(const SignalSpec& spec, std::size_t i);

// ---------------------------------------------------------------- ensembles

/// a|0> + b e^{i theta}|1>, a and b shared, theta Alice-only.
SignalSpec phase_ensemble(double a_squared, std::span<const double> thetas);

/// Signals (a, b, c, d) with |a|^2 + |b|^2 = 2e^2 and |c|^2 + |d|^2 = 1 - 2e^2.
SignalSpec paired_ensemble(double e_squared, std::vector<std::vector<Amplitude>> signals);

/// Signals whose weight on each block of `partition` equals the block weight.
SignalSpec block_ensemble(BlockPartition partition, std::vector<std::vector<Amplitude>> signals);

/// Qutrit signals a_i|0> + b_i|1> + c e^{i theta_i}|2> with shared c^2.
SignalSpec qutrit_ensemble(double c_squared, std::vector<std::vector<Amplitude>> signals);

/// Uniform phases in [0, 2 pi).
std::vector<double> random_phases(std::size_t n, std::uint64_t seed);

/// Random vector of the given squared norm with uniformly random phases.
std::vector<Amplitude> random_amplitudes(std::size_t dim, double squared_norm, std::mt19937_64& rng);

/// Random signals for paired_ensemble.
std::vector<std::vector<Amplitude>> random_paired_signals(double e_squared, std::size_t n, std::uint64_t seed);

/// Random signals respecting the block weights of `partition`.
std::vector<std::vector<Amplitude>> random_block_signals(const BlockPartition& partition, std::size_t n,
                                                         std::uint64_t seed);

/// a_i|0> + b_i|1> + c e^{i theta_i}|2> with |a_i|^2 + |b_i|^2 = 1 - c^2.
std::vector<std::vector<Amplitude>> random_qutrit_signals(double c_squared, std::size_t n, std::uint64_t seed);

/// Haar-random pure state of the given dimensions.
PureState random_state(std::vector<std::size_t> dims, std::mt19937_64& rng);

}  // namespace locc
