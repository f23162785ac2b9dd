#include "locc/signals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "locc/errors.hpp"

namespace locc {

namespace {

double weight(std::span<const Amplitude> v) {
  double w = 0.0;
  for (auto x : v) w += std::norm(x);
  return w;
}

}  // namespace

SignalSpec::SignalSpec(SharedKnowledge shared, std::vector<std::vector<Amplitude>> signals, std::vector<double> phases)
    : shared_(std::move(shared)), signals_(std::move(signals)), phases_(std::move(phases)) {
  if (!phases_.empty() && phases_.size() != signals_.size()) throw DimensionError("one phase per signal required");
  if (shared_.signal_dim < 2) throw DimensionError("signal dimension must be at least 2");
  if (signals_.size() != shared_.signal_count) throw DimensionError("signal count does not match shared knowledge");
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    if (signals_[i].size() != shared_.signal_dim)
      throw DimensionError("signal " + std::to_string(i) + " has the wrong dimension");
    if (std::abs(weight(signals_[i]) - 1.0) > kTolerance)
      throw DomainError("signal " + std::to_string(i) + " is not normalized");
  }
}

double AliceView::phase(std::size_t i) const {
  if (spec_->phases_.empty()) throw DomainError("ensemble carries no phase angles");
  return spec_->phases_.at(i);
}

AliceView SignalSpec::alice() const { return AliceView(*this); }
BobView SignalSpec::bob() const { return BobView(*this); }

PureState target_state(const SignalSpec& spec) {
  PureState out;
  for (const auto& s : spec.signals_)
    out = tensor(out, PureState::from_amplitudes({s.size()}, s), std::size_t{1} << 26);
  return out;
}

std::vector<Amplitude> signal_for_referee(const SignalSpec& spec, std::size_t i) { return spec.signals_.at(i); }

SignalSpec phase_ensemble(double a_squared, std::span<const double> thetas) {
  if (!(a_squared >= 0.0 && a_squared <= 1.0)) throw DomainError("|a|^2 must lie in [0, 1]");
  if (thetas.empty()) throw DomainError("at least one signal required");
  const double a = std::sqrt(a_squared);
  const double b = std::sqrt(1.0 - a_squared);
  std::vector<std::vector<Amplitude>> signals;
  for (double t : thetas) signals.push_back({a, std::polar(b, t)});
  SharedKnowledge shared{thetas.size(), 2, {a_squared, 1.0 - a_squared}, std::nullopt, {{"a2", a_squared}}};
  return SignalSpec(std::move(shared), std::move(signals), {thetas.begin(), thetas.end()});
}

SignalSpec paired_ensemble(double e_squared, std::vector<std::vector<Amplitude>> signals) {
  if (!(e_squared > 0.0 && e_squared <= 0.5)) throw DomainError("e^2 must lie in (0, 1/2]");
  const double f_squared = 0.5 - e_squared;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (signals[i].size() != 4) throw DimensionError("paired signals are 4-dimensional");
    const double low = std::norm(signals[i][0]) + std::norm(signals[i][1]);
    const double high = std::norm(signals[i][2]) + std::norm(signals[i][3]);
    if (std::abs(low - 2.0 * e_squared) > kTolerance || std::abs(high - 2.0 * f_squared) > kTolerance)
      throw DomainError("signal " + std::to_string(i) + " violates |a|^2 + |b|^2 = 2e^2");
  }
  BlockPartition partition{4, {{0, 1}, {2, 3}}, {2.0 * e_squared, 2.0 * f_squared}};
  SharedKnowledge shared{signals.size(), 4, {e_squared, e_squared, f_squared, f_squared}, partition,
                         {{"e2", e_squared}}};
  return SignalSpec(std::move(shared), std::move(signals));
}

SignalSpec block_ensemble(BlockPartition partition, std::vector<std::vector<Amplitude>> signals) {
  partition.validate();
  if (std::abs(partition.total_weight() - 1.0) > kTolerance) throw DomainError("block weights must sum to 1");
  const auto owner = partition.block_of();
  std::vector<double> spectrum(partition.universe, 0.0);
  for (std::size_t m = 0; m < partition.blocks.size(); ++m)
    for (auto k : partition.blocks[m]) spectrum[k] = partition.weights[m] / static_cast<double>(partition.blocks[m].size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (signals[i].size() != partition.universe) throw DimensionError("signal dimension must equal the partition universe");
    std::vector<double> block_weight(partition.blocks.size(), 0.0);
    for (std::size_t k = 0; k < signals[i].size(); ++k) {
      const double w = std::norm(signals[i][k]);
      if (owner[k] < 0) {
        if (w > kTolerance) throw DomainError("signal " + std::to_string(i) + " has weight outside the partition");
        continue;
      }
      block_weight[static_cast<std::size_t>(owner[k])] += w;
    }
    for (std::size_t m = 0; m < block_weight.size(); ++m)
      if (std::abs(block_weight[m] - partition.weights[m]) > kTolerance)
        throw DomainError("signal " + std::to_string(i) + " deviates from the weight of block " + std::to_string(m));
  }
  SharedKnowledge shared{signals.size(), partition.universe, std::move(spectrum), std::move(partition), {}};
  return SignalSpec(std::move(shared), std::move(signals));
}

SignalSpec qutrit_ensemble(double c_squared, std::vector<std::vector<Amplitude>> signals) {
  if (!(c_squared > 0.0 && c_squared < 1.0)) throw DomainError("c^2 must lie strictly between 0 and 1");
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (signals[i].size() != 3) throw DimensionError("grouped signals are qutrits");
    if (std::abs(std::norm(signals[i][2]) - c_squared) > kTolerance)
      throw DomainError("signal " + std::to_string(i) + " violates |c_i|^2 = c^2");
  }
  const double d_squared = (1.0 - c_squared) / 2.0;
  SharedKnowledge shared{signals.size(), 3, {d_squared, d_squared, c_squared}, std::nullopt, {{"c2", c_squared}}};
  return SignalSpec(std::move(shared), std::move(signals));
}

std::vector<double> random_phases(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> out(n);
  for (auto& t : out) t = u(rng);
  return out;
}

std::vector<Amplitude> random_amplitudes(std::size_t dim, double squared_norm, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Amplitude> v(dim);
  double w = 0.0;
  do {
    w = 0.0;
    for (auto& x : v) {
      x = {g(rng), g(rng)};
      w += std::norm(x);
    }
  } while (w < 1e-12);
  const double scale = std::sqrt(squared_norm / w);
  for (auto& x : v) x *= scale;
  return v;
}

std::vector<std::vector<Amplitude>> random_paired_signals(double e_squared, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Amplitude>> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto low = random_amplitudes(2, 2.0 * e_squared, rng);
    auto high = random_amplitudes(2, 1.0 - 2.0 * e_squared, rng);
    out.push_back({low[0], low[1], high[0], high[1]});
  }
  return out;
}

std::vector<std::vector<Amplitude>> random_block_signals(const BlockPartition& partition, std::size_t n,
                                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Amplitude>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Amplitude> s(partition.universe);
    for (std::size_t m = 0; m < partition.blocks.size(); ++m) {
      const auto part = random_amplitudes(partition.blocks[m].size(), partition.weights[m], rng);
      for (std::size_t r = 0; r < part.size(); ++r) s[partition.blocks[m][r]] = part[r];
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<Amplitude>> random_qutrit_signals(double c_squared, std::size_t n, std::uint64_t seed) {
  if (!(c_squared > 0.0 && c_squared < 1.0)) throw DomainError("c^2 must lie strictly between 0 and 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const double c = std::sqrt(c_squared);
  std::vector<std::vector<Amplitude>> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ab = random_amplitudes(2, 1.0 - c_squared, rng);
    out.push_back({ab[0], ab[1], std::polar(c, u(rng))});
  }
  return out;
}

PureState random_state(std::vector<std::size_t> dims, std::mt19937_64& rng) {
  std::size_t size = 1;
  for (auto d : dims) size *= d;
  return PureState::normalized(std::move(dims), random_amplitudes(size, 1.0, rng));
}

}  // namespace locc
