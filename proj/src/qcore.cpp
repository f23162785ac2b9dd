#include "locc/qcore.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "locc/errors.hpp"

namespace locc {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

void check_targets(const PureState& state, std::span<const std::size_t> targets) {
  std::vector<bool> seen(state.subsystem_count(), false);
  for (auto t : targets) {
    if (t >= state.subsystem_count())
      throw DimensionError("target subsystem " + std::to_string(t) + " out of range");
    if (seen[t]) throw DimensionError("duplicate target subsystem " + std::to_string(t));
    seen[t] = true;
  }
}

// Index arithmetic shared by every operation that splits the system into
// "targets" and "rest". Local labels run over the targets in listed order;
// bases run over the rest in mixed-radix order, so the k-th base visited is
// the rest label k.
struct Split {
  std::vector<std::size_t> local_offsets;
  std::vector<std::size_t> rest;
  std::vector<std::size_t> rest_dims;
  std::vector<std::size_t> rest_strides;  // global strides of rest subsystems

  Split(const PureState& state, std::span<const std::size_t> targets) {
    const auto& dims = state.dims();
    const auto strides = strides_of(dims);
    std::vector<std::size_t> target_dims;
    for (auto t : targets) target_dims.push_back(dims[t]);
    local_offsets.assign(product(target_dims), 0);
    for (std::size_t label = 0; label < local_offsets.size(); ++label) {
      std::size_t rem = label;
      std::size_t offset = 0;
      for (std::size_t j = targets.size(); j-- > 0;) {
        offset += (rem % target_dims[j]) * strides[targets[j]];
        rem /= target_dims[j];
      }
      local_offsets[label] = offset;
    }
    std::vector<bool> is_target(dims.size(), false);
    for (auto t : targets) is_target[t] = true;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (is_target[i]) continue;
      rest.push_back(i);
      rest_dims.push_back(dims[i]);
      rest_strides.push_back(strides[i]);
    }
  }

  std::size_t rest_size() const { return product(rest_dims); }

  template <typename F>
  void for_each_base(F&& f) const {
    std::vector<std::size_t> counter(rest_dims.size(), 0);
    std::size_t base = 0;
    const std::size_t count = rest_size();
    for (std::size_t k = 0; k < count; ++k) {
      f(k, base);
      for (std::size_t j = rest_dims.size(); j-- > 0;) {
        if (++counter[j] < rest_dims[j]) {
          base += rest_strides[j];
          break;
        }
        base -= (rest_dims[j] - 1) * rest_strides[j];
        counter[j] = 0;
      }
    }
  }
};

std::vector<double> hermitian_eigenvalues(std::size_t dim, std::span<const Amplitude> entries) {
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = entries[r * dim + c];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double squared_norm(std::span<const Amplitude> amps) {
  double sum = 0.0;
  for (const auto& a : amps) sum += std::norm(a);
  return sum;
}

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState() : amps_{Amplitude{1.0, 0.0}} {}

PureState::PureState(std::vector<std::size_t> dims, std::vector<Amplitude> amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {}

PureState PureState::from_amplitudes(std::vector<std::size_t> dims, std::vector<Amplitude> amps) {
  for (auto d : dims)
    if (d < 2) throw DimensionError("subsystem dimension must be at least 2");
  if (amps.size() != product(dims)) throw DimensionError("amplitude count does not match dimensions");
  for (const auto& a : amps)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw DomainError("non-finite amplitude");
  const double n2 = squared_norm(amps);
  if (std::abs(n2 - 1.0) > kTolerance) throw DomainError("state is not normalized");
  return PureState(std::move(dims), std::move(amps));
}

PureState PureState::normalized(std::vector<std::size_t> dims, std::vector<Amplitude> amps) {
  const double n = std::sqrt(squared_norm(amps));
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero vector");
  for (auto& a : amps) a /= n;
  return from_amplitudes(std::move(dims), std::move(amps));
}

PureState PureState::basis(std::vector<std::size_t> dims, std::span<const std::size_t> labels) {
  if (labels.size() != dims.size()) throw DimensionError("one basis label per subsystem required");
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 2) throw DimensionError("subsystem dimension must be at least 2");
    if (labels[i] >= dims[i]) throw DomainError("basis label out of range");
    index = index * dims[i] + labels[i];
  }
  std::vector<Amplitude> amps(product(dims));
  amps[index] = 1.0;
  return PureState(std::move(dims), std::move(amps));
}

PureState PureState::qubit(Amplitude a, Amplitude b) { return from_amplitudes({2}, {a, b}); }

double PureState::norm() const { return std::sqrt(squared_norm(amps_)); }

// ---------------------------------------------------------------- Unitary

Unitary::Unitary(std::size_t dim, std::vector<Amplitude> entries) : dim_(dim), entries_(std::move(entries)) {}

Unitary Unitary::from_entries(std::size_t dim, std::vector<Amplitude> entries) {
  if (dim == 0 || entries.size() != dim * dim) throw DimensionError("unitary needs dim*dim entries");
  Unitary u(dim, std::move(entries));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Amplitude sum = 0.0;
      for (std::size_t k = 0; k < dim; ++k) sum += std::conj(u(k, i)) * u(k, j);
      const Amplitude expected = i == j ? 1.0 : 0.0;
      if (std::abs(sum - expected) > kTolerance) throw DomainError("matrix is not unitary");
    }
  }
  return u;
}

Unitary Unitary::unchecked(std::size_t dim, std::vector<Amplitude> entries) {
  if (dim == 0 || entries.size() != dim * dim) throw DimensionError("unitary needs dim*dim entries");
  return Unitary(dim, std::move(entries));
}

Unitary Unitary::identity(std::size_t dim) {
  std::vector<Amplitude> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return Unitary(dim, std::move(e));
}

Unitary Unitary::adjoint() const {
  std::vector<Amplitude> e(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) e[c * dim_ + r] = std::conj((*this)(r, c));
  return Unitary(dim_, std::move(e));
}

Unitary Unitary::operator*(const Unitary& rhs) const {
  if (rhs.dim_ != dim_) throw DimensionError("unitary product dimension mismatch");
  std::vector<Amplitude> e(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t k = 0; k < dim_; ++k) {
      const Amplitude lhs = (*this)(r, k);
      if (lhs == Amplitude{}) continue;
      for (std::size_t c = 0; c < dim_; ++c) e[r * dim_ + c] += lhs * rhs(k, c);
    }
  return Unitary(dim_, std::move(e));
}

Unitary Unitary::kron(const Unitary& rhs) const {
  const std::size_t n = dim_ * rhs.dim_;
  std::vector<Amplitude> e(n * n);
  for (std::size_t r1 = 0; r1 < dim_; ++r1)
    for (std::size_t c1 = 0; c1 < dim_; ++c1)
      for (std::size_t r2 = 0; r2 < rhs.dim_; ++r2)
        for (std::size_t c2 = 0; c2 < rhs.dim_; ++c2)
          e[(r1 * rhs.dim_ + r2) * n + (c1 * rhs.dim_ + c2)] = (*this)(r1, c1) * rhs(r2, c2);
  return Unitary(n, std::move(e));
}

std::vector<Amplitude> Unitary::apply(std::span<const Amplitude> vec) const {
  if (vec.size() != dim_) throw DimensionError("vector length does not match unitary");
  std::vector<Amplitude> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Amplitude sum = 0.0;
    const Amplitude* row = entries_.data() + r * dim_;
    for (std::size_t c = 0; c < dim_; ++c) sum += row[c] * vec[c];
    out[r] = sum;
  }
  return out;
}

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::from_entries(std::size_t dim, std::vector<Amplitude> entries) {
  if (dim == 0 || entries.size() != dim * dim) throw DimensionError("density matrix needs dim*dim entries");
  Amplitude trace = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    trace += entries[r * dim + r];
    for (std::size_t c = 0; c < dim; ++c)
      if (std::abs(entries[r * dim + c] - std::conj(entries[c * dim + r])) > kTolerance)
        throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(trace - 1.0) > kTolerance) throw DomainError("density matrix trace is not 1");
  const auto ev = hermitian_eigenvalues(dim, entries);
  if (!ev.empty() && ev.front() < -kTolerance) throw DomainError("density matrix has a negative eigenvalue");
  return DensityMatrix(dim, std::move(entries));
}

DensityMatrix DensityMatrix::projector(const PureState& state) {
  const auto amps = state.amplitudes();
  const std::size_t n = amps.size();
  std::vector<Amplitude> e(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) e[r * n + c] = amps[r] * std::conj(amps[c]);
  return DensityMatrix(n, std::move(e));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  std::vector<Amplitude> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0 / static_cast<double>(dim);
  return DensityMatrix(dim, std::move(e));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  const std::size_t n = probabilities.size();
  std::vector<Amplitude> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = probabilities[i];
  return from_entries(n, std::move(e));
}

std::vector<double> DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(dim_, entries_); }

double DensityMatrix::purity() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += std::norm(e);
  return sum;
}

// ---------------------------------------------------------------- operations

PureState tensor(const PureState& left, const PureState& right, std::size_t max_amplitudes) {
  const std::size_t n = left.size() * right.size();
  if (right.size() != 0 && n / right.size() != left.size()) throw CapacityError("tensor product size overflow");
  if (n > max_amplitudes)
    throw CapacityError("tensor product needs " + std::to_string(n) + " amplitudes, cap is " +
                        std::to_string(max_amplitudes));
  std::vector<std::size_t> dims = left.dims();
  dims.insert(dims.end(), right.dims().begin(), right.dims().end());
  std::vector<Amplitude> amps(n);
  const auto la = left.amplitudes();
  const auto ra = right.amplitudes();
  for (std::size_t i = 0; i < la.size(); ++i)
    for (std::size_t j = 0; j < ra.size(); ++j) amps[i * ra.size() + j] = la[i] * ra[j];
  if (dims.empty()) return PureState();
  return PureState::from_amplitudes(std::move(dims), std::move(amps));
}

PureState apply_unitary(const PureState& state, const Unitary& u, std::span<const std::size_t> targets) {
  check_targets(state, targets);
  std::size_t target_dim = 1;
  for (auto t : targets) target_dim *= state.dims()[t];
  if (u.dim() != target_dim) throw DimensionError("unitary dimension does not match targets");
  const Split split(state, targets);
  // Nonzero entries per column, accumulated over the nonzero local amplitudes only.
  std::vector<std::vector<std::pair<std::size_t, Amplitude>>> cols(target_dim);
  for (std::size_t r = 0; r < target_dim; ++r)
    for (std::size_t c = 0; c < target_dim; ++c)
      if (u(r, c) != Amplitude{0.0}) cols[c].emplace_back(r, u(r, c));
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<Amplitude> local(target_dim);
  split.for_each_base([&](std::size_t, std::size_t base) {
    bool empty = true;
    for (std::size_t t = 0; t < target_dim; ++t) {
      Amplitude& a = amps[base + split.local_offsets[t]];
      local[t] = a;
      empty = empty && a == Amplitude{0.0};
      a = 0.0;
    }
    if (empty) return;
    for (std::size_t c = 0; c < target_dim; ++c) {
      if (local[c] == Amplitude{0.0}) continue;
      for (const auto& [r, v] : cols[c]) amps[base + split.local_offsets[r]] += v * local[c];
    }
  });
  return PureState::from_amplitudes(state.dims(), std::move(amps));
}

PureState apply_controlled(const PureState& state, std::size_t control, std::span<const Unitary> blocks,
                           std::span<const std::size_t> targets) {
  check_targets(state, targets);
  if (control >= state.subsystem_count()) throw DimensionError("control subsystem out of range");
  if (std::find(targets.begin(), targets.end(), control) != targets.end())
    throw DimensionError("control cannot also be a target");
  if (blocks.size() != state.dims()[control]) throw DimensionError("one block per control value required");
  std::size_t target_dim = 1;
  for (auto t : targets) target_dim *= state.dims()[t];
  for (const auto& b : blocks)
    if (b.dim() != target_dim) throw DimensionError("controlled block dimension does not match targets");
  const Split split(state, targets);
  const auto strides = strides_of(state.dims());
  const std::size_t control_stride = strides[control];
  const std::size_t control_dim = state.dims()[control];
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<Amplitude> local(target_dim);
  split.for_each_base([&](std::size_t, std::size_t base) {
    const Unitary& u = blocks[(base / control_stride) % control_dim];
    for (std::size_t t = 0; t < target_dim; ++t) local[t] = amps[base + split.local_offsets[t]];
    const auto out = u.apply(local);
    for (std::size_t t = 0; t < target_dim; ++t) amps[base + split.local_offsets[t]] = out[t];
  });
  return PureState::from_amplitudes(state.dims(), std::move(amps));
}

std::vector<double> outcome_probabilities(const PureState& state, std::span<const std::size_t> targets,
                                          const Coarsening* coarsening) {
  check_targets(state, targets);
  const Split split(state, targets);
  const std::size_t local_dim = split.local_offsets.size();
  if (coarsening && coarsening->outcome_of.size() != local_dim)
    throw DimensionError("coarsening must cover every target label");
  std::vector<double> probs(coarsening ? coarsening->outcome_count : local_dim, 0.0);
  const auto amps = state.amplitudes();
  split.for_each_base([&](std::size_t, std::size_t base) {
    for (std::size_t t = 0; t < local_dim; ++t) {
      const std::size_t outcome = coarsening ? coarsening->outcome_of[t] : t;
      probs.at(outcome) += std::norm(amps[base + split.local_offsets[t]]);
    }
  });
  return probs;
}

PureState collapse(const PureState& state, std::span<const std::size_t> targets, std::size_t outcome,
                   const Coarsening* coarsening) {
  check_targets(state, targets);
  const Split split(state, targets);
  const std::size_t local_dim = split.local_offsets.size();
  if (coarsening && coarsening->outcome_of.size() != local_dim)
    throw DimensionError("coarsening must cover every target label");
  std::vector<Amplitude> amps(state.size());
  const auto src = state.amplitudes();
  double weight = 0.0;
  split.for_each_base([&](std::size_t, std::size_t base) {
    for (std::size_t t = 0; t < local_dim; ++t) {
      const std::size_t o = coarsening ? coarsening->outcome_of[t] : t;
      if (o != outcome) continue;
      const std::size_t idx = base + split.local_offsets[t];
      amps[idx] = src[idx];
      weight += std::norm(src[idx]);
    }
  });
  if (weight <= kProbabilityFloor) throw DomainError("measurement outcome has zero probability");
  const double scale = 1.0 / std::sqrt(weight);
  for (auto& a : amps) a *= scale;
  return PureState::from_amplitudes(state.dims(), std::move(amps));
}

std::size_t sample_outcome(std::span<const double> probabilities, double rand) {
  double cumulative = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= kProbabilityFloor) continue;
    cumulative += probabilities[i];
    last_nonzero = i;
    if (cumulative > rand) return i;
  }
  return last_nonzero;
}

MeasurementResult measure(const PureState& state, std::span<const std::size_t> targets, double rand) {
  const auto probs = outcome_probabilities(state, targets);
  const std::size_t outcome = sample_outcome(probs, rand);
  return {outcome, probs[outcome], collapse(state, targets, outcome)};
}

std::vector<MeasurementResult> enumerate_branches(const PureState& state, std::span<const std::size_t> targets,
                                                  const Coarsening* coarsening) {
  const auto probs = outcome_probabilities(state, targets, coarsening);
  std::vector<MeasurementResult> branches;
  for (std::size_t o = 0; o < probs.size(); ++o) {
    if (probs[o] <= kProbabilityFloor) continue;
    branches.push_back({o, probs[o], collapse(state, targets, o, coarsening)});
  }
  return branches;
}

DensityMatrix reduced_density(const PureState& state, std::span<const std::size_t> keep) {
  check_targets(state, keep);
  const Split split(state, keep);
  const std::size_t n = split.local_offsets.size();
  std::vector<Amplitude> rho(n * n);
  const auto amps = state.amplitudes();
  split.for_each_base([&](std::size_t, std::size_t base) {
    for (std::size_t r = 0; r < n; ++r) {
      const Amplitude ar = amps[base + split.local_offsets[r]];
      if (ar == Amplitude{}) continue;
      for (std::size_t c = 0; c < n; ++c) rho[r * n + c] += ar * std::conj(amps[base + split.local_offsets[c]]);
    }
  });
  return DensityMatrix::from_entries(n, std::move(rho));
}

PureState permute_subsystems(const PureState& state, std::span<const std::size_t> order) {
  if (order.size() != state.subsystem_count()) throw DimensionError("permutation must list every subsystem");
  check_targets(state, order);
  if (order.empty()) return state;
  const Split split(state, order);
  std::vector<std::size_t> dims;
  for (auto o : order) dims.push_back(state.dims()[o]);
  std::vector<Amplitude> amps(state.size());
  const auto src = state.amplitudes();
  for (std::size_t label = 0; label < amps.size(); ++label) amps[label] = src[split.local_offsets[label]];
  return PureState::from_amplitudes(std::move(dims), std::move(amps));
}

PureState relabel(const PureState& state, std::span<const std::size_t> targets,
                  const std::vector<std::size_t>& new_dims, std::span<const std::int64_t> map,
                  std::size_t max_amplitudes) {
  check_targets(state, targets);
  const Split split(state, targets);
  const std::size_t local_dim = split.local_offsets.size();
  if (map.size() != local_dim) throw DimensionError("relabel map must cover every target label");
  const std::size_t new_local = product(new_dims);
  for (auto d : new_dims)
    if (d < 2) throw DimensionError("subsystem dimension must be at least 2");
  const std::size_t total = split.rest_size() * new_local;
  if (total > max_amplitudes)
    throw CapacityError("relabel needs " + std::to_string(total) + " amplitudes, cap is " +
                        std::to_string(max_amplitudes));
  std::vector<bool> used(new_local, false);
  for (auto m : map) {
    if (m < 0) continue;
    if (static_cast<std::size_t>(m) >= new_local) throw DimensionError("relabel target label out of range");
    if (used[m]) throw DomainError("relabel map is not injective");
    used[m] = true;
  }
  std::vector<Amplitude> amps(total);
  const auto src = state.amplitudes();
  double lost = 0.0;
  split.for_each_base([&](std::size_t rest_label, std::size_t base) {
    for (std::size_t t = 0; t < local_dim; ++t) {
      const Amplitude a = src[base + split.local_offsets[t]];
      if (map[t] < 0) {
        lost += std::norm(a);
        continue;
      }
      amps[rest_label * new_local + static_cast<std::size_t>(map[t])] = a;
    }
  });
  if (lost > kProbabilityFloor) throw DomainError("relabel would drop amplitude outside its domain");
  std::vector<std::size_t> dims = split.rest_dims;
  dims.insert(dims.end(), new_dims.begin(), new_dims.end());
  return PureState::normalized(std::move(dims), std::move(amps));
}

std::optional<PureState> factor_out(const PureState& state, std::span<const std::size_t> targets,
                                    double tolerance) {
  check_targets(state, targets);
  const Split split(state, targets);
  const std::size_t local_dim = split.local_offsets.size();
  const std::size_t rest_dim = split.rest_size();
  const auto amps = state.amplitudes();
  // Rows are indexed by the target label, columns by the rest label.
  auto row = [&](std::size_t t, std::vector<Amplitude>& out) {
    out.assign(rest_dim, 0.0);
    split.for_each_base([&](std::size_t k, std::size_t base) { out[k] = amps[base + split.local_offsets[t]]; });
  };
  std::vector<double> row_weight(local_dim, 0.0);
  split.for_each_base([&](std::size_t, std::size_t base) {
    for (std::size_t t = 0; t < local_dim; ++t) row_weight[t] += std::norm(amps[base + split.local_offsets[t]]);
  });
  const std::size_t best =
      static_cast<std::size_t>(std::max_element(row_weight.begin(), row_weight.end()) - row_weight.begin());
  std::vector<Amplitude> reference;
  row(best, reference);
  const double ref_norm = std::sqrt(row_weight[best]);
  for (auto& a : reference) a /= ref_norm;
  double residual = 0.0;
  std::vector<Amplitude> current;
  for (std::size_t t = 0; t < local_dim; ++t) {
    if (row_weight[t] <= 0.0) continue;
    row(t, current);
    Amplitude overlap = 0.0;
    for (std::size_t k = 0; k < rest_dim; ++k) overlap += std::conj(reference[k]) * current[k];
    residual += row_weight[t] - std::norm(overlap);
  }
  if (residual > tolerance) return std::nullopt;
  if (split.rest_dims.empty()) return PureState();
  return PureState::normalized(split.rest_dims, std::move(reference));
}

Amplitude inner_product(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw DimensionError("inner product of states with different dimensions");
  Amplitude sum = 0.0;
  const auto aa = a.amplitudes();
  const auto ba = b.amplitudes();
  for (std::size_t i = 0; i < aa.size(); ++i) sum += std::conj(aa[i]) * ba[i];
  return sum;
}

double fidelity_pure(const PureState& a, const PureState& b) { return std::norm(inner_product(a, b)); }

double fidelity_mixed(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim() != psi.size()) throw DimensionError("fidelity dimension mismatch");
  const auto amps = psi.amplitudes();
  Amplitude sum = 0.0;
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c) sum += std::conj(amps[r]) * rho(r, c) * amps[c];
  return sum.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace distance dimension mismatch");
  std::vector<Amplitude> diff(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b.entries()[i];
  double sum = 0.0;
  for (double ev : hermitian_eigenvalues(a.dim(), diff)) sum += std::abs(ev);
  return 0.5 * sum;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary entropy needs p in [0, 1]");
  const double probs[] = {p, 1.0 - p};
  return shannon_entropy(probs);
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  auto ev = rho.eigenvalues();
  for (auto& v : ev) v = std::max(v, 0.0);
  const double h = shannon_entropy(ev);
  return std::clamp(h, 0.0, std::log2(static_cast<double>(rho.dim())));
}

}  // namespace locc
