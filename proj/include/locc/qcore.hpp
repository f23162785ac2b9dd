#pragma once

// Dense linear algebra for small composite quantum systems.
//
// Basis labels are mixed-radix over the subsystem dimensions with the
// leftmost subsystem most significant, so for dims {2, 3} the label of
// |1, 2> is 1 * 3 + 2 = 5. Every function returns a new value; nothing here
// mutates its arguments.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace locc {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultMaxAmplitudes = std::size_t{1} << 20;
inline constexpr double kTolerance = 1e-9;
inline constexpr double kProbabilityFloor = 1e-12;

class PureState {
 public:
  /// The trivial state of zero subsystems (a single amplitude 1).
  PureState();

  /// Validates dims >= 2, length and unit norm within kTolerance.
  static PureState from_amplitudes(std::vector<std::size_t> dims, std::vector<Amplitude> amps);
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(std::vector<std::size_t> dims, std::vector<Amplitude> amps);
  static PureState basis(std::vector<std::size_t> dims, std::span<const std::size_t> labels);
  static PureState qubit(Amplitude a, Amplitude b);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude operator[](std::size_t index) const { return amps_[index]; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::size_t subsystem_count() const noexcept { return dims_.size(); }
  double norm() const;

 private:
  PureState(std::vector<std::size_t> dims, std::vector<Amplitude> amps);
  std::vector<std::size_t> dims_;
  std::vector<Amplitude> amps_;
};

/// Square matrix, row-major, unitary within kTolerance.
class Unitary {
 public:
  static Unitary from_entries(std::size_t dim, std::vector<Amplitude> entries);
  static Unitary identity(std::size_t dim);
  /// Skips the O(dim^3) unitarity check. Only for matrices that are unitary
  /// by construction (Fourier, permutations, diagonal phases).
  static Unitary unchecked(std::size_t dim, std::vector<Amplitude> entries);

  std::size_t dim() const noexcept { return dim_; }
  Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const Amplitude> entries() const noexcept { return entries_; }

  Unitary adjoint() const;
  Unitary operator*(const Unitary& rhs) const;
  /// Kronecker product, this as the more significant factor.
  Unitary kron(const Unitary& rhs) const;
  std::vector<Amplitude> apply(std::span<const Amplitude> vec) const;

 private:
  Unitary(std::size_t dim, std::vector<Amplitude> entries);
  std::size_t dim_ = 0;
  std::vector<Amplitude> entries_;
};

/// Hermitian, unit-trace, positive semidefinite matrix, row-major.
class DensityMatrix {
 public:
  static DensityMatrix from_entries(std::size_t dim, std::vector<Amplitude> entries);
  static DensityMatrix projector(const PureState& state);
  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix diagonal(std::span<const double> probabilities);

  std::size_t dim() const noexcept { return dim_; }
  Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const Amplitude> entries() const noexcept { return entries_; }

  /// Ascending eigenvalues.
  std::vector<double> eigenvalues() const;
  double purity() const;

 private:
  DensityMatrix(std::size_t dim, std::vector<Amplitude> entries);
  std::size_t dim_ = 0;
  std::vector<Amplitude> entries_;
};

struct MeasurementResult {
  std::size_t outcome = 0;
  double probability = 0.0;
  PureState post;
};

/// Optional grouping of target basis labels into coarser outcomes:
/// outcome_of[local label] is the reported outcome.
struct Coarsening {
  std::vector<std::size_t> outcome_of;
  std::size_t outcome_count = 0;
};

PureState tensor(const PureState& left, const PureState& right,
                 std::size_t max_amplitudes = kDefaultMaxAmplitudes);

/// Applies `u` to `targets` (in the listed order, first most significant).
PureState apply_unitary(const PureState& state, const Unitary& u, std::span<const std::size_t> targets);

/// Applies `blocks[v]` to `targets` on the component where subsystem `control` holds value v.
PureState apply_controlled(const PureState& state, std::size_t control, std::span<const Unitary> blocks,
                           std::span<const std::size_t> targets);

/// Born probabilities of each outcome, indexed by target-local label or by coarse outcome.
std::vector<double> outcome_probabilities(const PureState& state, std::span<const std::size_t> targets,
                                          const Coarsening* coarsening = nullptr);

/// Projects onto one outcome and renormalizes. Throws DomainError if its probability is below kProbabilityFloor.
PureState collapse(const PureState& state, std::span<const std::size_t> targets, std::size_t outcome,
                   const Coarsening* coarsening = nullptr);

/// Picks the smallest outcome whose cumulative probability exceeds `rand`.
std::size_t sample_outcome(std::span<const double> probabilities, double rand);

MeasurementResult measure(const PureState& state, std::span<const std::size_t> targets, double rand);

/// Every outcome with probability above kProbabilityFloor, ascending by outcome.
std::vector<MeasurementResult> enumerate_branches(const PureState& state, std::span<const std::size_t> targets,
                                                  const Coarsening* coarsening = nullptr);

/// Partial trace keeping `keep` (in the listed order).
DensityMatrix reduced_density(const PureState& state, std::span<const std::size_t> keep);

/// Reorders subsystems so that new subsystem i is old subsystem order[i].
PureState permute_subsystems(const PureState& state, std::span<const std::size_t> order);

/// Replaces `targets` by new subsystems `new_dims` appended at the end.
/// map[target-local label] is the new composite label, or -1 for labels that must carry no amplitude.
/// Throws DomainError when more than kProbabilityFloor of the weight sits on unmapped labels.
PureState relabel(const PureState& state, std::span<const std::size_t> targets,
                  const std::vector<std::size_t>& new_dims, std::span<const std::int64_t> map,
                  std::size_t max_amplitudes = kDefaultMaxAmplitudes);

/// If `targets` factor out of the state with residual weight <= tolerance, returns the remainder
/// (other subsystems, original order).
std::optional<PureState> factor_out(const PureState& state, std::span<const std::size_t> targets,
                                    double tolerance = kTolerance);

Amplitude inner_product(const PureState& a, const PureState& b);
double fidelity_pure(const PureState& a, const PureState& b);
/// <psi| rho |psi>
double fidelity_mixed(const DensityMatrix& rho, const PureState& psi);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

double binary_entropy(double p);
/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace locc
