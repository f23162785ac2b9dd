#pragma once

// Typical sets, compression codebooks and block partitions of basis labels.
//
// Strings of length n over an alphabet of size k are identified with their
// base-k label (first symbol most significant), so ascending labels are
// lexicographic order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "locc/session.hpp"

namespace locc {

/// Strongly typical strings: every symbol's empirical frequency lies within
/// delta of its probability, and zero-probability symbols never occur.
class TypicalSet {
 public:
  static constexpr std::size_t kMaxEnumerated = std::size_t{1} << 22;

  /// Throws EmptyTypicalSet when no string qualifies.
  static TypicalSet build(std::vector<double> probabilities, std::size_t n, double delta);

  std::size_t alphabet_size() const noexcept { return probabilities_.size(); }
  std::size_t length() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  const std::vector<std::uint64_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  std::vector<std::size_t> symbols(std::uint64_t label) const;
  bool contains(std::uint64_t label) const;
  /// Sum of member probabilities, by enumeration.
  double weight() const;

 private:
  TypicalSet() = default;
  std::vector<double> probabilities_;
  std::size_t n_ = 0;
  double delta_ = 0.0;
  std::vector<std::uint64_t> members_;
};

/// The membership rule on a symbol-count vector.
bool counts_are_typical(std::span<const std::size_t> counts, std::span<const double> probabilities, double delta);

TypicalSet typical_set(std::vector<double> probabilities, std::size_t n, double delta);

/// Total probability of the typical set, summed over type classes without
/// enumerating strings. Throws EmptyTypicalSet like typical_set.
double typical_weight(std::span<const double> probabilities, std::size_t n, double delta);

/// Bijection between typical strings and indices 0..D-1, lexicographic.
class Codebook {
 public:
  explicit Codebook(TypicalSet typical);

  const TypicalSet& typical() const noexcept { return typical_; }
  std::size_t size() const noexcept { return typical_.size(); }
  std::optional<std::size_t> encode(std::uint64_t label) const;
  std::uint64_t decode(std::size_t index) const;

 private:
  TypicalSet typical_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Disjoint blocks of basis labels with per-block weights.
struct BlockPartition {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<double> weights;

  /// Throws DomainError on overlap, out-of-range labels, empty blocks or bad weights.
  void validate() const;
  double total_weight() const;
  /// Drops blocks of zero weight.
  BlockPartition without_empty_blocks() const;
  /// Weights rescaled to sum to 1.
  BlockPartition normalized() const;
  /// Relabels the covered labels to 0..L-1 in ascending order. `labels[new] = old`.
  BlockPartition compacted(std::vector<std::size_t>* labels = nullptr) const;
  std::vector<std::size_t> block_sizes() const;
  /// Label -> block index, or -1 for uncovered labels.
  std::vector<std::int64_t> block_of() const;
};

/// Groups strings over {0,1,2} of length n1 by the positions of their 2s.
/// With `delta`, only counts w with |w/n1 - c_squared| <= delta are kept.
/// Block weight is c_squared^w (1 - c_squared)^(n1 - w).
BlockPartition position_partition(std::size_t n1, double c_squared, std::optional<double> delta = std::nullopt);

std::size_t lcm_of_block_sizes(const BlockPartition& partition);

struct CompressionResult {
  bool success = false;
  double success_probability = 0.0;
  std::optional<RegisterId> compressed;
};

/// Projects `registers` onto the typical subspace (outcome 0 = typical) and,
/// on success, relabels the typical strings into one fresh register of
/// dimension max(D, 2). On failure nothing is relabeled.
CompressionResult schumacher_compress(Session& session, Party party, std::span<const RegisterId> registers,
                                      const Codebook& codebook);

/// Inverse relabeling of a compressed register back into n registers.
std::vector<RegisterId> schumacher_decompress(Session& session, Party party, RegisterId compressed,
                                              const Codebook& codebook);

}  // namespace locc
