#include "locc/typspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "locc/errors.hpp"

namespace locc {

namespace {

// Absorbs rounding in count/n comparisons such as |6/8 - 0.75| <= 0.125.
constexpr double kWindowSlack = 1e-12;

void check_distribution(std::span<const double> p, std::size_t n, double delta) {
  if (p.size() < 2) throw DomainError("alphabet needs at least two symbols");
  if (n == 0) throw DomainError("string length must be at least 1");
  if (!(delta >= 0.0)) throw DomainError("delta must be nonnegative");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("probabilities must lie in [0, 1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kTolerance) throw DomainError("probabilities must sum to 1");
}

std::uint64_t checked_power(std::size_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Calls f(counts) for every composition of n into counts.size() parts.
template <typename F>
void for_each_composition(std::vector<std::size_t>& counts, std::size_t slot, std::size_t remaining, F&& f) {
  if (slot + 1 == counts.size()) {
    counts[slot] = remaining;
    f(counts);
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    counts[slot] = c;
    for_each_composition(counts, slot + 1, remaining - c, f);
  }
}

}  // namespace

bool counts_are_typical(std::span<const std::size_t> counts, std::span<const double> probabilities, double delta) {
  const std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (probabilities[s] == 0.0 && counts[s] > 0) return false;
    const double freq = static_cast<double>(counts[s]) / static_cast<double>(n);
    if (std::abs(freq - probabilities[s]) > delta + kWindowSlack) return false;
  }
  return true;
}

TypicalSet TypicalSet::build(std::vector<double> probabilities, std::size_t n, double delta) {
  check_distribution(probabilities, n, delta);
  const std::size_t k = probabilities.size();
  const std::uint64_t total = checked_power(k, n, kMaxEnumerated);
  if (total > kMaxEnumerated) throw CapacityError("typical set enumeration exceeds " + std::to_string(kMaxEnumerated) + " strings");
  TypicalSet set;
  set.n_ = n;
  set.delta_ = delta;
  std::vector<std::size_t> digits(n, 0);
  std::vector<std::size_t> counts(k, 0);
  counts[0] = n;
  for (std::uint64_t label = 0; label < total; ++label) {
    if (counts_are_typical(counts, probabilities, delta)) set.members_.push_back(label);
    for (std::size_t j = n; j-- > 0;) {
      --counts[digits[j]];
      if (++digits[j] < k) {
        ++counts[digits[j]];
        break;
      }
      digits[j] = 0;
      ++counts[0];
    }
  }
  set.probabilities_ = std::move(probabilities);
  if (set.members_.empty()) throw EmptyTypicalSet("no string of length " + std::to_string(n) + " is typical");
  return set;
}

std::vector<std::size_t> TypicalSet::symbols(std::uint64_t label) const {
  std::vector<std::size_t> out(n_);
  const std::size_t k = alphabet_size();
  for (std::size_t j = n_; j-- > 0;) {
    out[j] = static_cast<std::size_t>(label % k);
    label /= k;
  }
  return out;
}

bool TypicalSet::contains(std::uint64_t label) const {
  return std::binary_search(members_.begin(), members_.end(), label);
}

double TypicalSet::weight() const {
  double w = 0.0;
  for (auto label : members_) {
    double p = 1.0;
    for (auto s : symbols(label)) p *= probabilities_[s];
    w += p;
  }
  return w;
}

TypicalSet typical_set(std::vector<double> probabilities, std::size_t n, double delta) {
  return TypicalSet::build(std::move(probabilities), n, delta);
}

double typical_weight(std::span<const double> probabilities, std::size_t n, double delta) {
  check_distribution(probabilities, n, delta);
  std::vector<std::size_t> counts(probabilities.size(), 0);
  double weight = 0.0;
  bool any = false;
  for_each_composition(counts, 0, n, [&](const std::vector<std::size_t>& c) {
    if (!counts_are_typical(c, probabilities, delta)) return;
    any = true;
    double term = 1.0;
    std::size_t remaining = n;
    for (std::size_t s = 0; s < c.size(); ++s) {
      term *= binomial(remaining, c[s]) * std::pow(probabilities[s], static_cast<double>(c[s]));
      remaining -= c[s];
    }
    weight += term;
  });
  if (!any) throw EmptyTypicalSet("no string of length " + std::to_string(n) + " is typical");
  return weight;
}

// ---------------------------------------------------------------- Codebook

Codebook::Codebook(TypicalSet typical) : typical_(std::move(typical)) {
  const auto& m = typical_.members();
  index_.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) index_.emplace(m[i], i);
}

std::optional<std::size_t> Codebook::encode(std::uint64_t label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Codebook::decode(std::size_t index) const { return typical_.members().at(index); }

// ---------------------------------------------------------------- BlockPartition

void BlockPartition::validate() const {
  if (blocks.size() != weights.size()) throw DomainError("one weight per block required");
  std::vector<bool> seen(universe, false);
  for (const auto& block : blocks) {
    if (block.empty()) throw DomainError("partition block is empty");
    for (auto label : block) {
      if (label >= universe) throw DomainError("partition label outside the index universe");
      if (seen[label]) throw DomainError("partition blocks overlap at label " + std::to_string(label));
      seen[label] = true;
    }
  }
  for (double w : weights)
    if (!(w >= 0.0 && w <= 1.0 + kTolerance)) throw DomainError("block weight outside [0, 1]");
}

double BlockPartition::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

BlockPartition BlockPartition::without_empty_blocks() const {
  BlockPartition out{universe, {}, {}};
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    if (weights[m] <= 0.0) continue;
    out.blocks.push_back(blocks[m]);
    out.weights.push_back(weights[m]);
  }
  return out;
}

BlockPartition BlockPartition::normalized() const {
  const double total = total_weight();
  if (!(total > 0.0)) throw DomainError("partition has no weight to normalize");
  BlockPartition out = *this;
  for (auto& w : out.weights) w /= total;
  return out;
}

BlockPartition BlockPartition::compacted(std::vector<std::size_t>* labels) const {
  std::vector<std::size_t> covered;
  for (const auto& block : blocks) covered.insert(covered.end(), block.begin(), block.end());
  std::sort(covered.begin(), covered.end());
  std::vector<std::int64_t> new_label(universe, -1);
  for (std::size_t i = 0; i < covered.size(); ++i) new_label[covered[i]] = static_cast<std::int64_t>(i);
  BlockPartition out{covered.size(), {}, weights};
  for (const auto& block : blocks) {
    std::vector<std::size_t> b;
    for (auto label : block) b.push_back(static_cast<std::size_t>(new_label[label]));
    out.blocks.push_back(std::move(b));
  }
  if (labels) *labels = std::move(covered);
  return out;
}

std::vector<std::size_t> BlockPartition::block_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& b : blocks) sizes.push_back(b.size());
  return sizes;
}

std::vector<std::int64_t> BlockPartition::block_of() const {
  std::vector<std::int64_t> owner(universe, -1);
  for (std::size_t m = 0; m < blocks.size(); ++m)
    for (auto label : blocks[m]) owner[label] = static_cast<std::int64_t>(m);
  return owner;
}

BlockPartition position_partition(std::size_t n1, double c_squared, std::optional<double> delta) {
  if (n1 == 0) throw DomainError("group size must be at least 1");
  if (!(c_squared > 0.0 && c_squared < 1.0)) throw DomainError("c^2 must lie strictly between 0 and 1");
  if (n1 > 16) throw CapacityError("position partition limited to 16 signals per group");
  std::size_t universe = 1;
  for (std::size_t i = 0; i < n1; ++i) universe *= 3;
  BlockPartition partition{universe, {}, {}};
  // Position 0 is the most significant symbol; bit (n1 - 1 - j) of the mask marks position j.
  for (std::size_t w = 0; w <= n1; ++w) {
    if (delta) {
      const double freq = static_cast<double>(w) / static_cast<double>(n1);
      if (std::abs(freq - c_squared) > *delta + kWindowSlack) continue;
    }
    for (std::uint32_t mask = 0; mask < (1u << n1); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != w) continue;
      std::vector<std::size_t> block;
      const std::size_t free_positions = n1 - w;
      for (std::uint32_t bits = 0; bits < (1u << free_positions); ++bits) {
        std::size_t label = 0;
        std::size_t next_bit = free_positions;
        for (std::size_t j = 0; j < n1; ++j) {
          std::size_t symbol;
          if (mask >> (n1 - 1 - j) & 1u) {
            symbol = 2;
          } else {
            --next_bit;
            symbol = bits >> next_bit & 1u;
          }
          label = label * 3 + symbol;
        }
        block.push_back(label);
      }
      std::sort(block.begin(), block.end());
      partition.blocks.push_back(std::move(block));
      partition.weights.push_back(std::pow(c_squared, static_cast<double>(w)) *
                                  std::pow(1.0 - c_squared, static_cast<double>(n1 - w)));
    }
  }
  if (partition.blocks.empty()) throw EmptyTypicalSet("no count of 2s lies in the typicality window");
  return partition;
}

std::size_t lcm_of_block_sizes(const BlockPartition& partition) {
  if (partition.blocks.empty()) throw DomainError("partition has no blocks");
  std::size_t d = 1;
  for (const auto& b : partition.blocks) {
    if (b.empty()) throw DomainError("partition block is empty");
    d = std::lcm(d, b.size());
  }
  return d;
}

// ---------------------------------------------------------------- compression

CompressionResult schumacher_compress(Session& session, Party party, std::span<const RegisterId> registers,
                                      const Codebook& codebook) {
  const auto& typical = codebook.typical();
  if (registers.size() != typical.length()) throw DimensionError("codebook length does not match register count");
  for (auto id : registers)
    if (session.reg(id).dim != typical.alphabet_size()) throw DimensionError("codebook alphabet does not match register");
  std::size_t local_dim = 1;
  for (std::size_t i = 0; i < registers.size(); ++i) local_dim *= typical.alphabet_size();

  Coarsening projector{std::vector<std::size_t>(local_dim, 1), 2};
  for (auto label : typical.members()) projector.outcome_of[label] = 0;
  const auto m = session.local_measure(party, registers, &projector);
  CompressionResult result;
  result.success_probability = m.distribution[0];
  if (m.outcome != 0) return result;

  const std::size_t dim = std::max<std::size_t>(codebook.size(), 2);
  std::vector<std::int64_t> map(local_dim, -1);
  for (std::size_t i = 0; i < codebook.size(); ++i) map[codebook.decode(i)] = static_cast<std::int64_t>(i);
  const auto fresh = session.local_relabel(party, registers, {dim}, map, "compressed");
  result.success = true;
  result.compressed = fresh.front();
  return result;
}

std::vector<RegisterId> schumacher_decompress(Session& session, Party party, RegisterId compressed,
                                              const Codebook& codebook) {
  const auto& typical = codebook.typical();
  const std::size_t dim = session.reg(compressed).dim;
  if (dim != std::max<std::size_t>(codebook.size(), 2)) throw DimensionError("register does not match codebook size");
  std::vector<std::int64_t> map(dim, -1);
  for (std::size_t i = 0; i < codebook.size(); ++i) map[i] = static_cast<std::int64_t>(codebook.decode(i));
  const std::vector<std::size_t> dims(typical.length(), typical.alphabet_size());
  const RegisterId regs[] = {compressed};
  return session.local_relabel(party, regs, dims, map, "signal");
}

}  // namespace locc
