#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "locc/errors.hpp"
#include "locc/session.hpp"

namespace locc {

inline constexpr std::size_t kDefaultMaxPaths = std::size_t{1} << 16;

template <typename Result>
struct Branch {
  double probability = 0.0;
  std::vector<std::size_t> outcomes;
  Result result;
};

/// Derives the seed of sampled run `index` from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Runs `protocol` on a copy of `prototype` that follows `prefix`, taking the
/// first possible outcome at every later measurement.
template <typename Protocol>
auto run_path(const Session& prototype, Protocol&& protocol, std::vector<std::size_t> prefix) {
  using Result = decltype(protocol(std::declval<Session&>()));
  Session session = prototype;
  session.follow_path(std::move(prefix));
  Result result = protocol(session);
  return Branch<Result>{session.path().probability, session.path().chosen, std::move(result)};
}

/// Executes the protocol once per joint measurement-outcome path (depth-first,
/// outcomes ascending). The protocol must be deterministic apart from its
/// measurement outcomes.
template <typename Protocol>
auto run_exhaustive(const Session& prototype, Protocol&& protocol, std::size_t max_paths = kDefaultMaxPaths) {
  using Result = decltype(protocol(std::declval<Session&>()));
  std::vector<Branch<Result>> branches;
  std::vector<std::size_t> prefix;
  while (true) {
    Session session = prototype;
    session.follow_path(prefix);
    Result result = protocol(session);
    const PathRecord& rec = session.path();
    branches.push_back({rec.probability, rec.chosen, std::move(result)});

    bool advanced = false;
    for (std::size_t depth = rec.chosen.size(); depth-- > 0;) {
      const auto& opts = rec.options[depth];
      std::size_t idx = 0;
      while (opts[idx] != rec.chosen[depth]) ++idx;
      if (idx + 1 < opts.size()) {
        prefix.assign(rec.chosen.begin(), rec.chosen.begin() + static_cast<std::ptrdiff_t>(depth));
        prefix.push_back(opts[idx + 1]);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
    if (branches.size() >= max_paths)
      throw BranchLimitExceeded("exhaustive evaluation exceeds " + std::to_string(max_paths) + " outcome paths");
  }
  double total = 0.0;
  for (const auto& b : branches) total += b.probability;
  if (std::abs(total - 1.0) > 1e-8)
    throw DomainError("branch probabilities sum to " + std::to_string(total) + "; protocol is not outcome-deterministic");
  return branches;
}

/// `runs` independent sampled executions with seeds derived from `seed`.
template <typename Protocol>
auto run_sampled(const Session& prototype, Protocol&& protocol, std::size_t runs, std::uint64_t seed) {
  using Result = decltype(protocol(std::declval<Session&>()));
  std::vector<Branch<Result>> out;
  out.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    Session session = prototype.reseeded(derive_seed(seed, i));
    Result result = protocol(session);
    out.push_back({1.0 / static_cast<double>(runs), session.path().chosen, std::move(result)});
  }
  return out;
}

}  // namespace locc
