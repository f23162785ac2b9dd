#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "locc/errors.hpp"
#include "locc/formulas.hpp"
#include "locc/gates.hpp"
#include "locc/protocols.hpp"
#include "locc/report.hpp"

using namespace locc;
using Ids = std::vector<std::size_t>;

namespace {

// Bob's view must not expose the coefficients.
template <typename View>
concept ReadsSignals = requires(const View& v) { v.signal(std::size_t{0}); };

static_assert(ReadsSignals<AliceView>);
static_assert(!ReadsSignals<BobView>);

Unitary random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::map<std::size_t, std::vector<Amplitude>> cols;
  const auto col = random_state({dim}, rng);
  cols[0] = {col.amplitudes().begin(), col.amplitudes().end()};
  // A random first column completed to a basis, then mixed by random phases and a Fourier step.
  const auto base = gates::complete_to_unitary(dim, cols);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::vector<Amplitude> phases(dim);
  for (auto& p : phases) p = std::polar(1.0, angle(rng));
  return base * gates::diagonal(phases) * gates::fourier(dim) * base.adjoint();
}

DensityMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  // Reduced state of a random pure state on dim x rank.
  std::uniform_int_distribution<std::size_t> rank(2, dim + 1);
  const auto psi = random_state({dim, rank(rng)}, rng);
  return reduced_density(psi, Ids{0});
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  std::vector<Amplitude> e(n * n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l) e[(i * b.dim() + k) * n + j * b.dim() + l] = a(i, j) * b(k, l);
  return DensityMatrix::from_entries(n, std::move(e));
}

struct Shape {
  EventType type;
  Party party;
  std::vector<RegisterId> registers;
  std::optional<std::size_t> outcome, value, domain;
  bool operator==(const Shape&) const = default;
};

std::vector<Shape> shape(const std::vector<Event>& events) {
  std::vector<Shape> out;
  for (const auto& e : events) {
    auto regs = e.registers;
    std::sort(regs.begin(), regs.end());
    out.push_back({e.type, e.party, regs, e.outcome, e.value, e.domain});
  }
  return out;
}

// Runs both bodies over every path of the first and compares transcripts event by event.
template <typename A, typename B>
void check_same_shape(A&& first, B&& second) {
  const auto branches = run_exhaustive(Session(), [&](Session& s) {
    first(s);
    return s.transcript();
  });
  for (const auto& br : branches) {
    Session other;
    other.follow_path(br.outcomes);
    second(other);
    CHECK(other.path().probability == doctest::Approx(br.probability).epsilon(1e-10));
    REQUIRE(shape(other.transcript()) == shape(br.result));
  }
}

}  // namespace

TEST_CASE("norm preservation under random unitaries") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<std::size_t> dims{2, 3, 2};
    auto state = random_state(dims, rng);
    const std::size_t target = trial % 3;
    state = apply_unitary(state, random_unitary(dims[target], rng), Ids{target});
    if (trial % 2 == 0) state = apply_unitary(state, random_unitary(4, rng), Ids{2, 0});
    CHECK(std::abs(state.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("branch completeness") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto state = random_state({3, 2, 2}, rng);
    const Ids targets = trial % 2 ? Ids{0} : Ids{1, 2};
    const auto branches = enumerate_branches(state, targets);
    double total = 0.0;
    for (const auto& b : branches) {
      total += b.probability;
      CHECK(std::abs(b.post.norm() - 1.0) < 1e-9);
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("entropy bounds on random density matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const auto rho = random_density(dim, rng);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= -1e-12);
    CHECK(s <= std::log2(static_cast<double>(dim)) + 1e-9);
  }
}

TEST_CASE("entropy is additive on products") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_density(2 + trial % 3, rng);
    const auto b = random_density(2 + trial % 2, rng);
    CHECK(std::abs(von_neumann_entropy(kron(a, b)) - von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-8);
  }
}

TEST_CASE("Schmidt symmetry") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = random_state({2 + trial % 3, 2 + trial % 4}, rng);
    const double sa = von_neumann_entropy(reduced_density(psi, Ids{0}));
    const double sb = von_neumann_entropy(reduced_density(psi, Ids{1}));
    CHECK(std::abs(sa - sb) < 1e-8);
  }
}

TEST_CASE("fourier inverse") {
  for (std::size_t d = 2; d <= 8; ++d) {
    const auto f = gates::fourier(d);
    const auto id = f.adjoint() * f;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) CHECK(std::abs(id(r, c) - (r == c ? 1.0 : 0.0)) < 1e-9);
  }
}

TEST_CASE("every cross-party operation is rejected") {
  std::mt19937_64 rng(6);
  Session s;
  const std::vector<double> spectrum{0.5, 0.5};
  const auto [a, b] = s.add_entangled_pair(spectrum, 2, 2);
  const auto qa = s.add_local_state(Party::Alice, random_state({3}, rng), "qa")[0];
  const auto qb = s.add_local_state(Party::Bob, random_state({3}, rng), "qb")[0];
  const auto before = s.transcript().size();
  const std::vector<std::pair<Party, std::vector<RegisterId>>> attempts{
      {Party::Alice, {b}}, {Party::Alice, {qb}}, {Party::Alice, {a, b}}, {Party::Alice, {qa, qb}},
      {Party::Bob, {a}},   {Party::Bob, {qa}},   {Party::Bob, {b, a}},   {Party::Bob, {qb, qa}}};
  for (const auto& [party, regs] : attempts) {
    std::size_t dim = 1;
    for (auto r : regs) dim *= s.reg(r).dim;
    CHECK_THROWS_AS(s.local_unitary(party, regs, Unitary::identity(dim)), LocalityViolation);
    CHECK_THROWS_AS(s.local_measure(party, regs), LocalityViolation);
    std::vector<std::int64_t> map(dim);
    std::iota(map.begin(), map.end(), 0);
    CHECK_THROWS_AS(s.local_relabel(party, regs, {dim}, map), LocalityViolation);
    const std::vector<Unitary> blocks(s.reg(regs.front()).dim, Unitary::identity(s.reg(regs.back()).dim));
    const RegisterId target[] = {regs.back()};
    if (regs.size() == 2) CHECK_THROWS_AS(s.local_controlled(party, regs.front(), blocks, target), LocalityViolation);
  }
  CHECK(s.transcript().size() == before);
  for (const auto& e : s.transcript())
    for (auto r : e.registers)
      if (s.is_live(r)) CHECK(s.reg(r).owner == e.party);
}

TEST_CASE("protocol transcripts never mix parties within one operation") {
  const auto spec = paired_ensemble(0.2, random_paired_signals(0.2, 2, 7));
  const auto branches = run_exhaustive(Session(), [&](Session& s) {
    rsp_paired_in_session(s, spec, {}, Provisioning::Direct);
    std::vector<std::pair<Event, std::vector<Party>>> owners;
    for (const auto& e : s.transcript()) {
      std::vector<Party> parties;
      for (auto r : e.registers)
        if (s.is_live(r)) parties.push_back(s.reg(r).owner);
      owners.emplace_back(e, parties);
    }
    return owners;
  });
  for (const auto& br : branches)
    for (const auto& [event, parties] : br.result)
      for (auto p : parties) CHECK(p == event.party);
}

TEST_CASE("ledger consistency") {
  std::mt19937_64 rng(9);
  std::vector<std::function<void(Session&)>> bodies{
      [&](Session& s) { teleport_in_session(s, random_state({2}, rng)); },
      [&](Session& s) { dilute_in_session(s, 0.6, 0.8); },
      [&](Session& s) { rsp_phase_in_session(s, phase_ensemble(0.3, random_phases(3, 1)), {}, Provisioning::Dilution); },
      [&](Session& s) {
        rsp_blocks_in_session(s, block_ensemble(BlockPartition{5, {{0, 1}, {2, 3, 4}}, {0.4, 0.6}},
                                                random_block_signals({5, {{0, 1}, {2, 3, 4}}, {0.4, 0.6}}, 1, 3)),
                              {}, Provisioning::Direct);
      }};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (auto& body : bodies) {
      Session s(seed);
      body(s);
      double a_to_b = 0.0;
      double b_to_a = 0.0;
      std::size_t ceiling = 0;
      for (const auto& e : s.transcript()) {
        if (e.type != EventType::Message) continue;
        CHECK(*e.bits == std::log2(static_cast<double>(*e.domain)));
        (e.party == Party::Alice ? a_to_b : b_to_a) += *e.bits;
        ceiling += ceil_log2(*e.domain);
      }
      const auto c = s.cost_summary();
      CHECK(c.bits_a_to_b == doctest::Approx(a_to_b).epsilon(1e-14));
      CHECK(c.bits_b_to_a == 0.0);
      CHECK(b_to_a == 0.0);
      CHECK(c.ceiling_a_to_b == ceiling);
      CHECK(c.transcript_length == s.transcript().size());
    }
  }
}

TEST_CASE("replay determinism") {
  const std::vector<std::string> configs{
      R"({"protocol": "teleport", "seed": 3, "evaluation": "sampled", "runs": 20})",
      R"({"protocol": "rsp_blocks", "params": {"N": 1, "blocks": [[0, 1], [2, 3, 4]], "weights": [0.4, 0.6]}, "seed": 8})",
      R"({"protocol": "rsp_qutrit_groups", "params": {"N1": 2, "c2": 0.4}, "mode": "typical", "seed": 2})"};
  for (const auto& text : configs) {
    const auto first = run(parse_config(text));
    const auto second = run(parse_config(text));
    CHECK(dump_report(first) == dump_report(second));
    CHECK(transcript_json(first.transcript).dump() == transcript_json(second.transcript).dump());
  }
}

TEST_CASE("block preparation with two pairs of labels reduces to the paired protocol") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.05, 0.45);
  for (int trial = 0; trial < 50; ++trial) {
    const double e2 = u(rng);
    const std::size_t n = 1 + trial % 2;
    const auto signals = random_paired_signals(e2, n, 100 + trial);
    const auto paired = paired_ensemble(e2, signals);
    const auto blocks = block_ensemble(BlockPartition{4, {{0, 1}, {2, 3}}, {2 * e2, 1 - 2 * e2}}, signals);
    check_same_shape([&](Session& s) { rsp_paired_in_session(s, paired, {}, Provisioning::Direct); },
                     [&](Session& s) { rsp_blocks_in_session(s, blocks, {}, Provisioning::Direct); });
  }
}

TEST_CASE("block preparation with singleton blocks reduces to phase preparation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    const double a2 = u(rng);
    const std::size_t n = 1 + trial % 3;
    const auto thetas = random_phases(n, 200 + trial);
    const auto phase = phase_ensemble(a2, thetas);
    std::vector<std::vector<Amplitude>> signals;
    for (double t : thetas) signals.push_back({std::sqrt(a2), std::polar(std::sqrt(1 - a2), t)});
    const auto blocks = block_ensemble(BlockPartition{2, {{0}, {1}}, {a2, 1 - a2}}, signals);
    check_same_shape([&](Session& s) { rsp_phase_in_session(s, phase, {}, Provisioning::Direct); },
                     [&](Session& s) { rsp_blocks_in_session(s, blocks, {}, Provisioning::Direct); });
  }
}

TEST_CASE("position block weights do not depend on the coefficients") {
  const double c2 = 0.5;
  const auto part = position_partition(3, c2);
  for (std::uint64_t draw = 0; draw < 100; ++draw) {
    const auto spec = qutrit_ensemble(c2, random_qutrit_signals(c2, 3, draw));
    const auto psi = target_state(spec);
    for (std::size_t m = 0; m < part.blocks.size(); ++m) {
      double w = 0.0;
      for (auto label : part.blocks[m]) w += std::norm(psi[label]);
      CHECK(std::abs(w - part.weights[m]) < 1e-10);
    }
  }
}

TEST_CASE("typical_weight against enumeration, binary and ternary") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> p;
    if (trial % 2 == 0) {
      const double x = u(rng);
      p = {x, 1 - x};
    } else {
      const double x = u(rng) * 0.5;
      const double y = u(rng) * 0.5;
      p = {x, y, 1 - x - y};
    }
    const std::size_t n = p.size() == 2 ? 12 : 8;
    const double delta = 0.05 + 0.05 * (trial % 4);
    const auto t = [&]() -> std::optional<TypicalSet> {
      try {
        return typical_set(p, n, delta);
      } catch (const EmptyTypicalSet&) {
        return std::nullopt;
      }
    }();
    if (!t) {
      CHECK_THROWS_AS(typical_weight(p, n, delta), EmptyTypicalSet);
      continue;
    }
    double sum = 0.0;
    for (auto label : t->members()) {
      double prob = 1.0;
      for (auto s : t->symbols(label)) prob *= p[s];
      sum += prob;
    }
    CHECK(std::abs(typical_weight(p, n, delta) - sum) < 1e-12);
  }
}

TEST_CASE("typical_weight grows with n") {
  const std::vector<double> p{0.75, 0.25};
  // Small n is lattice-bound, so the trend is checked on doubling lengths.
  double last = 0.0;
  for (std::size_t n : {20, 40, 80, 160, 320}) {
    const double w = typical_weight(p, n, 0.1);
    CHECK(w >= last);
    last = w;
  }
  CHECK(last > 0.9999);
}

TEST_CASE("group block sizes lie inside the typicality bounds") {
  for (std::size_t n1 : {3, 4, 5, 6}) {
    for (double c2 : {0.3, 0.5, 0.7}) {
      const double delta = 0.2;
      const auto part = position_partition(n1, c2, delta);
      // Counts w satisfy |w / n1 - c2| <= delta, and blocks have 2^(n1 - w) labels.
      const double lo = std::pow(2.0, static_cast<double>(n1) * (1 - c2 - delta)) - 1e-9;
      const double hi = std::pow(2.0, static_cast<double>(n1) * (1 - c2 + delta)) + 1e-9;
      for (const auto& block : part.blocks) {
        CHECK(static_cast<double>(block.size()) >= lo);
        CHECK(static_cast<double>(block.size()) <= hi);
      }
    }
  }
}

TEST_CASE("paired protocol beats the teleport baseline strictly inside the range") {
  for (int i = 1; i <= 20; ++i) {
    const double e2 = 0.5 * i / 21.0;
    const double s = paired_entropy(e2);
    CHECK(formula("rsp_paired", {{"N", 1}, {"e2", e2}}).bits < teleport_baseline_bits(1, s));
  }
  CHECK(formula("rsp_paired", {{"N", 1}, {"e2", 0.5}}).bits == doctest::Approx(teleport_baseline_bits(1, 1.0)));
}

TEST_CASE("sampled mean fidelity agrees with the exhaustive expectation") {
  std::mt19937_64 rng(13);
  const auto input = random_state({2}, rng);
  RunOptions exact;
  const auto reference = teleport(input, false, exact);
  RunOptions sampled;
  sampled.evaluation.kind = Evaluation::Sampled;
  sampled.evaluation.runs = 10000;
  sampled.seed = 77;
  const auto r = teleport(input, false, sampled);
  double mean = 0.0;
  double sq = 0.0;
  for (const auto& b : r.fidelity_branches) {
    mean += b.probability * b.fidelity;
    sq += b.probability * b.fidelity * b.fidelity;
  }
  const double se = std::sqrt(std::max(sq - mean * mean, 0.0) / 10000.0);
  CHECK(std::abs(mean - reference.fidelity_expected) <= 3.0 * se + 1e-9);

  // Branch frequencies agree with the exhaustive probabilities too.
  for (const auto& b : reference.fidelity_branches) {
    double freq = 0.0;
    for (const auto& s : r.fidelity_branches)
      if (s.outcomes == b.outcomes) freq = s.probability;
    const double sigma = std::sqrt(b.probability * (1 - b.probability) / 10000.0);
    CHECK(std::abs(freq - b.probability) <= 3.0 * sigma);
  }
}

TEST_CASE("uniform ancilla outcomes for random admissible coefficients") {
  for (std::uint64_t draw = 0; draw < 20; ++draw) {
    const BlockPartition part{5, {{0, 1}, {2, 3, 4}}, {0.3 + 0.02 * draw, 0.7 - 0.02 * draw}};
    const auto r = rsp_blocks(block_ensemble(part, random_block_signals(part, 1, draw)), RunOptions{});
    CHECK(r.metrics["branch_max"]["step1_outcome_deviation"].get<double>() < 1e-10);
  }
}
