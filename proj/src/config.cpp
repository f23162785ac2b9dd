#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "locc/errors.hpp"
#include "locc/formulas.hpp"
#include "locc/gates.hpp"
#include "locc/report.hpp"

namespace locc {

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the first occurrence of "key" in the source, 0 when absent.
std::size_t line_of(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  Reader(const nlohmann::json& doc, std::string_view text, std::string prefix)
      : doc_(doc), text_(text), prefix_(std::move(prefix)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    std::size_t line = line_of(text_, key);
    if (line == 0 && !prefix_.empty()) line = line_of(text_, prefix_.substr(0, prefix_.size() - 1));
    throw ConfigError(prefix_ + key + ": " + message, line == 0 ? 1 : line);
  }

  bool has(const std::string& key) const { return doc_.contains(key); }
  const nlohmann::json& raw(const std::string& key) const { return doc_.at(key); }

  double number(const std::string& key) const {
    if (!has(key)) fail(key, "required");
    if (!doc_[key].is_number()) fail(key, "must be a number");
    const double v = doc_[key].get<double>();
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
  }

  double number_in(const std::string& key, double lo, double hi) const {
    const double v = number(key);
    if (v < lo || v > hi) fail(key, "must lie in [" + fmt(lo) + ", " + fmt(hi) + "]");
    return v;
  }

  std::size_t count(const std::string& key, std::size_t lo, std::size_t hi = 1u << 20) const {
    if (!has(key)) fail(key, "required");
    if (!doc_[key].is_number_integer() || doc_[key].get<std::int64_t>() < 0) fail(key, "must be a nonnegative integer");
    const auto v = doc_[key].get<std::size_t>();
    if (v < lo || v > hi) fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  std::uint64_t seed(const std::string& key) const {
    if (!doc_[key].is_number_unsigned()) fail(key, "must be a nonnegative integer");
    return doc_[key].get<std::uint64_t>();
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!doc_[key].is_boolean()) fail(key, "must be true or false");
    return doc_[key].get<bool>();
  }

  std::string choice(const std::string& key, const std::vector<std::string>& options, std::string fallback) const {
    if (!has(key)) return fallback;
    if (!doc_[key].is_string()) fail(key, "must be a string");
    const auto v = doc_[key].get<std::string>();
    if (std::find(options.begin(), options.end(), v) == options.end()) {
      std::string list;
      for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
      fail(key, "must be one of " + list);
    }
    return v;
  }

  Amplitude amplitude(const nlohmann::json& v, const std::string& key) const {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    fail(key, "amplitudes are numbers or [re, im] pairs");
  }

  std::vector<Amplitude> amplitudes(const std::string& key) const {
    if (!doc_[key].is_array()) fail(key, "must be an array of amplitudes");
    std::vector<Amplitude> out;
    for (const auto& v : doc_[key]) out.push_back(amplitude(v, key));
    return out;
  }

  std::vector<std::vector<Amplitude>> signal_list(const std::string& key, std::size_t n, std::size_t dim) const {
    if (!doc_[key].is_array() || doc_[key].size() != n) fail(key, "must list " + std::to_string(n) + " signals");
    std::vector<std::vector<Amplitude>> out;
    for (const auto& s : doc_[key]) {
      if (!s.is_array() || s.size() != dim) fail(key, "each signal needs " + std::to_string(dim) + " amplitudes");
      std::vector<Amplitude> v;
      for (const auto& x : s) v.push_back(amplitude(x, key));
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  static std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  const nlohmann::json& doc_;
  std::string_view text_;
  std::string prefix_;
};

const std::set<std::string>& top_level_keys() {
  static const std::set<std::string> keys{"protocol", "params",         "mode",         "delta",     "seed",
                                          "evaluation", "runs",         "path",         "max_amplitudes",
                                          "max_paths", "provisioning",  "output",       "curve_csv", "transcript"};
  return keys;
}

// Runs `build` and rethrows domain errors from the protocol inputs as
// config errors pointing at the params block.
template <typename F>
auto guarded(const RunConfig& config, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    const std::size_t line = line_of(config.text, "params");
    throw ConfigError(std::string("params: ") + e.what(), line == 0 ? 1 : line);
  }
}

PureState input_state(const Reader& p, const RunConfig& config, std::size_t default_dim) {
  if (p.has("input")) {
    auto amps = p.amplitudes("input");
    std::vector<std::size_t> dims{amps.size()};
    if (p.has("dims")) dims = p.raw("dims").get<std::vector<std::size_t>>();
    return guarded(config, [&] { return PureState::from_amplitudes(dims, std::move(amps)); });
  }
  std::mt19937_64 rng(p.has("input_seed") ? p.seed("input_seed") : config.options.seed);
  std::vector<std::size_t> dims{default_dim};
  if (p.flag("reference", false)) dims.push_back(default_dim);
  return random_state(dims, rng);
}

std::pair<Amplitude, Amplitude> qubit_coefficients(const Reader& p) {
  if (p.has("a2")) {
    const double a2 = p.number_in("a2", 0.0, 1.0);
    return {std::sqrt(a2), std::sqrt(1.0 - a2)};
  }
  if (!p.has("a")) p.fail("a", "required (or give a2)");
  if (!p.has("b")) p.fail("b", "required");
  const Amplitude a = p.amplitude(p.raw("a"), "a");
  const Amplitude b = p.amplitude(p.raw("b"), "b");
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kTolerance) p.fail("b", "|a|^2 + |b|^2 must equal 1");
  return {a, b};
}

std::uint64_t coefficient_seed(const Reader& p, const RunConfig& config, const char* key) {
  return p.has(key) ? p.seed(key) : config.options.seed;
}

SignalSpec phase_spec(const Reader& p, const RunConfig& config) {
  const std::size_t n = p.count("N", 1, 64);
  const double a2 = p.number_in("a2", 0.0, 1.0);
  std::vector<double> thetas;
  if (p.has("thetas")) {
    if (!p.raw("thetas").is_array() || p.raw("thetas").size() != n) p.fail("thetas", "must list N angles");
    thetas = p.raw("thetas").get<std::vector<double>>();
  } else {
    thetas = random_phases(n, coefficient_seed(p, config, "theta_seed"));
  }
  return guarded(config, [&] { return phase_ensemble(a2, thetas); });
}

ProtocolReport pauli_report(const Reader& p, const RunConfig& config) {
  const PureState input = input_state(p, config, 2);
  std::vector<std::string> names{"I", "X", "Y", "Z"};
  if (p.has("ops")) names = p.raw("ops").get<std::vector<std::string>>();
  std::vector<Unitary> ops;
  for (const auto& n : names) {
    if (n == "I") ops.push_back(Unitary::identity(2));
    else if (n == "X") ops.push_back(gates::pauli_x());
    else if (n == "Y") ops.push_back(gates::pauli_y());
    else if (n == "Z") ops.push_back(gates::pauli_z());
    else p.fail("ops", "unknown operator '" + n + "'");
  }
  const auto rho = guarded(config, [&] { return pauli_mixture(input, ops); });
  ProtocolReport report;
  report.protocol = "pauli_randomize";
  report.params = {{"ops", names}};
  report.params["input"] = nlohmann::json::array();
  for (auto a : input.amplitudes()) report.params["input"].push_back({a.real(), a.imag()});
  report.bits_exact = std::log2(static_cast<double>(ops.size()));
  report.bits_ceiling = ceil_log2(ops.size());
  for (const auto& op : ops) {
    const auto v = op.apply(input.amplitudes());
    Amplitude overlap{0.0, 0.0};
    for (std::size_t i = 0; i < 2; ++i) overlap += std::conj(input[i]) * v[i];
    report.fidelity_branches.push_back({1.0 / static_cast<double>(ops.size()), std::norm(overlap), true, {}});
  }
  report.fidelity_expected = fidelity_mixed(rho, input);
  const auto f = formula("pauli_randomize", report.params);
  report.formula_bits = f.bits;
  report.formula_ref = f.ref;
  report.seed = config.options.seed;
  report.metrics["trace_distance_to_maximally_mixed"] = trace_distance(rho, DensityMatrix::maximally_mixed(2));
  report.metrics["bits_b_to_a"] = 0.0;
  report.metrics["probability_covered"] = 1.0;
  return report;
}

}  // namespace

const std::vector<std::string>& protocol_names() {
  static const std::vector<std::string> names{"teleport",   "teleport_qudit", "dilute",        "dilute_baseline",
                                              "rsp_phase",  "rsp_segmented",  "rsp_paired",    "rsp_blocks",
                                              "rsp_qutrit_groups", "pauli_randomize"};
  return names;
}

RunConfig parse_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object", 1);
  RunConfig config;
  config.text = std::string(text);
  const Reader top(doc, config.text, "");
  for (const auto& [key, _] : doc.items())
    if (!top_level_keys().contains(key)) top.fail(key, "unknown key");

  if (!doc.contains("protocol") || !doc["protocol"].is_string()) top.fail("protocol", "required string");
  config.protocol = top.choice("protocol", protocol_names(), "");
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) top.fail("params", "must be an object");
    config.params = doc["params"];
  }
  auto& o = config.options;
  o.mode.mode = top.choice("mode", {"exact", "typical"}, "exact") == "exact" ? Mode::Exact : Mode::Typical;
  if (doc.contains("delta")) {
    config.delta = top.number_in("delta", 0.0, std::numeric_limits<double>::max());
    o.mode.delta = *config.delta;
  }
  if (doc.contains("seed")) o.seed = top.seed("seed");
  const auto eval = top.choice("evaluation", {"exhaustive", "sampled", "path"}, "exhaustive");
  o.evaluation.kind = eval == "exhaustive" ? Evaluation::Exhaustive
                      : eval == "sampled"  ? Evaluation::Sampled
                                           : Evaluation::Path;
  if (doc.contains("runs")) o.evaluation.runs = top.count("runs", 1, 10'000'000);
  if (o.evaluation.kind == Evaluation::Sampled && !doc.contains("runs")) top.fail("evaluation", "sampled evaluation requires runs");
  if (doc.contains("path")) {
    if (!doc["path"].is_array()) top.fail("path", "must be an array of outcomes");
    o.evaluation.path = doc["path"].get<std::vector<std::size_t>>();
  }
  if (doc.contains("max_amplitudes")) o.max_amplitudes = top.count("max_amplitudes", 1, std::size_t{1} << 28);
  if (doc.contains("max_paths")) o.evaluation.max_paths = top.count("max_paths", 1, std::size_t{1} << 24);
  o.provisioning = top.choice("provisioning", {"direct", "dilution"}, "direct") == "direct" ? Provisioning::Direct
                                                                                            : Provisioning::Dilution;
  for (const char* key : {"output", "curve_csv", "transcript"}) {
    if (!doc.contains(key)) continue;
    if (!doc[key].is_string()) top.fail(key, "must be a path string");
    auto value = doc[key].get<std::string>();
    if (std::string_view(key) == "output") config.output = value;
    else if (std::string_view(key) == "curve_csv") config.curve_csv = value;
    else config.transcript = value;
  }
  const bool needs_delta = o.mode.mode == Mode::Typical && config.protocol != "rsp_qutrit_groups";
  if (needs_delta && !config.delta) top.fail("mode", "typical mode needs a delta");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'", 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ProtocolReport run(const RunConfig& config) {
  const Reader p(config.params, config.text, "params.");
  const auto& o = config.options;
  const auto& name = config.protocol;

  if (name == "teleport") {
    const PureState input = input_state(p, config, 2);
    if (input.dims()[0] != 2) p.fail("input", "qubit teleportation needs a 2-dimensional first register");
    return guarded(config, [&] { return teleport(input, p.flag("stop_after_step1", false), o); });
  }
  if (name == "teleport_qudit") {
    const std::size_t dim = p.count("D", 2, 64);
    const PureState input = input_state(p, config, dim);
    if (input.dims()[0] != dim) p.fail("input", "first register must have dimension D");
    return guarded(config, [&] { return teleport_qudit(input, o); });
  }
  if (name == "dilute" || name == "dilute_baseline") {
    const auto [a, b] = qubit_coefficients(p);
    return guarded(config, [&] { return name == "dilute" ? dilute(a, b, o) : dilute_baseline(a, b, o); });
  }
  if (name == "rsp_phase" || name == "rsp_segmented") {
    const SignalSpec spec = phase_spec(p, config);
    return guarded(config, [&] { return name == "rsp_phase" ? rsp_phase(spec, o) : rsp_segmented(spec, o); });
  }
  if (name == "rsp_paired") {
    const std::size_t n = p.count("N", 1, 16);
    const double e2 = p.number_in("e2", 0.0, 0.5);
    if (e2 <= 0.0) p.fail("e2", "must be positive");
    auto signals = p.has("signals") ? p.signal_list("signals", n, 4)
                                    : random_paired_signals(e2, n, coefficient_seed(p, config, "coeff_seed"));
    const SignalSpec spec = guarded(config, [&] { return paired_ensemble(e2, std::move(signals)); });
    return guarded(config, [&] { return rsp_paired(spec, o); });
  }
  if (name == "rsp_blocks") {
    const std::size_t n = p.count("N", 1, 16);
    if (!p.has("blocks")) p.fail("blocks", "required");
    if (!p.has("weights")) p.fail("weights", "required");
    nlohmann::json doc{{"blocks", p.raw("blocks")}, {"weights", p.raw("weights")}};
    const std::size_t universe = p.has("universe") ? p.count("universe", 2, 4096) : 0;
    const BlockPartition partition = guarded(config, [&] {
      try {
        return partition_from_json(doc, universe);
      } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed partition: ") + e.what());
      }
    });
    auto signals = p.has("signals") ? p.signal_list("signals", n, partition.universe)
                                    : random_block_signals(partition, n, coefficient_seed(p, config, "coeff_seed"));
    const SignalSpec spec = guarded(config, [&] { return block_ensemble(partition, std::move(signals)); });
    return guarded(config, [&] { return rsp_blocks(spec, o); });
  }
  if (name == "rsp_qutrit_groups") {
    const std::size_t n1 = p.count("N1", 1, 8);
    const std::size_t groups = p.has("N") ? p.count("N", 1, 8) : 1;
    const double c2 = p.number_in("c2", 0.0, 1.0);
    if (c2 <= 0.0 || c2 >= 1.0) p.fail("c2", "must lie strictly between 0 and 1");
    auto signals = p.has("signals") ? p.signal_list("signals", n1 * groups, 3)
                                    : random_qutrit_signals(c2, n1 * groups, coefficient_seed(p, config, "coeff_seed"));
    const SignalSpec spec = guarded(config, [&] { return qutrit_ensemble(c2, std::move(signals)); });
    RunOptions options = o;
    if (options.mode.mode == Mode::Typical && !config.delta) options.mode.delta = default_group_delta(n1);
    return guarded(config, [&] { return rsp_qutrit_groups(spec, n1, options); });
  }
  if (name == "pauli_randomize") return pauli_report(p, config);
  throw ConfigError("unknown protocol '" + name + "'", line_of(config.text, "protocol"));
}

}  // namespace locc
