#include "locc/formulas.hpp"

#include <cmath>
#include <numeric>

#include "locc/errors.hpp"
#include "locc/qcore.hpp"

namespace locc {

namespace {

double number(const nlohmann::json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number())
    throw DomainError(std::string("formula parameter '") + key + "' missing or not a number");
  return params[key].get<double>();
}

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

double phase_entropy(double a_squared) { return binary_entropy(a_squared); }

double paired_entropy(double e_squared) { return 1.0 + binary_entropy(2.0 * e_squared); }

double block_entropy(std::span<const std::size_t> sizes, std::span<const double> weights) {
  if (sizes.size() != weights.size()) throw DomainError("one weight per block size required");
  double s = 0.0;
  for (std::size_t m = 0; m < sizes.size(); ++m) {
    if (sizes[m] == 0) throw DomainError("block size must be positive");
    if (weights[m] > 0.0) s -= weights[m] * std::log2(weights[m] / static_cast<double>(sizes[m]));
  }
  return s;
}

double qutrit_group_entropy(double c_squared) {
  const double d_squared = (1.0 - c_squared) / 2.0;
  return -(2.0 * plogp(d_squared) + plogp(c_squared));
}

double teleport_baseline_bits(double n, double entropy) { return 2.0 * n * entropy; }

const std::vector<std::string>& formula_names() {
  static const std::vector<std::string> names{"teleport",   "teleport_qudit", "dilute",       "dilute_baseline",
                                              "rsp_phase",  "rsp_segmented",  "rsp_paired",   "rsp_blocks",
                                              "rsp_qutrit_groups", "pauli_randomize", "teleport_baseline"};
  return names;
}

FormulaValue formula(std::string_view protocol, const nlohmann::json& params) {
  if (protocol == "teleport") return {2.0, "2"};
  if (protocol == "teleport_qudit") return {2.0 * std::log2(number(params, "D")), "2*log2(D)"};
  if (protocol == "dilute") return {1.0, "1"};
  if (protocol == "dilute_baseline") return {2.0, "2"};
  if (protocol == "rsp_phase") return {number(params, "N") * phase_entropy(number(params, "a2")), "N*H(|a|^2)"};
  if (protocol == "rsp_segmented") {
    const double n = number(params, "N");
    return {n * (1.0 + phase_entropy(number(params, "a2"))), "N*(1+H(|a|^2))"};
  }
  if (protocol == "rsp_paired")
    return {number(params, "N") * (1.0 + paired_entropy(number(params, "e2"))), "N*(1+S), S=1+H(2e^2)"};
  if (protocol == "rsp_blocks") {
    if (!params.contains("block_sizes") || !params.contains("weights"))
      throw DomainError("formula parameters 'block_sizes' and 'weights' required");
    const auto sizes = params["block_sizes"].get<std::vector<std::size_t>>();
    const auto weights = params["weights"].get<std::vector<double>>();
    std::size_t d = 1;
    std::vector<std::size_t> live_sizes;
    std::vector<double> live_weights;
    for (std::size_t m = 0; m < sizes.size(); ++m) {
      if (m < weights.size() && weights[m] <= 0.0) continue;
      d = std::lcm(d, sizes[m]);
      live_sizes.push_back(sizes[m]);
      live_weights.push_back(m < weights.size() ? weights[m] : 0.0);
    }
    const double s = block_entropy(live_sizes, live_weights);
    return {number(params, "N") * (std::log2(static_cast<double>(d)) + s), "N*(log2(d)+S)"};
  }
  if (protocol == "rsp_qutrit_groups") {
    const double c2 = number(params, "c2");
    const double total = params.contains("N_tot") ? number(params, "N_tot") : number(params, "N") * number(params, "N1");
    return {total * (qutrit_group_entropy(c2) + 1.0 - c2), "N_tot*(S+1-c^2)"};
  }
  if (protocol == "pauli_randomize") return {2.0, "2"};
  if (protocol == "teleport_baseline")
    return {teleport_baseline_bits(number(params, "N"), number(params, "S")), "2*N*S"};
  throw DomainError("unknown protocol '" + std::string(protocol) + "'");
}

}  // namespace locc
