#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace locc {

struct FormulaValue {
  double bits = 0.0;
  std::string ref;
};

/// Closed-form classical cost of a protocol from its parameters.
/// Throws DomainError for an unknown name or missing parameter.
FormulaValue formula(std::string_view protocol, const nlohmann::json& params);

const std::vector<std::string>& formula_names();

/// H(|a|^2)
double phase_entropy(double a_squared);
/// 1 + H(2 e^2)
double paired_entropy(double e_squared);
/// -sum_m c_m log2(c_m / |I_m|): entropy of the pair spectrum.
double block_entropy(std::span<const std::size_t> sizes, std::span<const double> weights);
/// -[2 d^2 log2 d^2 + c^2 log2 c^2] with d^2 = (1 - c^2) / 2.
double qutrit_group_entropy(double c_squared);
/// 2 N S: teleporting every signal.
double teleport_baseline_bits(double n, double entropy);

}  // namespace locc
