#include "locc/errors.hpp"
#include "locc/report.hpp"

namespace locc {

const std::vector<std::string>& report_fields() {
  static const std::vector<std::string> fields{"protocol",          "params",        "bits_exact",   "bits_ceiling",
                                               "ebits",             "fidelity_expected", "fidelity_branches",
                                               "formula_bits",      "formula_ref",   "mode",         "seed"};
  return fields;
}

nlohmann::ordered_json to_json(const ProtocolReport& report) {
  nlohmann::ordered_json branches = nlohmann::ordered_json::array();
  for (const auto& b : report.fidelity_branches) {
    branches.push_back(nlohmann::ordered_json{
        {"probability", b.probability}, {"fidelity", b.fidelity}, {"success", b.success}, {"outcomes", b.outcomes}});
  }
  nlohmann::ordered_json out;
  out["protocol"] = report.protocol;
  out["params"] = nlohmann::ordered_json(report.params);
  out["bits_exact"] = report.bits_exact;
  out["bits_ceiling"] = report.bits_ceiling;
  out["ebits"] = report.ebits;
  out["fidelity_expected"] = report.fidelity_expected;
  out["fidelity_branches"] = std::move(branches);
  out["formula_bits"] = report.formula_bits;
  out["formula_ref"] = report.formula_ref;
  out["mode"] = report.mode;
  out["seed"] = report.seed;
  out["metrics"] = nlohmann::ordered_json(report.metrics);
  return out;
}

std::string dump_report(const ProtocolReport& report) { return to_json(report).dump(2) + "\n"; }

nlohmann::ordered_json to_json(const Event& event) {
  nlohmann::ordered_json out;
  out["type"] = std::string(to_string(event.type));
  out["party"] = std::string(to_string(event.party));
  out["registers"] = event.registers;
  if (event.outcome) out["outcome"] = *event.outcome;
  if (event.value) out["value"] = *event.value;
  if (event.domain) out["domain"] = *event.domain;
  if (event.bits) out["bits"] = *event.bits;
  return out;
}

nlohmann::ordered_json transcript_json(const std::vector<Event>& events) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : events) out.push_back(to_json(e));
  return out;
}

nlohmann::ordered_json to_json(const BlockPartition& partition) {
  nlohmann::ordered_json out;
  out["blocks"] = partition.blocks;
  out["weights"] = partition.weights;
  return out;
}

BlockPartition partition_from_json(const nlohmann::json& doc, std::size_t universe) {
  if (!doc.is_object() || !doc.contains("blocks") || !doc.contains("weights"))
    throw DomainError("partition JSON needs 'blocks' and 'weights'");
  BlockPartition p;
  p.blocks = doc["blocks"].get<std::vector<std::vector<std::size_t>>>();
  p.weights = doc["weights"].get<std::vector<double>>();
  std::size_t top = 0;
  for (const auto& b : p.blocks)
    for (auto k : b) top = std::max(top, k + 1);
  p.universe = universe == 0 ? top : universe;
  p.validate();
  return p;
}

nlohmann::ordered_json to_json(const Codebook& codebook) {
  const auto& t = codebook.typical();
  nlohmann::ordered_json out;
  out["alphabet_size"] = t.alphabet_size();
  out["length"] = t.length();
  out["delta"] = t.delta();
  out["probabilities"] = t.probabilities();
  out["members"] = t.members();
  return out;
}

}  // namespace locc
