#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "locc/errors.hpp"
#include "locc/report.hpp"

using namespace locc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing " << path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

// Run errors surface after parsing succeeds.
int run_error_line(std::string_view text) {
  try {
    run(parse_config(text));
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

// Set LOCC_UPDATE_GOLDEN=1 to rewrite the expected files.
void compare_golden(const std::string& config_name, const std::string& golden_name) {
  const std::string dir = LOCC_TEST_DIR;
  const auto config = load_config(dir + "/configs/" + config_name);
  const std::string actual = dump_report(run(config));
  const std::string golden_path = dir + "/golden/" + golden_name;
  if (std::getenv("LOCC_UPDATE_GOLDEN")) {
    std::ofstream(golden_path, std::ios::binary) << actual;
    return;
  }
  CHECK(actual == read_file(golden_path));
}

}  // namespace

TEST_CASE("report fields come in the fixed order") {
  const auto report = run(parse_config(R"({"protocol": "teleport", "params": {"input_seed": 3}})"));
  const auto doc = to_json(report);
  std::vector<std::string> keys;
  for (const auto& [k, _] : doc.items()) keys.push_back(k);
  auto expected = report_fields();
  expected.push_back("metrics");
  CHECK(keys == expected);
  CHECK(doc["bits_ceiling"] == 2);
  CHECK(doc["mode"] == "exact");
  for (const auto& b : doc["fidelity_branches"]) {
    CHECK(b.contains("probability"));
    CHECK(b.contains("fidelity"));
    CHECK(b.contains("outcomes"));
  }
}

TEST_CASE("golden reports") {
  compare_golden("teleport.json", "teleport.report.json");
  compare_golden("rsp_blocks_2_3.json", "rsp_blocks_2_3.report.json");
}

TEST_CASE("identical configs give byte-identical reports") {
  const char* text = R"({"protocol": "rsp_paired", "params": {"N": 2, "e2": 0.2}, "seed": 99})";
  CHECK(dump_report(run(parse_config(text))) == dump_report(run(parse_config(text))));
  const char* sampled = R"({"protocol": "teleport", "evaluation": "sampled", "runs": 50, "seed": 4})";
  CHECK(dump_report(run(parse_config(sampled))) == dump_report(run(parse_config(sampled))));
}

TEST_CASE("the seed is recorded and drives generated inputs") {
  const auto a = run(parse_config(R"({"protocol": "rsp_phase", "params": {"N": 2, "a2": 0.4}, "seed": 5})"));
  const auto b = run(parse_config(R"({"protocol": "rsp_phase", "params": {"N": 2, "a2": 0.4}, "seed": 6})"));
  CHECK(a.seed == 5);
  CHECK(a.params["signals"] != b.params["signals"]);
}

TEST_CASE("config errors carry the offending line") {
  CHECK(error_line("{\n \"protocol\": \"teleport\",\n \"mood\": 1\n}") == 3);
  CHECK(error_line("{\n \"protocol\": \"teleprot\"\n}") == 2);
  CHECK(error_line("{\n \"protocol\": \"rsp_phase\",\n \"mode\": \"typical\"\n}") == 3);
  CHECK(error_line("{\n \"protocol\": \"teleport\",\n \"evaluation\": \"sampled\"\n}") == 3);
  CHECK(error_line("{\n \"protocol\": \"teleport\",\n \"seed\": -4\n}") == 3);
  CHECK(error_line("{\n \"protocol\": \"teleport\",\n \"seed\": 1,\n}") == 4);
  CHECK(error_line("[1, 2]") == 1);

  CHECK(run_error_line("{\n \"protocol\": \"rsp_phase\",\n \"params\": {\n  \"N\": 2,\n  \"a2\": 1.5\n }\n}") == 5);
  CHECK(run_error_line("{\n \"protocol\": \"rsp_phase\",\n \"params\": {\"a2\": 0.5}\n}") == 3);
  CHECK(run_error_line("{\n \"protocol\": \"rsp_blocks\",\n \"params\": {\"N\": 1,\n  \"blocks\": [[0, 1], [1]],\n"
                       "  \"weights\": [0.5, 0.5]}\n}") == 3);
  CHECK(run_error_line("{\"protocol\": \"dilute\", \"params\": {\"a\": 1, \"b\": 1}}") == 1);
  CHECK(run_error_line("{\"protocol\": \"rsp_paired\", \"params\": {\"N\": 1, \"e2\": 0.2,\n"
                       " \"signals\": [[1, 0, 0, 0]]}}") == 1);
  CHECK(run_error_line("{\"protocol\": \"rsp_qutrit_groups\",\n \"params\": {\"N1\": 2, \"c2\": 1.0}}") == 2);
  CHECK(run_error_line("{\"protocol\": \"pauli_randomize\",\n \"params\": {\"ops\": [\"I\", \"W\"]}}") == 2);
}

TEST_CASE("config options") {
  const auto c = parse_config(R"({
    "protocol": "rsp_phase",
    "params": {"N": 3, "a2": 0.3},
    "mode": "typical",
    "delta": 0.2,
    "seed": 11,
    "evaluation": "sampled",
    "runs": 40,
    "max_amplitudes": 4096,
    "provisioning": "dilution",
    "output": "out.json",
    "transcript": "t.json"
  })");
  CHECK(c.options.mode.mode == Mode::Typical);
  CHECK(c.options.mode.window() == 0.2);
  CHECK(c.options.seed == 11);
  CHECK(c.options.evaluation.kind == Evaluation::Sampled);
  CHECK(c.options.evaluation.runs == 40);
  CHECK(c.options.max_amplitudes == 4096);
  CHECK(c.options.provisioning == Provisioning::Dilution);
  CHECK(c.output == "out.json");
  CHECK(c.transcript == "t.json");
  CHECK_FALSE(c.curve_csv.has_value());
  CHECK(parse_config(R"({"protocol": "teleport"})").options.mode.window() == 1.0);
}

TEST_CASE("dilution provisioning adds its bits") {
  const char* direct = R"({"protocol": "rsp_phase", "params": {"N": 2, "a2": 0.3, "theta_seed": 1}})";
  const char* diluted =
      R"({"protocol": "rsp_phase", "params": {"N": 2, "a2": 0.3, "theta_seed": 1}, "provisioning": "dilution"})";
  const auto a = run(parse_config(direct));
  const auto b = run(parse_config(diluted));
  CHECK(b.bits_exact == doctest::Approx(a.bits_exact + 2.0));
  CHECK(b.fidelity_expected == doctest::Approx(1.0));
  CHECK(b.ebits == doctest::Approx(2.0));
  CHECK(check_invariants(b).empty());
}

TEST_CASE("every protocol runs from a config with its invariants intact") {
  const std::vector<std::string> configs{
      R"({"protocol": "teleport", "params": {"input": [0.6, [0, 0.8]]}})",
      R"({"protocol": "teleport", "params": {"input_seed": 2, "reference": true}})",
      R"({"protocol": "teleport", "params": {"input": [1, 0], "stop_after_step1": true}})",
      R"({"protocol": "teleport_qudit", "params": {"D": 3}})",
      R"({"protocol": "dilute", "params": {"a2": 0.3}})",
      R"({"protocol": "dilute_baseline", "params": {"a": 0.6, "b": [0, 0.8]}})",
      R"({"protocol": "rsp_phase", "params": {"N": 3, "a2": 0.3, "thetas": [0, 1, 2]}})",
      R"({"protocol": "rsp_segmented", "params": {"N": 2, "a2": 0.5}})",
      R"({"protocol": "rsp_paired", "params": {"N": 1, "e2": 0.1}})",
      R"({"protocol": "rsp_blocks", "params": {"N": 2, "blocks": [[0], [1, 2]], "weights": [0.5, 0.5]}})",
      R"({"protocol": "rsp_qutrit_groups", "params": {"N1": 2, "c2": 0.3}, "mode": "typical"})",
      R"({"protocol": "pauli_randomize", "params": {"input_seed": 8}})"};
  for (const auto& text : configs) {
    CAPTURE(text);
    const auto report = run(parse_config(text));
    CHECK(check_invariants(report).empty());
    CHECK(report.fidelity_expected <= 1.0 + 1e-9);
  }
}

TEST_CASE("invariant checker flags a corrupted report") {
  auto report = run(parse_config(R"({"protocol": "teleport"})"));
  CHECK(check_invariants(report).empty());
  report.metrics["bits_b_to_a"] = 1.0;
  report.fidelity_expected = 1.2;
  report.metrics["probability_covered"] = 0.5;
  report.cost.bits_a_to_b += 1.0;
  CHECK(check_invariants(report).size() == 4);
}

TEST_CASE("cost rows recompute the saving") {
  const auto report = run(parse_config(R"({"protocol": "rsp_paired", "params": {"N": 1, "e2": 0.25}})"));
  const auto row = cost_row(report, "0.25");
  CHECK(row.baseline == doctest::Approx(4.0));
  CHECK(row.formula == doctest::Approx(3.0));
  CHECK(row.measured == doctest::Approx(3.0));
  CHECK(row.saving() == doctest::Approx(1.0));
  CHECK(row.formula_saving() == doctest::Approx(1.0));
}

TEST_CASE("sweeps emit one row per grid point") {
  const auto base = parse_config(R"({"protocol": "rsp_paired", "params": {"N": 1, "e2": 0.25}})");
  const auto table = sweep(base, "e2", {"0.1", "0.5", "0.7"});
  REQUIRE(table.rows.size() == 3);
  CHECK_FALSE(table.rows[0].failed);
  CHECK(table.rows[1].formula_saving() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(table.rows[2].failed);
  const auto csv = table.csv();
  CHECK(csv.rfind("param,bits_exact,bits_ceiling,ebits,fidelity\n", 0) == 0);
  CHECK(csv.find("0.7,nan,nan,nan,nan") != std::string::npos);
  CHECK(table.text().find("e2") != std::string::npos);

  const auto seeds = sweep(base, "seed", {"1", "2"});
  CHECK(seeds.rows.size() == 2);
  CHECK(seeds.rows[0].fidelity == doctest::Approx(1.0));
}

TEST_CASE("transcript json uses the fixed event fields") {
  const auto report = run(parse_config(R"({"protocol": "teleport"})"));
  const auto doc = transcript_json(report.transcript);
  bool saw_message = false;
  for (const auto& e : doc) {
    CHECK(e.contains("type"));
    CHECK(e.contains("party"));
    CHECK(e.contains("registers"));
    if (e["type"] == "message") {
      saw_message = true;
      CHECK(e["domain"] == 2);
      CHECK(e["bits"] == 1.0);
    }
  }
  CHECK(saw_message);
}

TEST_CASE("protocol names are all runnable or rejected by name") {
  CHECK(protocol_names().size() == 10);
  CHECK(error_line(R"({"protocol": 3})") == 1);
}
