#include <doctest.h>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = ORTHOPROB_CLI_PATH;
const std::string kSchemaPath = ORTHOPROB_SCHEMA_PATH;

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    const auto stamp =
        std::chrono::system_clock::now().time_since_epoch().count();
    fs::path d = fs::temp_directory_path() /
                 ("orthoprob-cli-" + std::to_string(stamp));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path fresh_path(const std::string& tag) {
  static int counter = 0;
  return scratch_dir() / (tag + "-" + std::to_string(++counter));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fresh_path("out"), err = fresh_path("err");
  const std::string cmd = "\"" + kCli + "\" " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::string cur;
  for (const char c : s) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  // Good enough for the unquoted cells these tests inspect.
  std::vector<std::string> cells;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

// Just the keywords the shipped schema uses: type, required, properties,
// items, minimum.
bool conforms(const json& schema, const json& v) {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    if (t == "object" && !v.is_object()) return false;
    if (t == "array" && !v.is_array()) return false;
    if (t == "string" && !v.is_string()) return false;
    if (t == "integer" && !v.is_number_integer()) return false;
    if (t == "number" && !v.is_number()) return false;
    if (t == "boolean" && !v.is_boolean()) return false;
  }
  if (schema.contains("required")) {
    if (!v.is_object()) return false;
    for (const auto& key : schema["required"])
      if (!v.contains(key.get<std::string>())) return false;
  }
  if (schema.contains("properties") && v.is_object())
    for (const auto& [key, sub] : schema["properties"].items())
      if (v.contains(key) && !conforms(sub, v.at(key))) return false;
  if (schema.contains("items") && v.is_array())
    for (const auto& element : v)
      if (!conforms(schema["items"], element)) return false;
  if (schema.contains("minimum") && v.is_number())
    if (v.get<double>() < schema["minimum"].get<double>()) return false;
  return true;
}

}  // namespace

TEST_CASE("exact table as CSV") {
  const RunResult r = run_cli("exact --p 2..5");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "p,value,limit_gap");
  const double expected[] = {0.5, 0.75, 0.875, 0.625};
  for (int i = 0; i < 4; ++i) {
    const auto cells = split_csv_line(lines[static_cast<std::size_t>(i + 1)]);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == std::to_string(i + 2));
    CHECK(std::stod(cells[1]) == expected[i]);
  }
}

TEST_CASE("exact fractions column") {
  const RunResult r = run_cli("exact --p 3 --exact-fractions --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["numerator"] == "3");
  CHECK(doc["rows"][0]["log2_denominator"] == 2);
}

TEST_CASE("json output conforms to the shipped schema") {
  const json schema = json::parse(slurp(kSchemaPath));
  for (const std::string args :
       {std::string("exact --p 2..4 --format json"),
        std::string("threshold --p-max 50 --format json"),
        std::string("mc-orthant --p 4 --n 2000 --seed 5 --format json")}) {
    const RunResult r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(conforms(schema, doc));
    CHECK(doc["meta"]["generator"] == "splitmix64");
    CHECK(doc["meta"]["version"] == "0.1.0");
    CHECK(doc["meta"]["command"].get<std::string>().find("--format json") !=
          std::string::npos);
  }
}

TEST_CASE("figure3 series has one row per p") {
  const RunResult r = run_cli("figure3");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 993);  // header + p = 2..993
  CHECK(lines[0] == "p,value,limit_gap");
  CHECK(split_csv_line(lines[1])[0] == "2");
  CHECK(split_csv_line(lines[992])[0] == "993");
}

TEST_CASE("sequences table") {
  const RunResult r = run_cli("sequences --p 100 --format json");
  REQUIRE(r.exit_code == 0);
  const json row = json::parse(r.out)["rows"][0];
  CHECK(row["p"] == 100);
  CHECK(row["total_terms"] == 50);
  CHECK(row["summed_terms"] == 6);
  CHECK(row["left_terms"] == 44);
  CHECK(row["d_scaled"] == "289971241333195744732268877088");
}

TEST_CASE("lemma-check passes and reports the base case") {
  const RunResult r = run_cli("lemma-check --p 2..80");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("base_case") != std::string::npos);
  CHECK(r.out.find("class_minima_increase,0") != std::string::npos);
  const auto lines = split_lines(r.out);
  CHECK(lines[0] == "check,violation_count,details");
  CHECK(lines.size() == 13);  // header + 9 properties + 3 summary rows
}

TEST_CASE("recurrence table is consistent") {
  const RunResult r = run_cli("recurrence --p 2..40 --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() == 39);
  for (const auto& row : doc["rows"]) {
    CHECK(row["consistent"] == true);
    CHECK(row["identity_holds"] == row["summed_terms_stable"]);
  }
  CHECK(doc["rows"][1]["p"] == 3);
  CHECK(doc["rows"][1]["identity_holds"] == true);
  CHECK(doc["rows"][0]["identity_holds"] == false);
}

TEST_CASE("threshold scan against the reference value") {
  const RunResult r = run_cli("threshold --p-max 900 --format json");
  REQUIRE(r.exit_code == 0);
  const json row = json::parse(r.out)["rows"][0];
  CHECK(row["last_at_or_below"] == 839);
  CHECK(row["first_stable_p"] == 840);
  CHECK(row["count_at_or_below_two_thirds"] == 141);
  CHECK(row["reference_p"] == 783);
  CHECK(row["stable_from_reference"] == false);
  CHECK(row["matches_reference"] == false);
}

TEST_CASE("mc-orthant is deterministic and calibrated") {
  const std::string args = "mc-orthant --p 10 --n 40000 --seed 42 --format json";
  const RunResult r1 = run_cli(args);
  const RunResult r2 = run_cli(args);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  const json row = json::parse(r1.out)["rows"][0];
  CHECK(row["seed"] == 42);
  const double z = row["z_score"].get<double>();
  CHECK(std::fabs(z) < 4.0);
  CHECK(row["exact_value"].get<double>() ==
        doctest::Approx(672.0 / 1024.0).epsilon(1e-12));
}

TEST_CASE("mc-geometric reports both quantities and the note") {
  const RunResult r = run_cli("mc-geometric --p 3 --n 20000 --seed 4 --format json");
  REQUIRE(r.exit_code == 0);
  const json row = json::parse(r.out)["rows"][0];
  CHECK(std::fabs(row["direct_event_frequency"].get<double>() - 0.5) < 0.02);
  CHECK(row["reference_value"] == 0.5);
  CHECK(row["model_value"] == 0.75);
  CHECK(row["tie_count"] == 0);
  CHECK(row["note"].get<std::string>().find("exchangeability") !=
        std::string::npos);
  const double axis = row["axis_cosine_reference"].get<double>();
  CHECK(axis == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(row["centroid_max_abs_deviation"].get<double>() < 0.02);
}

TEST_CASE("pca subcommand runs from a config file") {
  const fs::path cfg_path = fresh_path("pca-config");
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"cov": {"kind": "identity", "p": 4}, "k": 1, "i": 2,
               "n_obs": 40, "n_trials": 120,
               "z_model": {"kind": "random_direction"}, "seed": 11})";
  }
  const std::string args = "pca --config " + cfg_path.string() + " --format json";
  const RunResult r1 = run_cli(args);
  const RunResult r2 = run_cli(args);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  const json doc = json::parse(r1.out);
  CHECK(doc["meta"]["seed"] == 11);
  const json row = doc["rows"][0];
  CHECK(row["p"] == 4);
  CHECK(row["cov_kind"] == "identity");
  CHECK(row["z_model"] == "random_direction");
  CHECK(row["k"] == 1);
  CHECK(row["i"] == 2);
  CHECK(row["trials_used"] == 120);
  CHECK(row["skipped_trials"] == 0);
  const double est = row["estimate"].get<double>();
  CHECK(est >= 0.0);
  CHECK(est <= 1.0);

  // --seed overrides the config seed and changes the draw.
  const RunResult r3 = run_cli(args + " --seed 12");
  REQUIRE(r3.exit_code == 0);
  CHECK(json::parse(r3.out)["meta"]["seed"] == 12);
}

TEST_CASE("--out writes the same bytes as stdout") {
  const fs::path out_file = fresh_path("exact-out");
  const RunResult direct = run_cli("exact --p 2..6");
  const RunResult filed = run_cli("exact --p 2..6 --out " + out_file.string());
  REQUIRE(direct.exit_code == 0);
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(out_file) == direct.out);
}

TEST_CASE("usage and domain errors exit 1") {
  CHECK(run_cli("no-such-command").exit_code == 1);
  CHECK(run_cli("mc-orthant --n 100").exit_code == 1);     // missing --p
  CHECK(run_cli("exact").exit_code == 1);                  // missing range
  CHECK(run_cli("exact --p 1..3").exit_code == 1);         // p below 2
  CHECK(run_cli("exact --p 2..5 --bogus").exit_code == 1); // unknown flag
  CHECK(run_cli("exact --p nonsense").exit_code == 1);
  CHECK(run_cli("pca --config /no/such/file.json").exit_code == 1);
  const RunResult r = run_cli("exact --p 1..3");
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("--version prints the library version") {
  const RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}
