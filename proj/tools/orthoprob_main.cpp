// orthoprob: exact and Monte Carlo answers to "how often is a coordinate
// axis angularly closer to a random line than another random line is",
// plus the principal-component correlation experiment built on it.
//
// Every subcommand writes one table, as CSV (default) or as a JSON document
// {"meta": {...}, "rows": [...]}. Outputs are byte-identical for identical
// invocations; Monte Carlo commands are keyed by --seed.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthoprob/combinatorics.hpp"
#include "orthoprob/geometry.hpp"
#include "orthoprob/orthant.hpp"
#include "orthoprob/pca.hpp"
#include "orthoprob/rng.hpp"
#include "orthoprob/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace orthoprob;

struct OutputDoc {
  ordered_json meta;
  std::vector<ordered_json> rows;
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (const char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  r += '"';
  return r;
}

std::string csv_cell(const ordered_json& v) {
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt_double(v.get<double>());
  return v.dump();
}

void write_output(const OutputDoc& doc, const std::string& format,
                  const std::string& out_path) {
  std::ostringstream text;
  if (format == "json") {
    ordered_json root;
    root["meta"] = doc.meta;
    root["rows"] = doc.rows;
    text << root.dump(2) << "\n";
  } else {
    if (!doc.rows.empty()) {
      bool first = true;
      for (const auto& item : doc.rows.front().items()) {
        if (!first) text << ",";
        text << csv_escape(item.key());
        first = false;
      }
      text << "\n";
      for (const auto& row : doc.rows) {
        first = true;
        for (const auto& item : row.items()) {
          if (!first) text << ",";
          text << csv_cell(item.value());
          first = false;
        }
        text << "\n";
      }
    }
  }
  if (out_path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text.str();
  }
}

ordered_json make_meta(const std::string& command, std::uint64_t seed) {
  ordered_json meta;
  meta["command"] = command;
  meta["generator"] = kGeneratorName;
  meta["seed"] = seed;
  meta["version"] = kVersion;
  return meta;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  const auto pos = s.find("..");
  std::size_t used = 0;
  if (pos == std::string::npos) {
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad range: " + s);
    return {v, v};
  }
  const std::string lo = s.substr(0, pos), hi = s.substr(pos + 2);
  const std::int64_t a = std::stoll(lo, &used);
  if (used != lo.size()) throw std::invalid_argument("bad range: " + s);
  const std::int64_t b = std::stoll(hi, &used);
  if (used != hi.size()) throw std::invalid_argument("bad range: " + s);
  if (b < a) throw std::invalid_argument("empty range: " + s);
  return {a, b};
}

std::string join_command(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

std::string join_int64(const std::vector<std::int64_t>& v, std::size_t cap) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < cap; ++i) {
    if (i) s += ';';
    s += std::to_string(v[i]);
  }
  if (v.size() > cap) s += ";...";
  return s;
}

double safe_z(double est, double ref, double se) {
  return se > 0.0 ? (est - ref) / se : 0.0;
}

void emit_exact(const std::string& range, bool fractions, OutputDoc& doc) {
  const auto [lo, hi] = parse_range(range);
  ExactSweep sweep(lo);
  for (std::int64_t p = lo; p <= hi; ++p) {
    const ExactSweep::Point pt = sweep.next();
    ordered_json row;
    row["p"] = p;
    row["value"] = pt.prob.to_double();
    row["limit_gap"] = pt.prob.to_double() - kNormalCentralMass;
    if (fractions) {
      const DyadicProbability norm = pt.prob.normalized();
      row["numerator"] = norm.numerator.get_str();
      row["log2_denominator"] = norm.log2_den;
    }
    doc.rows.push_back(std::move(row));
  }
}

int cmd_lemma_check(const std::string& range, OutputDoc& doc) {
  const auto [lo, hi] = parse_range(range);
  const PropertyReport rep = check_lemma_properties(lo, hi);
  for (std::size_t i = 0; i < rep.violations.size(); ++i) {
    ordered_json row;
    row["check"] = "property_" + std::to_string(i + 1);
    row["violation_count"] = rep.violations[i].size();
    row["details"] = join_int64(rep.violations[i], 20);
    doc.rows.push_back(std::move(row));
  }
  ordered_json minima;
  minima["check"] = "class_minima_increase";
  minima["violation_count"] = rep.minima_violations.size();
  minima["details"] = join_int64(rep.minima_violations, 20);
  doc.rows.push_back(std::move(minima));
  ordered_json trunc;
  trunc["check"] = "truncated_classes_excluded";
  trunc["violation_count"] = 0;
  trunc["details"] = join_int64(rep.truncated_classes, 20);
  doc.rows.push_back(std::move(trunc));
  if (!rep.base_case_note.empty()) {
    ordered_json note;
    note["check"] = "base_case";
    note["violation_count"] = 0;
    note["details"] = rep.base_case_note;
    doc.rows.push_back(std::move(note));
  }
  return rep.all_hold() ? 0 : 2;
}

int cmd_recurrence(const std::string& range, OutputDoc& doc) {
  const auto [lo, hi] = parse_range(range);
  int status = 0;
  for (std::int64_t p = lo; p <= hi; ++p) {
    const RecurrenceCheck chk = check_recurrence(p);
    ordered_json row;
    row["p"] = p;
    row["identity_holds"] = chk.identity_holds;
    row["summed_terms_stable"] = chk.summed_terms_stable;
    row["consistent"] = chk.identity_holds == chk.summed_terms_stable;
    row["lhs"] = chk.lhs.get_str();
    row["rhs"] = chk.rhs.get_str();
    doc.rows.push_back(std::move(row));
    if (chk.identity_holds != chk.summed_terms_stable) status = 2;
  }
  return status;
}

void cmd_threshold(std::int64_t p_max, OutputDoc& doc) {
  const ThresholdReport rep = threshold_scan(p_max);
  ordered_json row;
  row["p_max"] = rep.p_max;
  row["count_at_or_below_two_thirds"] = rep.count_at_or_below;
  row["last_at_or_below"] = rep.last_at_or_below;
  row["first_stable_p"] = rep.first_stable_p;
  row["reference_p"] = rep.reference_p;
  row["stable_from_reference"] = rep.stable_from_reference;
  row["matches_reference"] = rep.first_stable_p == rep.reference_p;
  doc.rows.push_back(std::move(row));
}

void cmd_mc_orthant(std::int64_t p, std::int64_t n, std::uint64_t seed,
                    OutputDoc& doc) {
  const McEstimate est = mc_orthant_estimate(p, n, seed);
  const double exact = exact_probability(p).to_double();
  ordered_json row;
  row["p"] = p;
  row["n"] = n;
  row["seed"] = seed;
  row["estimate"] = est.estimate;
  row["standard_error"] = est.standard_error;
  row["exact_value"] = exact;
  row["z_score"] = safe_z(est.estimate, exact, est.standard_error);
  doc.rows.push_back(std::move(row));
}

void cmd_mc_geometric(std::int64_t p, std::int64_t n, std::uint64_t seed,
                      OutputDoc& doc) {
  const GeoReport rep = geo_report(p, n, seed);
  const double axis_ref = centroid_cosine_axis(p);
  double worst = 0.0;
  for (const double c : rep.centroid_direction)
    worst = std::max(worst, std::fabs(c - axis_ref));
  ordered_json row;
  row["p"] = p;
  row["n"] = n;
  row["seed"] = seed;
  row["direct_event_frequency"] = rep.direct_event.estimate.estimate;
  row["standard_error"] = rep.direct_event.estimate.standard_error;
  row["reference_value"] = 0.5;
  row["z_score"] = safe_z(rep.direct_event.estimate.estimate, 0.5,
                          rep.direct_event.estimate.standard_error);
  row["tie_count"] = rep.direct_event.tie_count;
  row["model_value"] = exact_probability(p).to_double();
  row["mean_folded_cosine"] = rep.mean_folded_cosine.estimate;
  row["axis_cosine_reference"] = axis_ref;
  row["centroid_max_abs_deviation"] = worst;
  row["note"] = GeoReport::kDiscrepancyNote;
  doc.rows.push_back(std::move(row));
}

void cmd_pca(const std::string& config_path, std::uint64_t seed_flag,
             bool seed_given, OutputDoc& doc) {
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
  ordered_json cfg = ordered_json::parse(in);

  ExperimentConfig config;
  const ordered_json& cov = cfg.at("cov");
  const std::string kind = cov.at("kind").get<std::string>();
  if (kind == "identity") {
    config.cov = CovarianceSpec::identity(cov.at("p").get<std::int64_t>());
  } else if (kind == "diagonal") {
    config.cov =
        CovarianceSpec::diagonal(cov.at("spectrum").get<std::vector<double>>());
  } else if (kind == "random_spd") {
    config.cov =
        CovarianceSpec::random_spd(cov.at("spectrum").get<std::vector<double>>(),
                                   cov.value("rotation_seed", std::uint64_t{0}));
  } else {
    throw std::invalid_argument("unknown covariance kind: " + kind);
  }
  config.k = cfg.value("k", std::int64_t{1});
  config.i = cfg.value("i", std::int64_t{1});
  config.n_obs = cfg.at("n_obs").get<std::int64_t>();
  config.n_trials = cfg.at("n_trials").get<std::int64_t>();
  if (cfg.contains("z_model")) {
    const std::string zkind = cfg["z_model"].value("kind", "random_direction");
    if (zkind == "random_direction")
      config.z.kind = ZModel::Kind::random_direction;
    else if (zkind == "noisy_linear")
      config.z.kind = ZModel::Kind::noisy_linear;
    else if (zkind == "independent")
      config.z.kind = ZModel::Kind::independent;
    else
      throw std::invalid_argument("unknown z_model kind: " + zkind);
    config.z.noise_sigma = cfg["z_model"].value("noise_sigma", 1.0);
  }
  config.seed = seed_given ? seed_flag : cfg.value("seed", kDefaultSeed);
  config.all_pairs = cfg.value("all_pairs", false);
  config.sample_pca = cfg.value("sample_pca", false);

  const ExperimentReport rep = run_experiment(config);
  doc.meta["seed"] = config.seed;

  const std::int64_t p = config.cov.p;
  const auto emit_cell = [&](std::int64_t k, std::int64_t i, const McEstimate& est) {
    ordered_json row;
    row["p"] = p;
    row["cov_kind"] = config.cov.kind_name();
    row["z_model"] = config.z.name();
    row["n_obs"] = config.n_obs;
    row["n_trials"] = config.n_trials;
    row["seed"] = config.seed;
    row["sample_pca"] = config.sample_pca;
    row["k"] = k;
    row["i"] = i;
    row["estimate"] = est.estimate;
    row["standard_error"] = est.standard_error;
    row["trials_used"] = est.n_samples;
    row["skipped_trials"] = rep.skipped_trials;
    doc.rows.push_back(std::move(row));
  };
  if (config.all_pairs) {
    for (std::int64_t k = 1; k <= p; ++k)
      for (std::int64_t i = 1; i <= p; ++i) emit_cell(k, i, rep.at(k, i));
  } else {
    emit_cell(config.k, config.i, rep.estimates[0]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and sampled closer-line probabilities"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  std::string p_range;
  std::string p_range_alias;
  bool fractions = false;
  bool figure3_preset = false;
  std::int64_t p_max = 2000;
  std::int64_t p_single = 0;
  std::int64_t n = 1000000;
  std::string config_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "output file (default stdout)");
  };
  const auto add_range = [&](CLI::App* sub) {
    CLI::Option* opt = sub->add_option("--p", p_range, "p or range A..B");
    sub->add_option("--p-range", p_range_alias, "range A..B")->excludes(opt);
  };

  CLI::App* exact = app.add_subcommand("exact", "exact probability table");
  add_common(exact);
  add_range(exact);
  exact->add_flag("--exact-fractions", fractions, "include exact numerators");
  exact->add_flag("--figure3", figure3_preset, "preset range 2..993");

  CLI::App* figure3 =
      app.add_subcommand("figure3", "convergence data series (p = 2..993)");
  add_common(figure3);
  figure3->add_flag("--exact-fractions", fractions, "include exact numerators");

  CLI::App* sequences = app.add_subcommand("sequences", "term-count table");
  add_common(sequences);
  add_range(sequences);

  CLI::App* lemma = app.add_subcommand("lemma-check", "structural checks");
  add_common(lemma);
  add_range(lemma);

  CLI::App* recurrence = app.add_subcommand("recurrence", "two-step identity table");
  add_common(recurrence);
  add_range(recurrence);

  CLI::App* threshold = app.add_subcommand("threshold", "2/3 stability scan");
  add_common(threshold);
  threshold->add_option("--p-max", p_max, "scan bound");

  CLI::App* mc_orthant = app.add_subcommand("mc-orthant", "sign-pattern sampling");
  add_common(mc_orthant);
  mc_orthant->add_option("--p", p_single, "dimension")->required();
  mc_orthant->add_option("--n", n, "sample count");
  mc_orthant->add_option("--seed", seed, "generator seed");

  CLI::App* mc_geometric =
      app.add_subcommand("mc-geometric", "continuous line sampling");
  add_common(mc_geometric);
  mc_geometric->add_option("--p", p_single, "dimension")->required();
  mc_geometric->add_option("--n", n, "sample count");
  mc_geometric->add_option("--seed", seed, "generator seed");

  CLI::App* pca = app.add_subcommand("pca", "correlation experiment");
  add_common(pca);
  CLI::Option* pca_config =
      pca->add_option("--config", config_path, "JSON config file")->required();
  (void)pca_config;
  CLI::Option* pca_seed = pca->add_option("--seed", seed, "override config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (!verify_normal_constant()) {
    std::cerr << "invariant violation: normal central-mass constant\n";
    return 2;
  }

  if (!p_range_alias.empty()) p_range = p_range_alias;

  OutputDoc doc;
  doc.meta = make_meta(join_command(argc, argv), seed);
  int status = 0;
  try {
    if (exact->parsed()) {
      if (figure3_preset)
        p_range = "2..993";
      else if (p_range.empty())
        throw std::invalid_argument("exact: --p or --figure3 required");
      emit_exact(p_range, fractions, doc);
    } else if (figure3->parsed()) {
      emit_exact("2..993", fractions, doc);
    } else if (sequences->parsed()) {
      if (p_range.empty()) throw std::invalid_argument("sequences: --p required");
      const auto [lo, hi] = parse_range(p_range);
      ExactSweep sweep(lo);
      for (std::int64_t p = lo; p <= hi; ++p) {
        const SequenceRow row = sweep.next().row;
        ordered_json j;
        j["p"] = row.p;
        j["p_star"] = row.p_star;
        j["total_terms"] = row.total_terms;
        j["summed_terms"] = row.summed_terms;
        j["left_terms"] = row.left_terms;
        j["d_scaled"] = row.d_scaled.get_str();
        doc.rows.push_back(std::move(j));
      }
    } else if (lemma->parsed()) {
      status = cmd_lemma_check(p_range.empty() ? "2..1000" : p_range, doc);
    } else if (recurrence->parsed()) {
      status = cmd_recurrence(p_range.empty() ? "2..100" : p_range, doc);
    } else if (threshold->parsed()) {
      cmd_threshold(p_max, doc);
    } else if (mc_orthant->parsed()) {
      cmd_mc_orthant(p_single, n, seed, doc);
    } else if (mc_geometric->parsed()) {
      cmd_mc_geometric(p_single, n, seed, doc);
    } else if (pca->parsed()) {
      cmd_pca(config_path, seed, pca_seed->count() > 0, doc);
    }
    write_output(doc, format, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  }
  return status;
}
