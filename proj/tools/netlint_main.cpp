#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netlint/bench.hpp"
#include "netlint/detectors.hpp"
#include "netlint/generator.hpp"
#include "netlint/io.hpp"

namespace {

using namespace netlint;

// 0 = clean, 1 = errors found, 2 = input/config failure.
int g_exit = 0;

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string tok = csv.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ConfigError(std::string(what) + ": '" + tok +
                        "' is not an integer");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

std::vector<std::string> parse_str_list(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    out.push_back(csv.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' || c == '[';
  }
  return false;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_output(const std::optional<std::string>& out_path,
                  const std::string& content) {
  if (out_path) {
    write_file(*out_path, content);
  } else {
    std::cout << content;
  }
}

struct ReportFlags {
  std::string format = "json";
  std::optional<std::string> out;
  double quantum = 1e-9;
};

void add_report_flags(CLI::App* cmd, std::shared_ptr<ReportFlags> flags) {
  cmd->add_option("--format", flags->format, "report format")
      ->check(CLI::IsMember({"json", "geojson"}));
  cmd->add_option_function<std::string>(
      "--out", [flags](const std::string& v) { flags->out = v; },
      "output file (stdout when absent)");
  cmd->add_option("--quantum", flags->quantum,
                  "coordinate grid for node identity");
}

void emit(const ReportFlags& flags, const ErrorReport& report,
          const std::vector<LineFeature>& features) {
  if (flags.format == "geojson") {
    write_output(flags.out, emit_report_geojson(report, features));
  } else {
    write_output(flags.out, emit_report_json(report));
  }
  if (!report.errors.empty()) g_exit = 1;
}

std::string config_echo(const RuleConfig& cfg) {
  std::string rule3 = "{";
  for (int w : cfg.rule3_weights) {
    if (rule3.size() > 1) rule3 += ",";
    rule3 += std::to_string(w);
  }
  rule3 += "}";
  return "k=" + std::to_string(cfg.k) + " rule3_weights=" + rule3 +
         " prohibited=(" + std::to_string(cfg.prohibited_pair.first) + "," +
         std::to_string(cfg.prohibited_pair.second) +
         ") quantum=" + format_double(cfg.quantum);
}

void setup_validate(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "validate", "check hierarchical connection rules 1-3");
  auto input = std::make_shared<std::string>();
  auto table_path = std::make_shared<std::string>();
  auto k = std::make_shared<int>(0);
  auto a = std::make_shared<int>(0);
  auto rule3_csv = std::make_shared<std::string>();
  auto prohibit_csv = std::make_shared<std::string>();
  auto detector = std::make_shared<std::string>();
  auto flags = std::make_shared<ReportFlags>();

  cmd->add_option("--input", *input, "GeoJSON dataset or CSV attribute table")
      ->required();
  cmd->add_option("--table", *table_path,
                  "CSV attribute table to cross-check against the geometry");
  cmd->add_option("--k", *k, "number of categories")->required();
  auto* opt_a = cmd->add_option("--a", *a, "rule-3 threshold weight");
  auto* opt_r3 = cmd->add_option("--rule3-weights", *rule3_csv,
                                 "comma-separated weights following rule 3");
  cmd->add_option("--prohibit", *prohibit_csv,
                  "prohibited weight pair, default lowest,highest");
  cmd->add_option("--detector", *detector,
                  "exhaustive, spatialjoin or both")
      ->check(CLI::IsMember({"exhaustive", "spatialjoin", "both"}));
  add_report_flags(cmd, flags);

  cmd->callback([=]() {
    if (opt_a->count() + opt_r3->count() != 1) {
      throw ConfigError("pass exactly one of --a or --rule3-weights");
    }
    RuleConfig cfg = opt_a->count()
                         ? RuleConfig::with_threshold(*k, *a, flags->quantum)
                         : RuleConfig::with_rule3_set(
                               *k,
                               [&] {
                                 auto v = parse_int_list(*rule3_csv,
                                                         "--rule3-weights");
                                 return std::set<int>(v.begin(), v.end());
                               }(),
                               flags->quantum);
    if (!prohibit_csv->empty()) {
      auto pair = parse_int_list(*prohibit_csv, "--prohibit");
      if (pair.size() != 2) throw ConfigError("--prohibit needs two weights");
      for (int w : pair) {
        if (w < 1 || w > cfg.k) {
          throw ConfigError("--prohibit weight " + std::to_string(w) +
                            " outside [1, k]");
        }
      }
      cfg.prohibited_pair = {pair[0], pair[1]};
    }

    std::string text = read_file(*input);
    Provenance prov;
    prov.input_hash = input_hash(text);
    prov.config = config_echo(cfg);

    if (!looks_like_json(text)) {
      // Table-only validation: the exhaustive detector works off the table.
      if (!table_path->empty()) {
        throw ConfigError(
            "--input already names a table; --table is for cross-checking "
            "against geometry");
      }
      if (!detector->empty() && *detector != "exhaustive") {
        throw ConfigError("detector '" + *detector +
                          "' needs geometry input; tables support only "
                          "'exhaustive'");
      }
      AttributeTable table = parse_attribute_table(text);
      for (const auto& row : table.rows) {
        if (row.weight < 1 || row.weight > cfg.k) {
          throw ConfigError("row '" + row.id + "': weight " +
                            std::to_string(row.weight) + " outside [1, " +
                            std::to_string(cfg.k) + "]");
        }
      }
      if (flags->format == "geojson") {
        throw ConfigError("geojson output needs geometry input");
      }
      prov.detector = "exhaustive";
      ErrorReport report;
      report.errors = detect_exhaustive(table, cfg);
      label_components(report.errors, table);
      report.provenance = std::move(prov);
      emit(*flags, report, {});
      return;
    }

    std::vector<LineFeature> features = parse_geojson(text);
    Network net = build_network(std::move(features), cfg);
    std::optional<AttributeTable> table;
    if (!table_path->empty()) {
      table = parse_attribute_table(read_file(*table_path));
      cross_check_table(net, *table);
    }

    std::string chosen = detector->empty() ? "spatialjoin" : *detector;
    ErrorReport report;
    if (chosen == "exhaustive") {
      report.errors = detect_exhaustive(
          table ? *table : AttributeTable::from_network(net), cfg);
    } else if (chosen == "spatialjoin") {
      report.errors = detect_spatialjoin(net, cfg);
    } else {
      auto sj = detect_spatialjoin(net, cfg);
      auto ex = detect_exhaustive(
          table ? *table : AttributeTable::from_network(net), cfg);
      auto keys = [](const std::vector<ValidationError>& es) {
        std::vector<std::string> ks;
        ks.reserve(es.size());
        for (const auto& e : es) ks.push_back(identity_key(e));
        std::sort(ks.begin(), ks.end());
        return ks;
      };
      if (keys(sj) != keys(ex)) {
        throw Error(
            "internal: exhaustive and spatial-join detectors disagree on "
            "this input");
      }
      report.errors = std::move(sj);
      chosen = "both(verified)";
    }
    label_components(report.errors, net);
    prov.detector = chosen;
    report.provenance = std::move(prov);
    emit(*flags, report, net.features);
  });
}

void setup_flow_check(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "flow-check", "find nodes where directed flow is blocked");
  auto input = std::make_shared<std::string>();
  auto exempt = std::make_shared<bool>(false);
  auto flags = std::make_shared<ReportFlags>();
  cmd->add_option("--input", *input, "GeoJSON dataset")->required();
  cmd->add_flag("--exempt-terminals", *exempt,
                "do not flag nodes touched by a single feature end");
  add_report_flags(cmd, flags);

  cmd->callback([=]() {
    std::string text = read_file(*input);
    std::vector<LineFeature> features =
        apply_direction_weights(parse_geojson(text));
    int max_w = 1;
    for (const auto& f : features) max_w = std::max(max_w, f.weight);
    RuleConfig cfg = RuleConfig::with_threshold(max_w, 1, flags->quantum);
    Network net = build_network(std::move(features), cfg);

    ErrorReport report;
    report.errors = detect_point_no_flow(net, *exempt);
    label_components(report.errors, net);
    report.provenance = {input_hash(text),
                         "quantum=" + format_double(flags->quantum) +
                             (*exempt ? " exempt-terminals" : ""),
                         "point_no_flow", std::nullopt};
    emit(*flags, report, net.features);
  });
}

void setup_self_intersect(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "self-intersect", "find self-intersecting features");
  auto input = std::make_shared<std::string>();
  auto mode = std::make_shared<std::string>("paper");
  auto flags = std::make_shared<ReportFlags>();
  cmd->add_option("--input", *input, "GeoJSON dataset")->required();
  cmd->add_option("--mode", *mode,
                  "paper: endpoint co-location; full: also interior checks")
      ->check(CLI::IsMember({"paper", "full"}));
  add_report_flags(cmd, flags);

  cmd->callback([=]() {
    std::string text = read_file(*input);
    std::vector<LineFeature> features = parse_geojson(text);
    int max_w = 1;
    for (const auto& f : features) max_w = std::max(max_w, f.weight);
    RuleConfig cfg = RuleConfig::with_threshold(max_w, 1, flags->quantum);
    Network net = build_network(std::move(features), cfg);

    ErrorReport report;
    report.errors = detect_self_intersection(
        net, *mode == "full" ? SelfIntersectMode::full
                             : SelfIntersectMode::paper);
    label_components(report.errors, net);
    report.provenance = {input_hash(text),
                         "mode=" + *mode +
                             " quantum=" + format_double(flags->quantum),
                         "self_intersection", std::nullopt};
    emit(*flags, report, net.features);
  });
}

void setup_near_nodes(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "near-nodes", "find node pairs close enough to suggest bad digitizing");
  auto input = std::make_shared<std::string>();
  auto epsilon = std::make_shared<double>(0.0);
  auto flags = std::make_shared<ReportFlags>();
  cmd->add_option("--input", *input, "GeoJSON dataset")->required();
  cmd->add_option("--epsilon", *epsilon, "distance threshold in map units")
      ->required();
  add_report_flags(cmd, flags);

  cmd->callback([=]() {
    std::string text = read_file(*input);
    std::vector<LineFeature> features = parse_geojson(text);
    int max_w = 1;
    for (const auto& f : features) max_w = std::max(max_w, f.weight);
    RuleConfig cfg = RuleConfig::with_threshold(max_w, 1, flags->quantum);
    Network net = build_network(std::move(features), cfg);

    ErrorReport report;
    report.errors = detect_near_nodes(net, *epsilon);
    label_components(report.errors, net);
    report.provenance = {input_hash(text),
                         "epsilon=" + format_double(*epsilon) +
                             " quantum=" + format_double(flags->quantum),
                         "near_nodes", std::nullopt};
    emit(*flags, report, net.features);
  });
}

void setup_gen(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "gen", "generate a synthetic network with optional injected defects");
  auto spec = std::make_shared<GenSpec>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--n", spec->n, "feature count")->required();
  cmd->add_option("--k", spec->k, "category count")->required();
  cmd->add_option("--seed", spec->seed, "random seed")->required();
  cmd->add_option("--a", spec->a, "rule-3 threshold (default k/2+1)");
  cmd->add_option("--inject-rule1", spec->inject_rule1,
                  "rule-1 defects per feature");
  cmd->add_option("--inject-rule2", spec->inject_rule2,
                  "rule-2 defects per feature");
  cmd->add_option("--inject-rule3", spec->inject_rule3,
                  "rule-3 defects per feature");
  cmd->add_option("--out", *out, "dataset path; ground truth goes to "
                                 "<out>.truth.json")
      ->required();

  cmd->callback([=]() {
    GeneratedNetwork gen = generate_network(*spec);
    std::string dataset = serialize_geojson(gen.features);
    write_file(*out, dataset);

    ErrorReport truth;
    truth.errors = gen.injected;
    truth.provenance = {
        input_hash(dataset),
        config_echo(gen.cfg) + " n=" + std::to_string(spec->n) +
            " seed=" + std::to_string(spec->seed),
        "generator-ground-truth", std::nullopt};
    write_file(*out + ".truth.json", emit_report_json(truth));
  });
}

void setup_bench(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "bench", "time detectors on generated networks of growing size");
  auto sizes_csv = std::make_shared<std::string>();
  auto k = std::make_shared<int>(0);
  auto detectors_csv = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--sizes", *sizes_csv, "comma-separated feature counts")
      ->required();
  cmd->add_option("--k", *k, "category count")->required();
  cmd->add_option("--detectors", *detectors_csv,
                  "comma-separated: exhaustive,spatialjoin")
      ->required();
  cmd->add_option("--out", *out, "CSV output path (stdout when absent)");

  cmd->callback([=]() {
    std::vector<int> sizes = parse_int_list(*sizes_csv, "--sizes");
    std::vector<std::string> detectors = parse_str_list(*detectors_csv);
    auto rows = run_bench(sizes, *k, detectors);
    std::string csv = bench_to_csv(rows);
    if (out->empty()) {
      std::cout << csv;
    } else {
      write_file(*out, csv);
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"connection-error validation for networks of linear features"};
  app.require_subcommand(1);
  setup_validate(app);
  setup_flow_check(app);
  setup_self_intersect(app);
  setup_near_nodes(app);
  setup_gen(app);
  setup_bench(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const netlint::Error& e) {
    std::cerr << "netlint: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
