#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treelens/adversary.hpp"
#include "treelens/audit.hpp"
#include "treelens/blackbox.hpp"
#include "treelens/cart.hpp"
#include "treelens/dataset.hpp"
#include "treelens/error.hpp"
#include "treelens/fraction.hpp"
#include "treelens/io.hpp"
#include "treelens/manifest.hpp"
#include "treelens/theory.hpp"

namespace {

using namespace treelens;

constexpr const char* kTieBreakNote =
    "Candidate splits are compared by exact weighted Gini impurity; ties break "
    "deterministically (earliest attribute in schema order first; in binary mode the "
    "lexicographically smallest stored value subset first).";

// Reads an input file and records its digest for the run manifest.
std::string load_input(RunManifest& manifest, const std::string& path) {
  std::string content = read_file(path);
  manifest.inputs.emplace_back(path, fnv1a64_hex(content));
  return content;
}

// Every output carries a trailing comment naming the manifest written next to
// it, so any result file can be traced back to its exact configuration.
void emit(RunManifest& manifest, const std::string& manifest_path,
          std::vector<std::pair<std::string, std::string>> outputs) {
  const std::string reference = std::filesystem::path(manifest_path).filename().string();
  for (auto& [path, content] : outputs) {
    const std::string ext = std::filesystem::path(path).extension().string();
    const bool slash_comment = ext == ".dot" || ext == ".json";
    if (!content.empty() && content.back() != '\n') {
      content += '\n';
    }
    content += (slash_comment ? "// manifest: " : "# manifest: ") + reference + "\n";
    manifest.outputs.push_back(path);
  }
  manifest.outputs.push_back(manifest_path);
  for (const auto& [path, content] : outputs) {
    atomic_write_file(path, content);
  }
  write_manifest(manifest, manifest_path);
}

Fraction parse_fraction_flag(const std::string& text, const char* flag) {
  try {
    return Fraction::parse(text);
  } catch (const Error& e) {
    throw Error(std::string(flag) + ": " + e.what());
  }
}

std::string render_prediction(const OrderingPrediction& prediction) {
  std::ostringstream out;
  out << "question-order prediction\n";
  out << "=========================\n";
  out << "mode: " << (prediction.dependent_mode ? "dependent (conditional fractions)"
                                                : "independent (marginal fractions)")
      << "\n";
  out << "favorable fractions:\n";
  for (const auto& [name, fraction] : prediction.fractions) {
    out << "  " << name << " = " << fraction.to_string() << "\n";
  }
  out << "predicted order (root first):";
  for (const std::string& name : prediction.order) {
    out << ' ' << name;
  }
  out << "\n";
  for (const auto& group : prediction.ties) {
    out << "tie (kept in declaration order):";
    for (const std::string& name : group) {
      out << ' ' << name;
    }
    out << "\n";
  }
  for (const std::string& name : prediction.degenerate) {
    out << "never asked: " << name << "\n";
  }
  return out.str();
}

struct SynthArgs {
  std::string schema_path;
  std::string spec_path;
  std::string out_path;
};

int cmd_synth(const SynthArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "synth";
  manifest.config = {{"schema", args.schema_path}, {"spec", args.spec_path},
                     {"out", args.out_path}};
  const auto schema = parse_schema(load_input(manifest, args.schema_path));
  const std::string spec_text = load_input(manifest, args.spec_path);

  SynthesisSpec spec;
  try {
    const auto j = nlohmann::json::parse(spec_text, nullptr, true, /*ignore_comments=*/true);
    spec.n = j.at("n").get<std::int64_t>();
    for (const auto& target : j.at("targets")) {
      spec.targets.emplace_back(target.at("attribute").get<std::string>(),
                                Fraction::parse(target.at("fraction").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("synthesis spec file error: " + std::string(e.what()));
  }

  const Dataset data = synthesize_independent(spec, schema);
  emit(manifest, args.out_path + ".manifest.json", {{args.out_path, render_csv(data)}});
  std::cout << "wrote " << args.out_path << " (" << data.size() << " rows)\n";
  return 0;
}

struct LabelArgs {
  std::string data_path;
  std::string schema_path;
  std::string rule_path;
  std::string out_path;
};

int cmd_label(const LabelArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "label";
  manifest.config = {{"data", args.data_path}, {"schema", args.schema_path},
                     {"rule", args.rule_path}, {"out", args.out_path}};
  const auto schema = parse_schema(load_input(manifest, args.schema_path));
  const Dataset data = parse_csv(load_input(manifest, args.data_path), &schema);
  const BlackBoxRule rule = parse_rule(load_input(manifest, args.rule_path));
  const Dataset labeled = label_dataset(rule, data);

  std::int64_t positives = 0;
  for (Label label : *labeled.labels) {
    if (label == Label::positive) {
      ++positives;
    }
  }
  emit(manifest, args.out_path + ".manifest.json", {{args.out_path, render_csv(labeled)}});
  std::cout << "wrote " << args.out_path << " (" << positives << "/" << labeled.size()
            << " positive)\n";
  return 0;
}

struct TrainArgs {
  std::string data_path;
  std::string schema_path;
  std::string out_prefix;
  std::string split_mode = "multiway";
  int max_depth = 0;  // 0: unlimited
  std::int64_t min_node_size = 1;
};

int cmd_train(const TrainArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "train";
  manifest.config = {{"data", args.data_path},
                     {"schema", args.schema_path.empty() ? "(inferred from data)"
                                                         : args.schema_path},
                     {"split-mode", args.split_mode},
                     {"max-depth", args.max_depth > 0 ? std::to_string(args.max_depth) : "none"},
                     {"min-node-size", std::to_string(args.min_node_size)},
                     {"out-prefix", args.out_prefix}};

  std::optional<std::vector<AttributeSpec>> schema;
  if (!args.schema_path.empty()) {
    schema = parse_schema(load_input(manifest, args.schema_path));
  }
  const Dataset data =
      parse_csv(load_input(manifest, args.data_path), schema ? &*schema : nullptr);
  if (!data.labeled()) {
    throw Error("dataset " + args.data_path +
                " has no label column; run `treelens label` to apply a black-box rule first");
  }

  StoppingPolicy policy;
  if (args.max_depth > 0) {
    policy.max_depth = args.max_depth;
  }
  policy.min_node_size = args.min_node_size;
  SplitMode mode;
  if (args.split_mode == "multiway") {
    mode = SplitMode::multiway;
  } else if (args.split_mode == "binary") {
    mode = SplitMode::binary;
  } else {
    throw Error("--split-mode must be multiway or binary, got " + args.split_mode);
  }

  const DecisionTree tree = build_tree(data, policy, mode);
  emit(manifest, args.out_prefix + ".manifest.json",
       {{args.out_prefix + ".dot", export_dot(tree)},
        {args.out_prefix + ".txt", export_ascii(tree)},
        {args.out_prefix + ".tree.json", export_text(tree)}});
  std::cout << "wrote " << args.out_prefix << ".{dot,txt,tree.json} (" << tree.nodes.size()
            << " nodes)\n";
  return 0;
}

struct PredictOrderArgs {
  std::vector<std::string> fractions;
  std::string data_path;
  std::string schema_path;
  std::vector<std::string> attributes;
  bool dependent = false;
  std::string out_path;
};

int cmd_predict_order(const PredictOrderArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "predict-order";
  if (!args.fractions.empty() && !args.data_path.empty()) {
    throw Error("give either --fraction entries or --data, not both");
  }
  OrderingPrediction prediction;
  if (!args.fractions.empty()) {
    if (args.dependent) {
      throw Error("--dependent needs --data; explicit fractions are marginal by definition");
    }
    std::vector<std::pair<std::string, Fraction>> fractions;
    std::string joined;
    for (const std::string& entry : args.fractions) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error("--fraction entries look like name=num/den, got " + entry);
      }
      fractions.emplace_back(entry.substr(0, eq),
                             parse_fraction_flag(entry.substr(eq + 1), "--fraction"));
      joined += (joined.empty() ? "" : ",") + entry;
    }
    manifest.config = {{"fractions", joined}, {"out", args.out_path}};
    prediction = predict_order(fractions);
  } else if (!args.data_path.empty()) {
    if (args.schema_path.empty()) {
      throw Error("--data needs --schema so favorable values are known");
    }
    manifest.config = {{"data", args.data_path},
                       {"schema", args.schema_path},
                       {"dependent", args.dependent ? "true" : "false"},
                       {"out", args.out_path}};
    const auto schema = parse_schema(load_input(manifest, args.schema_path));
    const Dataset data = parse_csv(load_input(manifest, args.data_path), &schema);
    std::vector<std::string> attributes = args.attributes;
    if (attributes.empty()) {
      for (const AttributeSpec& spec : schema) {
        attributes.push_back(spec.name);
      }
    }
    if (args.dependent) {
      prediction = predict_order_dependent(data, attributes);
    } else {
      std::vector<std::pair<std::string, Fraction>> fractions;
      for (const std::string& name : attributes) {
        fractions.emplace_back(name, fraction_favorable(data, name));
      }
      prediction = predict_order(fractions);
    }
  } else {
    throw Error("predict-order needs --fraction entries or --data");
  }

  const std::string report = render_prediction(prediction);
  emit(manifest, args.out_path + ".manifest.json", {{args.out_path, report}});
  std::cout << report;
  return 0;
}

struct ForgeArgs {
  std::string request_path;
  std::string schema_path;
  std::string sensitive;
  std::string depth = "last";
  std::int64_t n = 0;
  std::string min_fraction = "1/10";
  std::string max_fraction = "9/10";
  std::string fixed_path;
  std::string out_prefix;
};

int cmd_forge(const ForgeArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "forge";
  ForgeRequest request;
  if (!args.request_path.empty()) {
    manifest.config = {{"request", args.request_path}, {"out-prefix", args.out_prefix}};
    load_input(manifest, args.request_path);
    request = load_forge_request(args.request_path);
    // The request file may pull in a fixed dataset; record that input too.
    try {
      const auto j = nlohmann::json::parse(read_file(args.request_path), nullptr, true, true);
      if (j.contains("fixed_dataset")) {
        const auto fixed_path = std::filesystem::path(args.request_path).parent_path() /
                                j.at("fixed_dataset").get<std::string>();
        load_input(manifest, fixed_path.string());
      }
    } catch (const nlohmann::json::exception&) {
      // load_forge_request already reported any structural problem
    }
  } else {
    if (args.schema_path.empty() || args.sensitive.empty()) {
      throw Error("forge needs --request, or --schema and --sensitive");
    }
    manifest.config = {{"schema", args.schema_path},
                       {"sensitive", args.sensitive},
                       {"depth", args.depth},
                       {"n", std::to_string(args.n)},
                       {"min-fraction", args.min_fraction},
                       {"max-fraction", args.max_fraction},
                       {"fixed", args.fixed_path.empty() ? "(none)" : args.fixed_path},
                       {"out-prefix", args.out_prefix}};
    request.schema = parse_schema(load_input(manifest, args.schema_path));
    request.sensitive = args.sensitive;
    if (args.depth != "last") {
      try {
        request.target_depth = std::stoi(args.depth);
      } catch (const std::exception&) {
        throw Error("--depth must be a positive integer or last, got " + args.depth);
      }
    }
    for (const AttributeSpec& spec : request.schema) {
      request.rule.attributes.push_back(spec.name);
    }
    request.n = args.n;
    request.min_fraction = parse_fraction_flag(args.min_fraction, "--min-fraction");
    request.max_fraction = parse_fraction_flag(args.max_fraction, "--max-fraction");
    if (!args.fixed_path.empty()) {
      request.fixed = parse_csv(load_input(manifest, args.fixed_path), &request.schema);
    }
  }

  if (request.fixed.has_value()) {
    const FixedSampleReport report = check_fixed_sample(request);
    const std::string text = render_fixed_report(report);
    emit(manifest, args.out_prefix + ".manifest.json",
         {{args.out_prefix + ".report.txt", text}});
    std::cout << text;
    return 0;
  }

  const ForgeResult result = forge_sample(request);
  const std::string text = render_forge_report(result);
  emit(manifest, args.out_prefix + ".manifest.json",
       {{args.out_prefix + ".csv", render_csv(result.labeled)},
        {args.out_prefix + ".report.txt", text},
        {args.out_prefix + ".dot", export_dot(result.tree)},
        {args.out_prefix + ".txt", export_ascii(result.tree)},
        {args.out_prefix + ".tree.json", export_text(result.tree)}});
  std::cout << text;
  return 0;
}

struct AuditArgs {
  std::string data_path;
  std::string schema_path;
  std::string tree_path;
  std::string gap_threshold = "1/5";
  std::string out_prefix;
};

int cmd_audit(const AuditArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "audit";
  manifest.config = {{"data", args.data_path.empty() ? "(none)" : args.data_path},
                     {"schema", args.schema_path.empty() ? "(none)" : args.schema_path},
                     {"tree", args.tree_path.empty() ? "(none)" : args.tree_path},
                     {"gap-threshold", args.gap_threshold},
                     {"out-prefix", args.out_prefix}};
  std::optional<Dataset> data;
  if (!args.data_path.empty()) {
    if (args.schema_path.empty()) {
      throw Error("--data needs --schema so sensitive attributes are declared");
    }
    const auto schema = parse_schema(load_input(manifest, args.schema_path));
    data = parse_csv(load_input(manifest, args.data_path), &schema);
  }
  std::optional<DecisionTree> tree;
  if (!args.tree_path.empty()) {
    tree = import_tree(load_input(manifest, args.tree_path));
  }
  const Fraction threshold = parse_fraction_flag(args.gap_threshold, "--gap-threshold");
  const AuditReport report =
      audit(data ? &*data : nullptr, tree ? &*tree : nullptr, threshold);

  emit(manifest, args.out_prefix + ".manifest.json",
       {{args.out_prefix + ".txt", render_audit_text(report)},
        {args.out_prefix + ".csv", render_audit_csv(report)}});
  std::cout << render_audit_text(report);
  return report.any_flag() ? 2 : 0;
}

struct CurvesArgs {
  std::string p5 = "1/2";
  std::string pe = "1/2";
  std::string step = "1/1000";
  std::string out_path;
};

int cmd_curves(const CurvesArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "curves";
  manifest.config = {{"p5", args.p5}, {"pe", args.pe}, {"step", args.step},
                     {"out", args.out_path}};
  const CurveTable table = tabulate_tiered_curves(parse_fraction_flag(args.p5, "--p5"),
                                                  parse_fraction_flag(args.pe, "--pe"),
                                                  parse_fraction_flag(args.step, "--step"));
  emit(manifest, args.out_path + ".manifest.json", {{args.out_path, curve_table_csv(table)}});
  std::cout << "wrote " << args.out_path << " (" << table.points.size() << " grid points, "
            << table.intersections.size() << " intersections)\n";
  return 0;
}

struct SurfaceArgs {
  std::string step = "1/100";
  std::string out_path;
};

int cmd_surface(const SurfaceArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "surface";
  manifest.config = {{"step", args.step}, {"out", args.out_path}};
  const auto points = difference_surface(parse_fraction_flag(args.step, "--step"));
  emit(manifest, args.out_path + ".manifest.json", {{args.out_path, surface_csv(points)}});
  std::cout << "wrote " << args.out_path << " (" << points.size() << " grid points)\n";
  return 0;
}

struct VerifyArgs {
  std::string step = "1/1000";
  std::string out_path;
};

int cmd_verify_theorems(const VerifyArgs& args) {
  RunManifest manifest;
  manifest.subcommand = "verify-theorems";
  manifest.config = {{"step", args.step}, {"out", args.out_path}};
  const auto results = builtin_verifications(parse_fraction_flag(args.step, "--step"));

  std::ostringstream out;
  out << "built-in verification suite\n";
  out << "===========================\n";
  int failures = 0;
  for (const TheoremVerification& result : results) {
    out << (result.pass ? "PASS " : "FAIL ") << result.name << "\n";
    out << "     " << result.detail << "\n";
    if (!result.pass) {
      ++failures;
    }
  }
  out << failures << " of " << results.size() << " checks failed\n";

  emit(manifest, args.out_path + ".manifest.json", {{args.out_path, out.str()}});
  std::cout << out.str();
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "treelens: decision-tree induction with exact Gini arithmetic, sample forging and "
      "fairness auditing"};
  app.require_subcommand(1);
  app.footer(std::string(kTieBreakNote) +
             "\nFractions are written num/den and parsed exactly; decimal notation is "
             "rejected.\nEvery command writes a .manifest.json next to its outputs, and every "
             "output file ends with a comment naming that manifest.");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Synthesize an exactly independent dataset from target favorable fractions");
  synth_cmd->add_option("--schema", synth.schema_path, "Schema JSON file")->required();
  synth_cmd
      ->add_option("--spec", synth.spec_path,
                   "Synthesis spec JSON: {\"n\": rows, \"targets\": [{\"attribute\", "
                   "\"fraction\"}...]}; n must be divisible by the product of the fraction "
                   "denominators")
      ->required();
  synth_cmd->add_option("--out", synth.out_path, "Output dataset CSV path")->required();

  LabelArgs label;
  auto* label_cmd =
      app.add_subcommand("label", "Apply a black-box rule file to an unlabeled dataset");
  label_cmd->add_option("--data", label.data_path, "Input dataset CSV")->required();
  label_cmd->add_option("--schema", label.schema_path, "Schema JSON file")->required();
  label_cmd
      ->add_option("--rule", label.rule_path,
                   "Rule JSON file (conjunctive, tiered or lookup; see README)")
      ->required();
  label_cmd->add_option("--out", label.out_path, "Output labeled CSV path")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand(
      "train", std::string("Grow a decision tree by greedy exact-Gini splitting. ") +
                   kTieBreakNote);
  train_cmd->add_option("--data", train.data_path, "Labeled dataset CSV")->required();
  train_cmd->add_option("--schema", train.schema_path,
                        "Schema JSON file (default: infer domains from the data)");
  train_cmd->add_option("--split-mode", train.split_mode,
                        "multiway (one branch per value, attribute used once per path) or "
                        "binary (subset questions, attributes may repeat); default multiway")
      ->check(CLI::IsMember({"multiway", "binary"}));
  train_cmd->add_option("--max-depth", train.max_depth,
                        "Deepest level that may still ask a question, root = 1 "
                        "(default: unlimited)")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--min-node-size", train.min_node_size,
                        "Nodes smaller than this become leaves (default 1)")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--out-prefix", train.out_prefix,
                        "Writes <prefix>.dot, <prefix>.txt and <prefix>.tree.json")
      ->required();

  PredictOrderArgs predict;
  auto* predict_cmd = app.add_subcommand(
      "predict-order",
      "Predict the root-to-leaf question order for a conjunctive rule from favorable "
      "fractions (ascending fraction; ties keep declaration order)");
  predict_cmd->add_option("--fraction", predict.fractions,
                          "name=num/den entry; repeat per attribute");
  predict_cmd->add_option("--data", predict.data_path,
                          "Dataset CSV to read observed fractions from (needs --schema)");
  predict_cmd->add_option("--schema", predict.schema_path, "Schema JSON file for --data");
  predict_cmd->add_option("--attribute", predict.attributes,
                          "Restrict/order the attributes considered with --data; repeatable "
                          "(default: all schema attributes)");
  predict_cmd->add_flag("--dependent", predict.dependent,
                        "Recompute conditional fractions along the all-favorable path instead "
                        "of using marginals (exact for dependent data)");
  predict_cmd->add_option("--out", predict.out_path, "Output report path")->required();

  ForgeArgs forge;
  auto* forge_cmd = app.add_subcommand(
      "forge",
      "Compose an exactly independent sample that places a sensitive attribute at a chosen "
      "tree depth (or analyse feasibility on a fixed sample with --fixed)");
  forge_cmd->add_option("--request", forge.request_path,
                        "JSON request file (alternative to the flags below)");
  forge_cmd->add_option("--schema", forge.schema_path, "Schema JSON file");
  forge_cmd->add_option("--sensitive", forge.sensitive,
                        "Sensitive attribute (must be flagged sensitive in the schema)");
  forge_cmd->add_option("--depth", forge.depth,
                        "Target depth: positive integer or last (default last)");
  forge_cmd->add_option("--n", forge.n, "Sample size to synthesize");
  forge_cmd->add_option("--min-fraction", forge.min_fraction,
                        "Smallest allowed forged fraction (default 1/10)");
  forge_cmd->add_option("--max-fraction", forge.max_fraction,
                        "Largest allowed forged fraction (default 9/10)");
  forge_cmd->add_option("--fixed", forge.fixed_path,
                        "Fixed unlabeled dataset CSV: run the feasibility analysis instead of "
                        "composing a sample");
  forge_cmd->add_option("--out-prefix", forge.out_prefix,
                        "Writes <prefix>.report.txt, and for composed samples also "
                        "<prefix>.csv plus tree exports")
      ->required();

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand(
      "audit",
      "Group positive rates, zero-positive and rate-gap flags, tree importance and "
      "discrepancy notes; exit status 2 when any flag fires");
  audit_cmd->add_option("--data", audit_args.data_path, "Labeled dataset CSV");
  audit_cmd->add_option("--schema", audit_args.schema_path, "Schema JSON file for --data");
  audit_cmd->add_option("--tree", audit_args.tree_path, "Tree .tree.json file");
  audit_cmd->add_option("--gap-threshold", audit_args.gap_threshold,
                        "Rate-gap flag threshold as num/den (default 1/5)");
  audit_cmd->add_option("--out-prefix", audit_args.out_prefix,
                        "Writes <prefix>.txt and <prefix>.csv")
      ->required();

  CurvesArgs curves;
  auto* curves_cmd = app.add_subcommand(
      "curves",
      "Tabulate the four tiered-scenario split impurity curves over the low-tier share and "
      "locate their intersections");
  curves_cmd->add_option("--p5", curves.p5, "Middle-tier share (default 1/2)");
  curves_cmd->add_option("--pe", curves.pe, "Advantaged-group share (default 1/2)");
  curves_cmd->add_option("--step", curves.step, "Grid step (default 1/1000)");
  curves_cmd->add_option("--out", curves.out_path, "Output CSV path")->required();

  SurfaceArgs surface;
  auto* surface_cmd = app.add_subcommand(
      "surface",
      "Tabulate the impurity gap 2*pe*ps*(pe-ps) between the sensitive and a second "
      "attribute over the unit square");
  surface_cmd->add_option("--step", surface.step, "Grid step (default 1/100)");
  surface_cmd->add_option("--out", surface.out_path, "Output CSV path")->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand(
      "verify-theorems",
      "Run the built-in verification suites (ordering, depth bound, tier curves) on "
      "deterministic grids; exit status 1 on any mismatch");
  verify_cmd->add_option("--step", verify.step, "Tier-curve grid step (default 1/1000)");
  verify_cmd->add_option("--out", verify.out_path, "Output report path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      return cmd_synth(synth);
    }
    if (*label_cmd) {
      return cmd_label(label);
    }
    if (*train_cmd) {
      return cmd_train(train);
    }
    if (*predict_cmd) {
      return cmd_predict_order(predict);
    }
    if (*forge_cmd) {
      return cmd_forge(forge);
    }
    if (*audit_cmd) {
      return cmd_audit(audit_args);
    }
    if (*curves_cmd) {
      return cmd_curves(curves);
    }
    if (*surface_cmd) {
      return cmd_surface(surface);
    }
    if (*verify_cmd) {
      return cmd_verify_theorems(verify);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
