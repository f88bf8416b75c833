#include <filesystem>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "test_support.hpp"
#include "treelens/io.hpp"
#include "treelens/manifest.hpp"

namespace fs = std::filesystem;
using cli_runner::make_temp_dir;
using cli_runner::read_file;
using cli_runner::run_cli;
using cli_runner::write_file;

namespace {

const std::string kSpec =
    R"({"n": 10, "targets": [{"attribute": "species", "fraction": "3/5"},)"
    R"( {"attribute": "salary", "fraction": "1/2"}]})";
const std::string kRule = R"({"type": "conjunctive", "attributes": ["species", "salary"]})";

struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string& name) : dir(make_temp_dir(name)) {
    write_file(dir / "schema.json", treelens::render_schema(test_support::loan_schema()));
    write_file(dir / "spec.json", kSpec);
    write_file(dir / "rule.json", kRule);
  }
  ~Workspace() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("end-to-end walkthrough over the loan scenario") {
  Workspace ws("treelens-cli-walkthrough");

  auto synth = run_cli({"synth", "--schema", "schema.json", "--spec", "spec.json", "--out",
                        "data.csv"},
                       ws.dir);
  CAPTURE(synth.output);
  REQUIRE_EQ(synth.exit_code, 0);
  REQUIRE(fs::exists(ws.dir / "data.csv"));
  CHECK(fs::exists(ws.dir / "data.csv.manifest.json"));

  auto label = run_cli({"label", "--data", "data.csv", "--schema", "schema.json", "--rule",
                        "rule.json", "--out", "labeled.csv"},
                       ws.dir);
  CAPTURE(label.output);
  REQUIRE_EQ(label.exit_code, 0);
  const std::string labeled_csv = read_file(ws.dir / "labeled.csv");
  CHECK(labeled_csv.find("label") != std::string::npos);

  auto train = run_cli({"train", "--data", "labeled.csv", "--schema", "schema.json",
                        "--out-prefix", "model"},
                       ws.dir);
  CAPTURE(train.output);
  REQUIRE_EQ(train.exit_code, 0);
  for (const auto* name : {"model.dot", "model.txt", "model.tree.json", "model.manifest.json"}) {
    CHECK(fs::exists(ws.dir / name));
  }
  const std::string dot = read_file(ws.dir / "model.dot");
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("salary") != std::string::npos);
  CHECK(dot.find("// manifest: model.manifest.json") != std::string::npos);

  auto order = run_cli({"predict-order", "--data", "labeled.csv", "--schema", "schema.json",
                        "--out", "order.txt"},
                       ws.dir);
  CAPTURE(order.output);
  REQUIRE_EQ(order.exit_code, 0);
  const std::string order_text = read_file(ws.dir / "order.txt");
  const auto order_line_pos = order_text.find("predicted order");
  REQUIRE(order_line_pos != std::string::npos);
  const std::string order_line = order_text.substr(order_line_pos);
  CHECK(order_line.find("salary") != std::string::npos);
  CHECK(order_line.find("species") != std::string::npos);
  CHECK_LT(order_line.find("salary"), order_line.find("species"));

  auto audit = run_cli({"audit", "--data", "labeled.csv", "--schema", "schema.json", "--tree",
                        "model.tree.json", "--out-prefix", "audit"},
                       ws.dir);
  CAPTURE(audit.output);
  CHECK_EQ(audit.exit_code, 2);  // flags fired
  const std::string audit_csv = read_file(ws.dir / "audit.csv");
  CHECK(audit_csv.find("species,ogre,0,4,0.000000000,1") != std::string::npos);
  const std::string audit_txt = read_file(ws.dir / "audit.txt");
  CHECK(audit_txt.find("flags fired: yes") != std::string::npos);

  auto curves = run_cli({"curves", "--step", "1/100", "--out", "curves.csv"}, ws.dir);
  CAPTURE(curves.output);
  REQUIRE_EQ(curves.exit_code, 0);
  CHECK(read_file(ws.dir / "curves.csv").find("0.250000000") != std::string::npos);

  auto surface = run_cli({"surface", "--step", "1/10", "--out", "surface.csv"}, ws.dir);
  CAPTURE(surface.output);
  REQUIRE_EQ(surface.exit_code, 0);

  auto verify = run_cli({"verify-theorems", "--step", "1/100", "--out", "verify.txt"}, ws.dir);
  CAPTURE(verify.output);
  CHECK_EQ(verify.exit_code, 0);
  CHECK(verify.output.find("0 of") != std::string::npos);
  CHECK(verify.output.find("checks failed") != std::string::npos);
  CHECK(verify.output.find("FAIL") == std::string::npos);
}

TEST_CASE("manifests record true input digests") {
  Workspace ws("treelens-cli-manifest");
  REQUIRE_EQ(run_cli({"synth", "--schema", "schema.json", "--spec", "spec.json", "--out",
                      "data.csv"},
                     ws.dir)
                 .exit_code,
             0);

  const std::string manifest = read_file(ws.dir / "data.csv.manifest.json");
  CHECK(manifest.find("\"subcommand\": \"synth\"") != std::string::npos);
  const std::string schema_digest = treelens::fnv1a64_hex(read_file(ws.dir / "schema.json"));
  const std::string spec_digest = treelens::fnv1a64_hex(read_file(ws.dir / "spec.json"));
  CHECK(manifest.find(schema_digest) != std::string::npos);
  CHECK(manifest.find(spec_digest) != std::string::npos);
  CHECK(manifest.find("data.csv") != std::string::npos);
}

TEST_CASE("identical runs produce identical bytes") {
  Workspace ws("treelens-cli-determinism");
  REQUIRE_EQ(run_cli({"synth", "--schema", "schema.json", "--spec", "spec.json", "--out",
                      "data.csv"},
                     ws.dir)
                 .exit_code,
             0);
  REQUIRE_EQ(run_cli({"label", "--data", "data.csv", "--schema", "schema.json", "--rule",
                      "rule.json", "--out", "labeled.csv"},
                     ws.dir)
                 .exit_code,
             0);

  const std::vector<std::string> args = {"train", "--data", "labeled.csv", "--schema",
                                         "schema.json", "--out-prefix", "model"};
  REQUIRE_EQ(run_cli(args, ws.dir).exit_code, 0);
  std::vector<std::pair<std::string, std::string>> first;
  for (const auto* name : {"model.dot", "model.txt", "model.tree.json", "model.manifest.json"}) {
    first.emplace_back(name, read_file(ws.dir / name));
  }
  REQUIRE_EQ(run_cli(args, ws.dir).exit_code, 0);
  for (const auto& [name, content] : first) {
    CHECK_EQ(read_file(ws.dir / name), content);
  }
}

TEST_CASE("share-based question ordering straight from flags") {
  Workspace ws("treelens-cli-order");
  auto r = run_cli({"predict-order", "--fraction", "species=3/5", "--fraction", "salary=1/2",
                    "--out", "order.txt"},
                   ws.dir);
  CAPTURE(r.output);
  REQUIRE_EQ(r.exit_code, 0);
  const std::string text = read_file(ws.dir / "order.txt");
  const auto line_pos = text.find("predicted order");
  REQUIRE(line_pos != std::string::npos);
  const std::string order_line = text.substr(line_pos);
  CHECK_LT(order_line.find("salary"), order_line.find("species"));
}

TEST_CASE("forge composes a sample and the audit catches it") {
  Workspace ws("treelens-cli-forge");
  auto forge = run_cli({"forge", "--schema", "schema.json", "--sensitive", "species", "--depth",
                        "2", "--n", "10", "--out-prefix", "forged"},
                       ws.dir);
  CAPTURE(forge.output);
  REQUIRE_EQ(forge.exit_code, 0);
  CHECK(forge.output.find("achieved depth: 2") != std::string::npos);
  for (const auto* name :
       {"forged.csv", "forged.report.txt", "forged.dot", "forged.txt", "forged.tree.json"}) {
    CHECK(fs::exists(ws.dir / name));
  }

  auto audit = run_cli({"audit", "--data", "forged.csv", "--schema", "schema.json",
                        "--out-prefix", "forged-audit"},
                       ws.dir);
  CHECK_EQ(audit.exit_code, 2);
}

TEST_CASE("forge feasibility report for a fixed sample") {
  Workspace ws("treelens-cli-fixed");
  REQUIRE_EQ(run_cli({"synth", "--schema", "schema.json", "--spec", "spec.json", "--out",
                      "data.csv"},
                     ws.dir)
                 .exit_code,
             0);
  auto r = run_cli({"forge", "--schema", "schema.json", "--sensitive", "species", "--fixed",
                    "data.csv", "--out-prefix", "feas"},
                   ws.dir);
  CAPTURE(r.output);
  REQUIRE_EQ(r.exit_code, 0);
  CHECK(fs::exists(ws.dir / "feas.report.txt"));
  CHECK_FALSE(fs::exists(ws.dir / "feas.csv"));
  CHECK(r.output.find("feasib") != std::string::npos);
}

TEST_CASE("clean outcomes exit zero from the audit") {
  Workspace ws("treelens-cli-clean-audit");
  write_file(ws.dir / "salary-rule.json",
             R"({"type": "conjunctive", "attributes": ["salary"]})");
  REQUIRE_EQ(run_cli({"synth", "--schema", "schema.json", "--spec", "spec.json", "--out",
                      "data.csv"},
                     ws.dir)
                 .exit_code,
             0);
  REQUIRE_EQ(run_cli({"label", "--data", "data.csv", "--schema", "schema.json", "--rule",
                      "salary-rule.json", "--out", "labeled.csv"},
                     ws.dir)
                 .exit_code,
             0);
  auto audit = run_cli({"audit", "--data", "labeled.csv", "--schema", "schema.json",
                        "--out-prefix", "audit"},
                       ws.dir);
  CAPTURE(audit.output);
  CHECK_EQ(audit.exit_code, 0);
}

TEST_CASE("errors carry actionable messages and exit one") {
  Workspace ws("treelens-cli-errors");
  REQUIRE_EQ(run_cli({"synth", "--schema", "schema.json", "--spec", "spec.json", "--out",
                      "data.csv"},
                     ws.dir)
                 .exit_code,
             0);

  SUBCASE("training unlabeled data points at the labelling step") {
    auto r = run_cli({"train", "--data", "data.csv", "--schema", "schema.json", "--out-prefix",
                      "model"},
                     ws.dir);
    CHECK_EQ(r.exit_code, 1);
    CHECK(r.output.find("treelens label") != std::string::npos);
  }
  SUBCASE("indivisible sample size names the denominator product") {
    write_file(ws.dir / "bad-spec.json",
               R"({"n": 4, "targets": [{"attribute": "species", "fraction": "1/3"},)"
               R"( {"attribute": "salary", "fraction": "1/2"}]})");
    auto r = run_cli({"synth", "--schema", "schema.json", "--spec", "bad-spec.json", "--out",
                      "x.csv"},
                     ws.dir);
    CHECK_EQ(r.exit_code, 1);
    CHECK(r.output.find("product of target denominators") != std::string::npos);
  }
  SUBCASE("decimal fractions are rejected") {
    auto r = run_cli({"curves", "--step", "0.01", "--out", "x.csv"}, ws.dir);
    CHECK_EQ(r.exit_code, 1);
    CHECK(r.output.find("decimal notation rejected") != std::string::npos);
  }
  SUBCASE("missing required flags fail fast") {
    auto r = run_cli({"synth", "--schema", "schema.json"}, ws.dir);
    CHECK_NE(r.exit_code, 0);
  }
  SUBCASE("unknown subcommands fail fast") {
    auto r = run_cli({"explain"}, ws.dir);
    CHECK_NE(r.exit_code, 0);
  }
}

TEST_CASE("help text documents the contract") {
  Workspace ws("treelens-cli-help");
  auto top = run_cli({"--help"}, ws.dir);
  CHECK_EQ(top.exit_code, 0);
  for (const auto* name : {"synth", "label", "train", "forge", "audit", "verify-theorems"}) {
    CHECK(top.output.find(name) != std::string::npos);
  }

  auto train_help = run_cli({"train", "--help"}, ws.dir);
  CHECK_EQ(train_help.exit_code, 0);
  CHECK(train_help.output.find("tie") != std::string::npos);

  auto audit_help = run_cli({"audit", "--help"}, ws.dir);
  CHECK_EQ(audit_help.exit_code, 0);
  CHECK(audit_help.output.find("1/5") != std::string::npos);
}
