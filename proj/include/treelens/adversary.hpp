#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelens/blackbox.hpp"
#include "treelens/cart.hpp"
#include "treelens/dataset.hpp"
#include "treelens/fraction.hpp"
#include "treelens/theory.hpp"

namespace treelens {

// Request to place a sensitive attribute at a chosen question depth, either
// by composing a fresh sample (operator scenario) or by analysing a fixed,
// externally supplied sample (regulator scenario).
struct ForgeRequest {
  std::vector<AttributeSpec> schema;  // exactly the rule's attributes
  std::string sensitive;              // must be flagged sensitive in the schema
  std::optional<int> target_depth;    // nullopt: the deepest level (= attribute count)
  ConjunctiveRule rule;
  std::int64_t n = 0;
  std::optional<Dataset> fixed;  // unlabeled; switches to the fixed-sample analysis

  // Window for forged favorable fractions; extreme group sizes would be
  // conspicuous, so the defaults keep every fraction inside [1/10, 9/10].
  Fraction min_fraction{1, 10};
  Fraction max_fraction{9, 10};
};

// JSON request file; the optional "fixed_dataset" CSV path is resolved
// relative to the request file's directory.
ForgeRequest load_forge_request(const std::filesystem::path& path);

struct ForgeResult {
  std::vector<std::pair<std::string, Fraction>> fractions;  // schema order
  Dataset labeled;
  DecisionTree tree;
  OrderingPrediction prediction;
  int target_depth = 0;
  int achieved_depth = 0;  // always equals target_depth (verified internally)
};

// Chooses distinct favorable fractions with exactly target_depth - 1 of them
// strictly below the sensitive attribute's, synthesizes an exactly
// independent sample of size n, labels it with the conjunctive rule, and
// verifies on the rebuilt tree that the sensitive attribute sits at exactly
// the requested depth.
ForgeResult forge_sample(const ForgeRequest& req);

struct FixedSampleReport {
  std::vector<std::pair<std::string, Fraction>> fractions;  // schema order
  std::string sensitive;
  int attribute_count = 0;
  Fraction sensitive_fraction;
  bool sensitive_strictly_max = false;
  std::optional<std::string> blocking_attribute;  // fraction >= the sensitive one
  bool hiding_impossible = false;                 // single attribute: depth 1 unavoidable
  bool exactly_independent = false;  // favorable indicators factorize exactly

  // Filled when the sensitive fraction is strictly maximal (or there is only
  // one attribute): the result of labelling with the rule and building the
  // tree on the fixed sample.
  std::optional<int> sensitive_depth;
  std::optional<Fraction> positive_fraction;
  Fraction bound;  // (1-x)^k, x = 1 - sensitive fraction
  std::optional<bool> depth_is_last;
  std::optional<bool> bound_holds;
};

// Analyses whether the conjunctive rule can push the sensitive attribute to
// the deepest level of a tree grown on the fixed sample.  Infeasibility is a
// report outcome, never an error.
FixedSampleReport check_fixed_sample(const ForgeRequest& req);

std::string render_forge_report(const ForgeResult& result);
std::string render_fixed_report(const FixedSampleReport& report);

}  // namespace treelens
