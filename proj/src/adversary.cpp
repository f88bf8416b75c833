#include "treelens/adversary.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "treelens/error.hpp"
#include "treelens/io.hpp"

namespace treelens {
namespace {

// Shared structural checks: the schema is valid, covers exactly the rule's
// attributes, and declares the sensitive attribute as such.
void check_request_shape(const ForgeRequest& req) {
  validate_schema(req.schema);
  if (req.rule.attributes.empty()) {
    throw Error("the conjunctive rule must name at least one attribute");
  }
  validate_rule(req.rule, req.schema);
  for (const AttributeSpec& spec : req.schema) {
    if (std::find(req.rule.attributes.begin(), req.rule.attributes.end(), spec.name) ==
        req.rule.attributes.end()) {
      throw Error("schema attribute " + spec.name +
                  " is not part of the rule; forging requires the schema and rule to cover the "
                  "same attributes");
    }
    if (spec.favorable.empty()) {
      throw Error("attribute " + spec.name +
                  " has no favorable values, so the rule could never label anything positive");
    }
  }
  const auto sens = std::find_if(req.schema.begin(), req.schema.end(),
                                 [&](const AttributeSpec& s) { return s.name == req.sensitive; });
  if (sens == req.schema.end()) {
    throw Error("sensitive attribute " + req.sensitive + " is not in the schema");
  }
  if (!sens->sensitive) {
    throw Error("attribute " + req.sensitive +
                " must be flagged sensitive in the schema so audits can target it");
  }
}

std::vector<std::int64_t> divisors_ascending(std::int64_t n) {
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divisors.push_back(d);
      if (d != n / d) {
        divisors.push_back(n / d);
      }
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// k distinct fractions with denominators dividing n, evenly spaced and
// centered inside the window: the smallest divisor D of n whose window holds
// k consecutive numerators such that n stays divisible by the product of the
// reduced denominators wins.  Deterministic; no randomness anywhere.
std::vector<Fraction> choose_fractions(std::int64_t n, int k, const Fraction& min_fraction,
                                       const Fraction& max_fraction) {
  for (std::int64_t d : divisors_ascending(n)) {
    // Numerators c with min <= c/d <= max, clipped to the open unit interval.
    std::int64_t lo =
        std::max<std::int64_t>(1, ceil_div(min_fraction.numerator() * d,
                                           min_fraction.denominator()));
    std::int64_t hi = std::min<std::int64_t>(
        d - 1, (max_fraction.numerator() * d) / max_fraction.denominator());
    if (hi - lo + 1 < k) {
      continue;
    }
    // Center the run of k consecutive numerators on d/2.
    std::int64_t start = (d - k + 2) / 2;
    start = std::clamp(start, lo, hi - k + 1);
    std::vector<Fraction> fractions;
    std::int64_t cell_denominator = 1;
    bool fits = true;
    for (int i = 0; i < k; ++i) {
      Fraction f(start + i, d);
      // Joint cell counts need n divisible by the product of the reduced
      // denominators; a product beyond n can never divide it.
      if (cell_denominator > n / f.denominator()) {
        fits = false;
        break;
      }
      cell_denominator *= f.denominator();
      fractions.push_back(f);
    }
    if (fits && n % cell_denominator == 0) {
      return fractions;
    }
  }
  std::ostringstream msg;
  msg << "cannot choose " << k << " distinct fractions in ["
      << min_fraction.to_string() << ", " << max_fraction.to_string()
      << "] with denominators whose product divides n=" << n
      << "; increase n (a multiple of a k-th power such as " << k << "^" << k << " works)";
  throw Error(msg.str());
}

// Is the joint distribution of the favorable/unfavorable indicators exactly
// the product of the marginals?  Checked over all 2^k indicator cells.
bool indicators_independent(const Dataset& data) {
  const std::size_t k = data.schema.size();
  if (k > 20) {
    return false;  // not verified; 2^k cells would be excessive
  }
  const std::int64_t n = data.size();
  if (n == 0) {
    return false;
  }
  std::vector<std::int64_t> favorable_counts(k, 0);
  std::vector<std::int64_t> cell_counts(std::size_t{1} << k, 0);
  for (const auto& row : data.rows) {
    std::size_t mask = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (data.schema[a].is_favorable(row[a])) {
        mask |= std::size_t{1} << a;
        ++favorable_counts[a];
      }
    }
    ++cell_counts[mask];
  }
  for (std::size_t mask = 0; mask < cell_counts.size(); ++mask) {
    // count(mask) / n == prod_i marginal_i  <=>  count(mask) * n^(k-1) == prod counts
    __int128 lhs = cell_counts[mask];
    for (std::size_t a = 1; a < k; ++a) {
      lhs *= n;
    }
    __int128 rhs = 1;
    for (std::size_t a = 0; a < k; ++a) {
      const bool fav = (mask >> a) & 1U;
      rhs *= fav ? favorable_counts[a] : n - favorable_counts[a];
    }
    if (lhs != rhs) {
      return false;
    }
  }
  return true;
}

}  // namespace

ForgeRequest load_forge_request(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open forge request file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str(), nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw Error("forge request is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) {
    throw Error("forge request must be a JSON object");
  }

  ForgeRequest req;
  try {
    req.schema = parse_schema(j.at("schema").dump());
    req.sensitive = j.at("sensitive").get<std::string>();
    if (j.contains("target_depth")) {
      const auto& depth = j.at("target_depth");
      if (depth.is_string()) {
        if (depth.get<std::string>() != "last") {
          throw Error("target_depth must be a positive integer or \"last\"");
        }
      } else {
        req.target_depth = depth.get<int>();
      }
    }
    if (j.contains("rule_attributes")) {
      req.rule.attributes = j.at("rule_attributes").get<std::vector<std::string>>();
    } else {
      for (const AttributeSpec& spec : req.schema) {
        req.rule.attributes.push_back(spec.name);
      }
    }
    req.n = j.value("n", std::int64_t{0});
    if (j.contains("min_fraction")) {
      req.min_fraction = Fraction::parse(j.at("min_fraction").get<std::string>());
    }
    if (j.contains("max_fraction")) {
      req.max_fraction = Fraction::parse(j.at("max_fraction").get<std::string>());
    }
    if (j.contains("fixed_dataset")) {
      const std::filesystem::path fixed_path =
          path.parent_path() / j.at("fixed_dataset").get<std::string>();
      req.fixed = load_csv(fixed_path, &req.schema);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("forge request field error: " + std::string(e.what()));
  }
  return req;
}

ForgeResult forge_sample(const ForgeRequest& req) {
  if (req.fixed.has_value()) {
    throw Error("forge_sample composes a fresh sample; use check_fixed_sample for a fixed one");
  }
  check_request_shape(req);
  if (req.n <= 0) {
    throw Error("sample size n must be positive");
  }
  if (req.min_fraction.is_negative() || !(req.min_fraction < req.max_fraction) ||
      req.max_fraction > Fraction(1)) {
    throw Error("fraction window must satisfy 0 <= min < max <= 1");
  }
  const int k = static_cast<int>(req.schema.size());
  const int target = req.target_depth.value_or(k);
  if (target < 1 || target > k) {
    throw Error("target depth " + std::to_string(target) + " is infeasible: it must lie in [1, " +
                std::to_string(k) + "] (one level per rule attribute)");
  }

  const std::vector<Fraction> ascending =
      choose_fractions(req.n, k, req.min_fraction, req.max_fraction);

  // The sensitive attribute takes the target-depth-th smallest fraction, so
  // exactly target-1 attributes sit strictly below it (and end up above it in
  // the tree).  The list stays in schema order.
  std::vector<std::pair<std::string, Fraction>> targets;
  std::size_t next = 0;
  for (const AttributeSpec& spec : req.schema) {
    if (spec.name == req.sensitive) {
      targets.emplace_back(spec.name, ascending[static_cast<std::size_t>(target - 1)]);
      continue;
    }
    if (static_cast<int>(next) == target - 1) {
      ++next;  // reserved for the sensitive attribute
    }
    targets.emplace_back(spec.name, ascending[next++]);
  }

  ForgeResult result;
  result.fractions = targets;
  result.target_depth = target;
  Dataset data = synthesize_independent(SynthesisSpec{targets, req.n}, req.schema);
  result.labeled = label_dataset(req.rule, data);
  result.tree = build_tree(result.labeled);
  result.prediction = predict_order(targets);

  const std::optional<int> achieved = attribute_depth(result.tree, req.sensitive);
  if (!achieved.has_value() || *achieved != target) {
    throw Error("internal forge verification failed: sensitive attribute landed at depth " +
                (achieved ? std::to_string(*achieved) : std::string("none")) + ", wanted " +
                std::to_string(target));
  }
  result.achieved_depth = *achieved;
  return result;
}

FixedSampleReport check_fixed_sample(const ForgeRequest& req) {
  if (!req.fixed.has_value()) {
    throw Error("check_fixed_sample needs a fixed dataset in the request");
  }
  check_request_shape(req);
  const Dataset& fixed = *req.fixed;
  fixed.validate();
  if (fixed.labeled()) {
    throw Error("the fixed dataset must be unlabeled; the declared rule assigns the labels");
  }
  if (fixed.size() == 0) {
    throw Error("the fixed dataset is empty");
  }
  // The feasibility analysis reads favorable sets and sensitive flags from
  // the fixed dataset, so its schema must agree with the request's exactly.
  if (render_schema(fixed.schema) != render_schema(req.schema)) {
    throw Error("the fixed dataset's schema does not match the request schema");
  }

  FixedSampleReport report;
  report.sensitive = req.sensitive;
  report.attribute_count = static_cast<int>(req.schema.size());
  for (const AttributeSpec& spec : req.schema) {
    report.fractions.emplace_back(spec.name, fraction_favorable(fixed, spec.name));
  }
  const auto sens_it = std::find_if(report.fractions.begin(), report.fractions.end(),
                                    [&](const auto& e) { return e.first == req.sensitive; });
  report.sensitive_fraction = sens_it->second;
  report.sensitive_strictly_max = true;
  for (const auto& [name, fraction] : report.fractions) {
    if (name == req.sensitive) {
      continue;
    }
    if (!(fraction < report.sensitive_fraction)) {
      report.sensitive_strictly_max = false;
      if (!report.blocking_attribute) {
        report.blocking_attribute = name;
      }
    }
  }
  report.hiding_impossible = report.attribute_count == 1;
  report.exactly_independent = indicators_independent(fixed);
  report.bound = positive_share_bound(one_minus(report.sensitive_fraction),
                                      report.attribute_count);

  if (report.sensitive_strictly_max || report.hiding_impossible) {
    const Dataset labeled = label_dataset(req.rule, fixed);
    const DecisionTree tree = build_tree(labeled);
    report.sensitive_depth = attribute_depth(tree, req.sensitive);
    std::int64_t positives = 0;
    for (Label label : *labeled.labels) {
      if (label == Label::positive) {
        ++positives;
      }
    }
    report.positive_fraction = Fraction(positives, fixed.size());
    report.depth_is_last =
        report.sensitive_depth.has_value() && *report.sensitive_depth == report.attribute_count;
    report.bound_holds = !(*report.positive_fraction > report.bound);
  }
  return report;
}

std::string render_forge_report(const ForgeResult& result) {
  std::ostringstream out;
  out << "forged sample report\n";
  out << "====================\n";
  out << "rows: " << result.labeled.size() << "\n";
  out << "target depth: " << result.target_depth << "\n";
  out << "achieved depth: " << result.achieved_depth << " (verified on the rebuilt tree)\n";
  out << "favorable fractions (schema order):\n";
  for (const auto& [name, fraction] : result.fractions) {
    out << "  " << name << " = " << fraction.to_string() << "\n";
  }
  out << "predicted question order:";
  for (const auto& name : result.prediction.order) {
    out << ' ' << name;
  }
  out << "\n";
  std::int64_t positives = 0;
  for (Label label : *result.labeled.labels) {
    if (label == Label::positive) {
      ++positives;
    }
  }
  out << "positive labels: " << positives << "/" << result.labeled.size() << " ("
      << Fraction(positives, result.labeled.size()).to_string() << ")\n";
  return out.str();
}

std::string render_fixed_report(const FixedSampleReport& report) {
  std::ostringstream out;
  out << "fixed-sample feasibility report\n";
  out << "===============================\n";
  out << "sensitive attribute: " << report.sensitive << " (favorable fraction "
      << report.sensitive_fraction.to_string() << ")\n";
  out << "favorable fractions (schema order):\n";
  for (const auto& [name, fraction] : report.fractions) {
    out << "  " << name << " = " << fraction.to_string() << "\n";
  }
  out << "favorable indicators exactly independent: "
      << (report.exactly_independent ? "yes" : "no") << "\n";
  if (report.hiding_impossible) {
    out << "only one attribute: every tree asks it at the root, hiding is impossible\n";
  }
  if (report.sensitive_strictly_max) {
    out << "feasible: the sensitive fraction is strictly maximal, so the deepest level is "
           "reachable\n";
  } else {
    out << "infeasible as last question: " << *report.blocking_attribute
        << " has a favorable fraction >= the sensitive attribute's\n";
  }
  if (report.sensitive_depth.has_value()) {
    out << "sensitive depth in the built tree: " << *report.sensitive_depth << " of "
        << report.attribute_count << (report.depth_is_last.value_or(false) ? " (last level)" : "")
        << "\n";
  }
  if (report.positive_fraction.has_value()) {
    out << "positive fraction: " << report.positive_fraction->to_string() << ", bound "
        << report.bound.to_string() << " ("
        << (report.bound_holds.value_or(false) ? "holds" : "violated") << ")\n";
  }
  return out.str();
}

}  // namespace treelens
