#include "treelens/theory.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "treelens/blackbox.hpp"
#include "treelens/error.hpp"

namespace treelens {
namespace {

void check_fraction_list(const std::vector<std::pair<std::string, Fraction>>& fractions) {
  if (fractions.empty()) {
    throw Error("at least one attribute fraction is required");
  }
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const auto& [name, p] = fractions[i];
    if (name.empty()) {
      throw Error("attribute names in a fraction list must not be empty");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (fractions[j].first == name) {
        throw Error("duplicate attribute in fraction list: " + name);
      }
    }
    if (!p.in_unit_interval()) {
      throw Error("favorable fraction for " + name + " must lie in [0, 1], got " + p.to_string());
    }
  }
}

// Minimal two-value schema used by the verification scenarios: every
// attribute answers y/n and y is the favorable value.
std::vector<AttributeSpec> yes_no_schema(const std::vector<std::string>& names) {
  std::vector<AttributeSpec> schema;
  schema.reserve(names.size());
  for (const auto& name : names) {
    schema.push_back(AttributeSpec{name, {"y", "n"}, false, {"y"}, false});
  }
  validate_schema(schema);
  return schema;
}

struct ConjunctiveScenario {
  Dataset labeled;
  DecisionTree tree;
};

// Exactly independent sample with the given favorable fractions, labelled by
// the all-attributes conjunction, plus the multiway tree grown on it.
ConjunctiveScenario build_conjunctive_scenario(
    const std::vector<std::pair<std::string, Fraction>>& fractions, std::int64_t n) {
  check_fraction_list(fractions);
  for (const auto& [name, p] : fractions) {
    if (p.is_zero()) {
      throw Error("scenario verification needs strictly positive favorable fractions; " + name +
                  " has fraction 0 (every label would be negative)");
    }
  }
  std::vector<std::string> names;
  names.reserve(fractions.size());
  for (const auto& [name, p] : fractions) {
    names.push_back(name);
  }
  const auto schema = yes_no_schema(names);
  Dataset data = synthesize_independent(SynthesisSpec{fractions, n}, schema);
  Dataset labeled = label_dataset(ConjunctiveRule{names}, data);
  DecisionTree tree = build_tree(labeled);
  return ConjunctiveScenario{std::move(labeled), std::move(tree)};
}

}  // namespace

OrderingPrediction predict_order(const std::vector<std::pair<std::string, Fraction>>& fractions) {
  check_fraction_list(fractions);
  OrderingPrediction out;
  out.fractions = fractions;
  std::vector<std::pair<std::string, Fraction>> orderable;
  const Fraction one(1);
  for (const auto& entry : fractions) {
    if (entry.second.is_zero() || entry.second == one) {
      out.degenerate.push_back(entry.first);
    } else {
      orderable.push_back(entry);
    }
  }
  std::stable_sort(orderable.begin(), orderable.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  out.order.reserve(orderable.size());
  for (const auto& entry : orderable) {
    out.order.push_back(entry.first);
  }
  std::size_t i = 0;
  while (i < orderable.size()) {
    std::size_t j = i + 1;
    while (j < orderable.size() && orderable[j].second == orderable[i].second) {
      ++j;
    }
    if (j - i >= 2) {
      std::vector<std::string> group;
      for (std::size_t g = i; g < j; ++g) {
        group.push_back(orderable[g].first);
      }
      out.ties.push_back(std::move(group));
    }
    i = j;
  }
  return out;
}

OrderingPrediction predict_order_dependent(const Dataset& data,
                                           const std::vector<std::string>& attributes) {
  data.validate();
  if (attributes.empty()) {
    throw Error("at least one attribute is required");
  }
  std::vector<std::size_t> attr_indices;
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    attr_indices.push_back(data.attribute_index(attributes[i]));  // throws on unknown
    for (std::size_t j = 0; j < i; ++j) {
      if (attributes[j] == attributes[i]) {
        throw Error("duplicate attribute: " + attributes[i]);
      }
    }
  }

  OrderingPrediction out;
  out.dependent_mode = true;
  const Fraction one(1);

  std::vector<std::size_t> subset(static_cast<std::size_t>(data.size()));
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  std::vector<std::string> remaining = attributes;

  while (!remaining.empty()) {
    std::vector<std::pair<std::string, Fraction>> cond;
    cond.reserve(remaining.size());
    for (const auto& name : remaining) {
      cond.emplace_back(name, fraction_favorable(data, subset, name));
    }
    // Rows of the current subset that are favorable in every remaining
    // attribute carry the positive label; none left means the node is pure.
    std::int64_t positives = 0;
    for (std::size_t row : subset) {
      bool all_fav = true;
      for (const auto& name : remaining) {
        const auto& spec = data.attribute(name);
        if (!spec.is_favorable(data.rows[row][data.attribute_index(name)])) {
          all_fav = false;
          break;
        }
      }
      if (all_fav) {
        ++positives;
      }
    }
    const bool all_one =
        std::all_of(cond.begin(), cond.end(), [&](const auto& e) { return e.second == one; });
    if (positives == 0 || all_one) {
      for (const auto& e : cond) {
        out.degenerate.push_back(e.first);
        out.fractions.push_back(e);
      }
      break;
    }
    std::size_t best = cond.size();
    for (std::size_t i = 0; i < cond.size(); ++i) {
      if (cond[i].second == one) {
        continue;  // splits nothing off; impurity equals the node's own Gini
      }
      if (best == cond.size() || cond[i].second < cond[best].second) {
        best = i;
      }
    }
    std::vector<std::string> group;
    for (const auto& e : cond) {
      if (e.second == cond[best].second) {
        group.push_back(e.first);
      }
    }
    if (group.size() >= 2) {
      out.ties.push_back(std::move(group));
    }
    out.order.push_back(cond[best].first);
    out.fractions.push_back(cond[best]);

    const std::string chosen = cond[best].first;
    const auto& spec = data.attribute(chosen);
    const std::size_t col = data.attribute_index(chosen);
    std::vector<std::size_t> next;
    for (std::size_t row : subset) {
      if (spec.is_favorable(data.rows[row][col])) {
        next.push_back(row);
      }
    }
    subset = std::move(next);
    remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
  }
  return out;
}

bool OrderingReport::all_match() const {
  return std::all_of(checks.begin(), checks.end(), [](const OrderingCheck& c) { return c.match; });
}

OrderingReport verify_ordering(const std::vector<std::pair<std::string, Fraction>>& fractions,
                               std::int64_t n) {
  const OrderingPrediction prediction = predict_order(fractions);
  const ConjunctiveScenario scenario = build_conjunctive_scenario(fractions, n);

  std::map<std::string, Fraction> by_name;
  for (const auto& [name, p] : fractions) {
    by_name.emplace(name, p);
  }

  OrderingReport report;
  report.tie = !prediction.strict();
  int position = 0;
  for (const auto& name : prediction.order) {
    ++position;
    OrderingCheck check;
    check.attribute = name;
    check.fraction = by_name.at(name);
    check.predicted_depth = position;
    check.actual_depth = attribute_depth(scenario.tree, name);
    check.match = check.actual_depth == check.predicted_depth;
    report.checks.push_back(std::move(check));
  }
  for (const auto& name : prediction.degenerate) {
    OrderingCheck check;
    check.attribute = name;
    check.fraction = by_name.at(name);
    check.predicted_depth = std::nullopt;  // fraction 1: splits nothing, never appears
    check.actual_depth = attribute_depth(scenario.tree, name);
    check.match = !check.actual_depth.has_value();
    report.checks.push_back(std::move(check));
  }
  return report;
}

Fraction positive_share_bound(const Fraction& x, int k) {
  if (k <= 0) {
    throw Error("attribute count must be positive");
  }
  if (!x.in_unit_interval()) {
    throw Error("disadvantaged share must lie in [0, 1], got " + x.to_string());
  }
  return one_minus(x).pow(static_cast<unsigned>(k));
}

HidingBoundReport verify_hiding_bound(
    const std::vector<std::pair<std::string, Fraction>>& fractions, const std::string& sensitive,
    std::int64_t n) {
  check_fraction_list(fractions);
  const auto it = std::find_if(fractions.begin(), fractions.end(),
                               [&](const auto& e) { return e.first == sensitive; });
  if (it == fractions.end()) {
    throw Error("sensitive attribute " + sensitive + " is not in the fraction list");
  }
  const Fraction ps = it->second;
  const int k = static_cast<int>(fractions.size());

  HidingBoundReport report;
  report.sensitive = sensitive;
  report.attribute_count = k;
  report.disadvantaged_share = one_minus(ps);
  report.bound = positive_share_bound(report.disadvantaged_share, k);
  report.sensitive_strictly_max = true;
  for (const auto& [name, p] : fractions) {
    if (name == sensitive) {
      continue;
    }
    if (p == ps) {
      report.tie_with_sensitive = true;
      report.sensitive_strictly_max = false;
    } else if (p > ps) {
      report.sensitive_strictly_max = false;
    }
  }

  const ConjunctiveScenario scenario = build_conjunctive_scenario(fractions, n);
  std::int64_t positives = 0;
  for (Label label : *scenario.labeled.labels) {
    if (label == Label::positive) {
      ++positives;
    }
  }
  report.positive_fraction = Fraction(positives, n);
  report.sensitive_depth = attribute_depth(scenario.tree, sensitive);
  report.depth_is_last = report.sensitive_depth.has_value() && *report.sensitive_depth == k;
  report.bound_holds = !(report.positive_fraction > report.bound);
  report.bound_tight = report.positive_fraction == report.bound;
  return report;
}

std::string to_string(TieredSplitId id) {
  switch (id) {
    case TieredSplitId::sensitive:
      return "sensitive";
    case TieredSplitId::low_tier:
      return "low_tier";
    case TieredSplitId::high_tier:
      return "high_tier";
    case TieredSplitId::medium_tier:
      return "medium_tier";
  }
  throw Error("unknown tiered split id");
}

namespace {

constexpr std::array<TieredSplitId, 4> kSplitIds = {
    TieredSplitId::sensitive,
    TieredSplitId::low_tier,
    TieredSplitId::high_tier,
    TieredSplitId::medium_tier,
};

const Fraction& curve_of(const TieredCurves& curves, TieredSplitId id) {
  switch (id) {
    case TieredSplitId::sensitive:
      return curves.sensitive;
    case TieredSplitId::low_tier:
      return curves.low;
    case TieredSplitId::high_tier:
      return curves.high;
    case TieredSplitId::medium_tier:
      return curves.medium;
  }
  throw Error("unknown tiered split id");
}

// Floating-point mirror of the exact curves, used only to polish crossing
// locations between grid points.
double branch_term(double pos, double neg) {
  const double weight = pos + neg;
  if (weight <= 0.0) {
    return 0.0;
  }
  return 2.0 * pos * neg / weight;
}

double curve_at(TieredSplitId id, double p0, double p5, double pe) {
  const double p10 = 1.0 - p0 - p5;
  const double qe = 1.0 - pe;
  switch (id) {
    case TieredSplitId::sensitive:
      return pe * branch_term(p5 + p10, p0) + qe * branch_term(p10, p0 + p5);
    case TieredSplitId::low_tier:
      return branch_term(p5 * pe + p10, p5 * qe);
    case TieredSplitId::high_tier:
      return branch_term(p5 * pe, p0 + p5 * qe);
    case TieredSplitId::medium_tier:
      return p5 * 2.0 * pe * qe + branch_term(p10, p0);
  }
  return 0.0;
}

std::string decimal9(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9f", value);
  return buffer;
}

}  // namespace

CurveTable tabulate_tiered_curves(const Fraction& p5, const Fraction& pe,
                                  const Fraction& grid_step) {
  if (!p5.in_unit_interval() || !pe.in_unit_interval()) {
    throw Error("tier shares must lie in [0, 1]");
  }
  if (grid_step.is_zero() || grid_step.is_negative() || grid_step > Fraction(1)) {
    throw Error("grid step must lie in (0, 1], got " + grid_step.to_string());
  }

  CurveTable table;
  table.p5 = p5;
  table.pe = pe;
  table.step = grid_step;

  const Fraction limit = one_minus(p5);
  std::vector<Fraction> grid;
  for (std::int64_t k = 0;; ++k) {
    const Fraction p0 = grid_step * Fraction(k);
    if (p0 > limit) {
      break;
    }
    grid.push_back(p0);
  }
  if (grid.empty() || !(grid.back() == limit)) {
    grid.push_back(limit);
  }

  table.points.reserve(grid.size());
  for (const Fraction& p0 : grid) {
    CurvePoint point;
    point.p0 = p0;
    point.curves = tiered_split_curves(p0, p5, pe);
    Fraction best = point.curves.sensitive;
    for (TieredSplitId id : kSplitIds) {
      const Fraction& value = curve_of(point.curves, id);
      if (value < best) {
        best = value;
      }
    }
    for (TieredSplitId id : kSplitIds) {
      if (curve_of(point.curves, id) == best) {
        point.argmin.push_back(id);
      }
    }
    table.points.push_back(std::move(point));
  }

  const double p5d = p5.to_double();
  const double ped = pe.to_double();
  for (std::size_t ai = 0; ai < kSplitIds.size(); ++ai) {
    for (std::size_t bi = ai + 1; bi < kSplitIds.size(); ++bi) {
      const TieredSplitId a = kSplitIds[ai];
      const TieredSplitId b = kSplitIds[bi];
      std::vector<int> sign(table.points.size());
      for (std::size_t i = 0; i < table.points.size(); ++i) {
        const Fraction diff = curve_of(table.points[i].curves, a) -
                              curve_of(table.points[i].curves, b);
        sign[i] = diff.is_zero() ? 0 : (diff.is_negative() ? -1 : 1);
      }
      for (std::size_t i = 0; i < sign.size(); ++i) {
        // Record each run of exact grid-point zeros once, at its first point.
        if (sign[i] == 0 && (i == 0 || sign[i - 1] != 0)) {
          CurveIntersection ix;
          ix.a = a;
          ix.b = b;
          ix.exact = true;
          ix.p0_exact = table.points[i].p0;
          ix.p0 = ix.p0_exact.to_double();
          ix.impurity = curve_of(table.points[i].curves, a).to_double();
          table.intersections.push_back(std::move(ix));
        }
        if (i + 1 < sign.size() && sign[i] * sign[i + 1] == -1) {
          double lo = table.points[i].p0.to_double();
          double hi = table.points[i + 1].p0.to_double();
          double flo = curve_at(a, lo, p5d, ped) - curve_at(b, lo, p5d, ped);
          for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = curve_at(a, mid, p5d, ped) - curve_at(b, mid, p5d, ped);
            if (fmid == 0.0) {
              lo = hi = mid;
              break;
            }
            if ((fmid < 0.0) == (flo < 0.0)) {
              lo = mid;
              flo = fmid;
            } else {
              hi = mid;
            }
          }
          CurveIntersection ix;
          ix.a = a;
          ix.b = b;
          ix.exact = false;
          ix.p0 = 0.5 * (lo + hi);
          ix.impurity = curve_at(a, ix.p0, p5d, ped);
          table.intersections.push_back(std::move(ix));
        }
      }
    }
  }
  return table;
}

std::string curve_table_csv(const CurveTable& table) {
  std::ostringstream out;
  out << "# tiered-scenario split impurity curves\n";
  out << "# p5=" << table.p5.to_string() << " pe=" << table.pe.to_string()
      << " step=" << table.step.to_string() << "\n";
  out << "p0,sensitive,low_tier,high_tier,medium_tier,argmin\n";
  for (const CurvePoint& point : table.points) {
    out << point.p0.to_string() << ',' << point.curves.sensitive.to_decimal(9) << ','
        << point.curves.low.to_decimal(9) << ',' << point.curves.high.to_decimal(9) << ','
        << point.curves.medium.to_decimal(9) << ',';
    for (std::size_t i = 0; i < point.argmin.size(); ++i) {
      if (i > 0) {
        out << '|';
      }
      out << to_string(point.argmin[i]);
    }
    out << '\n';
  }
  for (const CurveIntersection& ix : table.intersections) {
    out << "# intersection: " << to_string(ix.a) << '=' << to_string(ix.b);
    if (ix.exact) {
      out << " p0=" << ix.p0_exact.to_string() << " impurity=" << decimal9(ix.impurity)
          << " (exact)\n";
    } else {
      out << " p0=" << decimal9(ix.p0) << " impurity=" << decimal9(ix.impurity)
          << " (bisected)\n";
    }
  }
  return out.str();
}

std::vector<SurfacePoint> difference_surface(const Fraction& grid_step) {
  if (grid_step.is_zero() || grid_step.is_negative() || grid_step > Fraction(1)) {
    throw Error("grid step must lie in (0, 1], got " + grid_step.to_string());
  }
  const Fraction one(1);
  std::vector<Fraction> axis;
  for (std::int64_t k = 0;; ++k) {
    const Fraction v = grid_step * Fraction(k);
    if (v > one) {
      break;
    }
    axis.push_back(v);
  }
  if (!(axis.back() == one)) {
    axis.push_back(one);
  }
  std::vector<SurfacePoint> points;
  points.reserve(axis.size() * axis.size());
  const Fraction two(2);
  for (const Fraction& pe : axis) {
    for (const Fraction& ps : axis) {
      points.push_back(SurfacePoint{pe, ps, two * pe * ps * (pe - ps)});
    }
  }
  return points;
}

std::string surface_csv(const std::vector<SurfacePoint>& points) {
  std::ostringstream out;
  out << "# split impurity gap delta = 2*pe*ps*(pe - ps) for a two-attribute conjunction;\n";
  out << "# negative delta: the sensitive attribute (share pe) is asked first\n";
  out << "pe,ps,delta,first_question\n";
  for (const SurfacePoint& point : points) {
    const char* winner = "tie";
    if (point.delta.is_negative()) {
      winner = "sensitive";
    } else if (!point.delta.is_zero()) {
      winner = "other";
    }
    out << point.pe.to_string() << ',' << point.ps.to_string() << ','
        << point.delta.to_decimal(9) << ',' << winner << '\n';
  }
  return out.str();
}

namespace {

// Dependent sample: three y/n attributes whose marginal favorable fractions
// rank a < b < c but whose conditional fractions inside the a-favorable
// subset rank c before b, so the marginal order mispredicts the tree.
Dataset dependent_sample() {
  Dataset data;
  data.schema = yes_no_schema({"a", "b", "c"});
  auto add = [&data](int count, const char* a, const char* b, const char* c) {
    for (int i = 0; i < count; ++i) {
      data.rows.push_back({a, b, c});
    }
  };
  add(216, "y", "y", "y");
  add(144, "y", "y", "n");
  add(24, "y", "n", "y");
  add(16, "y", "n", "n");
  add(70, "n", "y", "y");
  add(70, "n", "y", "n");
  add(240, "n", "n", "y");
  add(220, "n", "n", "n");
  return data;
}

// Tiered scenario sample: tier in {low, medium, high} with masses
// (p0, p5, 1-p0-p5), an independent binary group with advantaged share pe,
// labelled by the tiered rule.  All joint cell counts must be integral.
Dataset tiered_sample(const Fraction& p0, const Fraction& p5, const Fraction& pe,
                      std::int64_t n) {
  std::vector<AttributeSpec> schema = {
      AttributeSpec{"tier", {"low", "medium", "high"}, true, {"high"}, false},
      AttributeSpec{"group", {"adv", "dis"}, false, {"adv"}, true},
  };
  const Fraction p10 = one_minus(p0) - p5;
  Dataset data = synthesize_product(schema, {{p0, p5, p10}, {pe, one_minus(pe)}}, n);
  return label_dataset(TieredRule{"tier", "low", "medium", "high", "group", "adv"}, data);
}

std::string fractions_brief(const std::vector<std::pair<std::string, Fraction>>& fractions) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (i > 0) {
      out << ", ";
    }
    out << fractions[i].second.to_string();
  }
  out << ')';
  return out.str();
}

std::string ids_brief(const std::vector<TieredSplitId>& ids) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) {
      out << '|';
    }
    out << to_string(ids[i]);
  }
  return out.str();
}

}  // namespace

std::vector<TheoremVerification> builtin_verifications(const Fraction& tier_grid_step) {
  std::vector<TheoremVerification> results;
  auto add = [&results](std::string name, bool pass, std::string detail) {
    results.push_back(TheoremVerification{std::move(name), pass, std::move(detail)});
  };

  // --- Ordering of split depths on exactly independent conjunctive data ---
  struct OrderingCase {
    std::vector<std::pair<std::string, Fraction>> fractions;
    std::int64_t n;
    bool expect_tie;
  };
  const std::vector<OrderingCase> ordering_cases = {
      {{{"a", {1, 3}}, {"b", {1, 2}}}, 600, false},
      {{{"b", {3, 5}}, {"a", {2, 5}}}, 200, false},
      {{{"a", {1, 10}}, {"b", {9, 10}}}, 100, false},
      {{{"c", {1, 2}}, {"a", {1, 4}}, {"b", {1, 3}}}, 240, false},
      {{{"a", {2, 7}}, {"b", {3, 7}}, {"c", {5, 7}}}, 3430, false},
      {{{"d", {4, 5}}, {"b", {2, 5}}, {"a", {1, 5}}, {"c", {3, 5}}}, 1250, false},
      {{{"a", {1, 6}}, {"b", {1, 3}}, {"c", {1, 2}}, {"d", {2, 3}}}, 1080, false},
      {{{"a", {1, 6}}, {"b", {1, 3}}, {"c", {1, 2}}, {"d", {2, 3}}, {"e", {5, 6}}}, 1944, false},
      {{{"a", {1, 2}}, {"b", {1, 2}}, {"c", {1, 2}}}, 8, true},
  };
  for (const OrderingCase& c : ordering_cases) {
    const OrderingReport report = verify_ordering(c.fractions, c.n);
    const bool pass = report.all_match() && report.tie == c.expect_tie;
    std::ostringstream detail;
    detail << "k=" << c.fractions.size() << " n=" << c.n << " p=" << fractions_brief(c.fractions)
           << (report.tie ? " with ties;" : ";") << " depths "
           << (report.all_match() ? "match ascending-fraction order"
                                  : "DIVERGE from ascending-fraction order");
    add(c.expect_tie ? "ordering: equal fractions keep declaration order" : "ordering: ascending fractions",
        pass, detail.str());
  }

  {
    const Dataset dep = dependent_sample();
    const OrderingPrediction conditional = predict_order_dependent(dep, {"a", "b", "c"});
    const std::vector<std::pair<std::string, Fraction>> marginals = {
        {"a", fraction_favorable(dep, "a")},
        {"b", fraction_favorable(dep, "b")},
        {"c", fraction_favorable(dep, "c")},
    };
    const OrderingPrediction marginal = predict_order(marginals);
    const Dataset labeled = label_dataset(ConjunctiveRule{{"a", "b", "c"}}, dep);
    const DecisionTree tree = build_tree(labeled);
    const bool tree_is_acb = attribute_depth(tree, "a") == std::optional<int>(1) &&
                             attribute_depth(tree, "c") == std::optional<int>(2) &&
                             attribute_depth(tree, "b") == std::optional<int>(3);
    const bool pass = conditional.order == std::vector<std::string>{"a", "c", "b"} &&
                      marginal.order == std::vector<std::string>{"a", "b", "c"} && tree_is_acb;
    add("ordering: dependent data follows conditional fractions", pass,
        "marginal order a<b<c, conditional order a<c<b; tree depths "
        "(a,c,b)=(1,2,3) follow the conditional order");
  }

  // --- Positive-share bound when the sensitive fraction is the largest ---
  struct BoundCase {
    std::vector<std::pair<std::string, Fraction>> fractions;
    std::string sensitive;
    std::int64_t n;
  };
  const std::vector<BoundCase> bound_cases = {
      {{{"a", {1, 3}}, {"b", {1, 2}}}, "b", 600},
      {{{"a", {1, 5}}, {"b", {2, 5}}, {"c", {3, 5}}, {"d", {4, 5}}}, "d", 1250},
      {{{"a", {1, 6}}, {"b", {1, 3}}, {"c", {1, 2}}, {"d", {2, 3}}, {"e", {5, 6}}}, "e", 1944},
  };
  for (const BoundCase& c : bound_cases) {
    const HidingBoundReport report = verify_hiding_bound(c.fractions, c.sensitive, c.n);
    Fraction product(1);
    for (const auto& [name, p] : c.fractions) {
      product = product * p;
    }
    const bool pass = report.sensitive_strictly_max && report.depth_is_last &&
                      report.bound_holds && !report.bound_tight &&
                      report.positive_fraction == product;
    std::ostringstream detail;
    detail << "p=" << fractions_brief(c.fractions) << " sensitive=" << c.sensitive << ": depth "
           << (report.sensitive_depth ? std::to_string(*report.sensitive_depth) : std::string("-"))
           << "/" << report.attribute_count << ", positive share "
           << report.positive_fraction.to_string() << " < bound " << report.bound.to_string();
    add("depth bound: sensitive with largest fraction sinks to the last level", pass,
        detail.str());
  }
  {
    const std::vector<std::pair<std::string, Fraction>> eq = {
        {"a", {1, 2}}, {"b", {1, 2}}, {"c", {1, 2}}};
    const HidingBoundReport report = verify_hiding_bound(eq, "c", 8);
    const bool pass = report.tie_with_sensitive && !report.sensitive_strictly_max &&
                      report.bound_holds && report.bound_tight && report.depth_is_last;
    add("depth bound: equal fractions make the bound tight", pass,
        "p=(1/2, 1/2, 1/2): positive share " + report.positive_fraction.to_string() +
            " equals bound " + report.bound.to_string() + "; declaration order leaves c last");
  }
  {
    const std::vector<std::pair<std::string, Fraction>> bad = {{"a", {1, 2}}, {"b", {1, 3}}};
    const HidingBoundReport report = verify_hiding_bound(bad, "b", 6);
    const bool pass = !report.sensitive_strictly_max && !report.depth_is_last &&
                      !report.bound_holds && report.sensitive_depth == std::optional<int>(1);
    add("depth bound: fails without the largest-fraction precondition", pass,
        "p=(1/2, 1/3) sensitive=b: fraction not maximal, b takes the root and the share bound "
        "does not hold");
  }

  // --- Tiered-scenario curves at p5 = pe = 1/2 ---
  const Fraction half(1, 2);
  const Fraction quarter(1, 4);
  const CurveTable table = tabulate_tiered_curves(half, half, tier_grid_step);
  const auto& first = table.points.front();
  const auto& last = table.points.back();
  {
    const bool pass = first.p0.is_zero() && first.curves.sensitive == quarter &&
                      first.curves.high == quarter && first.curves.medium == quarter &&
                      first.curves.low == Fraction(3, 8) &&
                      first.argmin == std::vector<TieredSplitId>{TieredSplitId::sensitive,
                                                                 TieredSplitId::high_tier,
                                                                 TieredSplitId::medium_tier};
    add("tier curves: p0=0 corner", pass,
        "sensitive=high=medium=1/4 exactly, low=3/8 (its question separates nothing there); "
        "argmin " + ids_brief(first.argmin));
  }
  {
    const bool pass = last.p0 == half && last.curves.sensitive == quarter &&
                      last.curves.low == quarter && last.curves.medium == quarter &&
                      last.curves.high == Fraction(3, 8) &&
                      last.argmin == std::vector<TieredSplitId>{TieredSplitId::sensitive,
                                                                TieredSplitId::low_tier,
                                                                TieredSplitId::medium_tier};
    add("tier curves: p0=1/2 corner", pass,
        "sensitive=low=medium=1/4 exactly, high=3/8 (its question separates nothing there); "
        "argmin " + ids_brief(last.argmin));
  }
  {
    bool never_unique = true;
    for (const CurvePoint& point : table.points) {
      if (point.argmin.size() == 1 && point.argmin[0] == TieredSplitId::sensitive) {
        never_unique = false;
        break;
      }
    }
    add("tier curves: sensitive split never uniquely optimal at p5=1/2", never_unique,
        "across " + std::to_string(table.points.size()) +
            " grid points the sensitive split never has the strictly smallest impurity");
  }
  {
    auto has_exact = [&table](TieredSplitId a, TieredSplitId b, const Fraction& at) {
      return std::any_of(table.intersections.begin(), table.intersections.end(),
                         [&](const CurveIntersection& ix) {
                           return ix.a == a && ix.b == b && ix.exact && ix.p0_exact == at;
                         });
    };
    auto near = [&table](TieredSplitId a, TieredSplitId b, double p0, double impurity) {
      return std::any_of(table.intersections.begin(), table.intersections.end(),
                         [&](const CurveIntersection& ix) {
                           return ix.a == a && ix.b == b && !ix.exact &&
                                  std::abs(ix.p0 - p0) < 1e-9 &&
                                  std::abs(ix.impurity - impurity) < 1e-9;
                         });
    };
    // Analytic crossings: sensitive/low at p0 = (2-sqrt(2))/4, sensitive/high
    // at p0 = sqrt(2)/4, both with common impurity sqrt(2)/4.
    const double root2_4 = 0.35355339059327373;
    const bool pass = has_exact(TieredSplitId::sensitive, TieredSplitId::high_tier, Fraction(0)) &&
                      has_exact(TieredSplitId::sensitive, TieredSplitId::low_tier, half) &&
                      near(TieredSplitId::sensitive, TieredSplitId::low_tier, 0.5 - root2_4,
                           root2_4) &&
                      near(TieredSplitId::sensitive, TieredSplitId::high_tier, root2_4, root2_4);
    add("tier curves: sensitive/low and sensitive/high crossings", pass,
        "exact meets at the corners plus bisected crossings at p0=0.146447 and p0=0.353553, "
        "both with impurity 0.353553");
  }
  {
    bool pass;
    std::string detail;
    const Fraction quarter_steps = quarter / tier_grid_step;
    if (quarter_steps.denominator() == 1) {
      const Fraction low_at_quarter = tiered_split_curves(quarter, half, half).low;
      pass = low_at_quarter == Fraction(1, 3) &&
             std::any_of(table.intersections.begin(), table.intersections.end(),
                         [&](const CurveIntersection& ix) {
                           return ix.a == TieredSplitId::low_tier &&
                                  ix.b == TieredSplitId::high_tier && ix.exact &&
                                  ix.p0_exact == quarter;
                         });
      detail = "both one-tier-vs-rest questions cost exactly 1/3 at p0=1/4";
    } else {
      pass = std::any_of(table.intersections.begin(), table.intersections.end(),
                         [&](const CurveIntersection& ix) {
                           return ix.a == TieredSplitId::low_tier &&
                                  ix.b == TieredSplitId::high_tier &&
                                  std::abs(ix.p0 - 0.25) < tier_grid_step.to_double();
                         });
      detail = "low/high crossing located near p0=1/4 (grid step does not hit 1/4 exactly)";
    }
    add("tier curves: low/high crossing at p0=1/4", pass, detail);
  }
  {
    bool all_match = true;
    for (const Fraction& p0 : {Fraction(0), quarter, half}) {
      const Dataset sample = tiered_sample(p0, half, half, 16);
      const TieredCurves curves = tiered_split_curves(p0, half, half);
      const SplitDescriptor sens{"group", SplitDescriptor::Mode::multiway, {}};
      const SplitDescriptor low{"tier", SplitDescriptor::Mode::binary, {"low"}};
      const SplitDescriptor high{"tier", SplitDescriptor::Mode::binary, {"high"}};
      const SplitDescriptor medium{"tier", SplitDescriptor::Mode::binary, {"medium"}};
      all_match = all_match && gini_impurity(sample, sens) == curves.sensitive &&
                  gini_impurity(sample, low) == curves.low &&
                  gini_impurity(sample, high) == curves.high &&
                  gini_impurity(sample, medium) == curves.medium;
    }
    add("tier curves: closed forms equal counted impurities", all_match,
        "n=16 samples at p0 in {0, 1/4, 1/2} reproduce all four curve values exactly");
  }
  {
    bool all_quarter = true;
    for (const Fraction& p0 : {Fraction(0), half}) {
      const Dataset sample = tiered_sample(p0, half, half, 16);
      std::vector<std::size_t> rows(static_cast<std::size_t>(sample.size()));
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      for (SplitMode mode : {SplitMode::multiway, SplitMode::binary}) {
        for (const SplitDescriptor& split : candidate_splits(sample, rows, mode, {})) {
          all_quarter = all_quarter && gini_impurity(sample, rows, split) == quarter;
        }
      }
    }
    add("tier curves: every candidate split ties at the corners", all_quarter,
        "on the realized corner samples every candidate question costs exactly 1/4, so the "
        "sensitive split is never the unique winner there");
  }
  {
    const Fraction coarse(1, 100);
    const CurveTable narrow = tabulate_tiered_curves(Fraction(2, 5), half, coarse);
    const CurveTable wide = tabulate_tiered_curves(Fraction(3, 5), half, coarse);
    bool narrow_never = true;
    for (const CurvePoint& point : narrow.points) {
      if (point.argmin.size() == 1 && point.argmin[0] == TieredSplitId::sensitive) {
        narrow_never = false;
      }
    }
    bool wide_somewhere = false;
    for (const CurvePoint& point : wide.points) {
      if (point.argmin.size() == 1 && point.argmin[0] == TieredSplitId::sensitive) {
        wide_somewhere = true;
      }
    }
    add("tier curves: middle-tier weight decides whether the sensitive split can win",
        narrow_never && wide_somewhere,
        "p5=2/5: sensitive never uniquely optimal; p5=3/5: uniquely optimal on part of the "
        "range");
    bool constant = true;
    for (const auto* t : {&table, &narrow, &wide}) {
      const Fraction expected = Fraction(2) * t->pe * one_minus(t->pe) * t->p5;
      for (const CurvePoint& point : t->points) {
        constant = constant && tiered_multiway_impurity(point.p0, t->p5, t->pe) == expected;
      }
    }
    add("tier curves: multiway tier split has constant impurity 2*pe*(1-pe)*p5", constant,
        "the three-branch tier question isolates the mixed middle tier, so its impurity does "
        "not depend on p0");
  }

  return results;
}

}  // namespace treelens
