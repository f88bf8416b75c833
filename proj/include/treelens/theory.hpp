#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelens/cart.hpp"
#include "treelens/dataset.hpp"
#include "treelens/fraction.hpp"
#include "treelens/gini.hpp"

namespace treelens {

// Predicted root-to-leaf attribute order for a conjunctive labelling of an
// independent sample: ascending favorable fraction.  Attributes with
// fraction 0 or 1 never materialise as splits and are reported separately.
struct OrderingPrediction {
  std::vector<std::string> order;  // ascending fraction; ties keep input order
  std::vector<std::pair<std::string, Fraction>> fractions;  // as used
  std::vector<std::vector<std::string>> ties;               // groups of equal fractions
  std::vector<std::string> degenerate;                      // never placed (0/1 or unreachable)
  bool dependent_mode = false;

  bool strict() const { return ties.empty(); }
};

OrderingPrediction predict_order(const std::vector<std::pair<std::string, Fraction>>& fractions);

// Dependent form: recomputes the conditional favorable fractions along the
// all-favorable path of the given sample and picks the minimum at each step.
OrderingPrediction predict_order_dependent(const Dataset& data,
                                           const std::vector<std::string>& attributes);

struct OrderingCheck {
  std::string attribute;
  Fraction fraction;
  std::optional<int> predicted_depth;  // nullopt: expected absent from the tree
  std::optional<int> actual_depth;
  bool match = false;
};

struct OrderingReport {
  std::vector<OrderingCheck> checks;
  bool tie = false;  // equal fractions present; groups keep declaration order
  bool all_match() const;
};

// Synthesizes an exactly independent sample of size n with the given
// fractions, labels it with the all-attributes conjunction, builds the
// multiway tree and compares each attribute's depth with the prediction.
OrderingReport verify_ordering(const std::vector<std::pair<std::string, Fraction>>& fractions,
                               std::int64_t n);

// Upper bound (1-x)^k on the positive share when the sensitive attribute has
// disadvantaged share x and k-1 attributes with strictly larger favorable
// fractions sit above it.
Fraction positive_share_bound(const Fraction& x, int k);

struct HidingBoundReport {
  std::string sensitive;
  int attribute_count = 0;
  Fraction disadvantaged_share;  // x = 1 - fraction(sensitive)
  Fraction bound;                // (1 - x)^k
  Fraction positive_fraction;    // exact share of positive labels
  std::optional<int> sensitive_depth;
  bool sensitive_strictly_max = false;
  bool tie_with_sensitive = false;  // another attribute matches its fraction
  bool depth_is_last = false;
  bool bound_holds = false;
  bool bound_tight = false;  // equality; happens when all fractions are equal
};

// Same scenario construction as verify_ordering, reported from the
// perspective of pushing `sensitive` to the deepest question level.
HidingBoundReport verify_hiding_bound(
    const std::vector<std::pair<std::string, Fraction>>& fractions, const std::string& sensitive,
    std::int64_t n);

enum class TieredSplitId { sensitive, low_tier, high_tier, medium_tier };

std::string to_string(TieredSplitId id);

struct CurvePoint {
  Fraction p0;
  TieredCurves curves;
  std::vector<TieredSplitId> argmin;  // all splits attaining the minimum
};

struct CurveIntersection {
  TieredSplitId a;
  TieredSplitId b;
  bool exact = false;  // hit a grid point with exact rational equality
  Fraction p0_exact;   // meaningful when exact
  double p0 = 0.0;
  double impurity = 0.0;  // common curve value at the crossing
};

struct CurveTable {
  Fraction p5;
  Fraction pe;
  Fraction step;
  std::vector<CurvePoint> points;  // p0 = 0, step, 2*step, ..., 1 - p5
  std::vector<CurveIntersection> intersections;
};

// Tabulates the four tiered-scenario split curves over p0 in [0, 1-p5] and
// locates pairwise intersections: exact rational zeros at grid points are
// reported exactly, sign changes between grid points are bisected until the
// bracket is below 1e-12.
CurveTable tabulate_tiered_curves(const Fraction& p5, const Fraction& pe,
                                  const Fraction& grid_step);

std::string curve_table_csv(const CurveTable& table);

// Impurity gap between splitting on a sensitive attribute (share pe) and a
// second attribute (share ps) in the two-attribute conjunctive scenario:
// delta = 2*pe*ps*(pe - ps); negative means the sensitive attribute wins the
// root.
struct SurfacePoint {
  Fraction pe;
  Fraction ps;
  Fraction delta;
};

std::vector<SurfacePoint> difference_surface(const Fraction& grid_step);

std::string surface_csv(const std::vector<SurfacePoint>& points);

// One named check of the built-in verification suites.
struct TheoremVerification {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Deterministic built-in verification grids: ordering predictions against
// built trees, hiding-depth/positive-share bounds, and the tiered-scenario
// curve analysis (tabulated at `tier_grid_step`).
std::vector<TheoremVerification> builtin_verifications(const Fraction& tier_grid_step);

}  // namespace treelens
