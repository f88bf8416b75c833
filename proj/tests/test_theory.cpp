#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "test_support.hpp"
#include "treelens/cart.hpp"
#include "treelens/dataset.hpp"
#include "treelens/error.hpp"
#include "treelens/theory.hpp"

using treelens::Dataset;
using treelens::Error;
using treelens::Fraction;
using treelens::Label;
using treelens::TieredSplitId;

namespace {

// Forty rows over three yes/no attributes whose marginal favorable shares
// are a = 3/10 < b = 23/40 < c = 27/40 but whose conditional shares along
// the all-favorable path order the questions a, c, b.
Dataset dependent_fixture() {
  Dataset data;
  data.schema = test_support::yes_no_schema({"a", "b", "c"});
  const std::vector<std::pair<std::vector<std::string>, int>> cells = {
      {{"y", "y", "y"}, 4}, {{"y", "y", "n"}, 5}, {{"y", "n", "y"}, 2}, {{"y", "n", "n"}, 1},
      {{"n", "y", "y"}, 10}, {{"n", "y", "n"}, 4}, {{"n", "n", "y"}, 11}, {{"n", "n", "n"}, 3}};
  std::vector<Label> labels;
  for (const auto& [row, count] : cells) {
    const bool positive = row[0] == "y" && row[1] == "y" && row[2] == "y";
    for (int i = 0; i < count; ++i) {
      data.rows.push_back(row);
      labels.push_back(positive ? Label::positive : Label::negative);
    }
  }
  data.labels = std::move(labels);
  return data;
}

}  // namespace

TEST_CASE("predicted question order is ascending favorable share") {
  const auto prediction = treelens::predict_order(
      {{"b", Fraction(1, 2)}, {"a", Fraction(1, 3)}, {"c", Fraction(5, 7)}});
  CHECK_EQ(prediction.order, (std::vector<std::string>{"a", "b", "c"}));
  CHECK(prediction.strict());
  CHECK(prediction.ties.empty());
  CHECK(prediction.degenerate.empty());
  CHECK_FALSE(prediction.dependent_mode);
}

TEST_CASE("equal shares are reported as ties in declaration order") {
  const auto prediction = treelens::predict_order(
      {{"b", Fraction(1, 2)}, {"a", Fraction(1, 2)}, {"c", Fraction(1, 4)}});
  CHECK_EQ(prediction.order, (std::vector<std::string>{"c", "b", "a"}));
  CHECK_FALSE(prediction.strict());
  REQUIRE_EQ(prediction.ties.size(), 1);
  CHECK_EQ(prediction.ties[0], (std::vector<std::string>{"b", "a"}));
}

TEST_CASE("all-or-nothing shares never materialise as questions") {
  const auto prediction = treelens::predict_order(
      {{"a", Fraction(1)}, {"b", Fraction(1, 2)}, {"c", Fraction(0)}});
  CHECK_EQ(prediction.order, std::vector<std::string>{"b"});
  CHECK_EQ(prediction.degenerate.size(), 2);
}

TEST_CASE("ordering verified against built trees") {
  SUBCASE("two attributes") {
    const auto report = treelens::verify_ordering({{"a", Fraction(1, 3)}, {"b", Fraction(1, 2)}}, 600);
    CHECK(report.all_match());
    CHECK_FALSE(report.tie);
  }
  SUBCASE("three attributes with shuffled declaration order") {
    const auto report = treelens::verify_ordering(
        {{"b", Fraction(3, 7)}, {"c", Fraction(5, 7)}, {"a", Fraction(2, 7)}}, 3430);
    CHECK(report.all_match());
    for (const auto& check : report.checks) {
      if (check.attribute == "a") CHECK_EQ(check.actual_depth, 1);
      if (check.attribute == "b") CHECK_EQ(check.actual_depth, 2);
      if (check.attribute == "c") CHECK_EQ(check.actual_depth, 3);
    }
  }
  SUBCASE("equal shares flag the tie") {
    const auto report = treelens::verify_ordering(
        {{"a", Fraction(1, 2)}, {"b", Fraction(1, 2)}, {"c", Fraction(1, 2)}}, 8);
    CHECK(report.tie);
  }
}

TEST_CASE("dependent samples order by conditional shares") {
  const Dataset data = dependent_fixture();

  const auto prediction = treelens::predict_order_dependent(data, {"a", "b", "c"});
  CHECK(prediction.dependent_mode);
  CHECK_EQ(prediction.order, (std::vector<std::string>{"a", "c", "b"}));

  // The marginal ordering would have said a, b, c; the built tree follows
  // the conditional ordering instead.
  CHECK_EQ(treelens::fraction_favorable(data, "a"), Fraction(3, 10));
  CHECK_EQ(treelens::fraction_favorable(data, "b"), Fraction(23, 40));
  CHECK_EQ(treelens::fraction_favorable(data, "c"), Fraction(27, 40));

  const auto tree = treelens::build_tree(data);
  CHECK_EQ(treelens::attribute_depth(tree, "a"), 1);
  CHECK_EQ(treelens::attribute_depth(tree, "c"), 2);
  CHECK_EQ(treelens::attribute_depth(tree, "b"), 3);
}

TEST_CASE("positive-share bound values") {
  CHECK_EQ(treelens::positive_share_bound(Fraction(2, 5), 2), Fraction(9, 25));
  CHECK_EQ(treelens::positive_share_bound(Fraction(2, 7), 3), Fraction(125, 343));
  CHECK_EQ(treelens::positive_share_bound(Fraction(1, 2), 3), Fraction(1, 8));
  CHECK_EQ(treelens::positive_share_bound(Fraction(0), 4), Fraction(1));
}

TEST_CASE("hiding-depth bound on the loan shares") {
  const auto report = treelens::verify_hiding_bound(
      {{"salary", Fraction(1, 2)}, {"species", Fraction(3, 5)}}, "species", 10);
  CHECK_EQ(report.attribute_count, 2);
  CHECK_EQ(report.disadvantaged_share, Fraction(2, 5));
  CHECK_EQ(report.bound, Fraction(9, 25));
  CHECK_EQ(report.positive_fraction, Fraction(3, 10));
  CHECK(report.sensitive_strictly_max);
  CHECK_FALSE(report.tie_with_sensitive);
  CHECK_EQ(report.sensitive_depth, 2);
  CHECK(report.depth_is_last);
  CHECK(report.bound_holds);
  CHECK_FALSE(report.bound_tight);
}

TEST_CASE("hiding bound is tight exactly when all shares are equal") {
  const auto report = treelens::verify_hiding_bound(
      {{"a", Fraction(1, 2)}, {"b", Fraction(1, 2)}, {"s", Fraction(1, 2)}}, "s", 8);
  CHECK_FALSE(report.sensitive_strictly_max);
  CHECK(report.tie_with_sensitive);
  CHECK_EQ(report.positive_fraction, Fraction(1, 8));
  CHECK_EQ(report.bound, Fraction(1, 8));
  CHECK(report.bound_holds);
  CHECK(report.bound_tight);
}

TEST_CASE("hiding fails when another share dominates the sensitive one") {
  const auto report = treelens::verify_hiding_bound(
      {{"a", Fraction(1, 2)}, {"b", Fraction(1, 3)}}, "b", 6);
  CHECK_FALSE(report.sensitive_strictly_max);
  CHECK_EQ(report.sensitive_depth, 1);  // the smallest share takes the root
  CHECK_FALSE(report.depth_is_last);
  // positive share 1/6 exceeds (1/3)^2 = 1/9: the bound needs the premise.
  CHECK_EQ(report.positive_fraction, Fraction(1, 6));
  CHECK_EQ(report.bound, Fraction(1, 9));
  CHECK_FALSE(report.bound_holds);
}

TEST_CASE("curve tabulation: grid, argmin sets and intersections") {
  const Fraction half(1, 2);
  const auto table = treelens::tabulate_tiered_curves(half, half, Fraction(1, 1000));

  REQUIRE_EQ(table.points.size(), 501);
  CHECK_EQ(table.points.front().p0, Fraction(0));
  CHECK_EQ(table.points.back().p0, half);

  SUBCASE("known point values") {
    const auto& pt = table.points[250];  // p0 = 1/4
    REQUIRE_EQ(pt.p0, Fraction(1, 4));
    CHECK_EQ(pt.curves.sensitive, Fraction(3, 8));
    CHECK_EQ(pt.curves.low, Fraction(1, 3));
    CHECK_EQ(pt.curves.high, Fraction(1, 3));
    CHECK_EQ(pt.curves.medium, Fraction(1, 2));
    CHECK_EQ(pt.argmin, (std::vector<TieredSplitId>{TieredSplitId::low_tier,
                                                    TieredSplitId::high_tier}));
  }

  SUBCASE("sensitive question is never the unique cheapest inside the range") {
    for (const auto& pt : table.points) {
      if (pt.p0.is_zero() || pt.p0 == half) continue;
      const bool unique_sensitive =
          pt.argmin.size() == 1 && pt.argmin[0] == TieredSplitId::sensitive;
      CHECK_FALSE(unique_sensitive);
    }
  }

  SUBCASE("crossings sit where the algebra puts them") {
    const double root2_4 = std::sqrt(2.0) / 4.0;  // 0.3535533905932738
    bool sens_low_inner = false, sens_high_inner = false;
    bool low_high_exact = false, sens_low_at_half = false, sens_high_at_zero = false;
    for (const auto& hit : table.intersections) {
      const auto pair = std::minmax(hit.a, hit.b);
      const bool sens_low = pair.first == TieredSplitId::sensitive &&
                            pair.second == TieredSplitId::low_tier;
      const bool sens_high = pair.first == TieredSplitId::sensitive &&
                             pair.second == TieredSplitId::high_tier;
      const bool low_high = pair.first == TieredSplitId::low_tier &&
                            pair.second == TieredSplitId::high_tier;
      if (sens_low && !hit.exact && std::abs(hit.p0 - (0.5 - root2_4)) < 1e-9) {
        sens_low_inner = true;
        CHECK_EQ(hit.impurity, doctest::Approx(root2_4).epsilon(1e-9));
      }
      if (sens_high && !hit.exact && std::abs(hit.p0 - root2_4) < 1e-9) {
        sens_high_inner = true;
        CHECK_EQ(hit.impurity, doctest::Approx(root2_4).epsilon(1e-9));
      }
      if (low_high && hit.exact && hit.p0_exact == Fraction(1, 4)) {
        low_high_exact = true;
        CHECK_EQ(hit.impurity, doctest::Approx(1.0 / 3.0));
      }
      if (sens_low && hit.exact && hit.p0_exact == half) sens_low_at_half = true;
      if (sens_high && hit.exact && hit.p0_exact.is_zero()) sens_high_at_zero = true;
    }
    CHECK(sens_low_inner);
    CHECK(sens_high_inner);
    CHECK(low_high_exact);
    CHECK(sens_low_at_half);
    CHECK(sens_high_at_zero);
  }

  SUBCASE("csv rendering") {
    const std::string csv = treelens::curve_table_csv(table);
    CHECK(csv.find("p0") != std::string::npos);
    CHECK(csv.find("0.250000000") != std::string::npos);
    CHECK_EQ(std::count(csv.begin(), csv.end(), '\n') >= 501, true);
  }
}

TEST_CASE("difference surface values and symmetry") {
  const auto points = treelens::difference_surface(Fraction(1, 10));
  CHECK_EQ(points.size(), 121);  // 11 x 11 grid including both ends

  auto at = [&points](const Fraction& pe, const Fraction& ps) {
    for (const auto& pt : points) {
      if (pt.pe == pe && pt.ps == ps) return pt.delta;
    }
    FAIL("surface point missing");
    return Fraction(0);
  };
  CHECK_EQ(at(Fraction(3, 5), Fraction(1, 2)), Fraction(3, 50));
  CHECK_EQ(at(Fraction(3, 10), Fraction(7, 10)), Fraction(-21, 125));
  CHECK_EQ(at(Fraction(1, 2), Fraction(1, 2)), Fraction(0));
  // Antisymmetric under swapping the two shares.
  CHECK_EQ(at(Fraction(2, 5), Fraction(9, 10)), -at(Fraction(9, 10), Fraction(2, 5)));

  const std::string csv = treelens::surface_csv(points);
  CHECK(csv.find("pe") != std::string::npos);
}

TEST_CASE("the built-in verification suite passes") {
  const auto checks = treelens::builtin_verifications(Fraction(1, 100));
  CHECK_GT(checks.size(), 20);
  for (const auto& check : checks) {
    CAPTURE(check.name);
    CAPTURE(check.detail);
    CHECK(check.pass);
  }
}
