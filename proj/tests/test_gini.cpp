#include <string>
#include <utility>
#include <vector>

#include "test_support.hpp"
#include "treelens/blackbox.hpp"
#include "treelens/dataset.hpp"
#include "treelens/error.hpp"
#include "treelens/gini.hpp"

using treelens::ConjunctiveRule;
using treelens::Dataset;
using treelens::Fraction;
using treelens::LabelCounts;
using treelens::SplitDescriptor;
using treelens::SynthesisSpec;

namespace {

std::vector<std::size_t> all_rows(const Dataset& data) {
  std::vector<std::size_t> idx(data.rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

SplitDescriptor multiway(const std::string& attribute) {
  SplitDescriptor split;
  split.attribute = attribute;
  split.mode = SplitDescriptor::Mode::multiway;
  return split;
}

SplitDescriptor binary(const std::string& attribute, std::vector<std::string> subset) {
  SplitDescriptor split;
  split.attribute = attribute;
  split.mode = SplitDescriptor::Mode::binary;
  split.subset = std::move(subset);
  return split;
}

}  // namespace

TEST_CASE("gini index of a binary label distribution") {
  CHECK_EQ(treelens::gini_index({3, 7}), Fraction(21, 50));
  CHECK_EQ(treelens::gini_index({0, 7}), Fraction(0));
  CHECK_EQ(treelens::gini_index({7, 0}), Fraction(0));
  CHECK_EQ(treelens::gini_index({5, 5}), Fraction(1, 2));
  // Empty subsets have no heterogeneity to measure; the split-impurity layer
  // is where empty branches are defined to contribute zero.
  CHECK_THROWS_AS(treelens::gini_index({0, 0}), treelens::Error);
  CHECK_EQ(treelens::gini_index({1, 3}), Fraction(3, 8));
}

TEST_CASE("label counting") {
  const Dataset data = test_support::loan_data();
  const LabelCounts counts = treelens::count_labels(data, all_rows(data));
  CHECK_EQ(counts.positives, 3);
  CHECK_EQ(counts.negatives, 7);
  CHECK_EQ(counts.total(), 10);
}

TEST_CASE("loan-sample impurity goldens") {
  const Dataset data = test_support::loan_data();

  CHECK_EQ(treelens::gini_impurity(data, multiway("salary")), Fraction(6, 25));
  CHECK_EQ(treelens::gini_impurity(data, multiway("species")), Fraction(3, 10));

  std::vector<std::size_t> over_rows;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    if (data.rows[r][1] == "over") over_rows.push_back(r);
  }
  CHECK_EQ(treelens::gini_index(treelens::count_labels(data, over_rows)), Fraction(12, 25));
  CHECK_EQ(treelens::gini_impurity(data, over_rows, multiway("species")), Fraction(0));
}

TEST_CASE("binary questions match multiway on two-valued attributes") {
  const Dataset data = test_support::loan_data();
  CHECK_EQ(treelens::gini_impurity(data, binary("species", {"elf"})), Fraction(3, 10));
  CHECK_EQ(treelens::gini_impurity(data, binary("salary", {"over"})), Fraction(6, 25));
}

TEST_CASE("an empty branch contributes nothing") {
  const Dataset data = test_support::loan_data();
  std::vector<std::size_t> over_rows;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    if (data.rows[r][1] == "over") over_rows.push_back(r);
  }
  // Splitting the high-salary subset on salary puts every row in one branch,
  // so the weighted impurity equals the subset's own heterogeneity.
  CHECK_EQ(treelens::gini_impurity(data, over_rows, multiway("salary")), Fraction(12, 25));
}

TEST_CASE("closed conjunctive forms equal counted impurities: two attributes") {
  const std::vector<std::pair<std::string, Fraction>> fractions = {
      {"salary", Fraction(1, 2)}, {"species", Fraction(3, 5)}};

  CHECK_EQ(treelens::closed_form_conjunctive_impurity(fractions, "salary"), Fraction(6, 25));
  CHECK_EQ(treelens::closed_form_conjunctive_impurity(fractions, "species"), Fraction(3, 10));
  CHECK_EQ(treelens::impurity_difference(fractions, "salary", "species"), Fraction(-3, 50));
  CHECK_EQ(treelens::impurity_difference(fractions, "species", "salary"), Fraction(3, 50));
}

TEST_CASE("closed conjunctive forms equal counted impurities: three attributes") {
  const std::vector<std::pair<std::string, Fraction>> fractions = {
      {"o", Fraction(2, 5)}, {"q", Fraction(1, 2)}, {"r", Fraction(1, 2)}};

  CHECK_EQ(treelens::closed_form_conjunctive_impurity(fractions, "o"), Fraction(3, 20));
  CHECK_EQ(treelens::closed_form_conjunctive_impurity(fractions, "q"), Fraction(4, 25));
  CHECK_EQ(treelens::impurity_difference(fractions, "o", "q"), Fraction(-1, 100));

  // Count-based cross-check on an exactly independent sample of 200 rows.
  SynthesisSpec spec;
  spec.n = 200;
  spec.targets = {fractions.begin(), fractions.end()};
  const auto schema = test_support::yes_no_schema({"o", "q", "r"});
  Dataset data = treelens::synthesize_independent(spec, schema);
  data = treelens::label_dataset(ConjunctiveRule{{"o", "q", "r"}}, data);

  const Fraction counted_o = treelens::gini_impurity(data, multiway("o"));
  const Fraction counted_q = treelens::gini_impurity(data, multiway("q"));
  CHECK_EQ(counted_o, Fraction(3, 20));
  CHECK_EQ(counted_q, Fraction(4, 25));
  CHECK_EQ(counted_o - counted_q, Fraction(-1, 100));
}

TEST_CASE("tiered-scenario curve values") {
  const Fraction half(1, 2);

  SUBCASE("interior point p0 = 1/4") {
    const auto cv = treelens::tiered_split_curves(Fraction(1, 4), half, half);
    CHECK_EQ(cv.sensitive, Fraction(3, 8));
    CHECK_EQ(cv.low, Fraction(1, 3));
    CHECK_EQ(cv.high, Fraction(1, 3));
    CHECK_EQ(cv.medium, Fraction(1, 2));
  }
  SUBCASE("interior point p0 = 1/8 and its mirror") {
    const auto cv = treelens::tiered_split_curves(Fraction(1, 8), half, half);
    CHECK_EQ(cv.sensitive, Fraction(11, 32));
    CHECK_EQ(cv.low, Fraction(5, 14));
    CHECK_EQ(cv.high, Fraction(3, 10));
    CHECK_EQ(cv.medium, Fraction(7, 16));
    // Swapping p0 and p10 swaps the one-tier-vs-rest questions.
    const auto mirror = treelens::tiered_split_curves(Fraction(3, 8), half, half);
    CHECK_EQ(mirror.sensitive, cv.sensitive);
    CHECK_EQ(mirror.low, cv.high);
    CHECK_EQ(mirror.high, cv.low);
    CHECK_EQ(mirror.medium, cv.medium);
  }
  SUBCASE("corners: the vacuous question costs the unsplit heterogeneity") {
    const auto left = treelens::tiered_split_curves(Fraction(0), half, half);
    CHECK_EQ(left.sensitive, Fraction(1, 4));
    CHECK_EQ(left.high, Fraction(1, 4));
    CHECK_EQ(left.medium, Fraction(1, 4));
    CHECK_EQ(left.low, Fraction(3, 8));  // empty low tier: split changes nothing

    const auto right = treelens::tiered_split_curves(half, half, half);
    CHECK_EQ(right.sensitive, Fraction(1, 4));
    CHECK_EQ(right.low, Fraction(1, 4));
    CHECK_EQ(right.medium, Fraction(1, 4));
    CHECK_EQ(right.high, Fraction(3, 8));
  }
}

TEST_CASE("tiered curves agree with counting on a realized sample") {
  const Fraction half(1, 2);
  for (const Fraction p0 : {Fraction(0), Fraction(1, 4), Fraction(1, 2)}) {
    CAPTURE(p0);
    const Dataset data = test_support::tier_data(p0, half, half, 16);
    const auto cv = treelens::tiered_split_curves(p0, half, half);
    CHECK_EQ(treelens::gini_impurity(data, binary("group", {"adv"})), cv.sensitive);
    CHECK_EQ(treelens::gini_impurity(data, binary("tier", {"low"})), cv.low);
    CHECK_EQ(treelens::gini_impurity(data, binary("tier", {"high"})), cv.high);
    CHECK_EQ(treelens::gini_impurity(data, binary("tier", {"medium"})), cv.medium);
    CHECK_EQ(treelens::gini_impurity(data, multiway("tier")),
             treelens::tiered_multiway_impurity(p0, half, half));
  }
}

TEST_CASE("the three-branch tier question has constant impurity") {
  const Fraction half(1, 2);
  for (const Fraction p0 : {Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)}) {
    CHECK_EQ(treelens::tiered_multiway_impurity(p0, half, half), Fraction(1, 4));
  }
  // 2 * pe * (1 - pe) * p5 for an asymmetric group share.
  CHECK_EQ(treelens::tiered_multiway_impurity(Fraction(1, 4), half, Fraction(1, 4)),
           Fraction(3, 16));
}

TEST_CASE("split descriptions are human readable") {
  CHECK_EQ(treelens::describe_split(multiway("salary")), "salary?");
  const std::string text = treelens::describe_split(binary("tier", {"low", "medium"}));
  CHECK(text.find("tier") != std::string::npos);
  CHECK(text.find("low") != std::string::npos);
}
