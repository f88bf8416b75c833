#include <string>
#include <vector>

#include "test_support.hpp"
#include "treelens/audit.hpp"
#include "treelens/blackbox.hpp"
#include "treelens/cart.hpp"
#include "treelens/dataset.hpp"
#include "treelens/error.hpp"

using treelens::AuditReport;
using treelens::ConjunctiveRule;
using treelens::Dataset;
using treelens::DecisionTree;
using treelens::Error;
using treelens::Fraction;
using treelens::StoppingPolicy;

TEST_CASE("group rates in domain order") {
  const Dataset data = test_support::loan_data();
  const auto rates = treelens::group_rates(data, "species");
  REQUIRE_EQ(rates.size(), 2);
  CHECK_EQ(rates[0].value, "elf");
  CHECK_EQ(rates[0].positives, 3);
  CHECK_EQ(rates[0].size, 6);
  CHECK_EQ(rates[0].rate, Fraction(1, 2));
  CHECK_EQ(rates[1].value, "ogre");
  CHECK_EQ(rates[1].positives, 0);
  CHECK_EQ(rates[1].size, 4);
  CHECK_EQ(rates[1].rate, Fraction(0));
}

TEST_CASE("dataset-only audit flags the outcome gap and the empty-handed group") {
  const Dataset data = test_support::loan_data();
  const AuditReport report = treelens::audit(&data, nullptr);

  CHECK_EQ(report.gap_threshold, Fraction(1, 5));
  REQUIRE_EQ(report.attributes.size(), 1);  // only species is declared sensitive
  const auto& species = report.attributes[0];
  CHECK_EQ(species.attribute, "species");
  CHECK_EQ(species.rate_gap, Fraction(1, 2));
  CHECK(species.gap_flag);
  CHECK_EQ(species.zero_positive, std::vector<std::string>{"ogre"});

  CHECK_FALSE(report.importance.has_value());
  CHECK(report.discrepancies.empty());
  CHECK(report.any_flag());
}

TEST_CASE("audit with a tree reports the importance discrepancy") {
  const Dataset data = test_support::loan_data();
  const DecisionTree tree = treelens::build_tree(data);
  const AuditReport report = treelens::audit(&data, &tree);

  REQUIRE(report.importance.has_value());
  CHECK_EQ(report.importance->at("salary").min_depth, 1);
  CHECK_EQ(report.importance->at("species").min_depth, 2);

  REQUIRE_EQ(report.discrepancies.size(), 1);
  const auto& note = report.discrepancies[0];
  CHECK_EQ(note.attribute, "species");
  CHECK_EQ(note.rate_gap, Fraction(1, 2));
  CHECK_EQ(note.min_depth, 2);
  CHECK(note.note.find("understates") != std::string::npos);
}

TEST_CASE("an attribute missing from the tree is called out") {
  const Dataset data = test_support::loan_data();
  StoppingPolicy policy;
  policy.max_depth = 1;
  const DecisionTree stump = treelens::build_tree(data, policy);
  const AuditReport report = treelens::audit(&data, &stump);

  REQUIRE_EQ(report.discrepancies.size(), 1);
  CHECK_FALSE(report.discrepancies[0].min_depth.has_value());
  CHECK(report.discrepancies[0].note.find("never appears") != std::string::npos);
}

TEST_CASE("no discrepancy when the sensitive question is the root") {
  // Labels driven purely by species put the sensitive split at depth 1.
  Dataset data = test_support::loan_data(/*labeled=*/false);
  const Dataset labeled = treelens::label_dataset(ConjunctiveRule{{"species"}}, data);
  const DecisionTree tree = treelens::build_tree(labeled);
  const AuditReport report = treelens::audit(&labeled, &tree);

  REQUIRE_EQ(report.attributes.size(), 1);
  CHECK_EQ(report.attributes[0].rate_gap, Fraction(1));
  CHECK(report.attributes[0].gap_flag);
  // Gap flagged, but the tree asks species first: no understatement.
  CHECK(report.discrepancies.empty());
}

TEST_CASE("threshold semantics: at-or-above fires, below does not") {
  const Dataset data = test_support::loan_data();

  const AuditReport lenient = treelens::audit(&data, nullptr, Fraction(3, 4));
  CHECK_FALSE(lenient.attributes[0].gap_flag);
  CHECK(lenient.any_flag());  // the zero-positive group still fires

  const AuditReport exact = treelens::audit(&data, nullptr, Fraction(1, 2));
  CHECK(exact.attributes[0].gap_flag);

  CHECK_THROWS_AS(treelens::audit(&data, nullptr, Fraction(3, 2)), Error);
  CHECK_THROWS_AS(treelens::audit(&data, nullptr, Fraction(-1, 2)), Error);
}

TEST_CASE("balanced outcomes raise no flags") {
  // Label by salary alone: elves and ogres succeed at the same 1/2 rate.
  Dataset data = test_support::loan_data(/*labeled=*/false);
  const Dataset labeled = treelens::label_dataset(ConjunctiveRule{{"salary"}}, data);
  const AuditReport report = treelens::audit(&labeled, nullptr);

  CHECK_EQ(report.attributes[0].rate_gap, Fraction(0));
  CHECK_FALSE(report.attributes[0].gap_flag);
  CHECK(report.attributes[0].zero_positive.empty());
  CHECK_FALSE(report.any_flag());
}

TEST_CASE("tree-only audit reports importance without rates") {
  const DecisionTree tree = treelens::build_tree(test_support::loan_data());
  const AuditReport report = treelens::audit(nullptr, &tree);
  CHECK(report.attributes.empty());
  REQUIRE(report.importance.has_value());
  CHECK(report.discrepancies.empty());
  CHECK_FALSE(report.any_flag());
}

TEST_CASE("audit preconditions") {
  CHECK_THROWS_AS(treelens::audit(nullptr, nullptr), Error);

  Dataset unlabeled = test_support::loan_data(/*labeled=*/false);
  CHECK_THROWS_WITH_AS(treelens::audit(&unlabeled, nullptr),
                       doctest::Contains("labelling step"), Error);

  Dataset no_sensitive = test_support::loan_data();
  no_sensitive.schema[0].sensitive = false;
  CHECK_THROWS_WITH_AS(treelens::audit(&no_sensitive, nullptr),
                       doctest::Contains("sensitive"), Error);
}

TEST_CASE("text rendering carries the flags") {
  const Dataset data = test_support::loan_data();
  const DecisionTree tree = treelens::build_tree(data);
  const std::string text = treelens::render_audit_text(treelens::audit(&data, &tree));
  CHECK(text.find("[FLAG") != std::string::npos);
  CHECK(text.find("flags fired: yes") != std::string::npos);
  CHECK(text.find("species") != std::string::npos);
  CHECK(text.find("1/2") != std::string::npos);
}

TEST_CASE("csv rendering sections") {
  const Dataset data = test_support::loan_data();
  const DecisionTree tree = treelens::build_tree(data);
  const std::string csv = treelens::render_audit_csv(treelens::audit(&data, &tree));
  CHECK(csv.find("# rate gaps") != std::string::npos);
  CHECK(csv.find("# tree importance") != std::string::npos);
  CHECK(csv.find("# discrepancies") != std::string::npos);
  CHECK(csv.find("species,ogre,0,4,0.000000000,1") != std::string::npos);
  CHECK(csv.find("species,elf,3,6,0.500000000,0") != std::string::npos);
}
