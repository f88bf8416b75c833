#pragma once

// Shared fixtures and doctest glue for the unit test binaries.

#include <string>
#include <vector>

#include "doctest.h"
#include "treelens/blackbox.hpp"
#include "treelens/dataset.hpp"
#include "treelens/fraction.hpp"

namespace treelens {

// Let doctest print fractions in failure messages.
inline doctest::String toString(const Fraction& f) {
  return doctest::String(f.to_string().c_str());
}

}  // namespace treelens

namespace test_support {

inline treelens::AttributeSpec attr(std::string name, std::vector<std::string> domain,
                                    std::vector<std::string> favorable, bool sensitive = false,
                                    bool ordered = false) {
  treelens::AttributeSpec spec;
  spec.name = std::move(name);
  spec.domain = std::move(domain);
  spec.favorable = std::move(favorable);
  spec.sensitive = sensitive;
  spec.ordered = ordered;
  return spec;
}

// The ten-client loan scenario used throughout the docs: a sensitive species
// attribute (elf favorable) and a binarised salary attribute (over favorable).
inline std::vector<treelens::AttributeSpec> loan_schema() {
  return {attr("species", {"elf", "ogre"}, {"elf"}, /*sensitive=*/true),
          attr("salary", {"under", "over"}, {"over"}, /*sensitive=*/false, /*ordered=*/true)};
}

// 3x elf/over (positive), 3x elf/under, 2x ogre/over, 2x ogre/under.
inline treelens::Dataset loan_data(bool labeled = true) {
  treelens::Dataset data;
  data.schema = loan_schema();
  auto add = [&data](const std::string& sp, const std::string& sal, int count) {
    for (int i = 0; i < count; ++i) data.rows.push_back({sp, sal});
  };
  add("elf", "over", 3);
  add("elf", "under", 3);
  add("ogre", "over", 2);
  add("ogre", "under", 2);
  if (labeled) {
    std::vector<treelens::Label> labels;
    for (const auto& row : data.rows) {
      labels.push_back(row[0] == "elf" && row[1] == "over" ? treelens::Label::positive
                                                           : treelens::Label::negative);
    }
    data.labels = std::move(labels);
  }
  return data;
}

// Yes/no schema over the given attribute names; "y" is the favorable value.
// When `sensitive` matches a name that attribute carries the sensitive flag.
inline std::vector<treelens::AttributeSpec> yes_no_schema(const std::vector<std::string>& names,
                                                          const std::string& sensitive = "") {
  std::vector<treelens::AttributeSpec> schema;
  for (const auto& name : names) {
    schema.push_back(attr(name, {"y", "n"}, {"y"}, name == sensitive));
  }
  return schema;
}

// Three-tier scenario schema: tier low/medium/high (high favorable, ordered)
// and a sensitive group attribute (adv favorable).
inline std::vector<treelens::AttributeSpec> tier_schema() {
  return {attr("tier", {"low", "medium", "high"}, {"high"}, /*sensitive=*/false,
               /*ordered=*/true),
          attr("group", {"adv", "dis"}, {"adv"}, /*sensitive=*/true)};
}

inline treelens::TieredRule tier_rule() {
  treelens::TieredRule rule;
  rule.tier_attribute = "tier";
  rule.low = "low";
  rule.medium = "medium";
  rule.high = "high";
  rule.sensitive_attribute = "group";
  rule.advantaged = "adv";
  return rule;
}

// Exactly independent tiered sample: tier shares p0/p5/p10, group share pe,
// labeled by the tiered rule.  Every cell count must be an integer.
inline treelens::Dataset tier_data(const treelens::Fraction& p0, const treelens::Fraction& p5,
                                   const treelens::Fraction& pe, std::int64_t n) {
  using treelens::Fraction;
  const Fraction p10 = Fraction(1) - p0 - p5;
  treelens::Dataset data = treelens::synthesize_product(
      tier_schema(), {{p0, p5, p10}, {pe, Fraction(1) - pe}}, n);
  return treelens::label_dataset(tier_rule(), data);
}

}  // namespace test_support
