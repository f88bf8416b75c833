#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "treelens/dataset.hpp"

namespace treelens {

// Positive iff every named attribute holds a favorable value (per the
// schema's favorable sets).  An empty favorable set can never be satisfied,
// so such a rule labels everything negative.
struct ConjunctiveRule {
  std::vector<std::string> attributes;
};

// Three-tier rule: the high tier is always positive, the low tier always
// negative, and the middle tier is positive only for the advantaged value of
// the sensitive attribute.
struct TieredRule {
  std::string tier_attribute;
  std::string low;
  std::string medium;
  std::string high;
  std::string sensitive_attribute;
  std::string advantaged;
};

// Total labelling table over the full domain product.
struct LookupRule {
  std::map<std::vector<std::string>, Label> table;
};

using BlackBoxRule = std::variant<ConjunctiveRule, TieredRule, LookupRule>;

// Structural checks against a schema: named attributes exist, the tier
// attribute's domain is exactly the three tiers, lookup tables are total.
void validate_rule(const BlackBoxRule& rule, const std::vector<AttributeSpec>& schema);

Label label_row(const BlackBoxRule& rule, const std::vector<AttributeSpec>& schema,
                const std::vector<std::string>& row);

// Returns a copy of `data` with labels assigned by the rule.
Dataset label_dataset(const BlackBoxRule& rule, const Dataset& data);

// Rule configuration files (JSON, one object with a "type" discriminator).
BlackBoxRule parse_rule(const std::string& text);
BlackBoxRule load_rule(const std::filesystem::path& path);
std::string render_rule(const BlackBoxRule& rule);
void save_rule(const BlackBoxRule& rule, const std::filesystem::path& path);

}  // namespace treelens
