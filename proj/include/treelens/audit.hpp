#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treelens/cart.hpp"
#include "treelens/dataset.hpp"
#include "treelens/fraction.hpp"

namespace treelens {

struct GroupRate {
  std::string value;
  std::int64_t positives = 0;
  std::int64_t size = 0;
  Fraction rate;  // exact; 0 for empty groups
};

// Positive rate per value of one attribute, in domain order.
std::vector<GroupRate> group_rates(const Dataset& data, std::string_view attr);

struct AttributeAudit {
  std::string attribute;
  std::vector<GroupRate> groups;  // domain order
  Fraction rate_gap;              // max - min rate over non-empty groups
  bool gap_flag = false;          // rate_gap >= threshold
  std::vector<std::string> zero_positive;  // non-empty groups with rate exactly 0
};

// A sensitive attribute whose outcome gap crosses the threshold while its
// first question sits below the root (or outside the tree entirely) — the
// combination that makes a tree look fairer than the data is.
struct DiscrepancyNote {
  std::string attribute;
  Fraction rate_gap;
  std::optional<int> min_depth;  // nullopt: absent from the tree
  std::string note;
};

struct AuditReport {
  Fraction gap_threshold;
  std::vector<AttributeAudit> attributes;  // sensitive attributes, schema order
  std::optional<std::map<std::string, ImportanceEntry>> importance;  // with a tree
  std::vector<DiscrepancyNote> discrepancies;  // needs both dataset and tree

  bool any_flag() const;  // any gap flag or zero-positive group
};

// Audits a labeled dataset, a tree, or both.  Rate computations are exact;
// the zero-positive flag compares the rate to 0 exactly.  Pass nullptr for a
// missing input; at least one input and one schema-declared sensitive
// attribute are required.
AuditReport audit(const Dataset* data, const DecisionTree* tree,
                  const Fraction& gap_threshold = Fraction{1, 5});

std::string render_audit_text(const AuditReport& report);
std::string render_audit_csv(const AuditReport& report);

}  // namespace treelens
