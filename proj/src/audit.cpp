#include "treelens/audit.hpp"

#include <algorithm>
#include <sstream>

#include "treelens/error.hpp"

namespace treelens {

std::vector<GroupRate> group_rates(const Dataset& data, std::string_view attr) {
  data.validate();
  if (!data.labeled()) {
    throw Error("group rates need a labeled dataset");
  }
  const AttributeSpec& spec = data.attribute(attr);
  const std::size_t col = data.attribute_index(attr);

  std::vector<GroupRate> groups;
  groups.reserve(spec.domain.size());
  for (const std::string& value : spec.domain) {
    groups.push_back(GroupRate{value, 0, 0, Fraction(0)});
  }
  for (std::size_t row = 0; row < data.rows.size(); ++row) {
    const auto index = spec.value_index(data.rows[row][col]);
    GroupRate& group = groups[*index];
    ++group.size;
    if ((*data.labels)[row] == Label::positive) {
      ++group.positives;
    }
  }
  for (GroupRate& group : groups) {
    if (group.size > 0) {
      group.rate = Fraction(group.positives, group.size);
    }
  }
  return groups;
}

bool AuditReport::any_flag() const {
  return std::any_of(attributes.begin(), attributes.end(), [](const AttributeAudit& a) {
    return a.gap_flag || !a.zero_positive.empty();
  });
}

AuditReport audit(const Dataset* data, const DecisionTree* tree, const Fraction& gap_threshold) {
  if (data == nullptr && tree == nullptr) {
    throw Error("audit needs a dataset, a tree, or both");
  }
  if (gap_threshold.is_negative() || gap_threshold > Fraction(1)) {
    throw Error("gap threshold must lie in [0, 1], got " + gap_threshold.to_string());
  }
  const std::vector<AttributeSpec>& schema = data != nullptr ? data->schema : tree->schema;
  const bool any_sensitive =
      std::any_of(schema.begin(), schema.end(), [](const AttributeSpec& s) { return s.sensitive; });
  if (!any_sensitive) {
    throw Error("no attribute is declared sensitive in the schema; nothing to audit");
  }

  AuditReport report;
  report.gap_threshold = gap_threshold;

  if (data != nullptr) {
    if (!data->labeled()) {
      throw Error("audit needs labels on the dataset; run the labelling step first");
    }
    for (const AttributeSpec& spec : data->schema) {
      if (!spec.sensitive) {
        continue;
      }
      AttributeAudit entry;
      entry.attribute = spec.name;
      entry.groups = group_rates(*data, spec.name);
      bool have_rate = false;
      Fraction min_rate;
      Fraction max_rate;
      for (const GroupRate& group : entry.groups) {
        if (group.size == 0) {
          continue;  // no observed members, no rate
        }
        if (!have_rate) {
          min_rate = max_rate = group.rate;
          have_rate = true;
        } else {
          min_rate = std::min(min_rate, group.rate);
          max_rate = std::max(max_rate, group.rate);
        }
        if (group.rate.is_zero()) {
          entry.zero_positive.push_back(group.value);
        }
      }
      entry.rate_gap = have_rate ? max_rate - min_rate : Fraction(0);
      entry.gap_flag = !(entry.rate_gap < gap_threshold);
      report.attributes.push_back(std::move(entry));
    }
  }

  if (tree != nullptr) {
    report.importance = importance_report(*tree);
  }

  if (data != nullptr && tree != nullptr) {
    for (const AttributeAudit& entry : report.attributes) {
      if (!entry.gap_flag) {
        continue;
      }
      std::optional<int> min_depth;
      if (const auto it = report.importance->find(entry.attribute);
          it != report.importance->end()) {
        min_depth = it->second.min_depth;
      }
      if (min_depth.has_value() && *min_depth <= 1) {
        continue;  // visible at the root; nothing hidden
      }
      DiscrepancyNote note;
      note.attribute = entry.attribute;
      note.rate_gap = entry.rate_gap;
      note.min_depth = min_depth;
      std::ostringstream text;
      text << "outcome gap " << entry.rate_gap.to_string() << " >= threshold "
           << gap_threshold.to_string() << " but ";
      if (min_depth.has_value()) {
        text << "the first question on " << entry.attribute << " sits at depth " << *min_depth;
      } else {
        text << entry.attribute << " never appears in the tree";
      }
      text << "; depth-based importance understates its impact";
      note.note = text.str();
      report.discrepancies.push_back(std::move(note));
    }
  }
  return report;
}

std::string render_audit_text(const AuditReport& report) {
  std::ostringstream out;
  out << "fairness audit report\n";
  out << "=====================\n";
  out << "gap threshold: " << report.gap_threshold.to_string() << "\n";
  for (const AttributeAudit& entry : report.attributes) {
    out << "sensitive attribute: " << entry.attribute << "\n";
    for (const GroupRate& group : entry.groups) {
      out << "  " << group.value << ": positive rate " << group.rate.to_string() << " ("
          << group.positives << "/" << group.size << ")\n";
    }
    out << "  rate gap: " << entry.rate_gap.to_string()
        << (entry.gap_flag ? " [FLAG: gap at or above threshold]" : "") << "\n";
    if (!entry.zero_positive.empty()) {
      out << "  zero-positive groups:";
      for (const std::string& value : entry.zero_positive) {
        out << ' ' << value;
      }
      out << " [FLAG]\n";
    }
  }
  if (report.importance.has_value()) {
    out << "tree importance:\n";
    if (report.importance->empty()) {
      out << "  (no splits; the tree is a single leaf)\n";
    }
    for (const auto& [name, entry] : *report.importance) {
      out << "  " << name << ": first question at depth " << entry.min_depth << ", decides "
          << entry.decisive_count << " training rows\n";
    }
  }
  if (!report.discrepancies.empty()) {
    out << "discrepancies:\n";
    for (const DiscrepancyNote& note : report.discrepancies) {
      out << "  " << note.attribute << ": " << note.note << "\n";
    }
  }
  out << (report.any_flag() ? "flags fired: yes\n" : "flags fired: no\n");
  return out.str();
}

std::string render_audit_csv(const AuditReport& report) {
  std::ostringstream out;
  out << "# fairness audit summary; gap threshold " << report.gap_threshold.to_string() << "\n";
  out << "attribute,value,positives,size,rate,zero_positive\n";
  for (const AttributeAudit& entry : report.attributes) {
    for (const GroupRate& group : entry.groups) {
      const bool zero = std::find(entry.zero_positive.begin(), entry.zero_positive.end(),
                                  group.value) != entry.zero_positive.end();
      out << entry.attribute << ',' << group.value << ',' << group.positives << ',' << group.size
          << ',' << group.rate.to_decimal(9) << ',' << (zero ? 1 : 0) << "\n";
    }
  }
  out << "# rate gaps\n";
  out << "attribute,rate_gap,flag\n";
  for (const AttributeAudit& entry : report.attributes) {
    out << entry.attribute << ',' << entry.rate_gap.to_decimal(9) << ','
        << (entry.gap_flag ? 1 : 0) << "\n";
  }
  if (report.importance.has_value()) {
    out << "# tree importance\n";
    out << "attribute,min_depth,decisive_count\n";
    for (const auto& [name, entry] : *report.importance) {
      out << name << ',' << entry.min_depth << ',' << entry.decisive_count << "\n";
    }
  }
  if (!report.discrepancies.empty()) {
    out << "# discrepancies\n";
    out << "attribute,rate_gap,min_depth\n";
    for (const DiscrepancyNote& note : report.discrepancies) {
      out << note.attribute << ',' << note.rate_gap.to_decimal(9) << ',';
      if (note.min_depth.has_value()) {
        out << *note.min_depth;
      } else {
        out << "absent";
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace treelens
