#include "treelens/gini.hpp"

#include <algorithm>

namespace treelens {

LabelCounts count_labels(const Dataset& data, std::span<const std::size_t> row_indices) {
  if (!data.labeled()) throw Error("gini: dataset has no labels");
  LabelCounts counts;
  for (std::size_t r : row_indices) {
    if ((*data.labels)[r] == Label::positive) {
      ++counts.positives;
    } else {
      ++counts.negatives;
    }
  }
  return counts;
}

Fraction gini_index(const LabelCounts& counts) {
  std::int64_t t = counts.total();
  if (t == 0) throw Error("gini: index of an empty subset");
  // 1 - p^2 - n^2/t^2 == 2*p*n / t^2.
  return Fraction(2 * counts.positives, t) * Fraction(counts.negatives, t);
}

std::string describe_split(const SplitDescriptor& split) {
  if (split.mode == SplitDescriptor::Mode::multiway) return split.attribute + "?";
  std::string out = split.attribute + " in {";
  for (std::size_t i = 0; i < split.subset.size(); ++i) {
    if (i) out += ",";
    out += split.subset[i];
  }
  out += "}?";
  return out;
}

Fraction gini_impurity(const Dataset& data, std::span<const std::size_t> row_indices,
                       const SplitDescriptor& split) {
  if (!data.labeled()) throw Error("gini: dataset has no labels");
  if (row_indices.empty()) throw Error("gini: impurity of an empty subset");
  const std::size_t attr = data.attribute_index(split.attribute);
  const AttributeSpec& spec = data.schema[attr];

  std::vector<LabelCounts> branches;
  if (split.mode == SplitDescriptor::Mode::multiway) {
    branches.resize(spec.domain.size());
    for (std::size_t r : row_indices) {
      auto v = spec.value_index(data.rows[r][attr]);
      if (!v) throw Error("gini: row value '" + data.rows[r][attr] + "' outside the domain");
      LabelCounts& b = branches[*v];
      ((*data.labels)[r] == Label::positive ? b.positives : b.negatives) += 1;
    }
  } else {
    if (split.subset.empty()) throw Error("gini: binary split with an empty subset");
    for (const std::string& v : split.subset) {
      if (!spec.value_index(v)) {
        throw Error("gini: split subset value '" + v + "' is not in the domain of '" +
                    spec.name + "'");
      }
    }
    if (split.subset.size() >= spec.domain.size()) {
      throw Error("gini: binary split subset must be a proper subset of the domain");
    }
    branches.resize(2);
    for (std::size_t r : row_indices) {
      const std::string& value = data.rows[r][attr];
      if (!spec.value_index(value)) {
        throw Error("gini: row value '" + value + "' outside the domain");
      }
      bool inside = std::find(split.subset.begin(), split.subset.end(), value) !=
                    split.subset.end();
      LabelCounts& b = branches[inside ? 0 : 1];
      ((*data.labels)[r] == Label::positive ? b.positives : b.negatives) += 1;
    }
  }

  const std::int64_t total = static_cast<std::int64_t>(row_indices.size());
  Fraction impurity(0);
  for (const LabelCounts& b : branches) {
    if (b.total() == 0) continue;  // empty branch contributes zero
    impurity = impurity + Fraction(b.total(), total) * gini_index(b);
  }
  return impurity;
}

Fraction gini_impurity(const Dataset& data, const SplitDescriptor& split) {
  std::vector<std::size_t> all(data.rows.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return gini_impurity(data, all, split);
}

namespace {

void check_unit_fractions(const std::vector<std::pair<std::string, Fraction>>& fractions) {
  if (fractions.empty()) throw Error("gini: no attribute fractions given");
  for (const auto& [name, p] : fractions) {
    if (!p.in_unit_interval()) {
      throw Error("gini: fraction " + p.to_string() + " for '" + name + "' is outside [0, 1]");
    }
  }
}

}  // namespace

Fraction closed_form_conjunctive_impurity(
    const std::vector<std::pair<std::string, Fraction>>& fractions, std::string_view k) {
  check_unit_fractions(fractions);
  bool found = false;
  Fraction product(1);         // prod over all p_j
  Fraction squares(1);         // prod over j != k of p_j^2
  Fraction pk(0);
  for (const auto& [name, p] : fractions) {
    product = product * p;
    if (name == k) {
      found = true;
      pk = p;
    } else {
      squares = squares * p * p;
    }
  }
  if (!found) throw Error("gini: attribute '" + std::string(k) + "' is not among the fractions");
  return Fraction(2) * product - Fraction(2) * pk * squares;
}

Fraction impurity_difference(const std::vector<std::pair<std::string, Fraction>>& fractions,
                             std::string_view o, std::string_view q) {
  if (o == q) throw Error("gini: impurity difference needs two distinct attributes");
  check_unit_fractions(fractions);
  Fraction po(0), pq(0), rest(1);
  bool found_o = false, found_q = false;
  for (const auto& [name, p] : fractions) {
    if (name == o) {
      po = p;
      found_o = true;
    } else if (name == q) {
      pq = p;
      found_q = true;
    } else {
      rest = rest * p * p;
    }
  }
  if (!found_o) throw Error("gini: attribute '" + std::string(o) + "' is not among the fractions");
  if (!found_q) throw Error("gini: attribute '" + std::string(q) + "' is not among the fractions");
  return Fraction(2) * po * pq * rest * (po - pq);
}

namespace {

void check_tier_parameters(const Fraction& p0, const Fraction& p5, const Fraction& pe) {
  if (!p0.in_unit_interval() || !p5.in_unit_interval() || !pe.in_unit_interval()) {
    throw Error("gini: tier parameters must lie in [0, 1]");
  }
  if (p0 + p5 > Fraction(1)) {
    throw Error("gini: tier fractions p0 + p5 exceed 1");
  }
}

// Weighted contribution of one branch holding `pos` positive and `neg`
// negative probability mass: weight * gini = 2*pos*neg / (pos + neg).
Fraction branch_contribution(const Fraction& pos, const Fraction& neg) {
  Fraction weight = pos + neg;
  if (weight.is_zero()) return Fraction(0);
  return Fraction(2) * pos * neg / weight;
}

}  // namespace

TieredCurves tiered_split_curves(const Fraction& p0, const Fraction& p5, const Fraction& pe) {
  check_tier_parameters(p0, p5, pe);
  const Fraction p10 = one_minus(p0 + p5);
  const Fraction qe = one_minus(pe);

  TieredCurves curves;
  // Sensitive split: the advantaged branch is positive on the top two tiers,
  // the other branch only on the top tier.
  curves.sensitive =
      pe * branch_contribution(p5 + p10, p0) + qe * branch_contribution(p10, p0 + p5);
  // Low tier vs rest: the low branch is purely negative; the rest holds
  // positives p5*pe + p10 and negatives p5*(1-pe).
  curves.low = branch_contribution(p5 * pe + p10, p5 * qe);
  // High tier vs rest: the high branch is purely positive; the rest holds
  // positives p5*pe and negatives p0 + p5*(1-pe).
  curves.high = branch_contribution(p5 * pe, p0 + p5 * qe);
  // Middle tier vs rest: the middle branch mixes by the sensitive attribute;
  // the rest branch mixes the purely negative low and purely positive high
  // tiers.
  curves.medium = p5 * (Fraction(2) * pe * qe) + branch_contribution(p10, p0);
  return curves;
}

Fraction tiered_multiway_impurity(const Fraction& p0, const Fraction& p5, const Fraction& pe) {
  check_tier_parameters(p0, p5, pe);
  (void)p0;  // the outer tiers are pure regardless of their size
  return Fraction(2) * pe * one_minus(pe) * p5;
}

}  // namespace treelens
