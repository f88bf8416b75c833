#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treelens/dataset.hpp"
#include "treelens/fraction.hpp"

namespace treelens {

struct LabelCounts {
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  std::int64_t total() const { return positives + negatives; }

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

LabelCounts count_labels(const Dataset& data, std::span<const std::size_t> row_indices);

// 1 - p^2 - (1-p)^2 for a binary label distribution; exact, in [0, 1/2].
Fraction gini_index(const LabelCounts& counts);

// How a node partitions its subset: either one branch per domain value, or a
// two-way subset-vs-complement question on one attribute.
struct SplitDescriptor {
  enum class Mode { multiway, binary };
  std::string attribute;
  Mode mode = Mode::multiway;
  std::vector<std::string> subset;  // binary only; kept in domain order

  friend bool operator==(const SplitDescriptor&, const SplitDescriptor&) = default;
};

std::string describe_split(const SplitDescriptor& split);

// Weighted impurity of the split over the given subset: the branch-size
// weighted sum of the branch Gini indices.  Empty branches contribute zero.
Fraction gini_impurity(const Dataset& data, std::span<const std::size_t> row_indices,
                       const SplitDescriptor& split);
Fraction gini_impurity(const Dataset& data, const SplitDescriptor& split);  // whole dataset

// For an exactly independent sample labelled by an all-attributes
// conjunction with favorable fractions p: the impurity of splitting on
// attribute k is  2*prod(p) - 2*p_k*prod_{j != k}(p_j^2).
Fraction closed_form_conjunctive_impurity(
    const std::vector<std::pair<std::string, Fraction>>& fractions, std::string_view k);

// Signed impurity gap between splitting on o versus q in the same scenario:
// 2*p_o*p_q*prod_{i not in {o,q}}(p_i^2) * (p_o - p_q).  Negative means o has
// the lower impurity and is chosen first.
Fraction impurity_difference(const std::vector<std::pair<std::string, Fraction>>& fractions,
                             std::string_view o, std::string_view q);

// Root impurities in the three-tier scenario: tiers low/medium/high with
// fractions p0/p5/p10 (p10 = 1 - p0 - p5), a binary sensitive attribute with
// advantaged fraction pe, and labels from the tiered rule.  `sensitive` is
// the sensitive-attribute split; the others are one-tier-vs-rest questions.
struct TieredCurves {
  Fraction sensitive;
  Fraction low;
  Fraction high;
  Fraction medium;
};

TieredCurves tiered_split_curves(const Fraction& p0, const Fraction& p5, const Fraction& pe);

// The three-branch multiway split on the tier attribute in the same
// scenario; equals 2*pe*(1-pe)*p5 (only the middle tier is mixed).
Fraction tiered_multiway_impurity(const Fraction& p0, const Fraction& p5, const Fraction& pe);

}  // namespace treelens
