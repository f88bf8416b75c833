#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treelens/fraction.hpp"

namespace treelens {

// One categorical attribute: its value domain plus the policy metadata the
// rest of the toolkit keys on (which values count as favorable, whether the
// attribute is a protected/sensitive one).
struct AttributeSpec {
  std::string name;
  std::vector<std::string> domain;  // distinct tokens, at least two
  bool ordered = false;
  std::vector<std::string> favorable;  // subset of domain
  bool sensitive = false;

  bool is_favorable(std::string_view value) const;
  std::optional<std::size_t> value_index(std::string_view value) const;
};

void validate_schema(const std::vector<AttributeSpec>& schema);

enum class Label : std::uint8_t { negative = 0, positive = 1 };

struct Dataset {
  std::vector<AttributeSpec> schema;
  std::vector<std::vector<std::string>> rows;  // row-major tokens, schema order
  std::optional<std::vector<Label>> labels;    // parallel to rows when present

  std::int64_t size() const { return static_cast<std::int64_t>(rows.size()); }
  bool labeled() const { return labels.has_value(); }
  std::size_t attribute_index(std::string_view name) const;  // throws on unknown
  const AttributeSpec& attribute(std::string_view name) const;
  void validate() const;  // schema, row conformance, label arity
};

// Share of rows whose value for `attr` lies in the favorable set.
Fraction fraction_favorable(const Dataset& data, std::string_view attr);
// Same, restricted to the given row indices.
Fraction fraction_favorable(const Dataset& data, std::span<const std::size_t> row_indices,
                            std::string_view attr);

// Target favorable fractions for an exactly independent synthetic sample.
struct SynthesisSpec {
  std::vector<std::pair<std::string, Fraction>> targets;  // attribute -> fraction
  std::int64_t n = 0;
};

// Builds a dataset of exactly n rows whose attributes are exactly independent
// with the requested favorable fractions.  Each attribute is binarised: the
// favorable mass sits on its first favorable token, the remaining mass on the
// first non-favorable token.  Requires n to be divisible by the product of
// the target denominators so every joint cell count is an integer.
Dataset synthesize_independent(const SynthesisSpec& spec,
                               const std::vector<AttributeSpec>& schema);

// General form: a full per-value distribution per attribute (parallel to the
// domain).  Every joint cell count n * prod(dist) must be an integer.
Dataset synthesize_product(const std::vector<AttributeSpec>& schema,
                           const std::vector<std::vector<Fraction>>& per_value,
                           std::int64_t n);

}  // namespace treelens
