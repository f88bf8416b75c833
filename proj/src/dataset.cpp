#include "treelens/dataset.hpp"

#include <algorithm>
#include <set>

namespace treelens {

bool AttributeSpec::is_favorable(std::string_view value) const {
  return std::find(favorable.begin(), favorable.end(), value) != favorable.end();
}

std::optional<std::size_t> AttributeSpec::value_index(std::string_view value) const {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == value) return i;
  }
  return std::nullopt;
}

namespace {

void validate_token(const std::string& token, const std::string& what) {
  if (token.empty()) throw Error("schema: empty " + what);
  if (token.find(',') != std::string::npos || token.find('\n') != std::string::npos ||
      token.find('\r') != std::string::npos) {
    throw Error("schema: " + what + " '" + token + "' contains a separator character");
  }
  if (token.front() == '#') {
    throw Error("schema: " + what + " '" + token + "' may not start with '#'");
  }
}

}  // namespace

void validate_schema(const std::vector<AttributeSpec>& schema) {
  if (schema.empty()) throw Error("schema: no attributes declared");
  std::set<std::string> names;
  for (const AttributeSpec& attr : schema) {
    validate_token(attr.name, "attribute name");
    if (attr.name == "label") throw Error("schema: attribute name 'label' is reserved");
    if (!names.insert(attr.name).second) {
      throw Error("schema: duplicate attribute name '" + attr.name + "'");
    }
    if (attr.domain.size() < 2) {
      throw Error("schema: attribute '" + attr.name + "' needs at least two domain values");
    }
    std::set<std::string> values;
    for (const std::string& v : attr.domain) {
      validate_token(v, "domain value");
      if (!values.insert(v).second) {
        throw Error("schema: attribute '" + attr.name + "' repeats domain value '" + v + "'");
      }
    }
    for (const std::string& v : attr.favorable) {
      if (!values.count(v)) {
        throw Error("schema: favorable value '" + v + "' of attribute '" + attr.name +
                    "' is not in its domain");
      }
    }
    std::set<std::string> fav(attr.favorable.begin(), attr.favorable.end());
    if (fav.size() != attr.favorable.size()) {
      throw Error("schema: attribute '" + attr.name + "' repeats a favorable value");
    }
  }
}

std::size_t Dataset::attribute_index(std::string_view name) const {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return i;
  }
  throw Error("dataset: unknown attribute '" + std::string(name) + "'");
}

const AttributeSpec& Dataset::attribute(std::string_view name) const {
  return schema[attribute_index(name)];
}

void Dataset::validate() const {
  validate_schema(schema);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != schema.size()) {
      throw Error("dataset: row " + std::to_string(r + 1) + " has " +
                  std::to_string(row.size()) + " values, expected " +
                  std::to_string(schema.size()));
    }
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (!schema[a].value_index(row[a])) {
        throw Error("dataset: row " + std::to_string(r + 1) + " has unknown token '" + row[a] +
                    "' for attribute '" + schema[a].name + "'");
      }
    }
  }
  if (labels && labels->size() != rows.size()) {
    throw Error("dataset: label count does not match row count");
  }
}

Fraction fraction_favorable(const Dataset& data, std::string_view attr) {
  std::vector<std::size_t> all(data.rows.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return fraction_favorable(data, all, attr);
}

Fraction fraction_favorable(const Dataset& data, std::span<const std::size_t> row_indices,
                            std::string_view attr) {
  const AttributeSpec& spec = data.attribute(attr);
  if (spec.favorable.empty()) {
    throw Error("dataset: attribute '" + spec.name + "' has no favorable values declared");
  }
  if (row_indices.empty()) throw Error("dataset: favorable fraction of an empty subset");
  std::size_t index = data.attribute_index(attr);
  std::int64_t hits = 0;
  for (std::size_t r : row_indices) {
    if (spec.is_favorable(data.rows[r][index])) ++hits;
  }
  return Fraction(hits, static_cast<std::int64_t>(row_indices.size()));
}

Dataset synthesize_product(const std::vector<AttributeSpec>& schema,
                           const std::vector<std::vector<Fraction>>& per_value,
                           std::int64_t n) {
  validate_schema(schema);
  if (n <= 0) throw Error("synthesis: sample size must be positive");
  if (per_value.size() != schema.size()) {
    throw Error("synthesis: need one distribution per attribute");
  }
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (per_value[a].size() != schema[a].domain.size()) {
      throw Error("synthesis: distribution for '" + schema[a].name +
                  "' does not match its domain size");
    }
    Fraction sum(0);
    for (const Fraction& p : per_value[a]) {
      if (!p.in_unit_interval()) {
        throw Error("synthesis: probability outside [0, 1] for attribute '" + schema[a].name +
                    "'");
      }
      sum = sum + p;
    }
    if (sum != Fraction(1)) {
      throw Error("synthesis: distribution for '" + schema[a].name + "' sums to " +
                  sum.to_string() + ", expected 1/1");
    }
  }

  Dataset out;
  out.schema = schema;
  // Walk the joint cells in lexicographic domain order (first attribute is
  // the slowest index) and emit each cell's exact row count.
  std::vector<std::size_t> choice(schema.size(), 0);
  bool done = false;
  while (!done) {
    Fraction cell(n);
    for (std::size_t a = 0; a < schema.size(); ++a) cell = cell * per_value[a][choice[a]];
    if (!cell.is_zero()) {
      if (cell.denominator() != 1) {
        throw Error("synthesis: joint cell count " + cell.to_string() +
                    " is not an integer; pick a sample size divisible by the "
                    "distribution denominators");
      }
      std::vector<std::string> row(schema.size());
      for (std::size_t a = 0; a < schema.size(); ++a) row[a] = schema[a].domain[choice[a]];
      for (std::int64_t c = 0; c < cell.numerator(); ++c) out.rows.push_back(row);
    }
    done = true;
    for (std::size_t a = schema.size(); a-- > 0;) {
      if (++choice[a] < schema[a].domain.size()) {
        done = false;
        break;
      }
      choice[a] = 0;
    }
  }
  return out;
}

Dataset synthesize_independent(const SynthesisSpec& spec,
                               const std::vector<AttributeSpec>& schema) {
  validate_schema(schema);
  if (spec.n <= 0) throw Error("synthesis: sample size must be positive");
  if (spec.targets.size() != schema.size()) {
    throw Error("synthesis: need a target fraction for every schema attribute");
  }
  std::vector<Fraction> targets(schema.size());
  std::vector<bool> seen(schema.size(), false);
  for (const auto& [name, fraction] : spec.targets) {
    std::size_t index = schema.size();
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (schema[a].name == name) index = a;
    }
    if (index == schema.size()) throw Error("synthesis: unknown target attribute '" + name + "'");
    if (seen[index]) throw Error("synthesis: duplicate target for attribute '" + name + "'");
    if (!fraction.in_unit_interval()) {
      throw Error("synthesis: target fraction " + fraction.to_string() + " for '" + name +
                  "' is outside [0, 1]");
    }
    seen[index] = true;
    targets[index] = fraction;
  }

  std::int64_t denominator_product = 1;
  for (std::size_t a = 0; a < schema.size(); ++a) {
    __int128 next = static_cast<__int128>(denominator_product) * targets[a].denominator();
    if (next > spec.n) {
      // A product larger than n can never divide n; stop before overflowing.
      denominator_product = spec.n + 1;
      break;
    }
    denominator_product = static_cast<std::int64_t>(next);
  }
  if (denominator_product > spec.n || spec.n % denominator_product != 0) {
    std::string denominators;
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (!denominators.empty()) denominators += "*";
      denominators += std::to_string(targets[a].denominator());
    }
    throw Error("synthesis: sample size " + std::to_string(spec.n) +
                " is not divisible by the product of target denominators (" + denominators +
                ")");
  }

  std::vector<std::vector<Fraction>> per_value(schema.size());
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const AttributeSpec& attr = schema[a];
    if (attr.favorable.empty()) {
      throw Error("synthesis: attribute '" + attr.name + "' has no favorable values declared");
    }
    // Favorable mass on the first favorable token, the rest on the first
    // non-favorable token.
    std::size_t favorable_index = *attr.value_index(attr.favorable.front());
    std::size_t unfavorable_index = attr.domain.size();
    for (std::size_t v = 0; v < attr.domain.size(); ++v) {
      if (!attr.is_favorable(attr.domain[v])) {
        unfavorable_index = v;
        break;
      }
    }
    Fraction remainder = one_minus(targets[a]);
    if (unfavorable_index == attr.domain.size() && !remainder.is_zero()) {
      throw Error("synthesis: attribute '" + attr.name +
                  "' has no non-favorable value to carry fraction " + remainder.to_string());
    }
    per_value[a].assign(attr.domain.size(), Fraction(0));
    per_value[a][favorable_index] = targets[a];
    if (!remainder.is_zero()) per_value[a][unfavorable_index] = remainder;
  }
  return synthesize_product(schema, per_value, spec.n);
}

}  // namespace treelens
