#include "treelens/blackbox.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace treelens {
namespace {

const AttributeSpec& find_attribute(const std::vector<AttributeSpec>& schema,
                                    const std::string& name, const char* rule_kind) {
  for (const AttributeSpec& attr : schema) {
    if (attr.name == name) return attr;
  }
  throw Error(std::string("rule: ") + rule_kind + " names unknown attribute '" + name + "'");
}

std::size_t attribute_position(const std::vector<AttributeSpec>& schema, const std::string& name) {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return i;
  }
  throw Error("rule: unknown attribute '" + name + "'");
}

}  // namespace

void validate_rule(const BlackBoxRule& rule, const std::vector<AttributeSpec>& schema) {
  validate_schema(schema);
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConjunctiveRule>) {
          if (r.attributes.empty()) throw Error("rule: conjunction over no attributes");
          std::set<std::string> seen;
          for (const std::string& name : r.attributes) {
            find_attribute(schema, name, "conjunctive rule");
            if (!seen.insert(name).second) {
              throw Error("rule: conjunctive rule repeats attribute '" + name + "'");
            }
          }
        } else if constexpr (std::is_same_v<T, TieredRule>) {
          const AttributeSpec& tier = find_attribute(schema, r.tier_attribute, "tiered rule");
          std::set<std::string> tiers{r.low, r.medium, r.high};
          if (tiers.size() != 3) throw Error("rule: tier values must be three distinct tokens");
          std::set<std::string> domain(tier.domain.begin(), tier.domain.end());
          if (domain != tiers) {
            throw Error("rule: domain of '" + tier.name +
                        "' must be exactly the three tier values");
          }
          const AttributeSpec& sensitive =
              find_attribute(schema, r.sensitive_attribute, "tiered rule");
          if (sensitive.domain.size() != 2) {
            throw Error("rule: tiered sensitive attribute '" + sensitive.name +
                        "' must be binary");
          }
          if (!sensitive.value_index(r.advantaged)) {
            throw Error("rule: advantaged value '" + r.advantaged + "' is not in the domain of '" +
                        sensitive.name + "'");
          }
        } else {
          static_assert(std::is_same_v<T, LookupRule>);
          std::size_t cells = 1;
          for (const AttributeSpec& attr : schema) cells *= attr.domain.size();
          if (r.table.size() != cells) {
            throw Error("rule: lookup table has " + std::to_string(r.table.size()) +
                        " entries but the domain product has " + std::to_string(cells));
          }
          for (const auto& [key, label] : r.table) {
            (void)label;
            if (key.size() != schema.size()) {
              throw Error("rule: lookup key arity does not match the schema");
            }
            for (std::size_t a = 0; a < schema.size(); ++a) {
              if (!schema[a].value_index(key[a])) {
                throw Error("rule: lookup key token '" + key[a] +
                            "' is not in the domain of '" + schema[a].name + "'");
              }
            }
          }
        }
      },
      rule);
}

Label label_row(const BlackBoxRule& rule, const std::vector<AttributeSpec>& schema,
                const std::vector<std::string>& row) {
  if (row.size() != schema.size()) throw Error("rule: row arity does not match the schema");
  return std::visit(
      [&](const auto& r) -> Label {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConjunctiveRule>) {
          for (const std::string& name : r.attributes) {
            std::size_t a = attribute_position(schema, name);
            if (!schema[a].is_favorable(row[a])) return Label::negative;
          }
          return Label::positive;
        } else if constexpr (std::is_same_v<T, TieredRule>) {
          std::size_t tier = attribute_position(schema, r.tier_attribute);
          std::size_t sensitive = attribute_position(schema, r.sensitive_attribute);
          if (row[tier] == r.high) return Label::positive;
          if (row[tier] == r.medium) {
            return row[sensitive] == r.advantaged ? Label::positive : Label::negative;
          }
          if (row[tier] == r.low) return Label::negative;
          throw Error("rule: value '" + row[tier] + "' is not one of the three tiers");
        } else {
          static_assert(std::is_same_v<T, LookupRule>);
          auto it = r.table.find(row);
          if (it == r.table.end()) throw Error("rule: lookup table is missing the queried row");
          return it->second;
        }
      },
      rule);
}

Dataset label_dataset(const BlackBoxRule& rule, const Dataset& data) {
  data.validate();
  validate_rule(rule, data.schema);
  Dataset out = data;
  out.labels.emplace();
  out.labels->reserve(data.rows.size());
  for (const auto& row : data.rows) out.labels->push_back(label_row(rule, data.schema, row));
  return out;
}

BlackBoxRule parse_rule(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("rule: invalid JSON: ") + e.what());
  }
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "conjunctive") {
      ConjunctiveRule r;
      r.attributes = j.at("attributes").get<std::vector<std::string>>();
      return r;
    }
    if (type == "tiered") {
      TieredRule r;
      r.tier_attribute = j.at("tier_attribute").get<std::string>();
      r.low = j.at("low").get<std::string>();
      r.medium = j.at("medium").get<std::string>();
      r.high = j.at("high").get<std::string>();
      r.sensitive_attribute = j.at("sensitive_attribute").get<std::string>();
      r.advantaged = j.at("advantaged").get<std::string>();
      return r;
    }
    if (type == "lookup") {
      LookupRule r;
      for (const auto& entry : j.at("entries")) {
        auto key = entry.at("row").get<std::vector<std::string>>();
        int value = entry.at("label").get<int>();
        if (value != 0 && value != 1) throw Error("rule: lookup labels must be 0 or 1");
        if (!r.table.emplace(std::move(key), value == 1 ? Label::positive : Label::negative)
                 .second) {
          throw Error("rule: duplicate lookup entry");
        }
      }
      return r;
    }
    throw Error("rule: unknown rule type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("rule: malformed document: ") + e.what());
  }
}

BlackBoxRule load_rule(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("rule: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_rule(buffer.str());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string render_rule(const BlackBoxRule& rule) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConjunctiveRule>) {
          j["type"] = "conjunctive";
          j["attributes"] = r.attributes;
        } else if constexpr (std::is_same_v<T, TieredRule>) {
          j["type"] = "tiered";
          j["tier_attribute"] = r.tier_attribute;
          j["low"] = r.low;
          j["medium"] = r.medium;
          j["high"] = r.high;
          j["sensitive_attribute"] = r.sensitive_attribute;
          j["advantaged"] = r.advantaged;
        } else {
          static_assert(std::is_same_v<T, LookupRule>);
          j["type"] = "lookup";
          j["entries"] = nlohmann::ordered_json::array();
          for (const auto& [key, label] : r.table) {
            nlohmann::ordered_json entry;
            entry["row"] = key;
            entry["label"] = label == Label::positive ? 1 : 0;
            j["entries"].push_back(entry);
          }
        }
      },
      rule);
  return j.dump(2) + "\n";
}

void save_rule(const BlackBoxRule& rule, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("rule: cannot open '" + path.string() + "' for writing");
  out << render_rule(rule);
  if (!out) throw Error("rule: failed writing '" + path.string() + "'");
}

}  // namespace treelens
