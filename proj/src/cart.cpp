#include "treelens/cart.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace treelens {

const DecisionTree::Node& DecisionTree::root() const {
  if (nodes.empty()) throw Error("tree: empty");
  return nodes.front();
}

namespace {

// Domain indices of the values actually present in the subset, ascending.
std::vector<std::size_t> present_values(const Dataset& data,
                                        std::span<const std::size_t> row_indices,
                                        std::size_t attr) {
  std::vector<bool> seen(data.schema[attr].domain.size(), false);
  for (std::size_t r : row_indices) {
    auto v = data.schema[attr].value_index(data.rows[r][attr]);
    if (!v) throw Error("tree: row value '" + data.rows[r][attr] + "' outside the domain");
    seen[*v] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

// Enumerating beyond this many present values would mean over 2^7 candidate
// partitions per attribute; fall back to one-vs-rest questions there.
constexpr std::size_t kFullPartitionLimit = 8;

// All two-way partitions of the present values, canonicalised so the stored
// subset is the lexicographically smaller side in domain order (which always
// contains the smallest present value), then sorted for the tie-break.
std::vector<std::vector<std::size_t>> binary_subsets(const std::vector<std::size_t>& present) {
  std::vector<std::vector<std::size_t>> subsets;
  if (present.size() < 2) return subsets;
  if (present.size() <= kFullPartitionLimit) {
    const std::size_t m = present.size();
    // Masks over present[1..]; present[0] is always in the stored side.
    const std::size_t limit = static_cast<std::size_t>(1) << (m - 1);
    for (std::size_t mask = 0; mask + 1 < limit; ++mask) {
      std::vector<std::size_t> side{present[0]};
      for (std::size_t i = 1; i < m; ++i) {
        if (mask & (static_cast<std::size_t>(1) << (i - 1))) side.push_back(present[i]);
      }
      subsets.push_back(std::move(side));
    }
  } else {
    for (std::size_t i = 0; i < present.size(); ++i) {
      if (i == 0) {
        subsets.push_back({present[0]});
      } else {
        // Canonical side of the one-vs-rest partition excludes present[i].
        std::vector<std::size_t> side;
        for (std::size_t j = 0; j < present.size(); ++j) {
          if (j != i) side.push_back(present[j]);
        }
        subsets.push_back(std::move(side));
      }
    }
  }
  std::sort(subsets.begin(), subsets.end());
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
  return subsets;
}

Label majority_label(const LabelCounts& counts) {
  // Ties (including empty subsets) resolve to the negative class.
  return counts.positives > counts.negatives ? Label::positive : Label::negative;
}

}  // namespace

std::vector<SplitDescriptor> candidate_splits(const Dataset& data,
                                              std::span<const std::size_t> row_indices,
                                              SplitMode mode,
                                              const std::vector<std::string>& used_attributes) {
  std::vector<SplitDescriptor> out;
  for (std::size_t a = 0; a < data.schema.size(); ++a) {
    const AttributeSpec& attr = data.schema[a];
    if (mode == SplitMode::multiway) {
      if (std::find(used_attributes.begin(), used_attributes.end(), attr.name) !=
          used_attributes.end()) {
        continue;
      }
      SplitDescriptor split;
      split.attribute = attr.name;
      split.mode = SplitDescriptor::Mode::multiway;
      out.push_back(std::move(split));
    } else {
      for (const auto& subset : binary_subsets(present_values(data, row_indices, a))) {
        SplitDescriptor split;
        split.attribute = attr.name;
        split.mode = SplitDescriptor::Mode::binary;
        for (std::size_t v : subset) split.subset.push_back(attr.domain[v]);
        out.push_back(std::move(split));
      }
    }
  }
  return out;
}

DecisionTree build_tree(const Dataset& data, const StoppingPolicy& policy, SplitMode mode) {
  data.validate();
  if (!data.labeled()) throw Error("tree: training data has no labels");
  if (data.rows.empty()) throw Error("tree: training data is empty");
  if (policy.max_depth && *policy.max_depth < 1) throw Error("tree: max depth must be positive");
  if (policy.min_node_size < 1) throw Error("tree: min node size must be positive");

  DecisionTree tree;
  tree.schema = data.schema;
  tree.mode = mode;
  tree.policy = policy;

  struct Builder {
    const Dataset& data;
    const StoppingPolicy& policy;
    SplitMode mode;
    DecisionTree& tree;

    std::size_t grow(const std::vector<std::size_t>& rows, int depth,
                     std::vector<std::string>& used) {
      const std::size_t id = tree.nodes.size();
      tree.nodes.emplace_back();
      tree.nodes[id].depth = depth;
      tree.nodes[id].counts = count_labels(data, rows);
      tree.nodes[id].label = majority_label(tree.nodes[id].counts);

      const LabelCounts& counts = tree.nodes[id].counts;
      const bool pure = counts.positives == 0 || counts.negatives == 0;
      bool may_split = static_cast<std::int64_t>(rows.size()) >= policy.min_node_size &&
                       !(policy.stop_on_pure && pure) &&
                       !(policy.max_depth && depth > *policy.max_depth) && !rows.empty();
      if (!may_split) return id;

      std::vector<SplitDescriptor> candidates = candidate_splits(data, rows, mode, used);
      if (candidates.empty()) return id;

      std::size_t best = 0;
      Fraction best_impurity = gini_impurity(data, rows, candidates[0]);
      for (std::size_t c = 1; c < candidates.size(); ++c) {
        Fraction impurity = gini_impurity(data, rows, candidates[c]);
        if (impurity < best_impurity) {
          best = c;
          best_impurity = impurity;
        }
      }
      const SplitDescriptor chosen = candidates[best];
      const std::size_t attr = data.attribute_index(chosen.attribute);

      std::vector<std::vector<std::size_t>> branches;
      if (chosen.mode == SplitDescriptor::Mode::multiway) {
        branches.resize(data.schema[attr].domain.size());
        for (std::size_t r : rows) {
          branches[*data.schema[attr].value_index(data.rows[r][attr])].push_back(r);
        }
      } else {
        branches.resize(2);
        for (std::size_t r : rows) {
          const std::string& value = data.rows[r][attr];
          bool inside = std::find(chosen.subset.begin(), chosen.subset.end(), value) !=
                        chosen.subset.end();
          branches[inside ? 0 : 1].push_back(r);
        }
      }

      tree.nodes[id].split = chosen;
      const bool consume = chosen.mode == SplitDescriptor::Mode::multiway;
      if (consume) used.push_back(chosen.attribute);
      std::vector<std::size_t> children;
      children.reserve(branches.size());
      for (const auto& branch_rows : branches) {
        children.push_back(grow(branch_rows, depth + 1, used));
      }
      if (consume) used.pop_back();
      tree.nodes[id].children = std::move(children);
      return id;
    }
  };

  std::vector<std::size_t> all(data.rows.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::string> used;
  Builder{data, policy, mode, tree}.grow(all, 1, used);
  return tree;
}

Label predict(const DecisionTree& tree, const std::vector<std::string>& row) {
  if (tree.nodes.empty()) throw Error("tree: empty");
  if (row.size() != tree.schema.size()) throw Error("tree: row arity does not match the schema");
  std::size_t id = 0;
  while (true) {
    const DecisionTree::Node& node = tree.nodes[id];
    if (node.is_leaf()) return node.label;
    const SplitDescriptor& split = *node.split;
    std::size_t attr = 0;
    for (; attr < tree.schema.size(); ++attr) {
      if (tree.schema[attr].name == split.attribute) break;
    }
    const std::string& value = row[attr];
    auto v = tree.schema[attr].value_index(value);
    if (!v) {
      throw Error("tree: value '" + value + "' for attribute '" + split.attribute +
                  "' was not in the training domain");
    }
    if (split.mode == SplitDescriptor::Mode::multiway) {
      id = node.children[*v];
    } else {
      bool inside =
          std::find(split.subset.begin(), split.subset.end(), value) != split.subset.end();
      id = node.children[inside ? 0 : 1];
    }
  }
}

std::optional<int> attribute_depth(const DecisionTree& tree, std::string_view attr) {
  std::optional<int> best;
  for (const auto& node : tree.nodes) {
    if (node.split && node.split->attribute == attr) {
      if (!best || node.depth < *best) best = node.depth;
    }
  }
  return best;
}

std::map<std::string, ImportanceEntry> importance_report(const DecisionTree& tree) {
  std::map<std::string, ImportanceEntry> report;
  for (const auto& node : tree.nodes) {
    if (!node.split) continue;
    auto [it, inserted] = report.try_emplace(node.split->attribute);
    if (inserted || node.depth < it->second.min_depth) it->second.min_depth = node.depth;
    it->second.decisive_count += node.subset_size();
  }
  return report;
}

std::string schema_digest(const std::vector<AttributeSpec>& schema) {
  // FNV-1a over a canonical rendering of the schema.
  std::uint64_t hash = 1469598103934665603ULL;
  auto feed = [&hash](std::string_view text) {
    for (unsigned char c : text) {
      hash ^= c;
      hash *= 1099511628211ULL;
    }
  };
  for (const AttributeSpec& attr : schema) {
    feed(attr.name);
    feed("|");
    for (const std::string& v : attr.domain) {
      feed(v);
      feed(",");
    }
    feed(attr.ordered ? "|o|" : "|u|");
    for (const std::string& v : attr.favorable) {
      feed(v);
      feed(",");
    }
    feed(attr.sensitive ? "|s;" : "|p;");
  }
  char buffer[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) {
    buffer[15 - i] = digits[(hash >> (4 * i)) & 0xF];
  }
  buffer[16] = '\0';
  return std::string(buffer);
}

namespace {

std::string leaf_text(const DecisionTree::Node& node) {
  std::string out = node.label == Label::positive ? "1" : "0";
  out += " (" + std::to_string(node.counts.positives) + "+/" +
         std::to_string(node.counts.negatives) + "-)";
  return out;
}

}  // namespace

std::string export_dot(const DecisionTree& tree) {
  if (tree.nodes.empty()) throw Error("tree: empty");
  std::string out = "digraph decision_tree {\n";
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const DecisionTree::Node& node = tree.nodes[id];
    if (node.is_leaf()) {
      out += "  n" + std::to_string(id) + " [shape=ellipse, label=\"" + leaf_text(node) + "\"];\n";
      continue;
    }
    out += "  n" + std::to_string(id) + " [shape=box, label=\"" + describe_split(*node.split) +
           "\"];\n";
    std::size_t a = 0;
    for (; a < tree.schema.size(); ++a) {
      if (tree.schema[a].name == node.split->attribute) break;
    }
    if (node.split->mode == SplitDescriptor::Mode::multiway) {
      for (std::size_t v = 0; v < node.children.size(); ++v) {
        out += "  n" + std::to_string(id) + " -> n" + std::to_string(node.children[v]) +
               " [label=\"" + tree.schema[a].domain[v] + "\"];\n";
      }
    } else {
      out += "  n" + std::to_string(id) + " -> n" + std::to_string(node.children[0]) +
             " [label=\"yes\"];\n";
      out += "  n" + std::to_string(id) + " -> n" + std::to_string(node.children[1]) +
             " [label=\"no\"];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string export_ascii(const DecisionTree& tree) {
  if (tree.nodes.empty()) throw Error("tree: empty");
  std::string out;
  struct Walker {
    const DecisionTree& tree;
    std::string& out;

    void visit(std::size_t id, const std::string& prefix, const std::string& edge) {
      const DecisionTree::Node& node = tree.nodes[id];
      out += prefix;
      if (!edge.empty()) out += edge + " -> ";
      if (node.is_leaf()) {
        out += leaf_text(node) + "\n";
        return;
      }
      out += describe_split(*node.split) + " (" + std::to_string(node.counts.positives) + "+/" +
             std::to_string(node.counts.negatives) + "-)\n";
      std::size_t a = 0;
      for (; a < tree.schema.size(); ++a) {
        if (tree.schema[a].name == node.split->attribute) break;
      }
      const std::string child_prefix = prefix + "  ";
      if (node.split->mode == SplitDescriptor::Mode::multiway) {
        for (std::size_t v = 0; v < node.children.size(); ++v) {
          visit(node.children[v], child_prefix, "= " + tree.schema[a].domain[v]);
        }
      } else {
        visit(node.children[0], child_prefix, "yes");
        visit(node.children[1], child_prefix, "no");
      }
    }
  };
  Walker{tree, out}.visit(0, "", "");
  return out;
}

namespace {

nlohmann::ordered_json schema_to_json(const std::vector<AttributeSpec>& schema) {
  nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
  for (const AttributeSpec& attr : schema) {
    nlohmann::ordered_json entry;
    entry["name"] = attr.name;
    entry["domain"] = attr.domain;
    entry["ordered"] = attr.ordered;
    entry["favorable"] = attr.favorable;
    entry["sensitive"] = attr.sensitive;
    attrs.push_back(entry);
  }
  return attrs;
}

std::vector<AttributeSpec> schema_from_json(const nlohmann::json& attrs) {
  std::vector<AttributeSpec> schema;
  for (const auto& entry : attrs) {
    AttributeSpec attr;
    attr.name = entry.at("name").get<std::string>();
    attr.domain = entry.at("domain").get<std::vector<std::string>>();
    attr.ordered = entry.at("ordered").get<bool>();
    attr.favorable = entry.at("favorable").get<std::vector<std::string>>();
    attr.sensitive = entry.at("sensitive").get<bool>();
    schema.push_back(std::move(attr));
  }
  return schema;
}

constexpr const char* kTreeFormatName = "treelens-tree";
constexpr int kTreeFormatVersion = 1;

}  // namespace

std::string export_text(const DecisionTree& tree) {
  if (tree.nodes.empty()) throw Error("tree: empty");
  nlohmann::ordered_json j;
  j["format"] = kTreeFormatName;
  j["version"] = kTreeFormatVersion;
  j["schema_digest"] = schema_digest(tree.schema);
  j["schema"] = schema_to_json(tree.schema);
  j["split_mode"] = tree.mode == SplitMode::multiway ? "multiway" : "binary";
  nlohmann::ordered_json policy;
  if (tree.policy.max_depth) {
    policy["max_depth"] = *tree.policy.max_depth;
  } else {
    policy["max_depth"] = nullptr;
  }
  policy["min_node_size"] = tree.policy.min_node_size;
  policy["stop_on_pure"] = tree.policy.stop_on_pure;
  j["policy"] = policy;
  j["node_count"] = tree.nodes.size();
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& node : tree.nodes) {
    nlohmann::ordered_json n;
    n["depth"] = node.depth;
    n["positives"] = node.counts.positives;
    n["negatives"] = node.counts.negatives;
    if (node.split) {
      nlohmann::ordered_json split;
      split["attribute"] = node.split->attribute;
      split["mode"] = node.split->mode == SplitDescriptor::Mode::multiway ? "multiway" : "binary";
      if (node.split->mode == SplitDescriptor::Mode::binary) {
        split["subset"] = node.split->subset;
      }
      n["split"] = split;
      n["children"] = node.children;
    } else {
      n["label"] = node.label == Label::positive ? 1 : 0;
    }
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  return j.dump(2) + "\n";
}

DecisionTree import_tree(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("tree: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kTreeFormatName) {
      throw Error("tree: unrecognised format tag");
    }
    if (j.at("version").get<int>() != kTreeFormatVersion) {
      throw Error("tree: unsupported format version");
    }
    DecisionTree tree;
    tree.schema = schema_from_json(j.at("schema"));
    validate_schema(tree.schema);
    if (j.at("schema_digest").get<std::string>() != schema_digest(tree.schema)) {
      throw Error("tree: schema digest mismatch (corrupt file?)");
    }
    const std::string mode = j.at("split_mode").get<std::string>();
    if (mode == "multiway") {
      tree.mode = SplitMode::multiway;
    } else if (mode == "binary") {
      tree.mode = SplitMode::binary;
    } else {
      throw Error("tree: unknown split mode '" + mode + "'");
    }
    const auto& policy = j.at("policy");
    if (!policy.at("max_depth").is_null()) {
      tree.policy.max_depth = policy.at("max_depth").get<int>();
    }
    tree.policy.min_node_size = policy.at("min_node_size").get<std::int64_t>();
    tree.policy.stop_on_pure = policy.at("stop_on_pure").get<bool>();

    const auto& nodes = j.at("nodes");
    if (nodes.size() != j.at("node_count").get<std::size_t>() || nodes.empty()) {
      throw Error("tree: node count mismatch");
    }
    for (const auto& n : nodes) {
      DecisionTree::Node node;
      node.depth = n.at("depth").get<int>();
      node.counts.positives = n.at("positives").get<std::int64_t>();
      node.counts.negatives = n.at("negatives").get<std::int64_t>();
      if (n.contains("split")) {
        SplitDescriptor split;
        split.attribute = n.at("split").at("attribute").get<std::string>();
        const std::string split_mode = n.at("split").at("mode").get<std::string>();
        split.mode = split_mode == "multiway" ? SplitDescriptor::Mode::multiway
                                              : SplitDescriptor::Mode::binary;
        if (split.mode == SplitDescriptor::Mode::binary) {
          split.subset = n.at("split").at("subset").get<std::vector<std::string>>();
        }
        node.split = std::move(split);
        node.children = n.at("children").get<std::vector<std::size_t>>();
        node.label = majority_label(node.counts);  // as the builder records it
      } else {
        node.label = n.at("label").get<int>() == 1 ? Label::positive : Label::negative;
      }
      tree.nodes.push_back(std::move(node));
    }
    // Structural checks: child references and split shapes.
    for (const auto& node : tree.nodes) {
      if (!node.split) continue;
      std::size_t attr = tree.schema.size();
      for (std::size_t a = 0; a < tree.schema.size(); ++a) {
        if (tree.schema[a].name == node.split->attribute) attr = a;
      }
      if (attr == tree.schema.size()) {
        throw Error("tree: split on unknown attribute '" + node.split->attribute + "'");
      }
      const std::size_t expected = node.split->mode == SplitDescriptor::Mode::multiway
                                       ? tree.schema[attr].domain.size()
                                       : 2;
      if (node.children.size() != expected) throw Error("tree: branch count mismatch");
      for (std::size_t child : node.children) {
        if (child >= tree.nodes.size()) throw Error("tree: child reference out of range");
      }
    }
    return tree;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("tree: malformed document: ") + e.what());
  }
}

}  // namespace treelens
