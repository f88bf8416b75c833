#include "treelens/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace treelens {
namespace {

std::string read_file_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io: cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_or_throw(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io: cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error("io: failed writing '" + path.string() + "'");
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

}  // namespace

Dataset parse_csv(const std::string& text, const std::vector<AttributeSpec>* schema) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) {
    if (current.back() == '\r') current.pop_back();
    lines.push_back(current);
  }

  std::vector<std::string> data_lines;
  for (const std::string& line : lines) {
    if (line.empty()) continue;
    if (line.front() == '#') continue;  // comment (e.g. trailing manifest reference)
    data_lines.push_back(line);
  }
  if (data_lines.empty()) throw Error("csv: file is empty");

  std::vector<std::string> header = split_line(data_lines.front());
  bool has_label = !header.empty() && header.back() == "label";
  std::size_t attribute_count = header.size() - (has_label ? 1 : 0);
  if (attribute_count == 0) throw Error("csv: header declares no attributes");
  if (data_lines.size() == 1) throw Error("csv: no data rows (empty dataset)");

  Dataset out;
  if (schema) {
    if (schema->size() != attribute_count) {
      throw Error("csv: header has " + std::to_string(attribute_count) +
                  " attributes but the schema declares " + std::to_string(schema->size()));
    }
    for (std::size_t a = 0; a < attribute_count; ++a) {
      if ((*schema)[a].name != header[a]) {
        throw Error("csv: header column '" + header[a] + "' does not match schema attribute '" +
                    (*schema)[a].name + "'");
      }
    }
    out.schema = *schema;
  } else {
    out.schema.resize(attribute_count);
    for (std::size_t a = 0; a < attribute_count; ++a) out.schema[a].name = header[a];
  }

  if (has_label) out.labels.emplace();
  for (std::size_t i = 1; i < data_lines.size(); ++i) {
    std::vector<std::string> fields = split_line(data_lines[i]);
    if (fields.size() != header.size()) {
      throw Error("csv: line " + std::to_string(i + 1) + " has " + std::to_string(fields.size()) +
                  " fields, expected " + std::to_string(header.size()));
    }
    if (has_label) {
      const std::string& token = fields.back();
      if (token == "1") {
        out.labels->push_back(Label::positive);
      } else if (token == "0") {
        out.labels->push_back(Label::negative);
      } else {
        throw Error("csv: line " + std::to_string(i + 1) + " has label token '" + token +
                    "', expected exactly \"1\" or \"0\"");
      }
      fields.pop_back();
    }
    out.rows.push_back(std::move(fields));
  }

  if (!schema) {
    // Infer domains in first-appearance order.
    for (std::size_t a = 0; a < attribute_count; ++a) {
      std::vector<std::string>& domain = out.schema[a].domain;
      for (const auto& row : out.rows) {
        if (std::find(domain.begin(), domain.end(), row[a]) == domain.end()) {
          domain.push_back(row[a]);
        }
      }
      if (domain.size() < 2) {
        throw Error("csv: attribute '" + out.schema[a].name +
                    "' has a single observed value; supply a schema sidecar to load it");
      }
    }
  }

  out.validate();
  return out;
}

Dataset load_csv(const std::filesystem::path& path, const std::vector<AttributeSpec>* schema) {
  try {
    return parse_csv(read_file_or_throw(path), schema);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string render_csv(const Dataset& data) {
  data.validate();
  if (data.rows.empty()) throw Error("csv: refusing to write an empty dataset");
  std::string out;
  for (std::size_t a = 0; a < data.schema.size(); ++a) {
    if (a) out += ',';
    out += data.schema[a].name;
  }
  if (data.labeled()) out += ",label";
  out += '\n';
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    for (std::size_t a = 0; a < data.schema.size(); ++a) {
      if (a) out += ',';
      out += data.rows[r][a];
    }
    if (data.labeled()) {
      out += ',';
      out += ((*data.labels)[r] == Label::positive ? '1' : '0');
    }
    out += '\n';
  }
  return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  write_file_or_throw(path, render_csv(data));
}

namespace {

AttributeSpec attribute_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("schema: attribute entry is not an object");
  AttributeSpec attr;
  attr.name = j.at("name").get<std::string>();
  attr.domain = j.at("domain").get<std::vector<std::string>>();
  attr.ordered = j.value("ordered", false);
  if (j.contains("favorable")) attr.favorable = j.at("favorable").get<std::vector<std::string>>();
  attr.sensitive = j.value("sensitive", false);
  return attr;
}

}  // namespace

std::vector<AttributeSpec> parse_schema(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("schema: invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("attributes")) {
      throw Error("schema: expected an object with an 'attributes' array");
    }
    std::vector<AttributeSpec> schema;
    for (const auto& entry : j.at("attributes")) schema.push_back(attribute_from_json(entry));
    validate_schema(schema);
    return schema;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("schema: malformed document: ") + e.what());
  }
}

std::vector<AttributeSpec> load_schema(const std::filesystem::path& path) {
  try {
    return parse_schema(read_file_or_throw(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string render_schema(const std::vector<AttributeSpec>& schema) {
  validate_schema(schema);
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["attributes"] = nlohmann::ordered_json::array();
  for (const AttributeSpec& attr : schema) {
    nlohmann::ordered_json entry;
    entry["name"] = attr.name;
    entry["domain"] = attr.domain;
    entry["ordered"] = attr.ordered;
    entry["favorable"] = attr.favorable;
    entry["sensitive"] = attr.sensitive;
    j["attributes"].push_back(entry);
  }
  return j.dump(2) + "\n";
}

void save_schema(const std::vector<AttributeSpec>& schema, const std::filesystem::path& path) {
  write_file_or_throw(path, render_schema(schema));
}

}  // namespace treelens
