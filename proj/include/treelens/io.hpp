#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "treelens/dataset.hpp"

namespace treelens {

// CSV layout: UTF-8, comma separated, one header row of attribute names with
// an optional trailing "label" column whose tokens are exactly "1"/"0".
// Lines starting with '#' are comments and are ignored on load.
//
// With a schema the loader validates every token against the declared
// domains; without one it infers domains from the observed values in
// first-appearance order (favorable sets and flags stay empty).
Dataset load_csv(const std::filesystem::path& path,
                 const std::vector<AttributeSpec>* schema = nullptr);
Dataset parse_csv(const std::string& text, const std::vector<AttributeSpec>* schema = nullptr);

std::string render_csv(const Dataset& data);  // rejects empty datasets
void save_csv(const Dataset& data, const std::filesystem::path& path);

// Schema sidecar: a small JSON document declaring domains, ordered flags,
// favorable sets and sensitive flags.
std::vector<AttributeSpec> load_schema(const std::filesystem::path& path);
std::vector<AttributeSpec> parse_schema(const std::string& text);
std::string render_schema(const std::vector<AttributeSpec>& schema);
void save_schema(const std::vector<AttributeSpec>& schema, const std::filesystem::path& path);

}  // namespace treelens
