#include "treelens/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "treelens/error.hpp"

namespace treelens {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view data) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buffer;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw Error("failed reading file: " + path.string());
  }
  return buffer.str();
}

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot create file: " + temp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) {
      throw Error("failed writing file: " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw Error("cannot move " + temp.string() + " into place: " + ec.message());
  }
}

std::string render_manifest(const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["tool"] = "treelens";
  j["version"] = "0.1.0";
  j["subcommand"] = manifest.subcommand;
  j["seed"] = nullptr;  // reserved; every current operation is seedless
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.config) {
    config[key] = value;
  }
  j["config"] = std::move(config);
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : manifest.inputs) {
    nlohmann::ordered_json entry;
    entry["path"] = path;
    entry["digest"] = digest;
    inputs.push_back(std::move(entry));
  }
  j["inputs"] = std::move(inputs);
  j["outputs"] = manifest.outputs;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  atomic_write_file(path, render_manifest(manifest));
}

}  // namespace treelens
