#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treelens {

// 64-bit FNV-1a content digest, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);

// Writes via a sibling temp file and rename, so readers never observe a
// partially written output.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// Provenance record emitted next to every CLI output: the resolved
// configuration and the digests of every input that shaped the result.
// Identical manifests imply byte-identical outputs.
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;  // flag -> resolved value
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> content digest
  std::vector<std::string> outputs;                         // paths written by the run
};

std::string render_manifest(const RunManifest& manifest);  // deterministic JSON
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

}  // namespace treelens
