#include "cli_runner.hpp"

#include <sys/wait.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#ifndef TREELENS_BIN
#error "TREELENS_BIN must name the CLI binary"
#endif

namespace cli_runner {
namespace {

std::string shell_quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

}  // namespace

RunResult run_cli(const std::vector<std::string>& args, const std::filesystem::path& workdir) {
  const std::filesystem::path capture = workdir / "_cli_capture.txt";
  std::ostringstream cmd;
  cmd << "cd " << shell_quote(workdir.string()) << " && " << shell_quote(TREELENS_BIN);
  for (const auto& arg : args) cmd << ' ' << shell_quote(arg);
  cmd << " > " << shell_quote(capture.string()) << " 2>&1";

  const int status = std::system(cmd.str().c_str());

  RunResult result;
  if (status == -1) {
    throw std::runtime_error("cli_runner: failed to launch the shell");
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = -1;
  }
  result.output = read_file(capture);
  std::filesystem::remove(capture);
  return result;
}

std::filesystem::path make_temp_dir(const std::string& prefix) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  const unsigned tag = counter.fetch_add(1);
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      (prefix + "-" + std::to_string(rd()) + "-" + std::to_string(tag));
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cli_runner: cannot write " + path.string());
  out << content;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cli_runner: cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cli_runner
