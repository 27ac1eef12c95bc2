#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "support/temp_dir.hpp"

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the emoaug binary with `args` (already shell-quoted) inside `cwd`.
inline CliResult run_cli(const std::filesystem::path& cwd, const std::string& args,
                         const std::string& env = "") {
  const auto out = cwd / ".stdout";
  const auto err = cwd / ".stderr";
  std::string cmd = "cd '" + cwd.string() + "' && " + env + (env.empty() ? "" : " ") + "'" + EMOAUG_CLI + "' " + args +
                    " > '" + out.string() + "' 2> '" + err.string() + "'";
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

inline std::string source_path(const std::string& rel) { return std::string(EMOAUG_SOURCE_DIR) + "/" + rel; }
