#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "btdiv/util.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(BTDIV_FIXTURE_DIR) + "/" + name;
}

inline std::string data_path(const std::string& name) {
  return std::string(BTDIV_DATA_DIR) + "/" + name;
}

// Splits on '\t' keeping empty fields, so fixture rows with empty
// hypotheses survive.
inline std::vector<std::string> tsv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

// Scratch directory shared by a test process; unique per run so parallel
// ctest invocations cannot collide.
inline const std::string& temp_dir() {
  static const std::string dir = [] {
    std::string d = "/tmp/btdiv_test_" + std::to_string(::getpid());
    if (std::system(("mkdir -p " + d).c_str()) != 0)
      throw std::runtime_error("cannot create scratch dir " + d);
    return d;
  }();
  return dir;
}

inline std::string temp_path(const std::string& name) {
  return temp_dir() + "/" + name;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI with the given argument string, capturing both streams.
inline CommandResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string out_path = temp_path("cli_out_" + std::to_string(counter));
  std::string err_path = temp_path("cli_err_" + std::to_string(counter));
  ++counter;
  std::string cmd = std::string(BTDIV_CLI_PATH) + " " + args + " >" + out_path +
                    " 2>" + err_path;
  int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
  try {
    r.out = btdiv::read_file(out_path);
  } catch (...) {
  }
  try {
    r.err = btdiv::read_file(err_path);
  } catch (...) {
  }
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

}  // namespace testutil
