#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Runs the CLI with stdout captured to a file; stderr is discarded.
struct CliRun {
  int exit_code = -1;
  std::string out;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline CliRun run_cli(const std::string& args, const std::string& tag = "run") {
  const std::string out_path = std::string(MINKDEV_TEST_TMP) + "/cli_" + tag + ".out";
  const std::string cmd = std::string("\"") + MINKDEV_CLI + "\" " + args + " > \"" + out_path +
                          "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out_path);
  return r;
}

inline std::string data_path(const std::string& name) {
  return std::string(MINKDEV_TEST_DATA) + "/" + name;
}
