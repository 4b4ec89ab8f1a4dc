#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace tqftwb::testing {

struct Run {
  int exit_code = -1;
  std::string out;
};

/// Runs the CLI through the shell; stderr is discarded unless redirected in args.
inline Run run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" TQFTWB_CLI "' " + args;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string data(const std::string& name) { return std::string(TQFTWB_TEST_DATA) + "/" + name; }

}  // namespace tqftwb::testing
