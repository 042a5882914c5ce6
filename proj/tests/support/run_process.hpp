#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace convograph::test_support {

struct ProcessResult {
  int exit_code = -1;
  std::string out;  // stdout and stderr interleaved
};

inline ProcessResult run_process(const std::string& command_line) {
  ProcessResult r;
  FILE* pipe = popen((command_line + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace convograph::test_support
