//===- tests/testutil/subprocess.hpp - Child-process harness -------------===//
//
// Part of the simd-advisor project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace testutil {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs a shell command, capturing stdout and stderr separately. The
/// command string is passed to /bin/sh; callers quote their own arguments.
inline RunResult run_command(const std::string& command) {
  RunResult result;

  char err_path[] = "/tmp/simdadv-test-err-XXXXXX";
  const int err_fd = mkstemp(err_path);
  if (err_fd < 0)
    throw std::runtime_error("mkstemp failed");

  const std::string full = command + " 2>" + err_path;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) {
    close(err_fd);
    std::remove(err_path);
    throw std::runtime_error("popen failed for: " + command);
  }
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);

  FILE* err_file = fdopen(err_fd, "r");
  if (err_file) {
    while ((n = fread(buffer.data(), 1, buffer.size(), err_file)) > 0)
      result.err.append(buffer.data(), n);
    fclose(err_file);
  } else {
    close(err_fd);
  }
  std::remove(err_path);
  return result;
}

inline std::string shell_quote(const std::string& arg) {
  std::string quoted = "'";
  for (const char c : arg) {
    if (c == '\'')
      quoted += "'\\''";
    else
      quoted.push_back(c);
  }
  quoted += "'";
  return quoted;
}

} // namespace testutil
