#pragma once

#include <stdexcept>
#include <string>

namespace itemsynth {

// Exit-code buckets used by the CLI: 1 = I/O or data, 2 = usage/range,
// 3 = model degeneracy (e.g. nothing survives a filter).
enum class ErrorCode { io = 1, usage = 2, degenerate = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace itemsynth
