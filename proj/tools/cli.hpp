#pragma once

#include <ostream>

namespace gpdind::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kSemantic = 2;
inline constexpr int kParse = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpdind::cli
