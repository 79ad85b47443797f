#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftvn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomain = 2;
inline constexpr int kCapability = 3;

// Runs one request. args excludes the program name. The JSON response goes
// to out, human-readable diagnostics to err. stdin is read only when
// --input is absent.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace ftvn::cli
