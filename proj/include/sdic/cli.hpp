#pragma once

#include <iosfwd>

namespace sdic::cli {

inline constexpr const char* kSchemaVersion = "1";

/// Exit codes: 0 success, 1 usage or parse error, 2 domain error (error JSON
/// on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sdic::cli
