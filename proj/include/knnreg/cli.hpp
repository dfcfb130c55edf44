#ifndef KNNREG_CLI_HPP
#define KNNREG_CLI_HPP

#include <iosfwd>

namespace knnreg::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain_error = 1;
inline constexpr int exit_usage_error = 2;

/// Entry point of the knn_sweep tool. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace knnreg::cli

#endif
