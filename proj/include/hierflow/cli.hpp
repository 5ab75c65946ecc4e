#pragma once

#include <ostream>

namespace hierflow {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitConfig = 3 };

/// Thread count for OpenMP kernels; unset means the OpenMP default.
inline constexpr const char* kThreadsEnv = "HIERFLOW_THREADS";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hierflow
