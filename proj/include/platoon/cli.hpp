#pragma once

namespace platoon {

// Shared process exit codes.
inline constexpr int kExitOk = 0;           // success
inline constexpr int kExitUsage = 1;        // usage or configuration error
inline constexpr int kExitQuality = 2;      // non-convergence or oracle mismatch
inline constexpr int kExitCapExceeded = 3;  // enumeration above the oracle cap

// Full command-line entry point (gen | solve | oracle | sweep).
int cli_main(int argc, const char* const* argv);

}  // namespace platoon
