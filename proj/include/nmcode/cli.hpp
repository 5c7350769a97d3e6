#pragma once

namespace nmcode {

// Batch front end; returns the process exit status (0 = bounds respected,
// 1 = a measured quantity exceeded its bound, 2 = usage or runtime error).
int run_cli(int argc, const char* const* argv);

} // namespace nmcode
