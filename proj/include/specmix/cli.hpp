#pragma once

namespace specmix {

// Subcommands: tensors, simulate, optimize, verify-bounds, benchmark,
// verify-energy. Returns 0 on success, 1 on validation/usage errors, 2 on
// numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace specmix
