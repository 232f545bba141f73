#pragma once

namespace monobox {

// Parses argv and runs one subcommand.  Exit codes: 0 found / ok,
// 1 not found / verifier false, 2 invalid input, 3 budget exhausted or
// indeterminate.
int cli_dispatch(int argc, const char* const* argv);

} // namespace monobox
