#pragma once

namespace d2dcache {

/// Entry point behind the command-line tool; exposed so tests can drive the
/// full argument-parsing and output path. Exit codes: 0 success, 1 numeric
/// failure, 2 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace d2dcache
