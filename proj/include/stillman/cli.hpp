#pragma once

// Command-line driver.  Subcommands:
//
//   bound <kind> --<param> N ...                closed-form arrow bound
//   eval --expr E                               exact evaluation under budget
//   compare --lhs E --rhs E                     certified ordering
//   decompose --d N --delta V --f F [--max|--terminals]
//   package --package P --fn F --d N [--eta N] --arg X [--mode M]
//   verify --suite S [--seed N] [--mode M] [--json]
//
// Global flags (valid before or after the subcommand): --format
// ascii|unicode|latex|json, --max-bits and --max-steps (which override the
// STILLMAN_MAX_BITS / STILLMAN_MAX_STEPS environment), and --out <path> to
// write the result to a file.  Results go to stdout (or --out), diagnostics
// to stderr.  Exit codes: 0 success, 1 undecided comparison, 2 budget
// exceeded, 3 verify failures, 64 usage errors.

namespace stillman {

int cli_main(int argc, const char* const* argv);

}  // namespace stillman
