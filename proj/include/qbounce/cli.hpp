#ifndef QBOUNCE_CLI_HPP
#define QBOUNCE_CLI_HPP

namespace qbounce {

// Parses argv and runs one subcommand. Returns 0 on success, 1 on bad input
// (flags, files, validation), 2 on numeric failure. Data goes to stdout or
// --output; diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

} // namespace qbounce

#endif
