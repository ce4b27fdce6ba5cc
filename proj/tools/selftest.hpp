#pragma once

#include <string>

// Runs the example checks for the module behind a subcommand; returns the
// number of failures.
int run_selftest(const std::string& subcommand);
