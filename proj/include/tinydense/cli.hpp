#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tinydense/selftest.hpp"

namespace tinydense::cli {

enum ExitCode : int {
    kOk = 0,
    kSelftestFailed = 1,
    kInputError = 2,
    kDimensionMismatch = 3,
    kIoError = 4,
};

struct Hooks {
    /// Built-in model provider used by `selftest`.
    BuiltinSource builtins = [](std::string_view name) { return builtin(name); };
};

/// Runs one command line (`args` excludes the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

}  // namespace tinydense::cli
