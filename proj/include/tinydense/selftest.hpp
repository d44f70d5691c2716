#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tinydense/network.hpp"

namespace tinydense {

using BuiltinSource = std::function<NetworkSpec(std::string_view)>;

struct SelftestResult {
    bool ok = true;
    /// Name of the first failing check, empty when everything passed.
    std::string failed_check;
    std::string detail;
    /// One "PASS name" / "FAIL name: detail" line per check that ran.
    std::vector<std::string> lines;
};

/// Built-in model checks, activation identities and an oracle comparison on fixed
/// seeds. Stops at the first failure. `source` supplies the built-in models.
SelftestResult run_selftest(const BuiltinSource& source = [](std::string_view name) {
    return builtin(name);
});

}  // namespace tinydense
