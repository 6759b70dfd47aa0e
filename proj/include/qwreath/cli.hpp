#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwreath
{

enum class CheckStatus
{
    Pass,
    Fail,
    Skip,
};

struct Check
{
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    nlohmann::ordered_json value;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// The built-in fixture grid, sorted by check name.
std::vector<Check> run_selftest(double tolerance, std::uint64_t seed);

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qwreath
