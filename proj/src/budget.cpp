#include "stillman/budget.hpp"

#include <cstdlib>

namespace stillman {

namespace {

// Parses a positive decimal environment value, or returns `fallback` when
// the variable is unset.  Garbage is an error rather than a silent default:
// a typo in a resource cap should not quietly run with different limits.
std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    std::uint64_t out = 0;
    for (const char* p = raw; *p; ++p) {
        if (*p < '0' || *p > '9')
            throw std::invalid_argument(std::string(name) + ": expected a decimal integer, got \"" + raw + "\"");
        std::uint64_t digit = static_cast<std::uint64_t>(*p - '0');
        if (out > (UINT64_MAX - digit) / 10)
            throw std::invalid_argument(std::string(name) + ": value out of range");
        out = out * 10 + digit;
    }
    return out;
}

}  // namespace

void Budget::validate() const {
    if (max_bits < kMinMaxBits || max_bits > kMaxMaxBits)
        throw std::invalid_argument(
            "Budget: max_bits must be between " + std::to_string(kMinMaxBits) +
            " and " + std::to_string(kMaxMaxBits) + ", got " + std::to_string(max_bits));
    if (max_steps == 0)
        throw std::invalid_argument("Budget: max_steps must be positive");
}

Budget default_budget() {
    Budget b;
    b.max_bits = env_u64("STILLMAN_MAX_BITS", Budget::kDefaultMaxBits);
    b.max_steps = env_u64("STILLMAN_MAX_STEPS", Budget::kDefaultMaxSteps);
    b.validate();
    return b;
}

std::string BudgetError::describe(Kind kind, std::uint64_t limit) {
    switch (kind) {
        case Kind::bits:
            return "budget exceeded: result would not fit in " + std::to_string(limit) + " bits";
        case Kind::steps:
            return "budget exceeded: more than " + std::to_string(limit) + " evaluation steps";
        case Kind::nodes:
            return "budget exceeded: more than " + std::to_string(limit) + " decomposition nodes";
    }
    return "budget exceeded";
}

}  // namespace stillman
