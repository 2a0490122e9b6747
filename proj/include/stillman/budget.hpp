#pragma once

// Resource budgets for evaluation.
//
// Everything this library computes is a tower-of-exponentials away from
// being unrepresentable, so every evaluating entry point takes a Budget.
// Two independent caps:
//
//   max_bits  - largest binary size (in bits) of any integer the evaluator
//               will materialize.  Expression evaluation never throws on
//               this cap; it returns a certified lower bound instead.
//   max_steps - number of recurrence steps (function applications,
//               iteration rounds, decomposition nodes) an evaluation may
//               spend before giving up.  Recurrence evaluation throws
//               BudgetError when the cap is hit.
//
// Defaults come from the environment (STILLMAN_MAX_BITS and
// STILLMAN_MAX_STEPS) and fall back to 2^20 bits and 10^6 steps.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stillman {

struct Budget {
    static constexpr std::uint64_t kDefaultMaxBits = 1u << 20;
    static constexpr std::uint64_t kDefaultMaxSteps = 1000000;
    // Values are materialized in memory, so the bit cap itself is capped:
    // 2^28 bits is a 32 MiB integer, which is already far past anything the
    // closed-form bounds need.
    static constexpr std::uint64_t kMinMaxBits = 64;
    static constexpr std::uint64_t kMaxMaxBits = 1u << 28;

    std::uint64_t max_bits = kDefaultMaxBits;
    std::uint64_t max_steps = kDefaultMaxSteps;

    // Throws std::invalid_argument if a cap is outside its supported range.
    void validate() const;
};

// Budget with any STILLMAN_MAX_BITS / STILLMAN_MAX_STEPS environment
// overrides applied.  Unparsable or out-of-range overrides throw.
Budget default_budget();

// Thrown when a computation exceeds its step budget (or a decomposition
// exceeds its node budget).  Exceeding max_bits during expression
// evaluation is NOT an error; carriers of that outcome return an
// exceeds-budget result value instead.
class BudgetError : public std::runtime_error {
public:
    enum class Kind { bits, steps, nodes };

    BudgetError(Kind kind, std::uint64_t limit)
        : std::runtime_error(describe(kind, limit)), kind_(kind), limit_(limit) {}

    Kind kind() const { return kind_; }
    std::uint64_t limit() const { return limit_; }

private:
    static std::string describe(Kind kind, std::uint64_t limit);
    Kind kind_;
    std::uint64_t limit_;
};

}  // namespace stillman
