#pragma once

// Property suites.
//
// Each suite sweeps a finite grid of instances and checks one family of
// relations the rest of the library is built on: comparator laws on arrow
// expressions, collapse bounds against exactly evaluated chains, agreement
// of the two decomposition searches, the iterate-family inequalities, the
// cross-package dominance chain, and the closed-form arrow bounds against
// the package functions they majorize.  A suite run is deterministic: the
// grid, the iteration order, and any randomized instances (drawn from a
// seeded mt19937_64) are fixed by (suite, ranges, mode, seed), so two runs
// with the same arguments render byte-identical reports.
//
// Three outcomes exist per case:
//
//   pass               the relation certified as stated;
//   undecided-allowed  the instance genuinely exceeds the budget's decision
//                      power (an evaluation aborted, or a comparison came
//                      back unknown where nothing guarantees decidability);
//                      counted, never a failure;
//   failure            a certified violation of the stated relation, or an
//                      unknown verdict where the relation is guaranteed
//                      decidable at this scale.  Undecided failures are
//                      flagged apart from violations in the report.
//
// A passing suite therefore has zero failures of either kind.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stillman/budget.hpp"
#include "stillman/packages.hpp"

namespace stillman {

// One grid point that did not come out as stated.  `undecided` separates a
// certification shortfall (the comparator answered unknown where the suite
// guarantees a decision) from a genuine violation of the relation.
struct CaseFailure {
    std::string inputs;    // the grid point, e.g. "a=3 b=2 k=1"
    std::string relation;  // the relation that was checked
    std::string observed;  // observed values, or "unknown"
    bool undecided = false;
};

struct SuiteReport {
    std::string suite;
    PackageMode mode = PackageMode::paper_literal;
    std::uint64_t seed = 0;
    std::uint64_t cases = 0;              // grid points examined
    std::uint64_t undecided_allowed = 0;  // aborted beyond the budget's reach
    std::vector<CaseFailure> failures;

    // Wall-clock time of the run.  Deliberately absent from text() and
    // json() so reports stay byte-identical across runs; callers wanting
    // it (the CLI does) print it on their own channel.
    double wall_ms = 0.0;

    bool passed() const { return failures.empty(); }

    // Fixed-layout renderings, stable for a given (suite, ranges, mode,
    // seed).  text() is line-oriented; json() is a single object with keys
    // suite, mode, seed, cases, undecided_allowed, failures, result.
    std::string text() const;
    std::string json() const;
};

// Grid radii per suite, keyed by short names ("a", "sigma", "chains", ...).
// Every key has a default and a hard safety cap; run_suite rejects unknown
// keys and values over the cap (std::invalid_argument).  The suites:
//
//   arrow-identities   comparator laws for a ↑^k b: strict monotonicity in
//                      base, argument, and level (with the exact plateau
//                      exceptions), the ladder a↑^k b >= a^b >= ab >= a+b
//                      with its equality cases, shift/scale absorption
//                      inequalities, and the head-absorption identity.
//                      Keys: a (max base, default 4, cap 6), b (max
//                      argument, 3/5), k (max level, 2/3), c (max
//                      scale/shift, 3/5).
//   chain-collapse     seeded random affine chains: whenever the chain
//                      evaluates exactly, its value stays under the
//                      single-arrow collapse bound; plus pinned worked
//                      instances.  Keys: chains (200/2000), terms (3/4),
//                      entry (max base/scale/shift, 4/6), level (2/4),
//                      sigma (4/6).
//   decomposition-oracle   decompose_max equals max(enumerate_terminals)
//                      whenever both searches finish, and is always >= the
//                      total multiplicity; plus a pinned two-terminal
//                      witness.  Keys: d (max degree bound, 3/3), delta
//                      (max total multiplicity, 4/4).
//   decomposition-majorant decompose_max(sigma*e~_d, F) stays under the
//                      saturating-iterate majorant of F.  Keys: d (3/3),
//                      sigma (3/3).
//   iterate-lower-bound    saturating psi never shrinks its argument, and
//                      n-fold level-1 iteration gains at least n.  Keys:
//                      d (3/3), sigma (3/3), eps (4/4), n (3/4).
//   iterate-majorant   saturating psi under F = 2 f(|.|) stays under
//                      doubling psi of f, level by level and under k-fold
//                      iteration.  Keys: d (3/3), sigma (2/3), eps (3/3),
//                      k (3/3).
//   iteration-dominance    the full saturating majorant of 2 f(|.|) stays
//                      under the full doubling majorant of f.  Keys:
//                      d (3/3), sigma (2/3).
//   package-dominance  the cross-package chain at degree 2: beta's bound
//                      at eta = 3 equals alpha's there (consistent mode),
//                      stays under gamma's, and gamma's diagonal values
//                      stay under zeta's, under theta's.  Keys: sigma
//                      (3/3), delta (4/4).
//   index-bound        every degree-2 theta-family function f satisfies
//                      f(sigma) <= 3 ↑^{index(f)} 3 ↑ sigma for sigma >= 2.
//                      Keys: sigma (max, 4/6).
//   transport-bound    whenever f(sigma) certifies under d1 ↑^k d1 ↑ sigma,
//                      the doubling majorant of f at degree 2 certifies
//                      under the transported closed form
//                      d1 ↑^{k+3} d1 ↑ sigma.  Keys: sigma (4/4), d1 (4/5),
//                      k (2/3).
using SuiteRanges = std::map<std::string, std::uint64_t>;

// Seed used when the caller does not pick one; recorded in every report.
inline constexpr std::uint64_t kDefaultSuiteSeed = 2026;

// The suite ids above, in canonical order.
std::vector<std::string> suite_ids();

// Runs one suite.  Unknown suite ids, unknown range keys, and range values
// over their caps throw std::invalid_argument.  Cases run sequentially in
// a fixed order; each evaluation gets a fresh context, and a BudgetError
// inside a case makes it undecided-allowed rather than aborting the run.
// Per-case evaluation runs on `budget` clamped to fixed suite ceilings
// (2^16 bits, 20000 steps) so that instances beyond any budget's reach
// abort in milliseconds instead of grinding toward the caller's caps; the
// caller's budget applies wherever it is tighter, and every value the
// default grids decide on sits far below the ceilings.  `mode` selects the
// package seeds where package functions are involved and is recorded in
// the report either way.
SuiteReport run_suite(std::string_view suite, const SuiteRanges& ranges = {},
                      const Budget& budget = default_budget(),
                      PackageMode mode = PackageMode::paper_literal,
                      std::uint64_t seed = kDefaultSuiteSeed);

}  // namespace stillman
