#pragma once

// Recurrence packages.
//
// A package is a family of extremely fast-growing functions defined by an
// initial condition at degree 2 (or 1) and a recurrence that produces each
// degree's functions from the previous degree's.  Five packages are
// implemented:
//
//   alpha - the full five-function family (A, Abar, B, Bscript, D per
//           degree), seeded at degree 1 with identity-like functions.
//   beta  - the two-function reduction (Abar, B per degree) obtained by
//           composing alpha's explicit recurrence arrows; keeps the
//           ambient-parameter (eta) argument.
//   gamma - beta restricted to eta = 3, so its functions take only a
//           dimension vector.
//   zeta  - a scalar majorant of gamma: functions of |delta| alone
//           (Ahat, Bhat per degree).
//   theta - a scalar majorant of zeta with a simpler iterate shape
//           (A, B per degree); this is the family the closed-form
//           arrow bounds are proved against.
//
// Every function evaluates exactly or aborts with BudgetError; there are no
// approximate results.  Evaluation threads one EvalCtx through the whole
// call tree: a shared step counter (max_steps), a cap on the bit size of
// every materialized integer (max_bits), and the node/memory limits for the
// decomposition searches some recurrences delegate to.  Degree 2 values are
// small; almost every degree >= 3 value overflows any permitted budget
// within a few steps, by design of the subject matter.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stillman/bignat.hpp"
#include "stillman/budget.hpp"
#include "stillman/dimvec.hpp"

namespace stillman {

// --- evaluation context ------------------------------------------------

// Travels by reference through one top-level evaluation.  The step counter
// accumulates across every recurrence application and iteration round.
struct EvalCtx {
    Budget budget;
    DecompLimits decomp;
    std::uint64_t steps = 0;

    EvalCtx() : budget(default_budget()) { budget.validate(); }
    explicit EvalCtx(const Budget& b, const DecompLimits& limits = {})
        : budget(b), decomp(limits) {
        budget.validate();
    }

    // One recurrence step; throws BudgetError (steps) past max_steps.
    void charge_step();
    // Throws BudgetError (bits) when v is wider than max_bits.
    void check_bits(const BigNat& v) const;
    // base^exp under the bit cap: refuses (BudgetError, bits) rather than
    // materializing anything much larger than max_bits.  base >= 1.
    BigNat pow_guarded(const BigNat& base, const BigNat& exp) const;
};

// --- growth functions ----------------------------------------------------

// Argument shapes a package function can have.  eta is the ambient
// parameter (a positive scalar); vec is a dimension vector of the
// function's fixed degree bound.
enum class Signature { scalar, eta_scalar, vec, eta_vec };

std::string to_string(Signature sig);

// An exact positive-integer-valued function with a fixed signature.  Calls
// are memoized per exact argument (the cache is size-capped; once full,
// further results are simply recomputed).  Copies share the underlying
// implementation and cache.  Not thread-safe; confine each instance (and
// anything holding it) to one thread.
class GrowthFunction {
public:
    using ScalarFn = std::function<BigNat(const BigNat&, EvalCtx&)>;
    using EtaScalarFn =
        std::function<BigNat(const BigNat&, const BigNat&, EvalCtx&)>;
    using VecFn = std::function<BigNat(const DimVector&, EvalCtx&)>;
    using EtaVecFn =
        std::function<BigNat(const BigNat&, const DimVector&, EvalCtx&)>;

    static GrowthFunction scalar_fn(std::string description, ScalarFn fn);
    static GrowthFunction eta_scalar_fn(std::string description, EtaScalarFn fn);
    static GrowthFunction vec_fn(std::string description, std::uint64_t bound,
                                 VecFn fn);
    static GrowthFunction eta_vec_fn(std::string description, std::uint64_t bound,
                                     EtaVecFn fn);

    Signature signature() const;
    const std::string& describe() const;
    // A copy of this function carrying a different description.  The copy
    // starts with a cache of its own.
    GrowthFunction renamed(std::string description) const;
    // Degree bound required of vector arguments (vec / eta_vec only).
    std::uint64_t vector_bound() const;

    // The overload must match signature(); std::invalid_argument otherwise.
    // Results are checked positive (std::domain_error if an evaluator
    // produces 0) and within ctx's bit cap.
    BigNat operator()(const BigNat& x, EvalCtx& ctx) const;
    BigNat operator()(const BigNat& eta, const BigNat& n, EvalCtx& ctx) const;
    BigNat operator()(const DimVector& v, EvalCtx& ctx) const;
    BigNat operator()(const BigNat& eta, const DimVector& v, EvalCtx& ctx) const;

private:
    struct Impl;
    explicit GrowthFunction(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

// --- recurrence functionals ------------------------------------------------

// The arrows of the recurrences: each takes the previous functions and a
// degree parameter d and produces the next function.  In the formulas,
// |delta| is the total multiplicity of the vector argument and diag(n) is
// the vector with multiplicity n at every degree up to the bound.
enum class FunctionalKind {
    // inputs {Bscript at d-1 (eta_scalar), D at d-1 (scalar)} -> scalar
    //   k |-> Bscript(3, D(k+1)) + 1
    next_level_seed,
    // inputs {A at d (scalar)} -> eta_vec on bound d
    //   (eta, delta) |-> |delta| - 1 + A(eta + 3|delta|)
    vector_extension,
    // inputs {Abar (eta_vec on d)} -> eta_vec, or {Abar (vec on d)} -> vec
    //   (eta,) delta |-> largest value reachable by decomposition chains
    //   from delta under the step function 2*Abar((eta,) .)
    decomposition_bound,
    // inputs {B (eta_vec on d)} -> eta_scalar
    //   (eta, n) |-> B(eta, diag(n))
    diagonal_restriction,
    // inputs {Bscript (eta_scalar)} -> scalar
    //   k |-> d^(2^Bscript(1, k))
    double_exponential,
    // inputs {B (eta_vec on d)} -> eta_vec on bound d+1
    //   (eta, delta) |-> |delta| + B(3, diag(d^(2^B(1, diag(eta+3|delta|+1)))))
    eta_vector_advance,
    // inputs {B (vec on d)} -> vec on bound d+1
    //   delta |-> |delta| + B(diag(d^(2^B(diag(3|delta|+4)))))
    vector_advance,
    // inputs {F (vec on d)} -> scalar: the saturating-iterate majorant of
    // decomposition under F (see iterate_majorant_value)
    iterate_majorant,
    // inputs {f (scalar)} -> scalar: iterate_majorant of F = 2 f(|.|)
    scalar_iterate_majorant,
    // inputs {f (scalar)} -> scalar
    //   sigma |-> sigma + f(d^(2^f(3 sigma + 4)))
    scalar_advance,
    // inputs {f (scalar)} -> scalar: the doubling-iterate majorant of f
    // (see doubling_majorant_value)
    doubling_majorant,
};

// Applies a recurrence functional.  Validates input count and signatures
// (std::invalid_argument on mismatch).  Construction is lazy: nothing is
// evaluated until the returned function is called.
GrowthFunction functional_apply(FunctionalKind kind, std::uint64_t d,
                                const std::vector<GrowthFunction>& inputs);

// --- iterate families -------------------------------------------------------
//
// Two ladders of scalar functions derived from a step function, used to
// majorize decomposition chains without enumerating them.  psi^k means
// k-fold self-composition.
//
// Saturating family (step function F on vectors of degree bound d, which
// must be flagged ascending; requires eps >= sigma >= 1, 1 <= level <= d-1):
//   psi_{1,sigma}(eps)   = eps + F(sigma, ..., sigma, eps)
//   psi_{level,sigma}(eps) = m + F(sigma, ..., sigma, m, ..., m)
//     where m = psi_{level-1,eps}^eps(eps) fills the lowest `level`
//     degrees and sigma fills the rest
//   phi_level(sigma)     = psi_{level,sigma}^sigma(sigma)
//   majorant(sigma)      = phi_1(phi_2(... phi_{d-1}(sigma)))
BigNat saturating_psi(const DecompFn& F, std::uint64_t d, std::uint64_t level,
                      const BigNat& sigma, const BigNat& eps, EvalCtx& ctx);
BigNat saturating_phi(const DecompFn& F, std::uint64_t d, std::uint64_t level,
                      const BigNat& sigma, EvalCtx& ctx);
BigNat iterate_majorant_value(const DecompFn& F, std::uint64_t d,
                              const BigNat& sigma, EvalCtx& ctx);

// Doubling family (scalar function f, strictly increasing for the majorant
// comparisons to hold; requires eps >= 1, 1 <= level <= d-1):
//   psi_1(eps)     = 2 f((d+1) eps)
//   psi_level(eps) = 2 f((d+1) psi_{level-1}^eps(eps))
//   phi_level(eps) = psi_level^eps(eps)
//   majorant(sigma) = phi_1(phi_2(... phi_{d-1}(sigma)))
BigNat doubling_psi(const GrowthFunction& f, std::uint64_t d, std::uint64_t level,
                    const BigNat& eps, EvalCtx& ctx);
BigNat doubling_phi(const GrowthFunction& f, std::uint64_t d, std::uint64_t level,
                    const BigNat& eps, EvalCtx& ctx);
BigNat doubling_majorant_value(const GrowthFunction& f, std::uint64_t d,
                               const BigNat& sigma, EvalCtx& ctx);

// --- the five packages -------------------------------------------------

enum class PackageId { alpha, beta, gamma, zeta, theta };

// paper_literal takes the degree-2 seeds exactly as stated in the source
// material (beta: eta+4|delta|-1, gamma: 4|delta|+2, zeta/theta: 4 sigma+2).
// consistent replaces them with the values alpha's own recurrence produces
// (beta: eta+4|delta|+1, gamma: 4|delta|+4, zeta/theta: 4 sigma+4), which is
// what makes beta's functions literally re-appear inside alpha.  The two
// differ by an additive constant trail; both are kept inspectable because
// the source material uses each in different places.  alpha has no degree-2
// seed, so mode does not affect it.
enum class PackageMode { paper_literal, consistent };

// A and Abar are the seed functions, B the decomposition bound, Bscript its
// diagonal restriction, D the double-exponential transport (alpha only);
// Ahat/Bhat are zeta's scalar counterparts of Abar/B.
enum class PackageFn { A, Abar, B, Bscript, D, Ahat, Bhat };

std::string to_string(PackageId id);
std::string to_string(PackageMode mode);
std::string to_string(PackageFn fn);
PackageId parse_package_id(std::string_view text);
// Accepts "paper-literal" / "paper_literal" and "consistent".
PackageMode parse_package_mode(std::string_view text);
PackageFn parse_package_fn(std::string_view text);

// The function (pkg, fn) at degree d.  Instances are cached per
// (pkg, fn, d, mode), so repeated requests share one memo.  Wiring is lazy;
// evaluating at a point performs only the finitely many inner evaluations
// that point needs.  Valid combinations:
//   alpha: A, Abar, B, Bscript, D for d >= 1
//   beta:  Abar, B for d >= 2      (eta_vec)
//   gamma: Abar, B for d >= 2      (vec)
//   zeta:  Ahat, Bhat for d >= 2   (scalar)
//   theta: A, B for d >= 2         (scalar)
// Anything else throws std::invalid_argument.
GrowthFunction package_function(PackageId pkg, PackageFn fn, std::uint64_t d,
                                PackageMode mode = PackageMode::paper_literal);

// --- index scheme ---------------------------------------------------------
//
// The arrow-level bookkeeping enumerates the theta-package functions in
// evaluation order: A_2, psi_1@2, phi_1@2, B_2, A_3, psi_1@3, phi_1@3,
// psi_2@3, phi_2@3, B_3, A_4, ...  function_index gives a function's
// 1-based position in that listing; closed forms:
//   index(A_d)     = d^2 - d - 1
//   index(psi_i@d) = index(A_d) + 2i - 1
//   index(phi_i@d) = index(A_d) + 2i
//   index(B_d)     = d^2 + d - 2
enum class IndexedFn { A, B, psi, phi };

// d >= 2, capped at 10^9 to keep the arithmetic exact; psi/phi need
// 1 <= iterate <= d-1 (std::invalid_argument otherwise).
std::uint64_t function_index(IndexedFn kind, std::uint64_t d,
                             std::optional<std::uint64_t> iterate = std::nullopt);

}  // namespace stillman
