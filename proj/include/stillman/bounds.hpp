#pragma once

// Closed-form size bounds, emitted symbolically.
//
// Each BoundKind names one bound statement: a quantity (projective
// dimension, regularity, generator counts, strength thresholds, ...) and
// the closed-form expression that caps it.  closed_form_bound builds the
// stated expression verbatim as an ArrowExpr — levels and leaf arguments
// are computed by literal arithmetic from the parameters (d^2+d-2 and the
// like), but the expression itself is never evaluated.  Callers that want
// digits opt in through eval_bound.
//
// A few statements are plain numbers rather than arrow chains (a seed case
// of a recursion, or a finite product); those come back as Leaf values.
// The finite-product kind is the only one whose construction can itself be
// expensive, so construction shares the numeric budget and aborts with
// BudgetError rather than materializing an oversized literal.
//
// Every kind documents its parameter tuple and domain guards below; a
// violated guard raises std::invalid_argument naming the offending
// hypothesis.  Parameters are passed by name through BoundParams; fields
// irrelevant to the kind must stay unset (a stray field is reported, since
// it usually means a mistyped request).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "stillman/arrow.hpp"
#include "stillman/bignat.hpp"
#include "stillman/budget.hpp"

namespace stillman {

enum class BoundKind {
    // pd (d, sigma): projective dimension of an ideal generated by forms of
    // degree <= d whose dimension vector is capped by sigma = max{2, dims}.
    //   (d+1) ^{d^2+d-2} (d+1) ^ sigma          [d >= 2, sigma >= 2]
    pd,
    // r3_subalgebra (d, sigma): length of a regular sequence spanning a
    // subalgebra that contains the given forms (same expression as pd).
    r3_subalgebra,
    // min_prime (d, sigma): generator count of a minimal prime over an
    // ideal generated by a regular sequence of length <= sigma, degree <= d.
    //   d ^ 2 ^ (d+1) ^{d^2+d-2} (d+1) ^ sigma  [d >= 2, sigma >= 2]
    min_prime,
    // serre_strength (d, eta): strength threshold on a degree-d form
    // guaranteeing Serre's condition R_eta for the hypersurface it cuts.
    //   eta + 2 at d = 2;  d ^{d^2-d-1} 3 ^ eta at d >= 3   [d >= 2, eta >= 2]
    serre_strength,
    // r_eta_sequence_strength (d, eta, delta_sum): strength threshold on a
    // graded space with |delta| = delta_sum making any homogeneous basis an
    // R_eta-sequence.
    //   eta + 4|delta| + 1 at d = 2;
    //   |delta| - 1  +  d ^{d^2-d-1} 3 ^ (eta+3|delta|) at d >= 3
    //   [d >= 2, eta >= 1, delta_sum >= 1]
    r_eta_sequence_strength,
    // small_subalgebra (d, eta, delta_sum): length of an R_eta-sequence
    // whose algebra contains a space with |delta| = delta_sum.
    //   d1 ^{d^2+d-1} d1 ^ |delta|,  d1 = max{d, eta-1}
    //   [d >= 2, eta >= 4, delta_sum >= 1; delta_sum = 1 is admitted but
    //    the statement is vacuous there, so the result carries a note]
    small_subalgebra,
    // module_pd (d, m, n): projective dimension of a module presented by an
    // m x n matrix of entries of degree <= d.
    //   (d+1) ^{d^2+d-2} (d+1) ^ (m*n)          [d >= 2, m*n >= 2]
    module_pd,
    // derivative_strength (d, h): strength threshold on a degree-d form F
    // keeping the partial-derivative ideal of F out of any ideal generated
    // by h forms of degree < d.
    //   h + 2 at d = 2;  d ^{d^2-d-2} d ^ max{2,h} at d >= 3   [d >= 2, h >= 1]
    derivative_strength,
    // eg_primary (e, h): regularity of a prime of height h and multiplicity
    // e (the two-parameter regularity bound).
    //   (e*h) ^{e^2*h^2-1} (h+3)                [e >= 2, h >= 2]
    eg_primary,
    // eg_simplified (e, h): the weaker multiplicity-only form, valid for
    // nondegenerate primes where h < e.
    //   (e^2) ^{e^4-1} (e+2)                    [e >= 2, h >= 2, h < e]
    eg_simplified,
    // colon_beta0_product (B, d): generator count of the colon ideal
    // I : (f) inside a polynomial ring in B+1 variables, product form.
    //   B(d+1)(2d) * prod_{i=3..B} ((d^2+2d-1)^(2^(i-3)) + 1)  +  1
    //   [B >= 2, d >= 2; a plain number, built under the numeric budget]
    colon_beta0_product,
    // colon_beta0_power (B, d): the same count, closed power form.
    //   (2d) ^ 2 ^ (B-1)                        [d >= 2 and (B >= 4, or B = 3 with d >= 3)]
    colon_beta0_power,
    // prime_beta0 (B, d): generator count of a minimal prime, given the
    // variable-count bound B.
    //   d ^ 2 ^ B                               [d >= 2, B >= 1]
    prime_beta0,
    // cs_reg (d, n): regularity of an ideal generated in degree <= d in n
    // variables.
    //   (2d) ^ 2 ^ (n-2)                        [d >= 1, n >= 2]
    cs_reg,
    // h3_transport (d1, k, d, sigma): transport of a single-arrow cap
    // through the degree-d doubling composite: if f(sigma) <= d1 ^{k} d1 ^ sigma
    // then the composite at sigma is at most
    //   d1 ^{k+2d-1} d1 ^ sigma                 [d >= 2, d1 >= d+1, k >= 1, sigma >= 2]
    h3_transport,
};

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(std::string_view text);

// Named parameters; see each kind's tuple above.  All values are exact
// nonnegative integers (range guards are per kind).
struct BoundParams {
    std::optional<BigNat> d;
    std::optional<BigNat> sigma;
    std::optional<BigNat> eta;
    std::optional<BigNat> delta_sum;
    std::optional<BigNat> e;
    std::optional<BigNat> h;
    std::optional<BigNat> m;
    std::optional<BigNat> n;
    std::optional<BigNat> B;
    std::optional<BigNat> d1;
    std::optional<BigNat> k;
};

// A closed-form bound: a plain additive offset plus an arrow expression.
// Most kinds have offset 0; the value denoted is offset + value(expr).
struct Bound {
    BigNat offset;
    ArrowExpr expr;
    std::string note;  // advisory remark (empty for most kinds)

    bool operator==(const Bound& other) const {
        return offset == other.offset && expr == other.expr && note == other.note;
    }
};

// Build the stated expression for `kind` at `params`.  The budget is
// consulted only by kinds that construct literal numbers
// (colon_beta0_product); everything else is symbolic and free.
Bound closed_form_bound(BoundKind kind, const BoundParams& params,
                        const Budget& budget = default_budget());

// offset + expr rendered in the requested style; json emits
// {"offset":"<decimal>","expr":<expr>} plus "note" when one is attached.
std::string format_bound(const Bound& b, ExprStyle style = ExprStyle::ascii);

// Budgeted evaluation of offset + expr (exact, or a certified lower bound
// when the expression value passes the bit cap).
EvalResult eval_bound(const Bound& b, const Budget& budget = default_budget());

}  // namespace stillman
