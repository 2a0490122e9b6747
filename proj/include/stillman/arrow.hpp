#pragma once

// Iterated-exponentiation ("up-arrow") expressions.
//
// An ArrowExpr is either a numeral Leaf or a Node  base ↑^level tail,
// where ↑^1 is exponentiation and ↑^k for k >= 2 is defined by
//
//     a ↑^k 1 = a,      a ↑^k b = a ↑^(k-1) (a ↑^k (b-1)).
//
// Chains written without parentheses associate to the right, which is the
// only shape this type can represent: the tail of a Node is a full
// expression, the head is a numeral.  Invariants enforced at construction:
//
//   * every Leaf holds a value >= 1 (all expressions denote positive
//     integers),
//   * Node levels are >= 1,
//   * Node base 0 is rejected and base 1 collapses to Leaf(1), so stored
//     Nodes always have base >= 2.
//
// Values explode immediately (2 ↑^3 4 already has ~10^19728 digits), so
// evaluation is budgeted: it either returns the exact value or a lower
// bound L >= 2^max_bits that the true value is certified to meet.
// Comparison is sound and incomplete: less/equal/greater answers are
// proof-backed, with unknown as the honest fallback.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stillman/bignat.hpp"
#include "stillman/budget.hpp"

namespace stillman {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class ArrowExpr {
public:
    static ArrowExpr leaf(BigNat value);
    static ArrowExpr node(BigNat base, std::uint64_t level, ArrowExpr tail);

    bool is_leaf() const { return level_ == 0; }

    // Leaf accessors.
    const BigNat& value() const;

    // Node accessors.
    const BigNat& base() const;
    std::uint64_t level() const;
    const ArrowExpr& tail() const;

    // Structural equality.
    friend bool operator==(const ArrowExpr& a, const ArrowExpr& b);
    friend bool operator!=(const ArrowExpr& a, const ArrowExpr& b) { return !(a == b); }

private:
    ArrowExpr(BigNat num, std::uint64_t level, std::shared_ptr<const ArrowExpr> tail)
        : num_(std::move(num)), level_(level), tail_(std::move(tail)) {}

    BigNat num_;           // Leaf value, or Node base.
    std::uint64_t level_;  // 0 marks a Leaf.
    std::shared_ptr<const ArrowExpr> tail_;
};

// --- text formats --------------------------------------------------------
//
// ascii grammar (whitespace between tokens is insignificant):
//
//     expr := nat | nat "{" nat "}" expr
//
// with "^" accepted as shorthand for "{1}" and "^^" for "{2}".
// unicode renders levels as arrow runs (↑, ↑↑, ↑³, ...), latex as
// \uparrow^{k}, and json as the object schema
//
//     {"type":"nat","value":"<decimal>"}
//     {"type":"arrow","base":"<decimal>","level":<int>,"tail":<expr>}

enum class ExprStyle { ascii, unicode, latex, json };

ArrowExpr parse_expr(std::string_view text);
std::string format_expr(const ArrowExpr& e, ExprStyle style = ExprStyle::ascii);

// --- evaluation ----------------------------------------------------------

struct EvalResult {
    bool exact;
    // Exact value when `exact`, otherwise a certified lower bound: the true
    // value is >= value and value >= 2^max_bits.
    BigNat value;

    static EvalResult exact_value(BigNat v) { return {true, std::move(v)}; }
    static EvalResult exceeds(BigNat lower_bound) { return {false, std::move(lower_bound)}; }
};

EvalResult eval_exact(const ArrowExpr& e, const Budget& budget = default_budget());

// --- comparison ----------------------------------------------------------

enum class Ordering { less, equal, greater, unknown };

const char* to_string(Ordering o);

// Sound, incomplete order test.  Routes, in order: exact evaluation of both
// sides; exact value vs. certified lower bound; structural monotonicity in
// a single position (tail, then level, then base) when the other two
// coordinates agree, with the plateau identities a↑^k 1 = a and
// 2↑^k 2 = 4 folded in; and retrying after shorthand absorption.  Anything
// else is unknown.
Ordering compare(const ArrowExpr& a, const ArrowExpr& b,
                 const Budget& budget = default_budget());

// Rewrites  a ↑^k (a ↑^(k+1) b)  to  a ↑^(k+1) (b+1)  bottom-up wherever
// the inner iteration count b is a numeral, collapsing ladders such as
// 2^(2↑↑2) into 2↑↑3.  Denotation-preserving.
ArrowExpr absorb(const ArrowExpr& e);

// --- affine chains ---------------------------------------------------------
//
// A chain is the nested value
//
//     c_1 * (a_1 ↑^{k_1} (c_2 * (a_2 ↑^{k_2} (... sigma ...)) + d_2)) + d_1
//
// read top-down: terms[0] is the outermost wrapper, sigma seeds the
// innermost argument.

struct AffineTerm {
    BigNat scale;         // c_i >= 1
    BigNat base;          // a_i >= 2
    std::uint64_t level;  // k_i >= 1
    BigNat shift;         // d_i >= 0
};

struct AffineChain {
    std::vector<AffineTerm> terms;  // at least one
    BigNat sigma;                   // >= 1

    // Throws std::invalid_argument when a field is outside its range.
    void validate() const;
};

// Exact (budgeted) value of the chain.
EvalResult eval_chain(const AffineChain& chain, const Budget& budget = default_budget());

// Single-arrow upper bound for the chain:  a* ↑^{k*+1} (sigma + n - 1)
// where k* = max(2, max k_i), a* = max over all a_i, c_i, d_i, and n
// counts the terms plus the nontrivial scales (c_i != 1) and shifts
// (d_i != 0).
ArrowExpr collapse_bound(const AffineChain& chain);

}  // namespace stillman
