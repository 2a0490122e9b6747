#pragma once

// Dimension vectors graded by degree, the lexicographic well-order on them,
// and simple decompositions.
//
// A DimVector is a finite multiset of degrees: entry(i) counts the
// multiplicity at degree i >= 1, and a degree bound d caps the admissible
// degrees.  A decomposition step picks a degree i >= 2 with nonzero
// multiplicity and trades one unit of it for F(δ) units of every degree
// below i:
//
//     δ  ->  δ - e_i + F(δ)·(e_{i-1} + ... + e_1).
//
// Each step strictly decreases δ in the lexicographic order (largest
// differing degree decides), so every maximal chain reaches a vector
// supported in degree 1; its multiplicity there is the chain's terminal
// value.  decompose_max computes the largest value any chain can reach,
// which is the quantity the closed-form bounds majorize.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stillman/arrow.hpp"
#include "stillman/bignat.hpp"
#include "stillman/budget.hpp"

namespace stillman {

class DimVector {
public:
    // The zero vector with degree bound d >= 1.
    explicit DimVector(std::uint64_t bound);
    // coords[0] is the degree-1 multiplicity; trailing zeros are trimmed.
    DimVector(std::uint64_t bound, std::vector<BigNat> coords);

    // e_i and ẽ_i = e_i + e_{i-1} + ... + e_1, for 1 <= i <= bound.
    static DimVector unit(std::uint64_t bound, std::uint64_t degree);
    static DimVector unit_sum(std::uint64_t bound, std::uint64_t degree);

    std::uint64_t bound() const { return bound_; }
    // deg δ: largest degree with nonzero multiplicity; 0 for the zero vector.
    std::uint64_t degree() const { return coords_.size(); }
    // δ_i for any i >= 1 (0 beyond the stored support).
    const BigNat& entry(std::uint64_t degree) const;
    // |δ|: total multiplicity.
    BigNat total() const;
    bool is_zero() const { return coords_.empty(); }
    // True when no degree >= 2 carries multiplicity (terminal vectors).
    bool degree_one_only() const { return coords_.size() <= 1; }

    DimVector& add(std::uint64_t degree, const BigNat& amount);
    // Throws std::invalid_argument if the entry would go negative.
    DimVector& sub(std::uint64_t degree, const BigNat& amount);

    DimVector scaled(const BigNat& factor) const;
    friend DimVector operator+(const DimVector& a, const DimVector& b);

    friend bool operator==(const DimVector& a, const DimVector& b) {
        return a.bound_ == b.bound_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const DimVector& a, const DimVector& b) { return !(a == b); }

    const std::vector<BigNat>& coords() const { return coords_; }

private:
    void trim();

    std::uint64_t bound_;
    std::vector<BigNat> coords_;  // index i holds the degree-(i+1) multiplicity
};

// Total order: the largest degree where the vectors differ decides.
// Requires equal degree bounds.
Ordering lex_compare(const DimVector& a, const DimVector& b);

// Wire form "2,0,1" = multiplicity 2 at degree 1, 0 at degree 2, 1 at
// degree 3.  With an explicit bound, entries beyond it must be zero;
// without one, the bound is the number of entries (at least 1).
DimVector parse_dimvector(std::string_view text,
                          std::optional<std::uint64_t> bound = std::nullopt);
std::string format_dimvector(const DimVector& v);

// --- decomposition step functions -----------------------------------------
//
// The F of a decomposition.  Values must be positive.  The `ascending`
// flag records a monotonicity guarantee (F(δ) <= F(δ′) whenever δ <= δ′
// coordinatewise): enumeration does not need it, but the majorant
// comparisons in the verifier only hold for ascending F, so the flag
// travels with the function.  Constant and affine step functions are
// ascending by construction; tables and derived functions carry whatever
// their author claims, and the verifier spot-checks the claim.

class DecompFn {
public:
    static DecompFn constant(BigNat c);
    // F(δ) = a·|δ| + b.
    static DecompFn affine(BigNat a, BigNat b);
    // Explicit map keyed by the wire form of δ; `fallback` (if given)
    // answers for vectors not in the map.
    static DecompFn table(std::map<std::string, BigNat> entries,
                          std::optional<BigNat> fallback, bool ascending);
    static DecompFn derived(std::string name,
                            std::function<BigNat(const DimVector&)> fn,
                            bool ascending);

    BigNat operator()(const DimVector& v) const;
    bool ascending() const { return ascending_; }
    const std::string& describe() const { return description_; }

private:
    DecompFn(std::string description, std::function<BigNat(const DimVector&)> fn,
             bool ascending)
        : description_(std::move(description)), fn_(std::move(fn)), ascending_(ascending) {}

    std::string description_;
    std::function<BigNat(const DimVector&)> fn_;
    bool ascending_;
};

// Literals: "const:c", "affine:a,b", or "table:@path.json" where the file
// holds {"entries": {"<wire form>": "<decimal>", ...},
//        "default": "<decimal>" (optional), "ascending": <bool> (optional)}.
DecompFn parse_decomp_fn(std::string_view literal);

// --- decomposition search ---------------------------------------------------

// Decomposition trees are finite (each step strictly decreases the lex
// order) but not small: affine step functions at degree bound 3 produce
// chains whose lengths and coordinate sizes grow doubly exponentially, so
// exhaustive search on such instances is out of reach at any budget.  Both
// searches abort with BudgetError: the nodes flavor after max_nodes visited
// (or memoized) vectors, and the bits flavor once the memory they retain
// (pending vectors, memo entries, collected terminals) exceeds
// max_retained_bits.
struct DecompLimits {
    std::uint64_t max_nodes = 1000000;
    std::uint64_t max_retained_bits = 1ull << 32;  // ~512 MiB
};

// All single steps from δ: one per degree i (descending, 2 <= i <= deg δ)
// with δ_i != 0, paired with the successor vector.  Empty for terminal δ.
std::vector<std::pair<std::uint64_t, DimVector>> simple_decompositions(
    const DimVector& v, const DecompFn& F);

// Exhaustive search of all decomposition chains; returns the sorted set of
// terminal degree-1 multiplicities.  Throws BudgetError (nodes) when the
// chain tree exceeds limits.max_nodes.
std::vector<BigNat> enumerate_terminals(const DimVector& v, const DecompFn& F,
                                        const DecompLimits& limits = {});

// B(δ): max of |δ| and the bounds of all one-step successors, memoized on
// the exact vector.  Equals max(enumerate_terminals(δ, F)) wherever both
// finish, but completes on far larger instances.  Throws BudgetError
// (nodes) after limits.max_nodes distinct subproblems.
BigNat decompose_max(const DimVector& v, const DecompFn& F,
                     const DecompLimits& limits = {});

}  // namespace stillman
