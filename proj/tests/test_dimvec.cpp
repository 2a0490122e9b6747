// Checks for dimension vectors: the lexicographic order, wire parsing,
// simple decompositions, exhaustive terminal enumeration vs. the brute-force
// oracle, and the memoized maximal bound.

#include <algorithm>
#include <fstream>
#include <optional>

#include "oracles.hpp"
#include "stillman/dimvec.hpp"
#include "support.hpp"

using namespace stillman;

namespace {

DimVector vec3(unsigned long d1, unsigned long d2, unsigned long d3) {
    return DimVector(3, {BigNat(d1), BigNat(d2), BigNat(d3)});
}

void vector_basics() {
    testsupport::section("vector basics");
    DimVector v = vec3(2, 0, 1);
    CHECK_EQ(v.bound(), std::uint64_t{3});
    CHECK_EQ(v.degree(), std::uint64_t{3});
    CHECK_EQ(v.entry(1), BigNat(2));
    CHECK_EQ(v.entry(2), BigNat(0u));
    CHECK_EQ(v.entry(3), BigNat(1));
    CHECK_EQ(v.entry(9), BigNat(0u));
    CHECK_EQ(v.total(), BigNat(3));
    CHECK(!v.is_zero());
    CHECK(!v.degree_one_only());

    DimVector zero(3);
    CHECK(zero.is_zero());
    CHECK(zero.degree_one_only());
    CHECK_EQ(zero.degree(), std::uint64_t{0});
    CHECK_EQ(zero.total(), BigNat(0u));

    // Trailing zeros trim away; degree reflects actual support.
    CHECK_EQ(vec3(2, 2, 0).degree(), std::uint64_t{2});
    CHECK(vec3(2, 2, 0) == DimVector(3, {BigNat(2), BigNat(2)}));

    CHECK(DimVector::unit(3, 2) == vec3(0, 1, 0));
    CHECK(DimVector::unit_sum(3, 3) == vec3(1, 1, 1));
    CHECK(DimVector::unit_sum(3, 1) == vec3(1, 0, 0));
    CHECK(DimVector::unit_sum(2, 2).scaled(BigNat(2)) == DimVector(2, {BigNat(2), BigNat(2)}));
    CHECK(vec3(1, 1, 0) + vec3(1, 0, 1) == vec3(2, 1, 1));
    CHECK(vec3(1, 2, 3).scaled(BigNat(0u)).is_zero());

    DimVector acc = vec3(1, 1, 1);
    acc.add(2, BigNat(4));
    CHECK_EQ(acc.entry(2), BigNat(5));
    acc.sub(3, BigNat(1));
    CHECK_EQ(acc.degree(), std::uint64_t{2});

    CHECK_THROWS(DimVector(0), std::invalid_argument);
    CHECK_THROWS(DimVector(2, {BigNat(1), BigNat(1), BigNat(1)}), std::invalid_argument);
    CHECK_THROWS(DimVector::unit(2, 3), std::invalid_argument);
    CHECK_THROWS(vec3(1, 1, 1).sub(2, BigNat(5)), std::invalid_argument);
    CHECK_THROWS(vec3(1, 1, 1).add(4, BigNat(1)), std::invalid_argument);
    CHECK_THROWS(vec3(0, 0, 0).entry(0), std::invalid_argument);
    CHECK_THROWS(vec3(1, 0, 0) + DimVector(2, {BigNat(1)}), std::invalid_argument);
}

void lexicographic_order() {
    testsupport::section("lexicographic order");
    CHECK_EQ(lex_compare(vec3(0, 1, 0), vec3(5, 0, 0)), Ordering::greater);
    CHECK_EQ(lex_compare(vec3(2, 0, 1), vec3(2, 0, 1)), Ordering::equal);
    CHECK_EQ(lex_compare(vec3(1, 0, 1), vec3(2, 0, 1)), Ordering::less);
    CHECK_EQ(lex_compare(vec3(9, 9, 0), vec3(0, 0, 1)), Ordering::less);
    CHECK_EQ(lex_compare(vec3(0, 2, 0), vec3(9, 1, 0)), Ordering::greater);
    CHECK_EQ(lex_compare(DimVector(3), vec3(1, 0, 0)), Ordering::less);
    CHECK_THROWS(lex_compare(DimVector(2, {BigNat(1)}), DimVector(3, {BigNat(1)})),
                 std::invalid_argument);
}

void wire_format() {
    testsupport::section("wire format");
    CHECK(parse_dimvector("2,0,1") == vec3(2, 0, 1));
    CHECK(parse_dimvector("2,2") == DimVector(2, {BigNat(2), BigNat(2)}));
    CHECK(parse_dimvector("2,2", 3) == vec3(2, 2, 0));
    CHECK(parse_dimvector(" 2 , 0 , 1 ") == vec3(2, 0, 1));
    CHECK(parse_dimvector("0") == DimVector(1));
    CHECK_EQ(format_dimvector(vec3(2, 0, 1)), std::string("2,0,1"));
    CHECK_EQ(format_dimvector(vec3(2, 2, 0)), std::string("2,2"));
    CHECK_EQ(format_dimvector(DimVector(3)), std::string("0"));
    CHECK_EQ(format_dimvector(parse_dimvector("3,1,0")), std::string("3,1"));

    CHECK_THROWS(parse_dimvector(""), std::invalid_argument);
    CHECK_THROWS(parse_dimvector("2,,1"), std::invalid_argument);
    CHECK_THROWS(parse_dimvector("2;1"), std::invalid_argument);
    CHECK_THROWS(parse_dimvector("1,2", 1), std::invalid_argument);
    CHECK_THROWS(parse_dimvector("-1,2"), std::invalid_argument);
}

void step_functions() {
    testsupport::section("step functions");
    DecompFn c2 = DecompFn::constant(BigNat(2));
    CHECK_EQ(c2(vec3(4, 4, 4)), BigNat(2));
    CHECK(c2.ascending());
    CHECK_EQ(c2.describe(), std::string("const:2"));

    DecompFn aff = DecompFn::affine(BigNat(8), BigNat(4));
    CHECK_EQ(aff(DimVector(2, {BigNat(2), BigNat(2)})), BigNat(36));
    CHECK_EQ(aff.describe(), std::string("affine:8,4"));

    DecompFn total = parse_decomp_fn("affine:1,0");
    CHECK_EQ(total(vec3(1, 1, 0)), BigNat(2));
    CHECK_EQ(parse_decomp_fn("const:7")(vec3(0, 1, 0)), BigNat(7));

    CHECK_THROWS(DecompFn::constant(BigNat(0u)), std::invalid_argument);
    CHECK_THROWS(DecompFn::affine(BigNat(0u), BigNat(0u)), std::invalid_argument);
    CHECK_THROWS(parse_decomp_fn("poly:1,2,3"), std::invalid_argument);
    CHECK_THROWS(parse_decomp_fn("affine:4"), std::invalid_argument);
    CHECK_THROWS(parse_decomp_fn("const"), std::invalid_argument);
    // affine:1,0 evaluates to 0 on the zero vector: positivity is enforced
    // at call time.
    CHECK_THROWS(total(DimVector(3)), std::invalid_argument);

    DecompFn table = DecompFn::table({{"1,1", BigNat(3)}}, std::nullopt, true);
    CHECK_EQ(table(DimVector(2, {BigNat(1), BigNat(1)})), BigNat(3));
    CHECK_THROWS(table(vec3(9, 9, 9)), std::invalid_argument);
    DecompFn with_default = DecompFn::table({{"1,1", BigNat(3)}}, BigNat(5), false);
    CHECK_EQ(with_default(vec3(9, 9, 9)), BigNat(5));
    CHECK(!with_default.ascending());
    CHECK_THROWS(DecompFn::table({{"1,1,0", BigNat(3)}}, std::nullopt, true),
                 std::invalid_argument);
    CHECK_THROWS(DecompFn::table({{"1,1", BigNat(0u)}}, std::nullopt, true),
                 std::invalid_argument);

    DecompFn derived = DecompFn::derived(
        "double-total", [](const DimVector& v) { return BigNat(2) * v.total(); }, true);
    CHECK_EQ(derived(vec3(1, 2, 0)), BigNat(6));
    CHECK_EQ(derived.describe(), std::string("double-total"));

    {
        std::ofstream out("step_table_test.json");
        out << R"({"entries": {"1,1": "3"}, "default": 5, "ascending": true})";
    }
    DecompFn from_file = parse_decomp_fn("table:@step_table_test.json");
    CHECK_EQ(from_file(DimVector(2, {BigNat(1), BigNat(1)})), BigNat(3));
    CHECK_EQ(from_file(vec3(2, 2, 2)), BigNat(5));
    CHECK(from_file.ascending());
    CHECK_THROWS(parse_decomp_fn("table:@does_not_exist.json"), std::invalid_argument);
    CHECK_THROWS(parse_decomp_fn("table:no_at_sign.json"), std::invalid_argument);
}

void decomposition_steps() {
    testsupport::section("simple decompositions");
    DecompFn c2 = DecompFn::constant(BigNat(2));
    DecompFn total = DecompFn::affine(BigNat(1), BigNat(0u));

    // Terminal vectors decompose to nothing.
    CHECK(simple_decompositions(DimVector(3, {BigNat(5)}), c2).empty());
    CHECK(simple_decompositions(DimVector(3), c2).empty());

    auto single = simple_decompositions(DimVector(2, {BigNat(0u), BigNat(1)}), c2);
    CHECK_EQ(single.size(), std::size_t{1});
    CHECK_EQ(single[0].first, std::uint64_t{2});
    CHECK(single[0].second == DimVector(2, {BigNat(2)}));

    // Two choices for e_3 + e_2 under F = |δ|, listed by descending degree.
    auto both = simple_decompositions(vec3(0, 1, 1), total);
    CHECK_EQ(both.size(), std::size_t{2});
    CHECK_EQ(both[0].first, std::uint64_t{3});
    CHECK(both[0].second == vec3(2, 3, 0));
    CHECK_EQ(both[1].first, std::uint64_t{2});
    CHECK(both[1].second == vec3(2, 0, 1));

    // Every step strictly decreases the vector lexicographically.
    for (auto& [degree, next] : both) {
        (void)degree;
        CHECK_EQ(lex_compare(next, vec3(0, 1, 1)), Ordering::less);
    }
}

void terminal_enumeration() {
    testsupport::section("terminal enumeration");
    DecompFn one = DecompFn::constant(BigNat(1));
    DecompFn total = DecompFn::affine(BigNat(1), BigNat(0u));

    auto only = enumerate_terminals(DimVector(1, {BigNat(5)}), one);
    CHECK_EQ(only.size(), std::size_t{1});
    CHECK_EQ(only[0], BigNat(5));

    auto chain = enumerate_terminals(DimVector(2, {BigNat(1), BigNat(1)}), one);
    CHECK_EQ(chain.size(), std::size_t{1});
    CHECK_EQ(chain[0], BigNat(2));

    auto mixed = enumerate_terminals(vec3(0, 1, 1), total);
    CHECK_EQ(mixed.size(), std::size_t{2});
    CHECK_EQ(mixed[0], BigNat(oracles::kMixedVecTerminalLo));
    CHECK_EQ(mixed[1], BigNat(oracles::kMixedVecTerminalHi));

    // Node budget surfaces as the dedicated error kind.
    DecompLimits tiny;
    tiny.max_nodes = 3;
    bool threw = false;
    try {
        enumerate_terminals(vec3(0, 1, 1), total, tiny);
    } catch (const BudgetError& e) {
        threw = true;
        CHECK(e.kind() == BudgetError::Kind::nodes);
        CHECK_EQ(e.limit(), std::uint64_t{3});
    }
    CHECK(threw);
}

void maximal_bound() {
    testsupport::section("maximal bound");
    DecompFn total = DecompFn::affine(BigNat(1), BigNat(0u));
    for (unsigned long n : {0ul, 1ul, 7ul}) {
        CHECK_EQ(decompose_max(DimVector(2, {BigNat(n)}), total), BigNat(n));
    }
    CHECK_EQ(decompose_max(vec3(0, 1, 1), total), BigNat(oracles::kMixedVecTerminalHi));
    CHECK_EQ(decompose_max(DimVector(2, {BigNat(2), BigNat(2)}),
                           DecompFn::affine(BigNat(8), BigNat(4))),
             BigNat(oracles::kGammaB2of2E2));

    DecompLimits tiny;
    tiny.max_nodes = 2;
    CHECK_THROWS(decompose_max(vec3(0, 1, 1), total, tiny), BudgetError);
}

// The full contract grid: every vector with degree bound <= 3 and total <= 4
// against the four named step functions, cross-checked with the brute-force
// oracle and each documented property.
void contract_grid() {
    testsupport::section("contract grid");
    struct NamedFn {
        DecompFn lib;
        oracles::DecompFun oracle;
    };
    std::vector<NamedFn> fns;
    fns.push_back({DecompFn::constant(BigNat(1)),
                   [](const oracles::Vec&) { return BigNat(1); }});
    fns.push_back({DecompFn::constant(BigNat(2)),
                   [](const oracles::Vec&) { return BigNat(2); }});
    fns.push_back({DecompFn::affine(BigNat(1), BigNat(0u)),
                   [](const oracles::Vec& v) { return oracles::vec_total(v); }});
    fns.push_back({DecompFn::affine(BigNat(1), BigNat(2)),
                   [](const oracles::Vec& v) { return oracles::vec_total(v) + BigNat(2); }});

    // Affine step functions at d=3 with enough degree-3 mass produce chains
    // of doubly-exponential length; those instances must fail fast with a
    // budget error rather than complete.  Keep the probe budget modest so
    // the failures are quick.
    DecompLimits probe;
    probe.max_nodes = 200000;
    probe.max_retained_bits = 1ull << 28;

    int instances = 0;
    int max_completed = 0;
    int max_aborted = 0;
    int enum_completed = 0;
    int enum_aborted = 0;
    for (unsigned long d1 = 0; d1 <= 4; ++d1) {
        for (unsigned long d2 = 0; d2 + d1 <= 4; ++d2) {
            for (unsigned long d3 = 0; d3 + d2 + d1 <= 4; ++d3) {
                DimVector v = vec3(d1, d2, d3);
                oracles::Vec ov = {BigNat(d1), BigNat(d2), BigNat(d3)};
                ++instances;
                std::vector<std::optional<BigNat>> maxima;
                for (std::size_t fi = 0; fi < fns.size(); ++fi) {
                    const NamedFn& f = fns[fi];
                    // The two searches are attempted independently: the
                    // memoized maximum search retains its table for the whole
                    // run while the exhaustive walk releases finished
                    // branches, so either one can hit the budget on an
                    // instance the other completes.
                    std::optional<BigNat> b;
                    try {
                        b = decompose_max(v, f.lib, probe);
                        ++max_completed;
                    } catch (const BudgetError&) {
                        ++max_aborted;
                    }
                    maxima.push_back(b);

                    std::optional<std::vector<BigNat>> terminals;
                    try {
                        terminals = enumerate_terminals(v, f.lib, probe);
                        ++enum_completed;
                    } catch (const BudgetError&) {
                        ++enum_aborted;
                    }

                    // The constant step functions stay within budget on the
                    // whole grid.
                    if (fi < 2) {
                        CHECK(b.has_value());
                        CHECK(terminals.has_value());
                    }

                    if (terminals) {
                        // An exhaustive walk that fit in 200k nodes is well
                        // within the brute-force oracle's own budget.
                        auto expected = oracles::decompose_terminals(ov, f.oracle);
                        std::sort(expected.begin(), expected.end());
                        expected.erase(
                            std::unique(expected.begin(), expected.end()),
                            expected.end());
                        CHECK(*terminals == expected);
                        CHECK(!terminals->empty());
                        CHECK(terminals->back() >= v.total());
                    }
                    if (b) CHECK(*b >= v.total());
                    if (b && terminals) {
                        CHECK_EQ(*b, terminals->back());
                        CHECK_EQ(*b, oracles::decompose_bound(ov, f.oracle));
                    }

                    for (auto& [degree, next] : simple_decompositions(v, f.lib)) {
                        (void)degree;
                        CHECK_EQ(lex_compare(next, v), Ordering::less);
                    }
                }
                // Pointwise-larger step functions give larger bounds:
                // const 1 <= const 2, and affine(1,0) <= affine(1,2), on
                // instances where both complete.
                CHECK(maxima[0] && maxima[1] && *maxima[0] <= *maxima[1]);
                if (maxima[2] && maxima[3]) CHECK(*maxima[2] <= *maxima[3]);
            }
        }
    }
    CHECK_EQ(instances, 35);
    // The constant step functions complete everywhere (70 of the 140 runs
    // per search); the affine ones lose only the degree-3-heavy instances.
    CHECK(max_completed >= 120);
    CHECK(enum_completed >= 120);
    // ...but the budget genuinely bites on both searches.
    CHECK(max_aborted >= 8);
    CHECK(enum_aborted >= 8);
}

}  // namespace

int main() {
    vector_basics();
    lexicographic_order();
    wire_format();
    step_functions();
    decomposition_steps();
    terminal_enumeration();
    maximal_bound();
    contract_grid();
    return testsupport::summary("test_dimvec");
}
