// Top-level acceptance run: nine criteria, one PASS/FAIL line each, exit
// nonzero if any criterion fails.  argv[1] is the path to the built
// command-line binary (used by the final criterion).

#include <sys/wait.h>

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stillman/arrow.hpp"
#include "stillman/bignat.hpp"
#include "stillman/bounds.hpp"
#include "stillman/budget.hpp"
#include "stillman/dimvec.hpp"
#include "stillman/packages.hpp"
#include "stillman/verify.hpp"

using namespace stillman;

namespace {

using Problems = std::vector<std::string>;

void expect(Problems& problems, bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
}

int failed_criteria = 0;

template <class Body>
void criterion(int number, const char* title, Body&& body) {
    Problems problems;
    try {
        body(problems);
    } catch (const std::exception& e) {
        problems.push_back(std::string("unexpected exception: ") + e.what());
    }
    if (problems.empty()) {
        std::printf("PASS criterion %d: %s\n", number, title);
        return;
    }
    ++failed_criteria;
    std::printf("FAIL criterion %d: %s\n", number, title);
    for (const std::string& p : problems) std::printf("     - %s\n", p.c_str());
}

// Suite runs are part of several criteria; pin the case counts too so a
// silently shrunken grid cannot fake a pass.
void expect_suite(Problems& problems, const char* suite, PackageMode mode,
                  std::uint64_t want_cases) {
    const SuiteReport rep = run_suite(suite, {}, default_budget(), mode);
    expect(problems, rep.passed(),
           std::string(suite) + " (" + to_string(mode) + ") reported " +
               std::to_string(rep.failures.size()) + " failure(s)");
    expect(problems, rep.cases == want_cases,
           std::string(suite) + " ran " + std::to_string(rep.cases) + " cases, expected " +
               std::to_string(want_cases));
    if (!rep.failures.empty()) {
        const CaseFailure& f = rep.failures.front();
        problems.push_back("first failure: " + f.inputs + " | " + f.relation + " | " +
                           f.observed);
    }
}

struct RunResult {
    std::string out;
    int code = -1;
};

RunResult run_pipeline(const std::string& pipeline) {
    RunResult r;
    FILE* pipe = popen(pipeline.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    for (;;) {
        const std::size_t n = std::fread(buf, 1, sizeof buf, pipe);
        if (n == 0) break;
        r.out.append(buf, n);
    }
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc >= 2 ? argv[1] : "";

    criterion(1, "exact evaluation and certified overflow", [](Problems& p) {
        const Budget b;  // stock limits: 2^20 bits, 10^6 steps
        const EvalResult r1 = eval_exact(parse_expr("4{1}4"), b);
        expect(p, r1.exact && r1.value == BigNat(256u), "4{1}4 != 256");
        const EvalResult r2 = eval_exact(parse_expr("2{2}4"), b);
        expect(p, r2.exact && r2.value == BigNat(65536u), "2{2}4 != 65536");
        const EvalResult r3 = eval_exact(parse_expr("3{2}3"), b);
        expect(p, r3.exact && r3.value == BigNat::pow(BigNat(3), 27), "3{2}3 != 3^27");
        const EvalResult r4 = eval_exact(parse_expr("4{2}4"), b);
        expect(p, !r4.exact, "4{2}4 evaluated exactly under the stock budget");
        expect(p, !r4.exact && !(r4.value < BigNat::pow2(1u << 20)),
               "4{2}4 certified lower bound is below 2^(2^20)");
    });

    criterion(2, "comparator laws on the exhaustive small grid", [](Problems& p) {
        // Stock ranges are exactly the contract grid: bases 2..4, arguments
        // 1..3, levels 1..2, offsets/factors 1..3.
        expect_suite(p, "arrow-identities", PackageMode::paper_literal, 150);
    });

    criterion(3, "random affine chains collapse under the one-arrow bound", [](Problems& p) {
        // 200 seeded chains (entries <= 4 at the stock ranges, levels <= 2)
        // plus two pinned instances.
        expect_suite(p, "chain-collapse", PackageMode::paper_literal, 202);
        // Worked instance: 4 ^2 (2 ^1 (2 ^5 3)) collapses to 4 ^6 5.
        AffineChain chain;
        chain.terms = {{BigNat(1), BigNat(4), 2, BigNat(0)},
                       {BigNat(1), BigNat(2), 1, BigNat(0)},
                       {BigNat(1), BigNat(2), 5, BigNat(0)}};
        chain.sigma = BigNat(3);
        chain.validate();
        expect(p, collapse_bound(chain) == parse_expr("4{6}5"),
               "worked chain does not collapse to 4{6}5, got " +
                   format_expr(collapse_bound(chain)));
    });

    criterion(4, "decomposition maximum matches exhaustive terminal search", [](Problems& p) {
        // Full grid: every vector with degrees <= 3 and total <= 4, under
        // four step functions, maximum vs. every terminal where both finish.
        expect_suite(p, "decomposition-oracle", PackageMode::paper_literal, 417);
        // Pinned witness: one unit in degree 3 plus one in degree 2, F = |v|.
        const DimVector v = parse_dimvector("0,1,1", 3);
        const DecompFn f = parse_decomp_fn("affine:1,0");
        const std::vector<BigNat> terminals = enumerate_terminals(v, f);
        expect(p,
               terminals.size() == 2 && terminals[0] == BigNat(oracles::kMixedVecTerminalLo) &&
                   terminals[1] == BigNat(oracles::kMixedVecTerminalHi),
               "terminals of (0,1,1) under F=|v| are not {33,57}");
        const BigNat best = decompose_max(v, f);
        expect(p, best == BigNat(oracles::kMixedVecTerminalHi),
               "decompose_max of (0,1,1) under F=|v| is not 57, got " + best.to_string());
        expect(p, !(best < v.total()), "decomposition bound fell below the vector total");
    });

    criterion(5, "package values match the independent oracles", [](Problems& p) {
        EvalCtx ctx;
        const auto lit = PackageMode::paper_literal;
        const auto con = PackageMode::consistent;
        const BigNat thA = package_function(PackageId::theta, PackageFn::A, 2, lit)(BigNat(2), ctx);
        expect(p, thA == BigNat(oracles::kThetaA2of2),
               "theta A_2(2) != 10, got " + thA.to_string());
        const BigNat thB = package_function(PackageId::theta, PackageFn::B, 2, lit)(BigNat(2), ctx);
        expect(p, thB == BigNat(oracles::kThetaB2of2) && thB == oracles::theta_B2(2, false),
               "theta B_2(2) != 1252, got " + thB.to_string());
        const BigNat zB =
            package_function(PackageId::zeta, PackageFn::Bhat, 2, lit)(BigNat(2), ctx);
        expect(p, zB == BigNat(oracles::kZetaB2of2) && zB == oracles::zeta_B2(2, false),
               "zeta Bhat_2(2) != 362, got " + zB.to_string());
        const BigNat gB = package_function(PackageId::gamma, PackageFn::B, 2,
                                           lit)(parse_dimvector("2,2", 2), ctx);
        expect(p,
               gB == BigNat(oracles::kGammaB2of2E2) &&
                   gB == oracles::gamma_B2({BigNat(2), BigNat(2)}, false),
               "gamma B_2(2,2) != 354, got " + gB.to_string());
        const BigNat thBc =
            package_function(PackageId::theta, PackageFn::B, 2, con)(BigNat(2), ctx);
        expect(p, thBc == BigNat(oracles::kThetaB2of2Consistent) && thBc == oracles::theta_B2(2, true),
               "consistent theta B_2(2) != 1352, got " + thBc.to_string());
    });

    criterion(6, "degree-2 package dominance in both modes", [](Problems& p) {
        expect_suite(p, "package-dominance", PackageMode::paper_literal, 20);
        expect_suite(p, "package-dominance", PackageMode::consistent, 48);
        // The literal-mode chain pins to exact values at sigma = 2.
        EvalCtx ctx;
        const auto lit = PackageMode::paper_literal;
        const BigNat g = package_function(PackageId::gamma, PackageFn::B, 2,
                                          lit)(parse_dimvector("2,2", 2), ctx);
        const BigNat z = package_function(PackageId::zeta, PackageFn::Bhat, 2, lit)(BigNat(2), ctx);
        const BigNat t = package_function(PackageId::theta, PackageFn::B, 2, lit)(BigNat(2), ctx);
        expect(p, g == BigNat(354u) && z == BigNat(362u) && t == BigNat(1252u),
               "literal chain values are not (354, 362, 1252)");
        expect(p, g < z && z < t, "literal chain 354 <= 362 <= 1252 does not hold");
        // Consistent-mode sample of the reduced == full equality at eta = 3.
        const BigNat beta = package_function(PackageId::beta, PackageFn::B, 2,
                                             PackageMode::consistent)(
            BigNat(3), parse_dimvector("2,2", 2), ctx);
        const BigNat alpha = package_function(PackageId::alpha, PackageFn::B, 2,
                                              PackageMode::consistent)(
            BigNat(3), parse_dimvector("2,2", 2), ctx);
        expect(p, beta == alpha && beta == BigNat(oracles::kAlphaB2Eta3of2E2),
               "consistent beta/alpha at eta=3 on (2,2) are not both 394");
    });

    criterion(7, "indexed functions certified under their arrow towers", [](Problems& p) {
        expect_suite(p, "index-bound", PackageMode::paper_literal, 12);
        expect(p,
               function_index(IndexedFn::A, 2) == 1 && function_index(IndexedFn::psi, 2, 1) == 2 &&
                   function_index(IndexedFn::phi, 2, 1) == 3 && function_index(IndexedFn::B, 2) == 4,
               "degree-2 function indices are not (1, 2, 3, 4)");
        const GrowthFunction fa =
            package_function(PackageId::theta, PackageFn::A, 2, PackageMode::paper_literal);
        const GrowthFunction fb =
            package_function(PackageId::theta, PackageFn::B, 2, PackageMode::paper_literal);
        const Budget budget;
        for (unsigned long sigma = 2; sigma <= 4; ++sigma) {
            EvalCtx ctx;
            const BigNat s(sigma);
            const BigNat values[] = {fa(s, ctx), doubling_psi(fa, 2, 1, s, ctx),
                                     doubling_phi(fa, 2, 1, s, ctx), fb(s, ctx)};
            const char* names[] = {"A_2", "psi_1", "phi_1", "B_2"};
            for (int i = 0; i < 4; ++i) {
                const ArrowExpr tower = ArrowExpr::node(
                    BigNat(3), static_cast<std::uint64_t>(i + 1),
                    ArrowExpr::node(BigNat(3), 1, ArrowExpr::leaf(s)));
                const Ordering o = compare(ArrowExpr::leaf(values[i]), tower, budget);
                expect(p, o == Ordering::less,
                       std::string(names[i]) + "(" + std::to_string(sigma) +
                           ") not certified below its tower; compare says " + to_string(o));
            }
        }
    });

    criterion(8, "closed-form bounds parse-identical to their stated shapes", [](Problems& p) {
        const auto shape = [&p](BoundKind kind, const BoundParams& params, const char* offset,
                                const char* expr_text, const char* label) {
            const Bound b = closed_form_bound(kind, params);
            expect(p, b.offset == BigNat(std::string_view(offset)),
                   std::string(label) + ": offset != " + offset);
            expect(p, b.expr == parse_expr(expr_text),
                   std::string(label) + ": expression is " + format_expr(b.expr) + ", expected " +
                       expr_text);
        };
        BoundParams ds;
        ds.d = BigNat(2);
        ds.sigma = BigNat(2);
        shape(BoundKind::pd, ds, "0", "3{4}3{1}2", "pd(2,2)");
        shape(BoundKind::min_prime, ds, "0", "2{1}2{1}3{4}3{1}2", "min-prime(2,2)");
        BoundParams de;
        de.d = BigNat(2);
        de.eta = BigNat(5);
        shape(BoundKind::serre_strength, de, "0", "7", "serre-strength(2,5)");
        BoundParams eh;
        eh.e = BigNat(2);
        eh.h = BigNat(2);
        shape(BoundKind::eg_primary, eh, "0", "4{15}5", "eg-primary(2,2)");
        BoundParams bd;
        bd.B = BigNat(3);
        bd.d = BigNat(2);
        shape(BoundKind::colon_beta0_product, bd, "0", "289", "colon-product(3,2)");
        const EvalResult colon = eval_bound(closed_form_bound(BoundKind::colon_beta0_product, bd));
        expect(p, colon.exact && colon.value == BigNat(289u),
               "colon-product(3,2) does not evaluate to exactly 289");
    });

    criterion(9, "command-line golden fixture is byte-stable", [&cli_path](Problems& p) {
        if (cli_path.empty()) {
            p.push_back("no binary path supplied (argv[1])");
            return;
        }
        struct Entry {
            const char* args;
            int code;
            const char* out;
        };
        // Twelve invocations: every subcommand, both seed modes, ascii and
        // json, and the 0/1/2/64 exit classes.
        const Entry fixture[] = {
            {"bound pd --d 5 --sigma 3 --format ascii", 0, "6{28}6{1}3\n"},
            {"bound serre-strength --d 2 --eta 5 --format json", 0,
             "{\"offset\":\"0\",\"expr\":{\"type\":\"nat\",\"value\":\"7\"}}\n"},
            {"bound pd --d 2", 64, ""},
            {"eval --expr '4{1}4'", 0, "256\n"},
            {"eval --expr '4{2}4' --format json", 2,
             "{\"exact\":false,\"lower_bound_bits\":1048577}\n"},
            {"compare --lhs '2{2}4' --rhs '2{1}16'", 0, "equal\n"},
            {"compare --lhs '3{6}3' --rhs '4{6}2'", 1, "unknown\n"},
            {"decompose --d 2 --delta 2,2 --f affine:8,4 --max", 0, "354\n"},
            {"decompose --d 3 --delta 0,1,1 --f affine:1,0 --terminals --format json", 0,
             "{\"terminals\":[\"33\",\"57\"]}\n"},
            {"package --package theta --fn B --d 2 --arg 2", 0, "1252\n"},
            {"package --package theta --fn B --d 2 --arg 2 --mode consistent", 0, "1352\n"},
            {"verify --suite package-dominance --json", 0,
             "{\"suite\":\"package-dominance\",\"mode\":\"paper-literal\",\"seed\":2026,"
             "\"cases\":20,\"undecided_allowed\":0,\"failures\":[],\"result\":\"pass\"}\n"},
        };
        const std::string bin = "'" + cli_path + "'";
        std::vector<std::string> first;
        for (const Entry& e : fixture) {
            const RunResult r = run_pipeline(bin + " " + e.args + " 2>/dev/null");
            expect(p, r.code == e.code,
                   std::string(e.args) + ": exit " + std::to_string(r.code) + ", expected " +
                       std::to_string(e.code));
            expect(p, r.out == e.out, std::string(e.args) + ": stdout drifted from the fixture");
            first.push_back(r.out);
        }
        for (std::size_t i = 0; i < std::size(fixture); ++i) {
            const RunResult again = run_pipeline(bin + " " + fixture[i].args + " 2>/dev/null");
            expect(p, again.out == first[i],
                   std::string(fixture[i].args) + ": second run differed (not byte-stable)");
        }
    });

    if (failed_criteria == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d of 9 criteria FAILED\n", failed_criteria);
    return 1;
}
