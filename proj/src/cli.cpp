#include "stillman/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stillman/arrow.hpp"
#include "stillman/bounds.hpp"
#include "stillman/budget.hpp"
#include "stillman/dimvec.hpp"
#include "stillman/packages.hpp"
#include "stillman/verify.hpp"

namespace stillman {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUndecided = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct GlobalOpts {
    std::string format = "ascii";
    std::optional<std::uint64_t> max_bits;
    std::optional<std::uint64_t> max_steps;
    std::string out_path;
};

ExprStyle style_of(const std::string& name) {
    if (name == "ascii") return ExprStyle::ascii;
    if (name == "unicode") return ExprStyle::unicode;
    if (name == "latex") return ExprStyle::latex;
    if (name == "json") return ExprStyle::json;
    throw std::invalid_argument("unknown format \"" + name +
                                "\"; formats: ascii, unicode, latex, json");
}

Budget make_budget(const GlobalOpts& g) {
    Budget b = default_budget();
    if (g.max_bits) b.max_bits = *g.max_bits;
    if (g.max_steps) b.max_steps = *g.max_steps;
    b.validate();
    return b;
}

// Results go to stdout, or to --out when given; diagnostics always go to
// stderr.  Every payload is newline-terminated exactly once.
void emit(const GlobalOpts& g, std::string payload) {
    if (payload.empty() || payload.back() != '\n') payload.push_back('\n');
    if (!g.out_path.empty()) {
        std::ofstream out(g.out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open --out path: " + g.out_path);
        out << payload;
        return;
    }
    std::cout << payload;
}

BigNat parse_nat(const std::string& text, const char* what) {
    try {
        return BigNat(std::string_view(text));
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + " expects a decimal integer, got \"" +
                                    text + "\"");
    }
}

// ---------------------------------------------------------------------------
// bound

const std::pair<const char*, std::optional<BigNat> BoundParams::*> kBoundFields[] = {
    {"--d", &BoundParams::d},
    {"--sigma", &BoundParams::sigma},
    {"--eta", &BoundParams::eta},
    {"--delta-sum", &BoundParams::delta_sum},
    {"--e", &BoundParams::e},
    {"--h", &BoundParams::h},
    {"--m", &BoundParams::m},
    {"--n", &BoundParams::n},
    {"--B", &BoundParams::B},
    {"--d1", &BoundParams::d1},
    {"--k", &BoundParams::k},
};

int run_bound(const GlobalOpts& g, const CLI::App* cmd, const std::string& kind_text,
              const std::map<std::string, std::string>& values) {
    const BoundKind kind = parse_bound_kind(kind_text);
    BoundParams params;
    for (const auto& [flag, member] : kBoundFields) {
        if (cmd->count(flag) > 0) params.*member = parse_nat(values.at(flag), flag);
    }
    const Bound bound = closed_form_bound(kind, params, make_budget(g));
    if (!bound.note.empty() && g.format != "json") std::cerr << "note: " << bound.note << '\n';
    emit(g, format_bound(bound, style_of(g.format)));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

int run_eval(const GlobalOpts& g, const std::string& expr_text) {
    const Budget budget = make_budget(g);
    const ArrowExpr expr = parse_expr(expr_text);
    const EvalResult r = eval_exact(expr, budget);
    if (g.format == "json") {
        nlohmann::ordered_json j;
        j["exact"] = r.exact;
        if (r.exact) {
            j["value"] = r.value.to_string();
        } else {
            j["lower_bound_bits"] = r.value.bit_length();
        }
        emit(g, j.dump());
    } else if (r.exact) {
        emit(g, r.value.to_string());
    } else {
        emit(g, "exceeds budget (value >= 2^" + std::to_string(r.value.bit_length() - 1) + ")");
    }
    return r.exact ? kExitOk : kExitBudget;
}

// ---------------------------------------------------------------------------
// compare

int run_compare(const GlobalOpts& g, const std::string& lhs_text, const std::string& rhs_text) {
    const Budget budget = make_budget(g);
    const Ordering o = compare(parse_expr(lhs_text), parse_expr(rhs_text), budget);
    if (g.format == "json") {
        nlohmann::ordered_json j;
        j["ordering"] = to_string(o);
        emit(g, j.dump());
    } else {
        emit(g, to_string(o));
    }
    return o == Ordering::unknown ? kExitUndecided : kExitOk;
}

// ---------------------------------------------------------------------------
// decompose

int run_decompose(const GlobalOpts& g, std::uint64_t d, const std::string& delta_text,
                  const std::string& f_text, bool want_max, bool want_terminals) {
    if (want_max && want_terminals)
        throw std::invalid_argument("--max and --terminals are mutually exclusive");
    if (d == 0) throw std::invalid_argument("--d must be at least 1");
    const DimVector v = parse_dimvector(delta_text, d);
    const DecompFn f = parse_decomp_fn(f_text);
    if (want_terminals) {
        const std::vector<BigNat> terminals = enumerate_terminals(v, f);
        if (g.format == "json") {
            nlohmann::ordered_json j;
            auto& arr = j["terminals"] = nlohmann::ordered_json::array();
            for (const BigNat& t : terminals) arr.push_back(t.to_string());
            emit(g, j.dump());
        } else {
            std::string line;
            for (const BigNat& t : terminals) {
                if (!line.empty()) line.push_back(',');
                line += t.to_string();
            }
            emit(g, line);
        }
    } else {
        const BigNat bound = decompose_max(v, f);
        if (g.format == "json") {
            nlohmann::ordered_json j;
            j["bound"] = bound.to_string();
            emit(g, j.dump());
        } else {
            emit(g, bound.to_string());
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// package

int run_package(const GlobalOpts& g, const CLI::App* cmd, const std::string& pkg_text,
                const std::string& fn_text, std::uint64_t d, const std::string& mode_text,
                const std::string& eta_text, const std::string& arg_text) {
    const PackageId pkg = parse_package_id(pkg_text);
    const PackageFn fn = parse_package_fn(fn_text);
    const PackageMode mode = parse_package_mode(mode_text);
    const GrowthFunction f = package_function(pkg, fn, d, mode);
    const bool have_eta = cmd->count("--eta") > 0;
    const bool need_eta =
        f.signature() == Signature::eta_scalar || f.signature() == Signature::eta_vec;
    const std::string label = to_string(pkg) + "." + to_string(fn);
    if (need_eta && !have_eta)
        throw std::invalid_argument("function " + label + " requires --eta");
    if (!need_eta && have_eta)
        throw std::invalid_argument("function " + label + " takes no --eta");

    EvalCtx ctx(make_budget(g));
    BigNat value;
    switch (f.signature()) {
        case Signature::scalar:
            value = f(parse_nat(arg_text, "--arg"), ctx);
            break;
        case Signature::eta_scalar:
            value = f(parse_nat(eta_text, "--eta"), parse_nat(arg_text, "--arg"), ctx);
            break;
        case Signature::vec:
            value = f(parse_dimvector(arg_text, f.vector_bound()), ctx);
            break;
        case Signature::eta_vec:
            value = f(parse_nat(eta_text, "--eta"), parse_dimvector(arg_text, f.vector_bound()),
                      ctx);
            break;
    }

    if (g.format == "json") {
        nlohmann::ordered_json j;
        j["package"] = to_string(pkg);
        j["fn"] = to_string(fn);
        j["d"] = d;
        j["mode"] = to_string(mode);
        if (have_eta) j["eta"] = parse_nat(eta_text, "--eta").to_string();
        j["arg"] = arg_text;
        j["value"] = value.to_string();
        emit(g, j.dump());
    } else {
        emit(g, value.to_string());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const GlobalOpts& g, const std::string& suite, std::uint64_t seed,
               const std::string& mode_text, bool json_flag) {
    const PackageMode mode = parse_package_mode(mode_text);
    const Budget budget = make_budget(g);
    const SuiteReport rep = run_suite(suite, {}, budget, mode, seed);
    const bool as_json = json_flag || g.format == "json";
    emit(g, as_json ? rep.json() : rep.text());
    std::fprintf(stderr, "wall-ms: %.1f\n", rep.wall_ms);
    return rep.passed() ? kExitOk : kExitVerifyFailed;
}

std::string joined_suites() {
    std::string out;
    for (const std::string& id : suite_ids()) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    GlobalOpts g;
    CLI::App app{"Arrow arithmetic, decomposition bounds, growth-function packages, and the "
                 "property verifier.",
                 "stillman"};
    app.fallthrough();  // global flags may appear after the subcommand
    app.require_subcommand(1);
    app.add_option("--format", g.format, "Output format: ascii, unicode, latex, json")
        ->capture_default_str();
    app.add_option("--max-bits", g.max_bits,
                   "Bit cap for evaluation (overrides STILLMAN_MAX_BITS)");
    app.add_option("--max-steps", g.max_steps,
                   "Step cap for recurrences (overrides STILLMAN_MAX_STEPS)");
    app.add_option("--out", g.out_path, "Write the result to this file instead of stdout");
    app.footer("Exit codes: 0 ok, 1 undecided comparison, 2 budget exceeded, 3 verify "
               "failures, 64 usage error.");

    // bound
    auto* bound_cmd =
        app.add_subcommand("bound", "Closed-form arrow bound for a named result family");
    // The parameter set includes --h, so this subcommand cannot keep the
    // default -h short flag for help.
    bound_cmd->set_help_flag("--help", "Print this help message and exit");
    std::string bound_kind;
    bound_cmd->add_option("kind", bound_kind, "Bound family, e.g. pd, serre-strength")
        ->required();
    std::map<std::string, std::string> bound_vals;
    for (const auto& [flag, member] : kBoundFields) {
        (void)member;
        bound_cmd->add_option(flag, bound_vals[flag],
                              std::string("parameter ") + (flag + 2) + " (decimal)");
    }

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Exactly evaluate an arrow expression");
    std::string eval_expr;
    eval_cmd->add_option("--expr", eval_expr, "Expression, e.g. \"4{2}3\" or \"2^^4\"")
        ->required();

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Certified ordering of two arrow expressions");
    std::string cmp_lhs, cmp_rhs;
    cmp_cmd->add_option("--lhs", cmp_lhs, "Left expression")->required();
    cmp_cmd->add_option("--rhs", cmp_rhs, "Right expression")->required();

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "Decomposition search on a dimension vector");
    std::uint64_t dec_d = 0;
    std::string dec_delta, dec_f;
    bool dec_max = false, dec_terminals = false;
    dec_cmd->add_option("--d", dec_d, "Degree bound (>= 1)")->required();
    dec_cmd->add_option("--delta", dec_delta, "Dimension vector, degree-1 count first: \"2,2\"")
        ->required();
    dec_cmd->add_option("--f", dec_f, "Step function: const:c, affine:a,b, or table:@file.json")
        ->required();
    dec_cmd->add_flag("--max", dec_max, "Print the decomposition bound (default)");
    dec_cmd->add_flag("--terminals", dec_terminals, "Print every terminal multiplicity");

    // package
    auto* pkg_cmd = app.add_subcommand("package", "Evaluate a package function at a point");
    std::string pkg_id, pkg_fn, pkg_mode = "paper-literal", pkg_eta, pkg_arg;
    std::uint64_t pkg_d = 0;
    pkg_cmd->add_option("--package", pkg_id, "alpha, beta, gamma, zeta, theta")->required();
    pkg_cmd->add_option("--fn", pkg_fn, "A, Abar, B, Bscript, D, Ahat, Bhat")->required();
    pkg_cmd->add_option("--d", pkg_d, "Degree")->required();
    pkg_cmd->add_option("--eta", pkg_eta, "Ambient parameter (eta-signature functions only)");
    pkg_cmd->add_option("--arg", pkg_arg, "Scalar (decimal) or dimension vector (\"2,2\")")
        ->required();
    pkg_cmd->add_option("--mode", pkg_mode, "Seed mode: paper-literal or consistent")
        ->capture_default_str();

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "Run a property suite and print its report");
    std::string ver_suite, ver_mode = "paper-literal";
    std::uint64_t ver_seed = kDefaultSuiteSeed;
    bool ver_json = false;
    ver_cmd->add_option("--suite", ver_suite, "Suite id; one of: " + joined_suites())
        ->required();
    ver_cmd->add_option("--seed", ver_seed, "Seed for randomized suites")->capture_default_str();
    ver_cmd->add_option("--mode", ver_mode, "Seed mode: paper-literal or consistent")
        ->capture_default_str();
    ver_cmd->add_flag("--json", ver_json, "Emit the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        (void)style_of(g.format);  // reject unknown formats for every subcommand
        if (app.got_subcommand(bound_cmd)) return run_bound(g, bound_cmd, bound_kind, bound_vals);
        if (app.got_subcommand(eval_cmd)) return run_eval(g, eval_expr);
        if (app.got_subcommand(cmp_cmd)) return run_compare(g, cmp_lhs, cmp_rhs);
        if (app.got_subcommand(dec_cmd))
            return run_decompose(g, dec_d, dec_delta, dec_f, dec_max, dec_terminals);
        if (app.got_subcommand(pkg_cmd))
            return run_package(g, pkg_cmd, pkg_id, pkg_fn, pkg_d, pkg_mode, pkg_eta, pkg_arg);
        if (app.got_subcommand(ver_cmd))
            return run_verify(g, ver_suite, ver_seed, ver_mode, ver_json);
        std::cerr << "error: no subcommand given\n";
        return kExitUsage;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace stillman
