// Python bindings for the core operations: expression parsing, budgeted
// evaluation and comparison, affine-chain collapse, decomposition search,
// package functions, closed-form bounds, and the property verifier.
//
// Numbers cross the boundary as native python ints (arbitrary precision on
// both sides); expressions and dimension vectors cross as their wire texts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stillman/arrow.hpp"
#include "stillman/bignat.hpp"
#include "stillman/bounds.hpp"
#include "stillman/budget.hpp"
#include "stillman/dimvec.hpp"
#include "stillman/packages.hpp"
#include "stillman/verify.hpp"

namespace py = pybind11;
using namespace stillman;

namespace {

py::int_ to_py(const BigNat& v) {
    // Hexadecimal sidesteps CPython's digit limit on decimal conversions,
    // which certified lower bounds (hundreds of thousands of digits) exceed.
    PyObject* obj = PyLong_FromString(v.raw().get_str(16).c_str(), nullptr, 16);
    if (obj == nullptr) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

BigNat to_nat(const py::int_& v) {
    // Hex in this direction too (see to_py); int.__format__('x') carries no
    // 0x prefix but does carry the sign.
    const std::string text = py::cast<std::string>(py::str(v.attr("__format__")("x")));
    if (!text.empty() && text[0] == '-')
        throw std::invalid_argument("expected a nonnegative integer, got " + text);
    return BigNat::from_hex(text);
}

ExprStyle style_of(const std::string& name) {
    if (name == "ascii") return ExprStyle::ascii;
    if (name == "unicode") return ExprStyle::unicode;
    if (name == "latex") return ExprStyle::latex;
    if (name == "json") return ExprStyle::json;
    throw std::invalid_argument("unknown style \"" + name +
                                "\"; styles: ascii, unicode, latex, json");
}

Budget budget_of(const std::optional<std::uint64_t>& max_bits,
                 const std::optional<std::uint64_t>& max_steps) {
    Budget b = default_budget();
    if (max_bits) b.max_bits = *max_bits;
    if (max_steps) b.max_steps = *max_steps;
    b.validate();
    return b;
}

py::dict eval_to_dict(const EvalResult& r) {
    py::dict out;
    out["exact"] = r.exact;
    out["value"] = to_py(r.value);
    return out;
}

AffineChain chain_of(const std::vector<std::tuple<py::int_, py::int_, std::uint64_t, py::int_>>&
                         terms,
                     const py::int_& sigma) {
    AffineChain chain;
    for (const auto& [scale, base, level, shift] : terms)
        chain.terms.push_back({to_nat(scale), to_nat(base), level, to_nat(shift)});
    chain.sigma = to_nat(sigma);
    chain.validate();
    return chain;
}

}  // namespace

PYBIND11_MODULE(stillman_core, m) {
    m.doc() =
        "arrow arithmetic, decomposition bounds, growth-function packages, "
        "closed-form bounds, and the property verifier";

    py::register_exception<ParseError>(m, "ExprParseError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetExceeded", PyExc_RuntimeError);

    // --- expressions ------------------------------------------------------
    m.def(
        "format_expr",
        [](const std::string& text, const std::string& style) {
            return format_expr(parse_expr(text), style_of(style));
        },
        py::arg("text"), py::arg("style") = "ascii",
        "Parse an arrow expression and render it in the given style.");

    m.def(
        "normalize_expr",
        [](const std::string& text, const std::string& style) {
            return format_expr(absorb(parse_expr(text)), style_of(style));
        },
        py::arg("text"), py::arg("style") = "ascii",
        "Apply the exact head-absorption rewrites and render the result.");

    m.def(
        "eval_expr",
        [](const std::string& text, std::optional<std::uint64_t> max_bits,
           std::optional<std::uint64_t> max_steps) {
            return eval_to_dict(eval_exact(parse_expr(text), budget_of(max_bits, max_steps)));
        },
        py::arg("text"), py::arg("max_bits") = py::none(), py::arg("max_steps") = py::none(),
        "Evaluate under the budget: {'exact': bool, 'value': int} where the "
        "value is exact or a certified lower bound.");

    m.def(
        "compare_exprs",
        [](const std::string& lhs, const std::string& rhs, std::optional<std::uint64_t> max_bits,
           std::optional<std::uint64_t> max_steps) {
            return to_string(
                compare(parse_expr(lhs), parse_expr(rhs), budget_of(max_bits, max_steps)));
        },
        py::arg("lhs"), py::arg("rhs"), py::arg("max_bits") = py::none(),
        py::arg("max_steps") = py::none(),
        "Certified ordering: 'less', 'equal', 'greater', or 'unknown'.");

    // --- affine chains ----------------------------------------------------
    m.def(
        "eval_chain",
        [](const std::vector<std::tuple<py::int_, py::int_, std::uint64_t, py::int_>>& terms,
           const py::int_& sigma, std::optional<std::uint64_t> max_bits,
           std::optional<std::uint64_t> max_steps) {
            return eval_to_dict(
                eval_chain(chain_of(terms, sigma), budget_of(max_bits, max_steps)));
        },
        py::arg("terms"), py::arg("sigma"), py::arg("max_bits") = py::none(),
        py::arg("max_steps") = py::none(),
        "Evaluate a nested chain of (scale, base, level, shift) terms seeded "
        "at sigma.");

    m.def(
        "collapse_chain",
        [](const std::vector<std::tuple<py::int_, py::int_, std::uint64_t, py::int_>>& terms,
           const py::int_& sigma, const std::string& style) {
            return format_expr(collapse_bound(chain_of(terms, sigma)), style_of(style));
        },
        py::arg("terms"), py::arg("sigma"), py::arg("style") = "ascii",
        "Single-arrow upper bound that dominates the chain's value.");

    // --- decomposition ----------------------------------------------------
    m.def(
        "decompose_max",
        [](std::uint64_t d, const std::string& delta, const std::string& f) {
            return to_py(decompose_max(parse_dimvector(delta, d), parse_decomp_fn(f)));
        },
        py::arg("d"), py::arg("delta"), py::arg("f"),
        "Largest total any decomposition chain reaches from delta under the "
        "step function f (e.g. 'affine:8,4').");

    m.def(
        "decompose_terminals",
        [](std::uint64_t d, const std::string& delta, const std::string& f) {
            py::list out;
            for (const BigNat& t : enumerate_terminals(parse_dimvector(delta, d),
                                                       parse_decomp_fn(f)))
                out.append(to_py(t));
            return out;
        },
        py::arg("d"), py::arg("delta"), py::arg("f"),
        "Sorted degree-one multiplicities of every terminal vector.");

    // --- packages ---------------------------------------------------------
    m.def(
        "package_value",
        [](const std::string& package, const std::string& fn, std::uint64_t d,
           const py::object& arg, const py::object& eta, const std::string& mode,
           std::optional<std::uint64_t> max_bits, std::optional<std::uint64_t> max_steps) {
            const GrowthFunction f = package_function(parse_package_id(package),
                                                      parse_package_fn(fn), d,
                                                      parse_package_mode(mode));
            const bool need_eta =
                f.signature() == Signature::eta_scalar || f.signature() == Signature::eta_vec;
            if (need_eta && eta.is_none())
                throw std::invalid_argument("function " + package + "." + fn + " requires eta");
            if (!need_eta && !eta.is_none())
                throw std::invalid_argument("function " + package + "." + fn + " takes no eta");
            const bool vec_arg =
                f.signature() == Signature::vec || f.signature() == Signature::eta_vec;
            EvalCtx ctx(budget_of(max_bits, max_steps));
            BigNat value;
            if (vec_arg) {
                const DimVector v =
                    parse_dimvector(py::cast<std::string>(py::str(arg)), f.vector_bound());
                value = need_eta ? f(to_nat(py::cast<py::int_>(eta)), v, ctx) : f(v, ctx);
            } else {
                const BigNat x = to_nat(py::cast<py::int_>(arg));
                value = need_eta ? f(to_nat(py::cast<py::int_>(eta)), x, ctx) : f(x, ctx);
            }
            return to_py(value);
        },
        py::arg("package"), py::arg("fn"), py::arg("d"), py::arg("arg"),
        py::arg("eta") = py::none(), py::arg("mode") = "paper-literal",
        py::arg("max_bits") = py::none(), py::arg("max_steps") = py::none(),
        "Evaluate a package function; arg is an int for scalar signatures or "
        "a vector text like '2,2' for vector ones.");

    m.def(
        "function_index",
        [](const std::string& kind, std::uint64_t d, std::optional<std::uint64_t> iterate) {
            IndexedFn fn;
            if (kind == "A") fn = IndexedFn::A;
            else if (kind == "B") fn = IndexedFn::B;
            else if (kind == "psi") fn = IndexedFn::psi;
            else if (kind == "phi") fn = IndexedFn::phi;
            else throw std::invalid_argument("unknown indexed function \"" + kind +
                                             "\"; kinds: A, B, psi, phi");
            return function_index(fn, d, iterate);
        },
        py::arg("kind"), py::arg("d"), py::arg("iterate") = py::none(),
        "Position of a function in the interleaved degree ladder.");

    // --- closed-form bounds -------------------------------------------------
    m.def(
        "bound",
        [](const std::string& kind, const std::string& style, const py::kwargs& kwargs) {
            BoundParams params;
            for (const auto& item : kwargs) {
                const std::string key = py::cast<std::string>(item.first);
                const BigNat value = to_nat(py::cast<py::int_>(item.second));
                if (key == "d") params.d = value;
                else if (key == "sigma") params.sigma = value;
                else if (key == "eta") params.eta = value;
                else if (key == "delta_sum") params.delta_sum = value;
                else if (key == "e") params.e = value;
                else if (key == "h") params.h = value;
                else if (key == "m") params.m = value;
                else if (key == "n") params.n = value;
                else if (key == "B") params.B = value;
                else if (key == "d1") params.d1 = value;
                else if (key == "k") params.k = value;
                else throw std::invalid_argument("unknown bound parameter \"" + key + "\"");
            }
            const Bound b = closed_form_bound(parse_bound_kind(kind), params);
            py::dict out;
            out["text"] = format_bound(b, style_of(style));
            out["note"] = b.note;
            return out;
        },
        py::arg("kind"), py::arg("style") = "ascii",
        "Closed-form bound for a named result family, e.g. "
        "bound('pd', d=5, sigma=3); returns {'text': ..., 'note': ...}.");

    // --- verifier ----------------------------------------------------------
    m.def("suite_ids", []() { return suite_ids(); },
          "Names of the property suites, in canonical order.");

    m.def(
        "run_suite",
        [](const std::string& suite, const std::string& mode, std::uint64_t seed,
           std::optional<std::uint64_t> max_bits, std::optional<std::uint64_t> max_steps) {
            const SuiteReport rep = run_suite(suite, {}, budget_of(max_bits, max_steps),
                                              parse_package_mode(mode), seed);
            py::dict out;
            out["suite"] = rep.suite;
            out["mode"] = to_string(rep.mode);
            out["seed"] = rep.seed;
            out["cases"] = rep.cases;
            out["undecided_allowed"] = rep.undecided_allowed;
            py::list failures;
            for (const CaseFailure& f : rep.failures) {
                py::dict row;
                row["inputs"] = f.inputs;
                row["relation"] = f.relation;
                row["observed"] = f.observed;
                row["undecided"] = f.undecided;
                failures.append(row);
            }
            out["failures"] = failures;
            out["passed"] = rep.passed();
            out["text"] = rep.text();
            return out;
        },
        py::arg("suite"), py::arg("mode") = "paper-literal",
        py::arg("seed") = kDefaultSuiteSeed, py::arg("max_bits") = py::none(),
        py::arg("max_steps") = py::none(),
        "Run one property suite and return its report as a dict.");
}
