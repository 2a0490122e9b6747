#include "stillman/bounds.hpp"

#include <stdexcept>

namespace stillman {

namespace {

// --- kind names -------------------------------------------------------

struct KindName {
    BoundKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {BoundKind::pd, "pd"},
    {BoundKind::r3_subalgebra, "r3-subalgebra"},
    {BoundKind::min_prime, "min-prime"},
    {BoundKind::serre_strength, "serre-strength"},
    {BoundKind::r_eta_sequence_strength, "r-eta-sequence-strength"},
    {BoundKind::small_subalgebra, "small-subalgebra"},
    {BoundKind::module_pd, "module-pd"},
    {BoundKind::derivative_strength, "derivative-strength"},
    {BoundKind::eg_primary, "eg-primary"},
    {BoundKind::eg_simplified, "eg-simplified"},
    {BoundKind::colon_beta0_product, "colon-beta0-product"},
    {BoundKind::colon_beta0_power, "colon-beta0-power"},
    {BoundKind::prime_beta0, "prime-beta0"},
    {BoundKind::cs_reg, "cs-reg"},
    {BoundKind::h3_transport, "h3-transport"},
};

// --- parameter plumbing -------------------------------------------------

struct Field {
    const char* name;
    const std::optional<BigNat>& value;
};

// Requires exactly the named fields to be set: a missing one and a stray
// one are both reported (a stray field usually means a mistyped request).
void take_exactly(BoundKind kind, const BoundParams& p,
                  std::initializer_list<const char*> wanted) {
    const Field fields[] = {
        {"d", p.d},   {"sigma", p.sigma}, {"eta", p.eta},
        {"delta-sum", p.delta_sum}, {"e", p.e}, {"h", p.h},
        {"m", p.m},   {"n", p.n},   {"B", p.B},
        {"d1", p.d1}, {"k", p.k},
    };
    for (const Field& f : fields) {
        bool want = false;
        for (const char* w : wanted)
            if (std::string_view(f.name) == w) want = true;
        if (want && !f.value)
            throw std::invalid_argument(to_string(kind) +
                                        " needs parameter " + f.name);
        if (!want && f.value)
            throw std::invalid_argument(to_string(kind) +
                                        " takes no parameter " + f.name);
    }
}

[[noreturn]] void guard_fail(BoundKind kind, const std::string& hypothesis) {
    throw std::invalid_argument(to_string(kind) + " requires " + hypothesis);
}

void require_at_least(BoundKind kind, const BigNat& v, unsigned long floor,
                      const char* name) {
    if (v < BigNat(floor))
        guard_fail(kind, std::string(name) + " >= " + std::to_string(floor));
}

// An arrow level computed from the parameters must fit the representable
// level range; the cap in ArrowExpr::node backstops the upper end, this
// converts with a clearer message for the astronomically out-of-range.
std::uint64_t as_level(const BigNat& v, const char* what) {
    if (!v.fits_ulong())
        throw std::invalid_argument(std::string("arrow level ") + what +
                                    " is too large to represent");
    return v.as_ulong();
}

// base ^ arg (a level-1 node with a leaf argument).
ArrowExpr power_tail(const BigNat& base, const BigNat& arg) {
    return ArrowExpr::node(base, 1, ArrowExpr::leaf(arg));
}

Bound plain(ArrowExpr expr) { return Bound{BigNat(0u), std::move(expr), ""}; }

Bound numeral(BigNat value) { return plain(ArrowExpr::leaf(std::move(value))); }

// (d+1) ^{d^2+d-2} (d+1) ^ arg — the recurring subalgebra/pd shape.
ArrowExpr pd_shape(const BigNat& d, const BigNat& arg) {
    BigNat dt = d + BigNat(1);
    std::uint64_t lvl = as_level(d * d + d - BigNat(2), "d^2+d-2");
    return ArrowExpr::node(dt, lvl, power_tail(dt, arg));
}

// --- the kinds ----------------------------------------------------------

Bound make_pd(BoundKind kind, const BigNat& d, const BigNat& sigma) {
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, sigma, 2, "sigma");
    return plain(pd_shape(d, sigma));
}

Bound make_min_prime(const BigNat& d, const BigNat& sigma) {
    BoundKind kind = BoundKind::min_prime;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, sigma, 2, "sigma");
    return plain(ArrowExpr::node(
        d, 1, ArrowExpr::node(BigNat(2), 1, pd_shape(d, sigma))));
}

Bound make_serre_strength(const BigNat& d, const BigNat& eta) {
    BoundKind kind = BoundKind::serre_strength;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, eta, 2, "eta");
    if (d == BigNat(2)) return numeral(eta + BigNat(2));
    std::uint64_t lvl = as_level(d * d - d - BigNat(1), "d^2-d-1");
    return plain(ArrowExpr::node(d, lvl, power_tail(BigNat(3), eta)));
}

Bound make_r_eta_sequence_strength(const BigNat& d, const BigNat& eta,
                                   const BigNat& s) {
    BoundKind kind = BoundKind::r_eta_sequence_strength;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, eta, 1, "eta");
    require_at_least(kind, s, 1, "delta-sum");
    if (d == BigNat(2)) return numeral(eta + BigNat(4) * s + BigNat(1));
    std::uint64_t lvl = as_level(d * d - d - BigNat(1), "d^2-d-1");
    ArrowExpr expr =
        ArrowExpr::node(d, lvl, power_tail(BigNat(3), eta + BigNat(3) * s));
    return Bound{s - BigNat(1), std::move(expr), ""};
}

Bound make_small_subalgebra(const BigNat& d, const BigNat& eta,
                            const BigNat& s) {
    BoundKind kind = BoundKind::small_subalgebra;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, eta, 4, "eta");
    require_at_least(kind, s, 1, "delta-sum");
    BigNat d1 = eta - BigNat(1) > d ? eta - BigNat(1) : d;
    std::uint64_t lvl = as_level(d * d + d - BigNat(1), "d^2+d-1");
    Bound b = plain(ArrowExpr::node(d1, lvl, power_tail(d1, s)));
    if (s == BigNat(1))
        b.note = "delta-sum 1 is a degenerate instance (a single form "
                 "already generates the algebra); the formula is returned "
                 "unchanged";
    return b;
}

Bound make_module_pd(const BigNat& d, const BigNat& m, const BigNat& n) {
    BoundKind kind = BoundKind::module_pd;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, m, 1, "m");
    require_at_least(kind, n, 1, "n");
    BigNat mn = m * n;
    require_at_least(kind, mn, 2, "m*n");
    return plain(pd_shape(d, mn));
}

Bound make_derivative_strength(const BigNat& d, const BigNat& h) {
    BoundKind kind = BoundKind::derivative_strength;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, h, 1, "h");
    if (d == BigNat(2)) return numeral(h + BigNat(2));
    std::uint64_t lvl = as_level(d * d - d - BigNat(2), "d^2-d-2");
    BigNat arg = h > BigNat(2) ? h : BigNat(2);
    return plain(ArrowExpr::node(d, lvl, power_tail(d, arg)));
}

Bound make_eg_primary(const BigNat& e, const BigNat& h) {
    BoundKind kind = BoundKind::eg_primary;
    require_at_least(kind, e, 2, "e");
    require_at_least(kind, h, 2, "h");
    BigNat eh = e * h;
    std::uint64_t lvl = as_level(eh * eh - BigNat(1), "e^2*h^2-1");
    return plain(ArrowExpr::node(eh, lvl, ArrowExpr::leaf(h + BigNat(3))));
}

Bound make_eg_simplified(const BigNat& e, const BigNat& h) {
    BoundKind kind = BoundKind::eg_simplified;
    require_at_least(kind, e, 2, "e");
    require_at_least(kind, h, 2, "h");
    if (!(h < e)) guard_fail(kind, "h < e (nondegenerate primes)");
    BigNat e2 = e * e;
    std::uint64_t lvl = as_level(e2 * e2 - BigNat(1), "e^4-1");
    return plain(ArrowExpr::node(e2, lvl, ArrowExpr::leaf(e + BigNat(2))));
}

Bound make_colon_product(const BigNat& B, const BigNat& d,
                         const Budget& budget) {
    BoundKind kind = BoundKind::colon_beta0_product;
    require_at_least(kind, B, 2, "B");
    require_at_least(kind, d, 2, "d");
    // B(d+1)(2d) prod_{i=3..B} ((d^2+2d-1)^(2^(i-3)) + 1) + 1, a literal
    // number.  The factors square at each step, so growth is checked
    // against the bit budget before every power is materialized.
    BigNat acc = B * (d + BigNat(1)) * (BigNat(2) * d);
    BigNat fbase = d * d + BigNat(2) * d - BigNat(1);
    std::uint64_t base_bits = fbase.bit_length();
    if (!B.fits_ulong())
        throw BudgetError(BudgetError::Kind::bits, budget.max_bits);
    unsigned long b_top = B.as_ulong();
    for (unsigned long i = 3; i <= b_top; ++i) {
        if (i - 3 >= 64)
            throw BudgetError(BudgetError::Kind::bits, budget.max_bits);
        std::uint64_t exp = 1ull << (i - 3);
        // bit_length(fbase^exp) >= (bit_length(fbase) - 1) * exp + 1.
        unsigned __int128 floor =
            static_cast<unsigned __int128>(base_bits - 1) * exp;
        if (floor >= budget.max_bits)
            throw BudgetError(BudgetError::Kind::bits, budget.max_bits);
        acc *= BigNat::pow(fbase, exp) + BigNat(1);
        if (acc.bit_length() > budget.max_bits)
            throw BudgetError(BudgetError::Kind::bits, budget.max_bits);
    }
    return numeral(acc + BigNat(1));
}

Bound make_colon_power(const BigNat& B, const BigNat& d) {
    BoundKind kind = BoundKind::colon_beta0_power;
    require_at_least(kind, d, 2, "d");
    bool admitted = B >= BigNat(4) || (B == BigNat(3) && d >= BigNat(3));
    if (!admitted) guard_fail(kind, "B >= 4, or B = 3 with d >= 3");
    return plain(ArrowExpr::node(BigNat(2) * d, 1,
                                 power_tail(BigNat(2), B - BigNat(1))));
}

Bound make_prime_beta0(const BigNat& B, const BigNat& d) {
    BoundKind kind = BoundKind::prime_beta0;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, B, 1, "B");
    return plain(ArrowExpr::node(d, 1, power_tail(BigNat(2), B)));
}

Bound make_cs_reg(const BigNat& d, const BigNat& n) {
    BoundKind kind = BoundKind::cs_reg;
    require_at_least(kind, d, 1, "d");
    require_at_least(kind, n, 2, "n");
    BigNat twod = BigNat(2) * d;
    // (2d) ^ 2 ^ (n-2); at n = 2 the exponent tower is 2^0 = 1.
    if (n == BigNat(2))
        return plain(ArrowExpr::node(twod, 1, ArrowExpr::leaf(BigNat(1))));
    return plain(ArrowExpr::node(twod, 1, power_tail(BigNat(2), n - BigNat(2))));
}

Bound make_h3_transport(const BigNat& d1, const BigNat& k, const BigNat& d,
                        const BigNat& sigma) {
    BoundKind kind = BoundKind::h3_transport;
    require_at_least(kind, d, 2, "d");
    require_at_least(kind, k, 1, "k");
    require_at_least(kind, sigma, 2, "sigma");
    if (d1 < d + BigNat(1)) guard_fail(kind, "d1 >= d+1");
    std::uint64_t lvl = as_level(k + BigNat(2) * d - BigNat(1), "k+2d-1");
    return plain(ArrowExpr::node(d1, lvl, power_tail(d1, sigma)));
}

}  // namespace

std::string to_string(BoundKind kind) {
    for (const KindName& kn : kKindNames)
        if (kn.kind == kind) return kn.name;
    return "?";
}

BoundKind parse_bound_kind(std::string_view text) {
    std::string canon(text);
    for (char& c : canon)
        if (c == '_') c = '-';
    for (const KindName& kn : kKindNames)
        if (canon == kn.name) return kn.kind;
    std::string all;
    for (const KindName& kn : kKindNames) {
        if (!all.empty()) all += "|";
        all += kn.name;
    }
    throw std::invalid_argument("unknown bound kind \"" + std::string(text) +
                                "\" (" + all + ")");
}

Bound closed_form_bound(BoundKind kind, const BoundParams& p,
                        const Budget& budget) {
    switch (kind) {
        case BoundKind::pd:
        case BoundKind::r3_subalgebra:
            take_exactly(kind, p, {"d", "sigma"});
            return make_pd(kind, *p.d, *p.sigma);
        case BoundKind::min_prime:
            take_exactly(kind, p, {"d", "sigma"});
            return make_min_prime(*p.d, *p.sigma);
        case BoundKind::serre_strength:
            take_exactly(kind, p, {"d", "eta"});
            return make_serre_strength(*p.d, *p.eta);
        case BoundKind::r_eta_sequence_strength:
            take_exactly(kind, p, {"d", "eta", "delta-sum"});
            return make_r_eta_sequence_strength(*p.d, *p.eta, *p.delta_sum);
        case BoundKind::small_subalgebra:
            take_exactly(kind, p, {"d", "eta", "delta-sum"});
            return make_small_subalgebra(*p.d, *p.eta, *p.delta_sum);
        case BoundKind::module_pd:
            take_exactly(kind, p, {"d", "m", "n"});
            return make_module_pd(*p.d, *p.m, *p.n);
        case BoundKind::derivative_strength:
            take_exactly(kind, p, {"d", "h"});
            return make_derivative_strength(*p.d, *p.h);
        case BoundKind::eg_primary:
            take_exactly(kind, p, {"e", "h"});
            return make_eg_primary(*p.e, *p.h);
        case BoundKind::eg_simplified:
            take_exactly(kind, p, {"e", "h"});
            return make_eg_simplified(*p.e, *p.h);
        case BoundKind::colon_beta0_product:
            take_exactly(kind, p, {"B", "d"});
            return make_colon_product(*p.B, *p.d, budget);
        case BoundKind::colon_beta0_power:
            take_exactly(kind, p, {"B", "d"});
            return make_colon_power(*p.B, *p.d);
        case BoundKind::prime_beta0:
            take_exactly(kind, p, {"B", "d"});
            return make_prime_beta0(*p.B, *p.d);
        case BoundKind::cs_reg:
            take_exactly(kind, p, {"d", "n"});
            return make_cs_reg(*p.d, *p.n);
        case BoundKind::h3_transport:
            take_exactly(kind, p, {"d1", "k", "d", "sigma"});
            return make_h3_transport(*p.d1, *p.k, *p.d, *p.sigma);
    }
    throw std::invalid_argument("unknown bound kind");
}

std::string format_bound(const Bound& b, ExprStyle style) {
    std::string expr = format_expr(b.expr, style);
    if (style == ExprStyle::json) {
        std::string out = "{\"offset\":\"" + b.offset.to_string() +
                          "\",\"expr\":" + expr;
        if (!b.note.empty()) {
            out += ",\"note\":\"";
            for (char c : b.note) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += "\"";
        }
        out += "}";
        return out;
    }
    if (b.offset.is_zero()) return expr;
    return b.offset.to_string() + " + " + expr;
}

EvalResult eval_bound(const Bound& b, const Budget& budget) {
    EvalResult r = eval_exact(b.expr, budget);
    r.value += b.offset;
    return r;
}

}  // namespace stillman
