#include "stillman/arrow.hpp"

#include <cctype>
#include <optional>
#include <utility>

#include "json.hpp"

namespace stillman {

namespace {

// Levels beyond this are rejected outright.  Every bound the library emits
// has a level polynomial in its inputs, and the evaluator short-circuits at
// level 4 anyway, so the cap only exists to keep level arithmetic safely
// inside a machine word.
constexpr std::uint64_t kMaxLevel = 1000000000;

}  // namespace

// --- ArrowExpr -------------------------------------------------------------

ArrowExpr ArrowExpr::leaf(BigNat value) {
    if (value.is_zero())
        throw std::invalid_argument("ArrowExpr: expressions denote positive integers; 0 is not one");
    return ArrowExpr(std::move(value), 0, nullptr);
}

ArrowExpr ArrowExpr::node(BigNat base, std::uint64_t level, ArrowExpr tail) {
    if (base.is_zero())
        throw std::invalid_argument("ArrowExpr: arrow base must be at least 1");
    if (level == 0)
        throw std::invalid_argument("ArrowExpr: arrow level must be at least 1");
    if (level > kMaxLevel)
        throw std::invalid_argument("ArrowExpr: arrow level too large");
    if (base == BigNat(1))
        return leaf(BigNat(1));  // 1 ↑^k b = 1 for every k, b
    return ArrowExpr(std::move(base), level,
                     std::make_shared<const ArrowExpr>(std::move(tail)));
}

const BigNat& ArrowExpr::value() const {
    if (!is_leaf()) throw std::logic_error("ArrowExpr::value on a non-leaf");
    return num_;
}

const BigNat& ArrowExpr::base() const {
    if (is_leaf()) throw std::logic_error("ArrowExpr::base on a leaf");
    return num_;
}

std::uint64_t ArrowExpr::level() const {
    if (is_leaf()) throw std::logic_error("ArrowExpr::level on a leaf");
    return level_;
}

const ArrowExpr& ArrowExpr::tail() const {
    if (is_leaf()) throw std::logic_error("ArrowExpr::tail on a leaf");
    return *tail_;
}

bool operator==(const ArrowExpr& a, const ArrowExpr& b) {
    if (a.level_ != b.level_) return false;
    if (a.num_ != b.num_) return false;
    if (a.is_leaf()) return true;
    return *a.tail_ == *b.tail_;
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eof() const { return pos >= text.size(); }

    BigNat nat(const char* what) {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) throw ParseError(std::string("expected ") + what, start);
        return BigNat(text.substr(start, pos - start));
    }

    // Consumes an arrow operator if one starts at the cursor and returns
    // its level; returns 0 when the next token is not an arrow.
    std::uint64_t maybe_arrow() {
        skip_ws();
        if (eof()) return 0;
        if (text[pos] == '^') {
            if (pos + 1 < text.size() && text[pos + 1] == '^') {
                pos += 2;
                return 2;
            }
            ++pos;
            return 1;
        }
        if (text[pos] == '{') {
            std::size_t open = pos;
            ++pos;
            skip_ws();
            std::size_t start = pos;
            std::uint64_t level = 0;
            while (pos < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
                if (level > kMaxLevel)  // keep accumulating cheaply but saturated
                    level = kMaxLevel + 1;
                else
                    level = level * 10 + digit;
                ++pos;
            }
            if (pos == start) throw ParseError("expected an arrow level", pos);
            if (level == 0) throw ParseError("arrow level must be at least 1", start);
            if (level > kMaxLevel) throw ParseError("arrow level too large", start);
            skip_ws();
            if (eof() || text[pos] != '}')
                throw ParseError("expected '}' to close the arrow level", open);
            ++pos;
            return level;
        }
        return 0;
    }

    ArrowExpr expr() {
        skip_ws();
        std::size_t at = pos;
        BigNat n = nat("a numeral");
        std::uint64_t level = maybe_arrow();
        if (level == 0) {
            if (n.is_zero())
                throw ParseError("numeral 0 denotes no positive integer", at);
            return ArrowExpr::leaf(std::move(n));
        }
        if (n < BigNat(2))
            throw ParseError("arrow base must be at least 2", at);
        ArrowExpr t = expr();
        return ArrowExpr::node(std::move(n), level, std::move(t));
    }
};

}  // namespace

ArrowExpr parse_expr(std::string_view text) {
    Parser p{text};
    ArrowExpr e = p.expr();
    p.skip_ws();
    if (!p.eof()) throw ParseError("unexpected trailing input", p.pos);
    return e;
}

// --- formatting --------------------------------------------------------------

namespace {

std::string superscript(std::uint64_t n) {
    static const char* digits[10] = {"⁰", "¹", "²", "³", "⁴",
                                     "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string dec = std::to_string(n);
    std::string out;
    for (char c : dec) out += digits[c - '0'];
    return out;
}

void format_text(const ArrowExpr& e, ExprStyle style, std::string& out) {
    if (e.is_leaf()) {
        out += e.value().to_string();
        return;
    }
    out += e.base().to_string();
    std::uint64_t k = e.level();
    switch (style) {
        case ExprStyle::ascii:
            out += '{';
            out += std::to_string(k);
            out += '}';
            break;
        case ExprStyle::unicode:
            if (k == 1)
                out += "↑";
            else if (k == 2)
                out += "↑↑";
            else
                out += "↑" + superscript(k);
            break;
        case ExprStyle::latex:
            out += "\\uparrow^{";
            out += std::to_string(k);
            out += '}';
            break;
        case ExprStyle::json:
            break;  // handled by the caller
    }
    format_text(e.tail(), style, out);
}

nlohmann::json expr_json(const ArrowExpr& e) {
    if (e.is_leaf())
        return {{"type", "nat"}, {"value", e.value().to_string()}};
    return {{"type", "arrow"},
            {"base", e.base().to_string()},
            {"level", e.level()},
            {"tail", expr_json(e.tail())}};
}

}  // namespace

std::string format_expr(const ArrowExpr& e, ExprStyle style) {
    if (style == ExprStyle::json) return expr_json(e).dump();
    std::string out;
    format_text(e, style, out);
    return out;
}

// --- evaluation ---------------------------------------------------------------
//
// Soundness contract: an inexact result carries a lower bound L with
// L >= 2^max_bits and true value >= L.  Two facts keep the propagation
// honest:
//
//   * every step function applied on the way out (x -> a ↑^j x with a >= 2,
//     and x -> c*x + d with c >= 1) is >= its argument on positive inputs,
//     so a lower bound for any intermediate bounds the final value;
//   * whenever a result is declared over budget, either its exact value is
//     in hand (and has more than max_bits bits), or the growth floor
//     2^max_bits has been established analytically.

namespace {

// Exact value when it fits the bit budget; otherwise the value itself as
// its own certificate (anything with more than max_bits bits is >= 2^max_bits).
EvalResult exact_if_within(const BigNat& v, std::uint64_t max_bits) {
    if (v.bit_length() > max_bits) return EvalResult::exceeds(v);
    return EvalResult::exact_value(v);
}

// a^b under the bit budget, for a >= 2, b >= 1.
EvalResult pow_checked(const BigNat& a, const BigNat& b, std::uint64_t max_bits) {
    if (b == BigNat(1)) return exact_if_within(a, max_bits);
    BigNat floor_bits = BigNat(static_cast<unsigned long>(a.bit_length() - 1)) * b;
    // a >= 2^(bitlen(a)-1), so a^b >= 2^((bitlen(a)-1)*b).
    if (floor_bits >= BigNat(static_cast<unsigned long>(max_bits)))
        return EvalResult::exceeds(BigNat::pow2(max_bits));
    // Here (bitlen(a)-1)*b < max_bits <= 2^28, so b fits a machine word and
    // the power has at most ~2*max_bits bits: small enough to materialize.
    BigNat p = BigNat::pow(a, b.as_ulong());
    return exact_if_within(p, max_bits);
}

// a ↑^k b under the bit budget, for a >= 2, b >= 1, k >= 1.
EvalResult tower(const BigNat& a, std::uint64_t k, const BigNat& b,
                 std::uint64_t max_bits) {
    if (b == BigNat(1)) return exact_if_within(a, max_bits);
    if (k == 1) return pow_checked(a, b, max_bits);
    if (a == BigNat(2) && b == BigNat(2))
        return EvalResult::exact_value(BigNat(4));
    if (k >= 4) {
        // With the plateaus gone (b >= 2 and not a = b = 2), the value is at
        // least min(2 ↑^4 3, 3 ↑^4 2) = min(2↑↑65536, 3↑↑7625597484987),
        // both of which dwarf 2^(2^28) >= 2^max_bits.
        return EvalResult::exceeds(BigNat::pow2(max_bits));
    }
    // k is 2 or 3: unroll the recurrence  a ↑^k b = a ↑^(k-1) (a ↑^k (b-1)).
    // Each round replaces x by a ↑^(k-1) x >= 2^x, so the bit budget is hit
    // after at most ~log2(max_bits) + 2 rounds regardless of b.
    BigNat x = a;
    for (BigNat i(1); i < b; i += BigNat(1)) {
        EvalResult r = tower(a, k - 1, x, max_bits);
        if (!r.exact) return r;
        x = std::move(r.value);
    }
    return EvalResult::exact_value(std::move(x));
}

EvalResult eval_rec(const ArrowExpr& e, std::uint64_t max_bits) {
    if (e.is_leaf()) return exact_if_within(e.value(), max_bits);
    EvalResult t = eval_rec(e.tail(), max_bits);
    if (!t.exact) return t;
    return tower(e.base(), e.level(), t.value, max_bits);
}

}  // namespace

EvalResult eval_exact(const ArrowExpr& e, const Budget& budget) {
    budget.validate();
    return eval_rec(e, budget.max_bits);
}

// --- comparison -----------------------------------------------------------------

const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::less: return "less";
        case Ordering::equal: return "equal";
        case Ordering::greater: return "greater";
        case Ordering::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

std::optional<Ordering> value_route(const EvalResult& ra, const EvalResult& rb) {
    if (ra.exact && rb.exact) {
        if (ra.value < rb.value) return Ordering::less;
        if (ra.value > rb.value) return Ordering::greater;
        return Ordering::equal;
    }
    // One side exact, the other certified >= a lower bound past the budget.
    if (ra.exact && ra.value < rb.value) return Ordering::less;
    if (rb.exact && rb.value < ra.value) return Ordering::greater;
    return std::nullopt;
}

// Single-coordinate monotonicity on two Nodes that agree in the other
// coordinates.  Plateau identities (a ↑^k 1 = a and 2 ↑^k 2 = 4 for all k)
// make the level coordinate non-strict, so that case inspects the shared
// tail's value before ordering by level.
std::optional<Ordering> structural_route(const ArrowExpr& a, const ArrowExpr& b,
                                         const Budget& budget) {
    if (a.is_leaf() || b.is_leaf()) return std::nullopt;
    bool same_base = a.base() == b.base();
    bool same_level = a.level() == b.level();
    if (!same_base && !same_level) return std::nullopt;

    Ordering tails = compare(a.tail(), b.tail(), budget);
    if (same_base && same_level) {
        // b -> a ↑^k b is strictly increasing, so the tails decide.
        if (tails == Ordering::unknown) return std::nullopt;
        return tails;
    }
    if (tails != Ordering::equal) return std::nullopt;
    if (same_base) {
        EvalResult t = eval_exact(a.tail(), budget);
        if (t.exact && t.value == BigNat(1)) return Ordering::equal;
        if (t.exact && t.value == BigNat(2) && a.base() == BigNat(2))
            return Ordering::equal;
        // Off the plateaus, k -> a ↑^k b is strictly increasing (b >= 2, and
        // an over-budget tail value is certainly >= 3).
        return a.level() < b.level() ? Ordering::less : Ordering::greater;
    }
    // Same level, equal tails: a -> a ↑^k b is strictly increasing.
    return a.base() < b.base() ? Ordering::less : Ordering::greater;
}

}  // namespace

Ordering compare(const ArrowExpr& a, const ArrowExpr& b, const Budget& budget) {
    budget.validate();
    EvalResult ra = eval_exact(a, budget);
    EvalResult rb = eval_exact(b, budget);
    if (auto o = value_route(ra, rb)) return *o;
    if (auto o = structural_route(a, b, budget)) return *o;
    // Absorbing shorthand towers can expose a shared shape the structural
    // route recognizes; denotation is preserved, so any answer stays sound.
    ArrowExpr aa = absorb(a);
    ArrowExpr ab = absorb(b);
    if (aa != a || ab != b) {
        if (auto o = value_route(eval_exact(aa, budget), eval_exact(ab, budget)))
            return *o;
        if (auto o = structural_route(aa, ab, budget)) return *o;
    }
    return Ordering::unknown;
}

// --- absorption -------------------------------------------------------------------

ArrowExpr absorb(const ArrowExpr& e) {
    if (e.is_leaf()) return e;
    ArrowExpr t = absorb(e.tail());
    // a ↑^k (a ↑^(k+1) b)  =  a ↑^(k+1) (b+1)  is the defining recurrence
    // read right-to-left; it only fires when the iteration count b is a
    // numeral.
    if (!t.is_leaf() && t.base() == e.base() && t.level() == e.level() + 1 &&
        t.tail().is_leaf()) {
        return ArrowExpr::node(e.base(), e.level() + 1,
                               ArrowExpr::leaf(t.tail().value() + BigNat(1)));
    }
    return ArrowExpr::node(e.base(), e.level(), std::move(t));
}

// --- affine chains -------------------------------------------------------------------

void AffineChain::validate() const {
    if (terms.empty())
        throw std::invalid_argument("AffineChain: at least one term is required");
    if (sigma < BigNat(1))
        throw std::invalid_argument("AffineChain: sigma must be at least 1");
    for (const AffineTerm& t : terms) {
        if (t.scale < BigNat(1))
            throw std::invalid_argument("AffineChain: term scale must be at least 1");
        if (t.base < BigNat(2))
            throw std::invalid_argument("AffineChain: term base must be at least 2");
        if (t.level == 0)
            throw std::invalid_argument("AffineChain: term level must be at least 1");
        if (t.level > kMaxLevel)
            throw std::invalid_argument("AffineChain: term level too large");
    }
}

EvalResult eval_chain(const AffineChain& chain, const Budget& budget) {
    chain.validate();
    budget.validate();
    BigNat v = chain.sigma;
    for (auto it = chain.terms.rbegin(); it != chain.terms.rend(); ++it) {
        EvalResult r = tower(it->base, it->level, v, budget.max_bits);
        if (!r.exact) return r;
        v = it->scale * r.value + it->shift;
        if (v.bit_length() > budget.max_bits) return EvalResult::exceeds(std::move(v));
    }
    return EvalResult::exact_value(std::move(v));
}

ArrowExpr collapse_bound(const AffineChain& chain) {
    chain.validate();
    std::uint64_t k_star = 2;
    BigNat a_star(2);
    BigNat n(0);
    for (const AffineTerm& t : chain.terms) {
        if (t.level > k_star) k_star = t.level;
        if (t.base > a_star) a_star = t.base;
        if (t.scale > a_star) a_star = t.scale;
        if (t.shift > a_star) a_star = t.shift;
        n += BigNat(1);
        if (t.scale != BigNat(1)) n += BigNat(1);
        if (!t.shift.is_zero()) n += BigNat(1);
    }
    return ArrowExpr::node(a_star, k_star + 1, ArrowExpr::leaf(chain.sigma + n - BigNat(1)));
}

}  // namespace stillman
