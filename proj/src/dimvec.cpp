#include "stillman/dimvec.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace stillman {

namespace {

// Degree bounds index loops and allocations, so an absurd bound is refused
// outright; every use in the closed-form bounds keeps d tiny.
constexpr std::uint64_t kMaxDegreeBound = 1000000;

void check_bound(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("DimVector: degree bound must be at least 1");
    if (bound > kMaxDegreeBound)
        throw std::invalid_argument("DimVector: degree bound too large");
}

const BigNat kZero{};

}  // namespace

// --- DimVector ---------------------------------------------------------------

DimVector::DimVector(std::uint64_t bound) : bound_(bound) { check_bound(bound); }

DimVector::DimVector(std::uint64_t bound, std::vector<BigNat> coords)
    : bound_(bound), coords_(std::move(coords)) {
    check_bound(bound);
    trim();
    if (coords_.size() > bound_)
        throw std::invalid_argument("DimVector: multiplicity above the degree bound");
}

void DimVector::trim() {
    while (!coords_.empty() && coords_.back().is_zero()) coords_.pop_back();
}

DimVector DimVector::unit(std::uint64_t bound, std::uint64_t degree) {
    check_bound(bound);
    if (degree < 1 || degree > bound)
        throw std::invalid_argument("DimVector: unit degree out of range");
    std::vector<BigNat> coords(degree);
    coords[degree - 1] = BigNat(1);
    return DimVector(bound, std::move(coords));
}

DimVector DimVector::unit_sum(std::uint64_t bound, std::uint64_t degree) {
    check_bound(bound);
    if (degree < 1 || degree > bound)
        throw std::invalid_argument("DimVector: unit degree out of range");
    std::vector<BigNat> coords(degree, BigNat(1));
    return DimVector(bound, std::move(coords));
}

const BigNat& DimVector::entry(std::uint64_t degree) const {
    if (degree == 0) throw std::invalid_argument("DimVector: degrees start at 1");
    if (degree > coords_.size()) return kZero;
    return coords_[degree - 1];
}

BigNat DimVector::total() const {
    BigNat t;
    for (const BigNat& c : coords_) t += c;
    return t;
}

DimVector& DimVector::add(std::uint64_t degree, const BigNat& amount) {
    if (degree < 1 || degree > bound_)
        throw std::invalid_argument("DimVector: degree out of range");
    if (amount.is_zero()) return *this;
    if (coords_.size() < degree) coords_.resize(degree);
    coords_[degree - 1] += amount;
    return *this;
}

DimVector& DimVector::sub(std::uint64_t degree, const BigNat& amount) {
    if (degree < 1 || degree > bound_)
        throw std::invalid_argument("DimVector: degree out of range");
    if (entry(degree) < amount)
        throw std::invalid_argument("DimVector: multiplicity would go negative");
    coords_[degree - 1] -= amount;
    trim();
    return *this;
}

DimVector DimVector::scaled(const BigNat& factor) const {
    DimVector out(bound_);
    out.coords_ = coords_;
    for (BigNat& c : out.coords_) c *= factor;
    out.trim();
    return out;
}

DimVector operator+(const DimVector& a, const DimVector& b) {
    if (a.bound_ != b.bound_)
        throw std::invalid_argument("DimVector: degree bounds differ");
    DimVector out = a;
    for (std::size_t i = 0; i < b.coords_.size(); ++i)
        out.add(i + 1, b.coords_[i]);
    return out;
}

Ordering lex_compare(const DimVector& a, const DimVector& b) {
    if (a.bound() != b.bound())
        throw std::invalid_argument("lex_compare: degree bounds differ");
    // Trimmed storage means a longer coordinate list has a nonzero entry at
    // a degree the other vector lacks.
    if (a.degree() != b.degree())
        return a.degree() < b.degree() ? Ordering::less : Ordering::greater;
    for (std::size_t i = a.coords().size(); i-- > 0;) {
        if (a.coords()[i] != b.coords()[i])
            return a.coords()[i] < b.coords()[i] ? Ordering::less : Ordering::greater;
    }
    return Ordering::equal;
}

DimVector parse_dimvector(std::string_view text, std::optional<std::uint64_t> bound) {
    std::vector<BigNat> coords;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view token = text.substr(
            start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        // Tolerate surrounding spaces inside a token.
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        try {
            coords.emplace_back(token);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(
                "dimension vector literal: expected comma-separated decimal multiplicities, got \"" +
                std::string(text) + "\"");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    std::uint64_t b = bound.value_or(coords.size());
    return DimVector(b, std::move(coords));
}

std::string format_dimvector(const DimVector& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < v.coords().size(); ++i) {
        if (i) out += ',';
        out += v.coords()[i].to_string();
    }
    return out;
}

// --- DecompFn ------------------------------------------------------------------

DecompFn DecompFn::constant(BigNat c) {
    if (c < BigNat(1))
        throw std::invalid_argument("DecompFn: constant step value must be positive");
    std::string desc = "const:" + c.to_string();
    return DecompFn(desc, [c](const DimVector&) { return c; }, true);
}

DecompFn DecompFn::affine(BigNat a, BigNat b) {
    if (a.is_zero() && b.is_zero())
        throw std::invalid_argument("DecompFn: affine step function must be positive");
    std::string desc = "affine:" + a.to_string() + "," + b.to_string();
    return DecompFn(desc, [a, b](const DimVector& v) { return a * v.total() + b; }, true);
}

DecompFn DecompFn::table(std::map<std::string, BigNat> entries,
                         std::optional<BigNat> fallback, bool ascending) {
    for (const auto& [key, value] : entries) {
        if (value < BigNat(1))
            throw std::invalid_argument("DecompFn: table value for \"" + key +
                                        "\" must be positive");
        // Canonical keys only: reformatting the parse must be the identity.
        if (format_dimvector(parse_dimvector(key)) != key)
            throw std::invalid_argument("DecompFn: table key \"" + key +
                                        "\" is not in canonical wire form");
    }
    if (fallback && *fallback < BigNat(1))
        throw std::invalid_argument("DecompFn: table default must be positive");
    auto shared = std::make_shared<const std::map<std::string, BigNat>>(std::move(entries));
    auto fn = [shared, fallback](const DimVector& v) {
        auto it = shared->find(format_dimvector(v));
        if (it != shared->end()) return it->second;
        if (fallback) return *fallback;
        throw std::invalid_argument("DecompFn: table has no entry for \"" +
                                    format_dimvector(v) + "\" and no default");
    };
    return DecompFn("table[" + std::to_string(shared->size()) + "]", std::move(fn), ascending);
}

DecompFn DecompFn::derived(std::string name, std::function<BigNat(const DimVector&)> fn,
                           bool ascending) {
    if (!fn) throw std::invalid_argument("DecompFn: derived function must be callable");
    return DecompFn(std::move(name), std::move(fn), ascending);
}

BigNat DecompFn::operator()(const DimVector& v) const {
    BigNat value = fn_(v);
    if (value < BigNat(1))
        throw std::invalid_argument("DecompFn: step function returned a nonpositive value at \"" +
                                    format_dimvector(v) + "\"");
    return value;
}

DecompFn parse_decomp_fn(std::string_view literal) {
    auto colon = literal.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument(
            "step function literal: expected const:c, affine:a,b, or table:@file.json");
    std::string_view kind = literal.substr(0, colon);
    std::string_view rest = literal.substr(colon + 1);
    if (kind == "const") {
        return DecompFn::constant(BigNat(rest));
    }
    if (kind == "affine") {
        auto comma = rest.find(',');
        if (comma == std::string_view::npos)
            throw std::invalid_argument("step function literal: affine needs two values, affine:a,b");
        return DecompFn::affine(BigNat(rest.substr(0, comma)), BigNat(rest.substr(comma + 1)));
    }
    if (kind == "table") {
        if (rest.empty() || rest[0] != '@')
            throw std::invalid_argument("step function literal: table form is table:@file.json");
        std::string path(rest.substr(1));
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("step function literal: cannot open \"" + path + "\"");
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("step function table \"" + path + "\": " + e.what());
        }
        if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_object())
            throw std::invalid_argument("step function table \"" + path +
                                        "\": expected an object with an \"entries\" object");
        auto read_value = [&](const nlohmann::json& j) {
            if (j.is_string()) return BigNat(j.get<std::string>());
            if (j.is_number_unsigned()) return BigNat(j.get<unsigned long>());
            throw std::invalid_argument("step function table \"" + path +
                                        "\": values must be decimal strings or nonnegative integers");
        };
        std::map<std::string, BigNat> entries;
        for (const auto& [key, value] : doc["entries"].items())
            entries.emplace(key, read_value(value));
        std::optional<BigNat> fallback;
        if (doc.contains("default")) fallback = read_value(doc["default"]);
        bool ascending = doc.value("ascending", false);
        return DecompFn::table(std::move(entries), std::move(fallback), ascending);
    }
    throw std::invalid_argument("step function literal: unknown kind \"" + std::string(kind) +
                                "\"");
}

// --- decomposition search ---------------------------------------------------------

namespace {

// The one-step successor at `degree` using a precomputed step value F(v).
DimVector apply_step(const DimVector& v, std::uint64_t degree, const BigNat& step) {
    DimVector next = v;
    next.sub(degree, BigNat(1));
    for (std::uint64_t j = 1; j < degree; ++j) next.add(j, step);
    return next;
}

// Live degrees of v in descending order, omitting degree 1.
std::vector<std::uint64_t> live_degrees(const DimVector& v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = v.degree(); i >= 2; --i)
        if (!v.entry(i).is_zero()) out.push_back(i);
    return out;
}

// Decomposition values grow doubly exponentially along pumping chains, so a
// node budget alone would let the search hold gigabytes of coordinates
// before it trips.  The searches therefore account for every bit they
// retain (pending vectors, memo entries, found terminals) and abort with
// the bits flavor of BudgetError when the tally passes the limit.
struct SearchBudget {
    const DecompLimits& limits;
    std::uint64_t nodes = 0;
    std::uint64_t retained_bits = 0;

    void charge_node() {
        if (++nodes > limits.max_nodes)
            throw BudgetError(BudgetError::Kind::nodes, limits.max_nodes);
    }
    void retain(std::uint64_t bits) {
        retained_bits += bits;
        if (retained_bits > limits.max_retained_bits)
            throw BudgetError(BudgetError::Kind::bits, limits.max_retained_bits);
    }
    void release(std::uint64_t bits) { retained_bits -= bits; }
};

std::uint64_t vector_bits(const DimVector& v) {
    std::uint64_t bits = 64;
    for (const BigNat& c : v.coords()) bits += c.bit_length() + 64;
    return bits;
}

}  // namespace

std::vector<std::pair<std::uint64_t, DimVector>> simple_decompositions(const DimVector& v,
                                                                       const DecompFn& F) {
    std::vector<std::pair<std::uint64_t, DimVector>> out;
    if (v.degree_one_only()) return out;
    BigNat step = F(v);
    for (std::uint64_t degree : live_degrees(v))
        out.emplace_back(degree, apply_step(v, degree, step));
    return out;
}

std::vector<BigNat> enumerate_terminals(const DimVector& v, const DecompFn& F,
                                        const DecompLimits& limits) {
    SearchBudget budget{limits};
    std::set<BigNat> found;
    std::vector<DimVector> pending;
    budget.retain(vector_bits(v));
    pending.push_back(v);
    while (!pending.empty()) {
        DimVector cur = std::move(pending.back());
        pending.pop_back();
        budget.release(vector_bits(cur));
        budget.charge_node();
        if (cur.degree_one_only()) {
            auto [it, fresh] = found.insert(cur.entry(1));
            if (fresh) budget.retain(it->bit_length() + 64);
            continue;
        }
        BigNat step = F(cur);
        for (std::uint64_t degree : live_degrees(cur)) {
            DimVector next = apply_step(cur, degree, step);
            budget.retain(vector_bits(next));
            pending.push_back(std::move(next));
        }
    }
    return std::vector<BigNat>(found.begin(), found.end());
}

BigNat decompose_max(const DimVector& v, const DecompFn& F, const DecompLimits& limits) {
    SearchBudget budget{limits};
    std::map<std::vector<BigNat>, BigNat> memo;

    struct Frame {
        DimVector vec;
        BigNat step;  // F(vec); unused when degrees is empty
        std::vector<std::uint64_t> degrees;
        std::size_t next_degree = 0;
        BigNat best;
    };
    std::vector<Frame> stack;

    auto open_frame = [&](DimVector vec) {
        budget.charge_node();
        budget.retain(vector_bits(vec));
        Frame f{std::move(vec), BigNat(), {}, 0, BigNat()};
        f.best = f.vec.total();
        f.degrees = live_degrees(f.vec);
        if (!f.degrees.empty()) f.step = F(f.vec);
        stack.push_back(std::move(f));
    };

    open_frame(v);
    while (true) {
        Frame& top = stack.back();
        if (top.next_degree < top.degrees.size()) {
            DimVector child = apply_step(top.vec, top.degrees[top.next_degree++], top.step);
            auto it = memo.find(child.coords());
            if (it != memo.end()) {
                if (it->second > top.best) top.best = it->second;
            } else {
                open_frame(std::move(child));
            }
            continue;
        }
        BigNat result = std::move(top.best);
        // The frame's vector bits stay retained: they move into the memo key.
        budget.retain(result.bit_length());
        memo.emplace(top.vec.coords(), result);
        stack.pop_back();
        if (stack.empty()) return result;
        Frame& parent = stack.back();
        if (result > parent.best) parent.best = std::move(result);
    }
}

}  // namespace stillman
