#include "stillman/packages.hpp"

#include <tuple>
#include <utility>

namespace stillman {

namespace {

// Memo entries stop being added once a function's cache holds this many
// bits of keys+values; the cache is an optimization only, so overflowing
// it silently falls back to recomputation.
constexpr std::uint64_t kMemoCapBits = 1ull << 30;

std::uint64_t key_bits(const std::vector<BigNat>& key, const BigNat& value) {
    std::uint64_t bits = value.bit_length() + 64;
    for (const BigNat& k : key) bits += k.bit_length() + 64;
    return bits;
}

}  // namespace

// --- evaluation context -----------------------------------------------------

void EvalCtx::charge_step() {
    if (++steps > budget.max_steps)
        throw BudgetError(BudgetError::Kind::steps, budget.max_steps);
}

void EvalCtx::check_bits(const BigNat& v) const {
    if (v.bit_length() > budget.max_bits)
        throw BudgetError(BudgetError::Kind::bits, budget.max_bits);
}

BigNat EvalCtx::pow_guarded(const BigNat& base, const BigNat& exp) const {
    if (base.is_zero())
        throw std::invalid_argument("pow_guarded: base must be positive");
    if (exp.is_zero()) return BigNat(1);
    if (base == BigNat(1)) return BigNat(1);
    // The result has at least `exp` bits (base >= 2), so an exponent that
    // does not even fit a machine word is hopeless at any permitted cap.
    if (!exp.fits_ulong())
        throw BudgetError(BudgetError::Kind::bits, budget.max_bits);
    unsigned long e = exp.as_ulong();
    // bit_length(base^e) >= (bit_length(base) - 1) * e + 1.
    unsigned __int128 floor =
        static_cast<unsigned __int128>(base.bit_length() - 1) * e;
    if (floor >= budget.max_bits)
        throw BudgetError(BudgetError::Kind::bits, budget.max_bits);
    // Past the floor check the result is at most ~2x the cap, so it is safe
    // to materialize and measure exactly.
    BigNat r = BigNat::pow(base, e);
    check_bits(r);
    return r;
}

// --- growth functions -----------------------------------------------------

struct GrowthFunction::Impl {
    Signature sig;
    std::string desc;
    std::uint64_t bound = 0;  // vector signatures only
    ScalarFn scalar;
    EtaScalarFn eta_scalar;
    VecFn vec;
    EtaVecFn eta_vec;
    std::map<std::vector<BigNat>, BigNat> memo;
    std::uint64_t memo_bits = 0;

    BigNat cached_eval(std::vector<BigNat> key,
                       const std::function<BigNat(EvalCtx&)>& run, EvalCtx& ctx) {
        auto it = memo.find(key);
        if (it != memo.end()) {
            // A hit costs no steps, but the caller's size contract still
            // applies: never hand out a value past the context's bit cap.
            ctx.check_bits(it->second);
            return it->second;
        }
        ctx.charge_step();
        BigNat r = run(ctx);
        ctx.check_bits(r);
        if (r.is_zero())
            throw std::domain_error(desc + ": produced a nonpositive value");
        std::uint64_t bits = key_bits(key, r);
        if (memo_bits + bits <= kMemoCapBits) {
            memo_bits += bits;
            memo.emplace(std::move(key), r);
        }
        return r;
    }
};

std::string to_string(Signature sig) {
    switch (sig) {
        case Signature::scalar: return "scalar";
        case Signature::eta_scalar: return "eta+scalar";
        case Signature::vec: return "vector";
        case Signature::eta_vec: return "eta+vector";
    }
    return "?";
}

GrowthFunction GrowthFunction::scalar_fn(std::string description, ScalarFn fn) {
    if (!fn) throw std::invalid_argument("GrowthFunction: missing evaluator");
    auto impl = std::make_shared<Impl>();
    impl->sig = Signature::scalar;
    impl->desc = std::move(description);
    impl->scalar = std::move(fn);
    return GrowthFunction(std::move(impl));
}

GrowthFunction GrowthFunction::eta_scalar_fn(std::string description,
                                             EtaScalarFn fn) {
    if (!fn) throw std::invalid_argument("GrowthFunction: missing evaluator");
    auto impl = std::make_shared<Impl>();
    impl->sig = Signature::eta_scalar;
    impl->desc = std::move(description);
    impl->eta_scalar = std::move(fn);
    return GrowthFunction(std::move(impl));
}

GrowthFunction GrowthFunction::vec_fn(std::string description, std::uint64_t bound,
                                      VecFn fn) {
    if (!fn) throw std::invalid_argument("GrowthFunction: missing evaluator");
    if (bound == 0)
        throw std::invalid_argument("GrowthFunction: degree bound must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->sig = Signature::vec;
    impl->desc = std::move(description);
    impl->bound = bound;
    impl->vec = std::move(fn);
    return GrowthFunction(std::move(impl));
}

GrowthFunction GrowthFunction::eta_vec_fn(std::string description,
                                          std::uint64_t bound, EtaVecFn fn) {
    if (!fn) throw std::invalid_argument("GrowthFunction: missing evaluator");
    if (bound == 0)
        throw std::invalid_argument("GrowthFunction: degree bound must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->sig = Signature::eta_vec;
    impl->desc = std::move(description);
    impl->bound = bound;
    impl->eta_vec = std::move(fn);
    return GrowthFunction(std::move(impl));
}

Signature GrowthFunction::signature() const { return impl_->sig; }
const std::string& GrowthFunction::describe() const { return impl_->desc; }

GrowthFunction GrowthFunction::renamed(std::string description) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->desc = std::move(description);
    impl->memo.clear();
    impl->memo_bits = 0;
    return GrowthFunction(std::move(impl));
}

std::uint64_t GrowthFunction::vector_bound() const {
    if (impl_->sig != Signature::vec && impl_->sig != Signature::eta_vec)
        throw std::invalid_argument(impl_->desc + ": has no vector argument");
    return impl_->bound;
}

namespace {

[[noreturn]] void signature_mismatch(const std::string& desc, Signature have,
                                     const char* called_as) {
    throw std::invalid_argument(desc + ": signature is " + to_string(have) +
                                ", called with " + called_as + " arguments");
}

void require_positive(const std::string& desc, const BigNat& x,
                      const char* what) {
    if (x.is_zero())
        throw std::invalid_argument(desc + ": " + what + " must be positive");
}

void require_bound(const std::string& desc, const DimVector& v,
                   std::uint64_t bound) {
    if (v.bound() != bound)
        throw std::invalid_argument(desc + ": expects vectors of degree bound " +
                                    std::to_string(bound) + ", got " +
                                    std::to_string(v.bound()));
}

}  // namespace

BigNat GrowthFunction::operator()(const BigNat& x, EvalCtx& ctx) const {
    if (impl_->sig != Signature::scalar)
        signature_mismatch(impl_->desc, impl_->sig, "scalar");
    require_positive(impl_->desc, x, "the argument");
    return impl_->cached_eval(
        {x}, [&](EvalCtx& c) { return impl_->scalar(x, c); }, ctx);
}

BigNat GrowthFunction::operator()(const BigNat& eta, const BigNat& n,
                                  EvalCtx& ctx) const {
    if (impl_->sig != Signature::eta_scalar)
        signature_mismatch(impl_->desc, impl_->sig, "eta+scalar");
    require_positive(impl_->desc, eta, "eta");
    return impl_->cached_eval(
        {eta, n}, [&](EvalCtx& c) { return impl_->eta_scalar(eta, n, c); }, ctx);
}

BigNat GrowthFunction::operator()(const DimVector& v, EvalCtx& ctx) const {
    if (impl_->sig != Signature::vec)
        signature_mismatch(impl_->desc, impl_->sig, "vector");
    require_bound(impl_->desc, v, impl_->bound);
    return impl_->cached_eval(
        v.coords(), [&](EvalCtx& c) { return impl_->vec(v, c); }, ctx);
}

BigNat GrowthFunction::operator()(const BigNat& eta, const DimVector& v,
                                  EvalCtx& ctx) const {
    if (impl_->sig != Signature::eta_vec)
        signature_mismatch(impl_->desc, impl_->sig, "eta+vector");
    require_positive(impl_->desc, eta, "eta");
    require_bound(impl_->desc, v, impl_->bound);
    std::vector<BigNat> key;
    key.reserve(v.coords().size() + 1);
    key.push_back(eta);
    for (const BigNat& c : v.coords()) key.push_back(c);
    return impl_->cached_eval(
        std::move(key), [&](EvalCtx& c) { return impl_->eta_vec(eta, v, c); },
        ctx);
}

// --- iteration helper -------------------------------------------------------

namespace {

// step applied `count` times to `start`.  Charges one step per round and
// refuses up front when `count` alone would exhaust the step budget.
BigNat iterate(const std::function<BigNat(const BigNat&)>& step, BigNat count,
               const BigNat& start, EvalCtx& ctx) {
    std::uint64_t remaining = ctx.steps < ctx.budget.max_steps
                                  ? ctx.budget.max_steps - ctx.steps
                                  : 0;
    if (count > BigNat(static_cast<unsigned long>(remaining)))
        throw BudgetError(BudgetError::Kind::steps, ctx.budget.max_steps);
    unsigned long n = count.as_ulong();
    BigNat x = start;
    for (unsigned long round = 0; round < n; ++round) {
        ctx.charge_step();
        x = step(x);
        ctx.check_bits(x);
    }
    return x;
}

// diag(n) at degree bound d: multiplicity n at every degree 1..d.
DimVector diagonal(std::uint64_t d, const BigNat& n) {
    return DimVector(d, std::vector<BigNat>(d, n));
}

// The vector whose lowest `low_degrees` degrees hold `low` and whose
// remaining degrees hold `high`, at degree bound d.
DimVector split_vector(std::uint64_t d, std::uint64_t low_degrees,
                       const BigNat& low, const BigNat& high) {
    std::vector<BigNat> coords(d, high);
    for (std::uint64_t j = 0; j < low_degrees; ++j) coords[j] = low;
    return DimVector(d, std::move(coords));
}

}  // namespace

// --- iterate families -------------------------------------------------------

namespace {

void validate_family_args(std::uint64_t d, std::uint64_t level) {
    if (d < 2)
        throw std::invalid_argument("iterate family: degree bound must be >= 2");
    if (level < 1 || level > d - 1)
        throw std::invalid_argument("iterate family: level must be in 1.." +
                                    std::to_string(d - 1));
}

}  // namespace

BigNat saturating_psi(const DecompFn& F, std::uint64_t d, std::uint64_t level,
                      const BigNat& sigma, const BigNat& eps, EvalCtx& ctx) {
    validate_family_args(d, level);
    if (!F.ascending())
        throw std::invalid_argument(
            "saturating family: step function must be ascending");
    if (sigma.is_zero())
        throw std::invalid_argument("saturating family: sigma must be >= 1");
    if (eps < sigma)
        throw std::invalid_argument("saturating family: requires eps >= sigma");
    ctx.charge_step();
    BigNat filled = eps;
    if (level >= 2) {
        // Saturate the levels below first: psi_{level-1,eps}^eps(eps).
        filled = iterate(
            [&](const BigNat& x) {
                return saturating_psi(F, d, level - 1, eps, x, ctx);
            },
            eps, eps, ctx);
    }
    BigNat r = F(split_vector(d, level, filled, sigma));
    ctx.check_bits(r);
    r += filled;
    ctx.check_bits(r);
    return r;
}

BigNat saturating_phi(const DecompFn& F, std::uint64_t d, std::uint64_t level,
                      const BigNat& sigma, EvalCtx& ctx) {
    validate_family_args(d, level);
    if (sigma.is_zero())
        throw std::invalid_argument("saturating family: sigma must be >= 1");
    return iterate(
        [&](const BigNat& x) {
            return saturating_psi(F, d, level, sigma, x, ctx);
        },
        sigma, sigma, ctx);
}

BigNat iterate_majorant_value(const DecompFn& F, std::uint64_t d,
                              const BigNat& sigma, EvalCtx& ctx) {
    if (d < 2)
        throw std::invalid_argument("iterate family: degree bound must be >= 2");
    if (sigma.is_zero())
        throw std::invalid_argument("iterate family: sigma must be >= 1");
    BigNat x = sigma;
    for (std::uint64_t level = d - 1; level >= 1; --level)
        x = saturating_phi(F, d, level, x, ctx);
    return x;
}

BigNat doubling_psi(const GrowthFunction& f, std::uint64_t d, std::uint64_t level,
                    const BigNat& eps, EvalCtx& ctx) {
    validate_family_args(d, level);
    if (f.signature() != Signature::scalar)
        throw std::invalid_argument(
            "doubling family: needs a scalar step function");
    if (eps.is_zero())
        throw std::invalid_argument("doubling family: eps must be >= 1");
    ctx.charge_step();
    BigNat inner = eps;
    if (level >= 2) {
        inner = iterate(
            [&](const BigNat& x) { return doubling_psi(f, d, level - 1, x, ctx); },
            eps, eps, ctx);
    }
    BigNat arg = inner;
    arg *= BigNat(static_cast<unsigned long>(d + 1));
    ctx.check_bits(arg);
    BigNat r = f(arg, ctx);
    r *= BigNat(2);
    ctx.check_bits(r);
    return r;
}

BigNat doubling_phi(const GrowthFunction& f, std::uint64_t d, std::uint64_t level,
                    const BigNat& eps, EvalCtx& ctx) {
    validate_family_args(d, level);
    if (eps.is_zero())
        throw std::invalid_argument("doubling family: eps must be >= 1");
    return iterate(
        [&](const BigNat& x) { return doubling_psi(f, d, level, x, ctx); }, eps,
        eps, ctx);
}

BigNat doubling_majorant_value(const GrowthFunction& f, std::uint64_t d,
                               const BigNat& sigma, EvalCtx& ctx) {
    if (d < 2)
        throw std::invalid_argument("iterate family: degree bound must be >= 2");
    if (sigma.is_zero())
        throw std::invalid_argument("iterate family: sigma must be >= 1");
    BigNat x = sigma;
    for (std::uint64_t level = d - 1; level >= 1; --level)
        x = doubling_phi(f, d, level, x, ctx);
    return x;
}

// --- recurrence functionals -------------------------------------------------

namespace {

void require_inputs(FunctionalKind kind, const std::vector<GrowthFunction>& in,
                    std::size_t n) {
    if (in.size() != n)
        throw std::invalid_argument("functional_apply: kind #" +
                                    std::to_string(static_cast<int>(kind)) +
                                    " takes " + std::to_string(n) + " input(s)");
}

void require_signature(const GrowthFunction& f, Signature sig,
                       const char* role) {
    if (f.signature() != sig)
        throw std::invalid_argument(std::string("functional_apply: ") + role +
                                    " must have signature " + to_string(sig) +
                                    ", got " + to_string(f.signature()));
}

// Wraps a vector-signature growth function as a decomposition step
// function bound to one evaluation context.  Growth functions are
// ascending by this module's construction rules, so the wrapper carries
// the ascending flag.
DecompFn step_from_growth(const GrowthFunction& f, EvalCtx& ctx) {
    return DecompFn::derived(f.describe(),
                             [&ctx, f](const DimVector& w) { return f(w, ctx); },
                             /*ascending=*/true);
}

DecompFn doubled_step_eta(const GrowthFunction& abar, const BigNat& eta,
                          EvalCtx& ctx) {
    return DecompFn::derived("2*" + abar.describe(),
                             [&ctx, abar, eta](const DimVector& w) {
                                 BigNat t = abar(eta, w, ctx);
                                 t *= BigNat(2);
                                 return t;
                             },
                             /*ascending=*/true);
}

DecompFn doubled_step_vec(const GrowthFunction& abar, EvalCtx& ctx) {
    return DecompFn::derived("2*" + abar.describe(),
                             [&ctx, abar](const DimVector& w) {
                                 BigNat t = abar(w, ctx);
                                 t *= BigNat(2);
                                 return t;
                             },
                             /*ascending=*/true);
}

}  // namespace

GrowthFunction functional_apply(FunctionalKind kind, std::uint64_t d,
                                const std::vector<GrowthFunction>& inputs) {
    if (d < 2)
        throw std::invalid_argument(
            "functional_apply: degree parameter must be >= 2");
    const std::string suffix = "_" + std::to_string(d);
    switch (kind) {
        case FunctionalKind::next_level_seed: {
            require_inputs(kind, inputs, 2);
            require_signature(inputs[0], Signature::eta_scalar,
                              "the counting input");
            require_signature(inputs[1], Signature::scalar,
                              "the transport input");
            GrowthFunction bscript = inputs[0], dfn = inputs[1];
            return GrowthFunction::scalar_fn(
                "seed" + suffix, [bscript, dfn](const BigNat& k, EvalCtx& ctx) {
                    BigNat kp1 = k;
                    kp1 += BigNat(1);
                    BigNat r = bscript(BigNat(3), dfn(kp1, ctx), ctx);
                    r += BigNat(1);
                    return r;
                });
        }
        case FunctionalKind::vector_extension: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::scalar, "the seed input");
            GrowthFunction a = inputs[0];
            return GrowthFunction::eta_vec_fn(
                "extend" + suffix, d,
                [a](const BigNat& eta, const DimVector& v, EvalCtx& ctx) {
                    BigNat total = v.total();
                    BigNat arg = total;
                    arg *= BigNat(3);
                    arg += eta;
                    BigNat r = a(arg, ctx);
                    r += total;
                    r -= BigNat(1);
                    return r;
                });
        }
        case FunctionalKind::decomposition_bound: {
            require_inputs(kind, inputs, 1);
            GrowthFunction abar = inputs[0];
            if (abar.signature() == Signature::eta_vec) {
                std::uint64_t bound = abar.vector_bound();
                return GrowthFunction::eta_vec_fn(
                    "chain_max" + suffix, bound,
                    [abar](const BigNat& eta, const DimVector& v, EvalCtx& ctx) {
                        return decompose_max(v, doubled_step_eta(abar, eta, ctx),
                                             ctx.decomp);
                    });
            }
            if (abar.signature() == Signature::vec) {
                std::uint64_t bound = abar.vector_bound();
                return GrowthFunction::vec_fn(
                    "chain_max" + suffix, bound,
                    [abar](const DimVector& v, EvalCtx& ctx) {
                        return decompose_max(v, doubled_step_vec(abar, ctx),
                                             ctx.decomp);
                    });
            }
            throw std::invalid_argument(
                "functional_apply: decomposition_bound needs a vector-argument "
                "input");
        }
        case FunctionalKind::diagonal_restriction: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::eta_vec, "the bound input");
            GrowthFunction b = inputs[0];
            std::uint64_t bound = b.vector_bound();
            return GrowthFunction::eta_scalar_fn(
                "diag" + suffix,
                [b, bound](const BigNat& eta, const BigNat& n, EvalCtx& ctx) {
                    return b(eta, diagonal(bound, n), ctx);
                });
        }
        case FunctionalKind::double_exponential: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::eta_scalar,
                              "the counting input");
            GrowthFunction bscript = inputs[0];
            return GrowthFunction::scalar_fn(
                "tower" + suffix, [bscript, d](const BigNat& k, EvalCtx& ctx) {
                    BigNat e = bscript(BigNat(1), k, ctx);
                    BigNat p = ctx.pow_guarded(BigNat(2), e);
                    return ctx.pow_guarded(BigNat(static_cast<unsigned long>(d)),
                                           p);
                });
        }
        case FunctionalKind::eta_vector_advance: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::eta_vec, "the bound input");
            GrowthFunction b = inputs[0];
            if (b.vector_bound() != d)
                throw std::invalid_argument(
                    "functional_apply: eta_vector_advance needs a bound-" +
                    std::to_string(d) + " input");
            return GrowthFunction::eta_vec_fn(
                "advance" + suffix, d + 1,
                [b, d](const BigNat& eta, const DimVector& v, EvalCtx& ctx) {
                    BigNat total = v.total();
                    BigNat scale = total;
                    scale *= BigNat(3);
                    scale += eta;
                    scale += BigNat(1);
                    BigNat inner = b(BigNat(1), diagonal(d, scale), ctx);
                    BigNat p = ctx.pow_guarded(BigNat(2), inner);
                    BigNat t =
                        ctx.pow_guarded(BigNat(static_cast<unsigned long>(d)), p);
                    BigNat r = b(BigNat(3), diagonal(d, t), ctx);
                    r += total;
                    return r;
                });
        }
        case FunctionalKind::vector_advance: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::vec, "the bound input");
            GrowthFunction b = inputs[0];
            if (b.vector_bound() != d)
                throw std::invalid_argument(
                    "functional_apply: vector_advance needs a bound-" +
                    std::to_string(d) + " input");
            return GrowthFunction::vec_fn(
                "advance" + suffix, d + 1,
                [b, d](const DimVector& v, EvalCtx& ctx) {
                    BigNat total = v.total();
                    BigNat scale = total;
                    scale *= BigNat(3);
                    scale += BigNat(4);
                    BigNat inner = b(diagonal(d, scale), ctx);
                    BigNat p = ctx.pow_guarded(BigNat(2), inner);
                    BigNat t =
                        ctx.pow_guarded(BigNat(static_cast<unsigned long>(d)), p);
                    BigNat r = b(diagonal(d, t), ctx);
                    r += total;
                    return r;
                });
        }
        case FunctionalKind::iterate_majorant: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::vec, "the step input");
            GrowthFunction f = inputs[0];
            if (f.vector_bound() != d)
                throw std::invalid_argument(
                    "functional_apply: iterate_majorant needs a bound-" +
                    std::to_string(d) + " input");
            return GrowthFunction::scalar_fn(
                "iterate_majorant" + suffix,
                [f, d](const BigNat& sigma, EvalCtx& ctx) {
                    return iterate_majorant_value(step_from_growth(f, ctx), d,
                                                  sigma, ctx);
                });
        }
        case FunctionalKind::scalar_iterate_majorant: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::scalar, "the step input");
            GrowthFunction f = inputs[0];
            return GrowthFunction::scalar_fn(
                "iterate_majorant" + suffix,
                [f, d](const BigNat& sigma, EvalCtx& ctx) {
                    DecompFn step = DecompFn::derived(
                        "2*" + f.describe() + "(|.|)",
                        [&ctx, f](const DimVector& w) {
                            BigNat t = f(w.total(), ctx);
                            t *= BigNat(2);
                            return t;
                        },
                        /*ascending=*/true);
                    return iterate_majorant_value(step, d, sigma, ctx);
                });
        }
        case FunctionalKind::scalar_advance: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::scalar, "the bound input");
            GrowthFunction f = inputs[0];
            return GrowthFunction::scalar_fn(
                "advance" + suffix, [f, d](const BigNat& sigma, EvalCtx& ctx) {
                    BigNat arg = sigma;
                    arg *= BigNat(3);
                    arg += BigNat(4);
                    BigNat inner = f(arg, ctx);
                    BigNat p = ctx.pow_guarded(BigNat(2), inner);
                    BigNat t =
                        ctx.pow_guarded(BigNat(static_cast<unsigned long>(d)), p);
                    BigNat r = f(t, ctx);
                    r += sigma;
                    return r;
                });
        }
        case FunctionalKind::doubling_majorant: {
            require_inputs(kind, inputs, 1);
            require_signature(inputs[0], Signature::scalar, "the step input");
            GrowthFunction f = inputs[0];
            return GrowthFunction::scalar_fn(
                "doubling_majorant" + suffix,
                [f, d](const BigNat& sigma, EvalCtx& ctx) {
                    return doubling_majorant_value(f, d, sigma, ctx);
                });
        }
    }
    throw std::invalid_argument("functional_apply: unknown functional kind");
}

// --- the five packages -------------------------------------------------

std::string to_string(PackageId id) {
    switch (id) {
        case PackageId::alpha: return "alpha";
        case PackageId::beta: return "beta";
        case PackageId::gamma: return "gamma";
        case PackageId::zeta: return "zeta";
        case PackageId::theta: return "theta";
    }
    return "?";
}

std::string to_string(PackageMode mode) {
    return mode == PackageMode::paper_literal ? "paper-literal" : "consistent";
}

std::string to_string(PackageFn fn) {
    switch (fn) {
        case PackageFn::A: return "A";
        case PackageFn::Abar: return "Abar";
        case PackageFn::B: return "B";
        case PackageFn::Bscript: return "Bscript";
        case PackageFn::D: return "D";
        case PackageFn::Ahat: return "Ahat";
        case PackageFn::Bhat: return "Bhat";
    }
    return "?";
}

PackageId parse_package_id(std::string_view text) {
    if (text == "alpha") return PackageId::alpha;
    if (text == "beta") return PackageId::beta;
    if (text == "gamma") return PackageId::gamma;
    if (text == "zeta") return PackageId::zeta;
    if (text == "theta") return PackageId::theta;
    throw std::invalid_argument("unknown package \"" + std::string(text) +
                                "\" (alpha|beta|gamma|zeta|theta)");
}

PackageMode parse_package_mode(std::string_view text) {
    if (text == "paper-literal" || text == "paper_literal")
        return PackageMode::paper_literal;
    if (text == "consistent") return PackageMode::consistent;
    throw std::invalid_argument("unknown package mode \"" + std::string(text) +
                                "\" (paper-literal|consistent)");
}

PackageFn parse_package_fn(std::string_view text) {
    if (text == "A") return PackageFn::A;
    if (text == "Abar") return PackageFn::Abar;
    if (text == "B") return PackageFn::B;
    if (text == "Bscript") return PackageFn::Bscript;
    if (text == "D") return PackageFn::D;
    if (text == "Ahat") return PackageFn::Ahat;
    if (text == "Bhat") return PackageFn::Bhat;
    throw std::invalid_argument("unknown package function \"" +
                                std::string(text) +
                                "\" (A|Abar|B|Bscript|D|Ahat|Bhat)");
}

namespace {

constexpr std::uint64_t kMaxPackageDegree = 1000000;

std::string fn_label(PackageId pkg, PackageFn fn, std::uint64_t d,
                     PackageMode mode) {
    std::string label = to_string(fn) + "_" + std::to_string(d) + " (" +
                        to_string(pkg);
    // alpha has no degree-2 seed, so mode does not change it.
    if (pkg != PackageId::alpha) label += ", " + to_string(mode);
    label += ")";
    return label;
}

// The degree-2 seed constant: the stated value uses -1 / +2 / +2 trails,
// the self-consistent value +1 / +4 / +4.
BigNat seed_trail(PackageId pkg, PackageMode mode) {
    bool consistent = mode == PackageMode::consistent;
    if (pkg == PackageId::beta) return consistent ? BigNat(1) : BigNat(0);
    return consistent ? BigNat(4) : BigNat(2);
}

GrowthFunction build_function(PackageId pkg, PackageFn fn, std::uint64_t d,
                              PackageMode mode);

GrowthFunction cached_function(PackageId pkg, PackageFn fn, std::uint64_t d,
                               PackageMode mode) {
    using Key = std::tuple<int, int, std::uint64_t, int>;
    static std::map<Key, GrowthFunction> registry;
    Key key{static_cast<int>(pkg), static_cast<int>(fn), d,
            static_cast<int>(mode)};
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    GrowthFunction built =
        build_function(pkg, fn, d, mode).renamed(fn_label(pkg, fn, d, mode));
    registry.emplace(std::move(key), built);
    return built;
}

[[noreturn]] void no_such_function(PackageId pkg, PackageFn fn, std::uint64_t d) {
    throw std::invalid_argument("package " + to_string(pkg) +
                                " has no function " + to_string(fn) +
                                " at degree " + std::to_string(d));
}

GrowthFunction build_alpha(PackageFn fn, std::uint64_t d, PackageMode mode) {
    if (d == 1) {
        switch (fn) {
            case PackageFn::A:
                return GrowthFunction::scalar_fn(
                    fn_label(PackageId::alpha, fn, d, mode),
                    [](const BigNat&, EvalCtx&) { return BigNat(1); });
            case PackageFn::Abar:
                return GrowthFunction::eta_vec_fn(
                    fn_label(PackageId::alpha, fn, d, mode), 1,
                    [](const BigNat&, const DimVector&, EvalCtx&) {
                        return BigNat(1);
                    });
            case PackageFn::B:
                return GrowthFunction::eta_vec_fn(
                    fn_label(PackageId::alpha, fn, d, mode), 1,
                    [](const BigNat&, const DimVector& v, EvalCtx&) {
                        return v.total();
                    });
            case PackageFn::Bscript:
                return GrowthFunction::eta_scalar_fn(
                    fn_label(PackageId::alpha, fn, d, mode),
                    [](const BigNat&, const BigNat& n, EvalCtx&) { return n; });
            case PackageFn::D:
                return GrowthFunction::scalar_fn(
                    fn_label(PackageId::alpha, fn, d, mode),
                    [](const BigNat& k, EvalCtx&) { return k; });
            default:
                no_such_function(PackageId::alpha, fn, d);
        }
    }
    switch (fn) {
        case PackageFn::A:
            return functional_apply(
                FunctionalKind::next_level_seed, d,
                {cached_function(PackageId::alpha, PackageFn::Bscript, d - 1, mode),
                 cached_function(PackageId::alpha, PackageFn::D, d - 1, mode)});
        case PackageFn::Abar:
            return functional_apply(
                FunctionalKind::vector_extension, d,
                {cached_function(PackageId::alpha, PackageFn::A, d, mode)});
        case PackageFn::B:
            return functional_apply(
                FunctionalKind::decomposition_bound, d,
                {cached_function(PackageId::alpha, PackageFn::Abar, d, mode)});
        case PackageFn::Bscript:
            return functional_apply(
                FunctionalKind::diagonal_restriction, d,
                {cached_function(PackageId::alpha, PackageFn::B, d, mode)});
        case PackageFn::D:
            return functional_apply(
                FunctionalKind::double_exponential, d,
                {cached_function(PackageId::alpha, PackageFn::Bscript, d, mode)});
        default:
            no_such_function(PackageId::alpha, fn, d);
    }
}

GrowthFunction build_beta(PackageFn fn, std::uint64_t d, PackageMode mode) {
    if (fn == PackageFn::Abar) {
        if (d == 2) {
            BigNat trail = seed_trail(PackageId::beta, mode);
            bool adds = mode == PackageMode::consistent;
            return GrowthFunction::eta_vec_fn(
                fn_label(PackageId::beta, fn, d, mode), 2,
                [trail, adds](const BigNat& eta, const DimVector& v, EvalCtx&) {
                    BigNat r = v.total();
                    r *= BigNat(4);
                    r += eta;
                    if (adds) {
                        r += trail;
                    } else {
                        r -= BigNat(1);
                    }
                    return r;
                });
        }
        return functional_apply(
            FunctionalKind::eta_vector_advance, d - 1,
            {cached_function(PackageId::beta, PackageFn::B, d - 1, mode)});
    }
    if (fn == PackageFn::B)
        return functional_apply(
            FunctionalKind::decomposition_bound, d,
            {cached_function(PackageId::beta, PackageFn::Abar, d, mode)});
    no_such_function(PackageId::beta, fn, d);
}

GrowthFunction build_gamma(PackageFn fn, std::uint64_t d, PackageMode mode) {
    if (fn == PackageFn::Abar) {
        if (d == 2) {
            BigNat trail = seed_trail(PackageId::gamma, mode);
            return GrowthFunction::vec_fn(
                fn_label(PackageId::gamma, fn, d, mode), 2,
                [trail](const DimVector& v, EvalCtx&) {
                    BigNat r = v.total();
                    r *= BigNat(4);
                    r += trail;
                    return r;
                });
        }
        return functional_apply(
            FunctionalKind::vector_advance, d - 1,
            {cached_function(PackageId::gamma, PackageFn::B, d - 1, mode)});
    }
    if (fn == PackageFn::B)
        return functional_apply(
            FunctionalKind::decomposition_bound, d,
            {cached_function(PackageId::gamma, PackageFn::Abar, d, mode)});
    no_such_function(PackageId::gamma, fn, d);
}

GrowthFunction build_scalar_seed(PackageId pkg, PackageFn fn, std::uint64_t d,
                                 PackageMode mode) {
    BigNat trail = seed_trail(pkg, mode);
    return GrowthFunction::scalar_fn(fn_label(pkg, fn, d, mode),
                                     [trail](const BigNat& sigma, EvalCtx&) {
                                         BigNat r = sigma;
                                         r *= BigNat(4);
                                         r += trail;
                                         return r;
                                     });
}

GrowthFunction build_zeta(PackageFn fn, std::uint64_t d, PackageMode mode) {
    if (fn == PackageFn::Ahat) {
        if (d == 2) return build_scalar_seed(PackageId::zeta, fn, d, mode);
        return functional_apply(
            FunctionalKind::scalar_advance, d - 1,
            {cached_function(PackageId::zeta, PackageFn::Bhat, d - 1, mode)});
    }
    if (fn == PackageFn::Bhat)
        return functional_apply(
            FunctionalKind::scalar_iterate_majorant, d,
            {cached_function(PackageId::zeta, PackageFn::Ahat, d, mode)});
    no_such_function(PackageId::zeta, fn, d);
}

GrowthFunction build_theta(PackageFn fn, std::uint64_t d, PackageMode mode) {
    if (fn == PackageFn::A) {
        if (d == 2) return build_scalar_seed(PackageId::theta, fn, d, mode);
        return functional_apply(
            FunctionalKind::scalar_advance, d - 1,
            {cached_function(PackageId::theta, PackageFn::B, d - 1, mode)});
    }
    if (fn == PackageFn::B)
        return functional_apply(
            FunctionalKind::doubling_majorant, d,
            {cached_function(PackageId::theta, PackageFn::A, d, mode)});
    no_such_function(PackageId::theta, fn, d);
}

GrowthFunction build_function(PackageId pkg, PackageFn fn, std::uint64_t d,
                              PackageMode mode) {
    switch (pkg) {
        case PackageId::alpha: return build_alpha(fn, d, mode);
        case PackageId::beta: return build_beta(fn, d, mode);
        case PackageId::gamma: return build_gamma(fn, d, mode);
        case PackageId::zeta: return build_zeta(fn, d, mode);
        case PackageId::theta: return build_theta(fn, d, mode);
    }
    throw std::invalid_argument("unknown package");
}

}  // namespace

GrowthFunction package_function(PackageId pkg, PackageFn fn, std::uint64_t d,
                                PackageMode mode) {
    std::uint64_t min_degree = pkg == PackageId::alpha ? 1 : 2;
    if (d < min_degree || d > kMaxPackageDegree)
        throw std::invalid_argument("package degree must be in " +
                                    std::to_string(min_degree) + ".." +
                                    std::to_string(kMaxPackageDegree));
    return cached_function(pkg, fn, d, mode);
}

// --- index scheme ----------------------------------------------------------

std::uint64_t function_index(IndexedFn kind, std::uint64_t d,
                             std::optional<std::uint64_t> iterate) {
    if (d < 2 || d > 1000000000ull)
        throw std::invalid_argument("function_index: degree must be in 2..10^9");
    bool needs_iterate = kind == IndexedFn::psi || kind == IndexedFn::phi;
    if (needs_iterate) {
        if (!iterate || *iterate < 1 || *iterate > d - 1)
            throw std::invalid_argument(
                "function_index: iterate level must be in 1.." +
                std::to_string(d - 1));
    } else if (iterate) {
        throw std::invalid_argument(
            "function_index: A and B take no iterate level");
    }
    std::uint64_t a_index = d * d - d - 1;
    switch (kind) {
        case IndexedFn::A: return a_index;
        case IndexedFn::B: return d * d + d - 2;
        case IndexedFn::psi: return a_index + 2 * *iterate - 1;
        case IndexedFn::phi: return a_index + 2 * *iterate;
    }
    throw std::invalid_argument("function_index: unknown kind");
}

}  // namespace stillman
