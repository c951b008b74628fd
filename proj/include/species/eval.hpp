#pragma once

#include <map>
#include <optional>
#include <variant>

#include "species/calculus.hpp"
#include "species/expr.hpp"
#include "species/oracle.hpp"
#include "species/series.hpp"

namespace species {

enum class RingKind { Set, Linear, Localized };

using Value = std::variant<SpeciesPoly, LinSpecies, LocFraction, EGFSeries, OrdDist>;

using Env = std::map<std::string, Value>;

struct EvalContext {
    int trunc = 8;
    RingKind ring = RingKind::Set;
    LocContextPtr loc;          // Localized only
    const Env* env = nullptr;   // REPL bindings

    EvalContext with_trunc(int N) const {
        EvalContext c = *this;
        c.trunc = N;
        if (c.loc && N != c.loc->trunc()) {
            // rebuild the context's K at the new truncation is the caller's
            // job; series/counts recomputation only ever uses the set ring
            c.ring = RingKind::Set;
            c.loc = nullptr;
        }
        return c;
    }
};

inline Value eval_value(const Expr& e, const EvalContext& ctx);

// ---- set-species evaluation ----------------------------------------------

inline SpeciesPoly atom_poly(const Expr& e, int N) {
    switch (e.atom) {
        case AtomKind::One: return SpeciesPoly::one(N);
        case AtomKind::X: return SpeciesPoly::x(N);
        case AtomKind::E: return SpeciesPoly::comb_exp(N);
        case AtomKind::En: return SpeciesPoly::e_n(e.index, N);
        case AtomKind::Cn:
            if (e.index < 1) throw DomainError("C index must be >= 1");
            return SpeciesPoly::c_n(e.index, N);
        case AtomKind::L: return SpeciesPoly::linear_orders(N);
        case AtomKind::Cyc: return SpeciesPoly::cycles(N);
        case AtomKind::AnalyticExp: return SpeciesPoly::analytic_exp(e.lambda, N);
        case AtomKind::Graphs:
            throw DomainError("Graphs is not representable in the generator ring; "
                              "use it in oracle or series expressions");
        case AtomKind::Ident:
            throw DomainError("unknown identifier '" + e.name + "'");
    }
    throw DomainError("unsupported atom");
}

template <class Inst>
typename Inst::Elem eval_ring(const Expr& e, const Inst& R, const EvalContext& ctx);

// Tower selection for J[...] in the set ring; defined after SetEvalInst.
inline DifferentialTower select_tower(const Expr& e, const EvalContext& ctx);

template <class Inst>
typename Inst::Elem eval_ring(const Expr& e, const Inst& R, const EvalContext& ctx) {
    using K = Expr::Kind;
    auto arg = [&](size_t i) { return eval_ring(*e.args[i], R, ctx); };
    switch (e.kind) {
        case K::Number: return R.scalar_mul(e.number, R.one());
        case K::Atom:
            if (e.atom == AtomKind::Ident && ctx.env) {
                auto it = ctx.env->find(e.name);
                if (it != ctx.env->end()) {
                    if (auto* p = std::get_if<typename Inst::Elem>(&it->second)) return *p;
                    throw DomainError("binding '" + e.name + "' is not a value of this ring");
                }
            }
            return R.embed_atom(e, ctx);
        case K::Neg: return R.sub(R.zero(), arg(0));
        case K::Add: return R.add(arg(0), arg(1));
        case K::Sub: return R.sub(arg(0), arg(1));
        case K::Mul: return R.mul(arg(0), arg(1));
        case K::Div: {
            auto d = arg(1);
            if (!R.is_unit(d)) throw NotAUnitError("division by a non-unit");
            return R.mul(arg(0), R.inverse(d));
        }
        case K::PowInt: {
            auto b = arg(0);
            auto r = R.one();
            for (long long i = 0; i < e.exponent; ++i) r = R.mul(r, b);
            return r;
        }
        case K::Call: {
            if (e.name == "D") return R.derive(arg(0));
            if (e.name == "J") return R.integrate_tower(e, ctx);
            if (e.name == "Ev") return R.evaluate(arg(0));
            if (e.name == "inv") {
                auto v = arg(0);
                if (!R.is_unit(v)) throw NotAUnitError("inv of a non-unit");
                return R.inverse(v);
            }
            if (e.name == "exp") return exp_op(R, arg(0));
            if (e.name == "log") return log_op(R, arg(0));
            if (e.name == "pow") return pow_op(R, arg(0), arg(1));
            if (e.name == "comp") return R.compose(arg(0), arg(1));
            if (e.name == "divpow") {
                if (e.args[1]->kind != K::Number || !is_integer(e.args[1]->number))
                    throw DomainError("divpow needs a natural-number order");
                return divided_power(R, arg(0), static_cast<int>(numerator(e.args[1]->number)));
            }
            throw DomainError("'" + e.name + "' does not evaluate to a ring element");
        }
    }
    throw DomainError("unsupported expression");
}

// Instance adapters for expression evaluation.
struct SetEvalInst : SetIDR {
    explicit SetEvalInst(int N) : SetIDR(N) {}
    SpeciesPoly embed_atom(const Expr& e, const EvalContext& ctx) const {
        return atom_poly(e, ctx.trunc);
    }
    SpeciesPoly integrate_tower(const Expr& e, const EvalContext& ctx) const {
        DifferentialTower T = select_tower(e, ctx);
        return joyal_integral(T, eval_ring(*e.args[e.tower == "const" ? 1 : 0], *this, ctx));
    }
    SpeciesPoly compose(const SpeciesPoly& a, const SpeciesPoly& b) const {
        return id_compose(*this, a, b);
    }
};

inline DifferentialTower select_tower(const Expr& e, const EvalContext& ctx) {
    if (e.tower == "E") return DifferentialTower::comb_exp(ctx.trunc);
    if (e.tower == "const") {
        SetEvalInst R(ctx.trunc);
        SpeciesPoly k = eval_ring(*e.args[0], R, ctx);
        return tower_from_constant(k);
    }
    return DifferentialTower::analytic_exp(ctx.trunc);
}

struct LinEvalInst : LinIDR {
    explicit LinEvalInst(int N) : LinIDR(N) {}
    LinSpecies embed_atom(const Expr& e, const EvalContext& ctx) const {
        if (e.atom == AtomKind::Graphs) {
            std::vector<Int> counts(ctx.trunc + 1);
            for (int n = 0; n <= ctx.trunc; ++n)
                counts[n] = int_pow(2, static_cast<long long>(n) * (n - 1) / 2);
            return LinSpecies::from_counts(std::move(counts), ctx.trunc);
        }
        return lin_from_set_species(atom_poly(e, ctx.trunc));
    }
    LinSpecies integrate_tower(const Expr& e, const EvalContext& ctx) const {
        if (!e.tower.empty() && e.tower != "exp")
            throw DomainError("linear species have one canonical integral");
        return eval_ring(*e.args[0], *this, ctx).integrate();
    }
    LinSpecies compose(const LinSpecies& a, const LinSpecies& b) const {
        return lin_compose(a, b);
    }
};

struct LocEvalInst : LocIDR {
    explicit LocEvalInst(LocContextPtr c) : LocIDR(std::move(c)) {}
    LocFraction embed_atom(const Expr& e, const EvalContext& ctx) const {
        return LocFraction::embed(atom_poly(e, ctx.trunc), this->ctx);
    }
    LocFraction integrate_tower(const Expr& e, const EvalContext& ctx) const {
        if (!e.tower.empty() && e.tower != "exp")
            throw DomainError("the localized integral is the modified canonical one");
        return p_mod(eval_ring(*e.args[0], *this, ctx));
    }
    LocFraction compose(const LocFraction& a, const LocFraction& b) const {
        return id_compose(*this, a, b);
    }
};

// Localized instance without the constant-K requirement: D and P are always
// available, the evaluation only for constant K (checked lazily).
struct LocEvalAny {
    using Elem = LocFraction;
    LocContextPtr ctx;
    FracSampler sampler_;
    explicit LocEvalAny(LocContextPtr c) : ctx(std::move(c)), sampler_(ctx) {}

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem scalar_mul(const Rational& c, const Elem& a) const { return c * a; }
    Elem one() const { return LocFraction::one(ctx); }
    Elem zero() const { return LocFraction::zero(ctx); }
    Elem derive(const Elem& a) const { return d_mod(a); }
    Elem integrate(const Elem& a) const { return p_mod(a); }
    Elem evaluate(const Elem& a) const { return eval_loc(a); }
    bool eq(const Elem& a, const Elem& b) const { return eq_window(a, b); }
    bool rep_nonzero(const Elem& a) const { return !a.is_zero(); }
    int window(const Elem& a) const { return a.window(); }
    int common_window(const Elem& a, const Elem& b) const {
        return std::min(a.window(), b.window());
    }
    int window_floor() const { return ctx->trunc() - 3; }
    int horizon() const { return ctx->trunc(); }
    std::string str(const Elem& a) const { return a.str(); }
    bool is_unit(const Elem& a) const { return a.is_unit(); }
    Elem inverse(const Elem& a) const { return a.inverse(); }
    Elem sample(std::uint64_t seed, std::uint64_t i) const { return sampler_.sample(seed, i); }
    Elem sample_unit(std::uint64_t seed, std::uint64_t i) const {
        return sampler_.sample_unit(seed, i);
    }
    LocFraction embed_atom(const Expr& e, const EvalContext& c) const {
        return LocFraction::embed(atom_poly(e, c.trunc), ctx);
    }
    LocFraction integrate_tower(const Expr& e, const EvalContext& c) const {
        if (!e.tower.empty() && e.tower != "exp")
            throw DomainError("the localized integral is the modified canonical one");
        return p_mod(eval_ring(*e.args[0], *this, c));
    }
    LocFraction compose(const LocFraction& a, const LocFraction& b) const {
        return id_compose(*this, a, b);
    }
};

// ---- series evaluation -----------------------------------------------------

// Exponential generating series of an expression. Structural nodes are
// evaluated at series level (so Graphs and similar count-only species are
// fine anywhere the structure maps through); other calls fall back to the
// set ring and take gs of the result.
inline EGFSeries eval_series(const Expr& e, const EvalContext& ctx) {
    using K = Expr::Kind;
    int N = ctx.trunc;
    auto arg = [&](size_t i) { return eval_series(*e.args[i], ctx); };
    switch (e.kind) {
        case K::Number: return EGFSeries::monomial(0, e.number, N);
        case K::Atom:
            if (e.atom == AtomKind::Graphs) {
                std::vector<Rational> a(N + 1);
                for (int n = 0; n <= N; ++n)
                    a[n] = Rational(int_pow(2, static_cast<long long>(n) * (n - 1) / 2),
                                    factorial(n));
                return EGFSeries::from_coeffs(std::move(a), N);
            }
            if (e.atom == AtomKind::Ident && ctx.env) {
                auto it = ctx.env->find(e.name);
                if (it != ctx.env->end()) {
                    if (auto* s = std::get_if<EGFSeries>(&it->second)) return *s;
                    if (auto* p = std::get_if<SpeciesPoly>(&it->second)) return gs(*p);
                }
            }
            return gs(atom_poly(e, N));
        case K::Neg: return -arg(0);
        case K::Add: return arg(0) + arg(1);
        case K::Sub: return arg(0) - arg(1);
        case K::Mul: return arg(0) * arg(1);
        case K::Div: return arg(0) * arg(1).inverse();
        case K::PowInt: return arg(0).pow(e.exponent);
        case K::Call:
            if (e.name == "D") return arg(0).derive();
            if (e.name == "comp") return arg(0).compose(arg(1));
            if (e.name == "gs") return arg(0);
            if (e.name == "J" && e.tower != "E" && e.tower != "const")
                return arg(0).integrate();
            break;
        default: break;
    }
    // fall back through the species ring
    SetEvalInst R(N);
    return gs(eval_ring(e, R, ctx));
}

// ---- counts and functorial composition -------------------------------------

/// m! [x^m] gs(expr), recomputed at internal truncation max(m, ctx.trunc).
/// Derivatives and similar window-shrinking operations in the expression get
/// extra truncation headroom until the coefficient is exact.
inline Int counts_at(const Expr& e, int m, const EvalContext& ctx) {
    if (m < 0) throw DomainError("cardinality must be >= 0");
    int T = std::max(m, ctx.trunc);
    for (int attempt = 0; attempt < 64; ++attempt) {
        EGFSeries s = eval_series(e, ctx.with_trunc(T));
        if (m <= s.window()) {
            Rational c = s.coeff(m) * factorial(m);
            if (!is_integer(c))
                throw NotASpeciesError("non-integral structure count at cardinality " +
                                       std::to_string(m));
            return numerator(c);
        }
        T += std::max(1, m - s.window());
    }
    throw WindowError("count beyond the exact window");
}

/// Functorial composition at series level: coefficient of x^n is
/// |F[|G[n]|]| / n!. Inner counts must be natural numbers.
inline EGFSeries functorial_compose_series(const Expr& f, const Expr& g, int N,
                                           const EvalContext& ctx) {
    std::vector<Rational> coeffs(N + 1);
    for (int n = 0; n <= N; ++n) {
        Int gn = counts_at(g, n, ctx);
        if (gn < 0) throw NotASpeciesError("inner species has a negative count");
        if (gn > 1000000) throw ResourceLimitError("inner count too large for recomputation");
        Int fn = counts_at(f, static_cast<int>(gn.convert_to<long long>()), ctx);
        coeffs[n] = Rational(fn, factorial(n));
    }
    return EGFSeries::from_coeffs(std::move(coeffs), N);
}

/// Enumerated structure counts against series coefficients, n = 0..upto.
inline OracleReport verify_counts(const ExprPtr& e, int upto, const EvalContext& ctx) {
    Oracle oracle;
    OracleReport rep;
    rep.expr = print_expr(*e);
    for (int n = 0; n <= upto; ++n) {
        Int enumerated = oracle.enumerate_count(e, n);
        Int series = counts_at(*e, n, ctx);
        bool match = enumerated == series;
        rep.rows.push_back({n, enumerated, series, match});
        if (!match && rep.pass) {
            rep.pass = false;
            rep.first_mismatch = n;
        }
    }
    return rep;
}

struct FcompComparison {
    EGFSeries functorial;
    EGFSeries partitional; // gs of the integro-differential composition
    std::optional<int> first_mismatch;
};

// Compare the functorial composition against the integro-differential one at
// series level; reports the first coefficient mismatch instead of asserting
// equality.
inline FcompComparison compare_fcomp(const Expr& f, const Expr& g, const EvalContext& ctx) {
    int N = ctx.trunc;
    SetEvalInst R(N);
    SpeciesPoly fi = eval_ring(f, R, ctx);
    SpeciesPoly gi = eval_ring(g, R, ctx);
    FcompComparison cmp{functorial_compose_series(f, g, N, ctx),
                        gs(id_compose(R, fi, gi)),
                        std::nullopt};
    int w = std::min(cmp.functorial.window(), cmp.partitional.window());
    for (int n = 0; n <= w; ++n) {
        if (cmp.functorial.coeff(n) != cmp.partitional.coeff(n)) {
            cmp.first_mismatch = n;
            break;
        }
    }
    return cmp;
}

// ---- toplevel value evaluation ---------------------------------------------

inline Value eval_value(const Expr& e, const EvalContext& ctx) {
    if (e.kind == Expr::Kind::Call) {
        if (e.name == "gs") return eval_series(*e.args[0], ctx);
        if (e.name == "fcomp")
            return functorial_compose_series(*e.args[0], *e.args[1], ctx.trunc, ctx);
        if (e.name == "ord" || e.name == "dist") {
            auto run = [&](auto&& R) -> OrdDist {
                auto a = eval_ring(*e.args[0], R, ctx);
                auto b = e.name == "dist" ? eval_ring(*e.args[1], R, ctx) : R.zero();
                return ord_and_dist(R, a, b);
            };
            switch (ctx.ring) {
                case RingKind::Set: return run(SetEvalInst(ctx.trunc));
                case RingKind::Linear: return run(LinEvalInst(ctx.trunc));
                case RingKind::Localized: return run(LocEvalInst(ctx.loc));
            }
        }
    }
    switch (ctx.ring) {
        case RingKind::Set: return eval_ring(e, SetEvalInst(ctx.trunc), ctx);
        case RingKind::Linear: return eval_ring(e, LinEvalInst(ctx.trunc), ctx);
        case RingKind::Localized: {
            if (!ctx.loc) throw ConfigError("localized evaluation needs a context K");
            if (ctx.loc->constant_k()) return eval_ring(e, LocEvalInst(ctx.loc), ctx);
            return eval_ring(e, LocEvalAny(ctx.loc), ctx);
        }
    }
    throw ConfigError("unknown ring");
}

inline std::string value_str(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, OrdDist>) return x.str();
            else return x.str();
        },
        v);
}

} // namespace species
