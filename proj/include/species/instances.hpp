#pragma once

#include "species/axiom.hpp"
#include "species/linear.hpp"
#include "species/localization.hpp"

namespace species {

// The three integro-differential instances behind the derived-structure
// operations. Uniform handle surface: ring arithmetic, derive/integrate/
// evaluate, window-aware equality, units, seeded sampling.

struct SetIDR {
    using Elem = SpeciesPoly;

    int trunc;
    DifferentialTower tower;
    PolySampler sampler_;

    explicit SetIDR(int N)
        : trunc(N), tower(DifferentialTower::analytic_exp(N)), sampler_(N) {}

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem scalar_mul(const Rational& c, const Elem& a) const { return c * a; }
    Elem one() const { return SpeciesPoly::one(trunc); }
    Elem zero() const { return SpeciesPoly::zero(trunc); }
    Elem derive(const Elem& a) const { return a.derive(); }
    Elem integrate(const Elem& a) const { return joyal_integral(tower, a); }
    Elem evaluate(const Elem& a) const { return evaluate_tower(tower, a); }
    bool eq(const Elem& a, const Elem& b) const { return eq_window(a, b); }
    bool rep_nonzero(const Elem& a) const { return !a.is_zero(); }
    int window(const Elem& a) const { return a.window(); }
    int common_window(const Elem& a, const Elem& b) const {
        return std::min(a.window(), b.window());
    }
    int window_floor() const { return trunc - 3; }
    int horizon() const { return trunc; }
    std::string str(const Elem& a) const { return a.str(); }
    bool is_unit(const Elem& a) const { return a.constant_term() != 0; }
    Elem inverse(const Elem& a) const { return a.mult_inverse(); }
    Elem sample(std::uint64_t seed, std::uint64_t i) const { return sampler_.sample(seed, i); }
    Elem sample_unit(std::uint64_t seed, std::uint64_t i) const {
        return sampler_.sample_unit(seed, i);
    }
};

struct LinIDR {
    using Elem = LinSpecies;

    int trunc;
    LinSampler sampler_;

    explicit LinIDR(int N) : trunc(N), sampler_(N) {}

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem scalar_mul(const Rational& c, const Elem& a) const {
        if (!is_integer(c)) throw DomainError("linear species scalars must be integers");
        return numerator(c) * a;
    }
    Elem one() const { return LinSpecies::one(trunc); }
    Elem zero() const { return LinSpecies::zero(trunc); }
    Elem derive(const Elem& a) const { return a.derive(); }
    Elem integrate(const Elem& a) const { return a.integrate(); }
    Elem evaluate(const Elem& a) const { return a.evaluate(); }
    bool eq(const Elem& a, const Elem& b) const { return eq_window(a, b); }
    bool rep_nonzero(const Elem& a) const { return !a.is_zero(); }
    int window(const Elem& a) const { return a.window(); }
    int common_window(const Elem& a, const Elem& b) const {
        return std::min(a.window(), b.window());
    }
    int window_floor() const { return trunc - 3; }
    int horizon() const { return trunc; }
    std::string str(const Elem& a) const { return a.str(); }
    bool is_unit(const Elem& a) const { return a.count(0) == 1 || a.count(0) == -1; }
    Elem inverse(const Elem& a) const {
        if (!is_unit(a)) throw NotAUnitError("linear species unit needs f_0 = +-1");
        int N = trunc;
        std::vector<Int> g(N + 1, 0);
        g[0] = a.count(0); // f_0^{-1} = f_0 for f_0 = +-1
        for (int n = 1; n <= a.window(); ++n) {
            Int acc = 0;
            for (int k = 1; k <= n; ++k) acc += binomial(n, k) * a.count(k) * g[n - k];
            g[n] = -a.count(0) * acc;
        }
        return LinSpecies::from_counts(std::move(g), N).with_window(a.window());
    }
    Elem sample(std::uint64_t seed, std::uint64_t i) const { return sampler_.sample(seed, i); }
    Elem sample_unit(std::uint64_t seed, std::uint64_t i) const {
        return sampler_.sample_unit(seed, i);
    }
};

// Localized instance; integro-differential only when K is a differential
// constant (checked), per the evaluation's requirement.
struct LocIDR {
    using Elem = LocFraction;

    LocContextPtr ctx;
    FracSampler sampler_;

    explicit LocIDR(LocContextPtr c) : ctx(std::move(c)), sampler_(ctx) {
        if (!ctx->constant_k())
            throw UnsupportedContextError(
                "integro-differential localization instance needs a constant K");
    }

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
};

// Certify the section + hybrid Rota-Baxter axioms for an instance's handles
// before deriving structures from them.
template <class Inst>
void certify_instance(const Inst& R, int samples = 10, std::uint64_t seed = 0) {
    for (auto kind : {AxiomKind::Section, AxiomKind::HybridRB}) {
        AxiomReport rep = check_axiom_generic(R, kind, 0, samples, seed);
        if (!rep.holds)
            throw std::logic_error(std::string("instance failed certification: ") + rep.axiom);
    }
}

inline SetIDR make_set_instance(int trunc, bool certify = true) {
    SetIDR r(trunc);
    if (certify) certify_instance(r);
    return r;
}

inline LinIDR make_lin_instance(int trunc, bool certify = true) {
    LinIDR r(trunc);
    if (certify) certify_instance(r);
    return r;
}

inline LocIDR make_loc_instance(LocContextPtr ctx, bool certify = true) {
    LocIDR r(std::move(ctx));
    if (certify) certify_instance(r);
    return r;
}

} // namespace species
