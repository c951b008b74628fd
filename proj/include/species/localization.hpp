#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "species/axiom.hpp"
#include "species/tower.hpp"

namespace species {

/// Localization of the species ring at the multiplicative set {1, K, K^2, ...}.
/// K must have a nonzero constant term: multiplication by K is then
/// window-faithful, which is what makes cross-multiplication equality honest
/// under truncation.
class LocContext {
public:
    LocContext(SpeciesPoly K, int trunc) : k_(std::move(K)), trunc_(trunc) {
        if (k_.trunc() != trunc_) throw ConfigError("context truncation mismatch");
        if (k_.is_zero()) throw ConfigError("localization at K = 0");
        if (k_.constant_term() == 0)
            throw ConfigError("localization needs K with a nonzero constant term");
    }

    const SpeciesPoly& k() const { return k_; }
    int trunc() const { return trunc_; }
    bool constant_k() const { return k_.classify().is_diff_constant; }

    // K^e, memoized; exponents repeat heavily across the axiom suites.
    SpeciesPoly kpow(long long e) const {
        if (e == 0) return SpeciesPoly::one(trunc_);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(e);
            if (it != cache_.end()) return it->second;
        }
        SpeciesPoly half = kpow(e / 2);
        SpeciesPoly r = half * half;
        if (e % 2) r = r * k_;
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.emplace(e, std::move(r)).first->second;
    }

private:
    SpeciesPoly k_;
    int trunc_;
    mutable std::mutex mutex_;
    mutable std::map<long long, SpeciesPoly> cache_;
};

using LocContextPtr = std::shared_ptr<const LocContext>;

inline LocContextPtr make_loc_context(SpeciesPoly K, int trunc) {
    return std::make_shared<const LocContext>(std::move(K), trunc);
}

/// Formal fraction num / K^a. Fractions are never reduced; equality is by
/// cross-multiplication within the common window.
class LocFraction {
public:
    LocFraction(SpeciesPoly num, long long denom_exp, LocContextPtr ctx)
        : num_(std::move(num)), dexp_(denom_exp), ctx_(std::move(ctx)) {
        if (!ctx_) throw ConfigError("fraction without a localization context");
        if (num_.trunc() != ctx_->trunc()) throw ConfigError("fraction truncation mismatch");
        if (dexp_ < 0) throw ConfigError("denominator exponent must be >= 0");
    }

    static LocFraction embed(const SpeciesPoly& phi, const LocContextPtr& ctx) {
        return LocFraction(phi, 0, ctx);
    }
    static LocFraction zero(const LocContextPtr& ctx) {
        return embed(SpeciesPoly::zero(ctx->trunc()), ctx);
    }
    static LocFraction one(const LocContextPtr& ctx) {
        return embed(SpeciesPoly::one(ctx->trunc()), ctx);
    }

    const SpeciesPoly& num() const { return num_; }
    long long denom_exp() const { return dexp_; }
    const LocContextPtr& context() const { return ctx_; }
    int trunc() const { return num_.trunc(); }
    int window() const { return num_.window(); }
    bool is_zero() const { return num_.is_zero(); }

    std::string str() const {
        return "(" + num_.str() + ")/K^" + std::to_string(dexp_);
    }

    friend LocFraction operator+(const LocFraction& a, const LocFraction& b) {
        a.check_ctx(b);
        return LocFraction(a.num_ * a.ctx_->kpow(b.dexp_) + b.num_ * a.ctx_->kpow(a.dexp_),
                           a.dexp_ + b.dexp_, a.ctx_);
    }

    friend LocFraction operator-(const LocFraction& a) {
        return LocFraction(-a.num_, a.dexp_, a.ctx_);
    }

    friend LocFraction operator-(const LocFraction& a, const LocFraction& b) { return a + (-b); }

    friend LocFraction operator*(const LocFraction& a, const LocFraction& b) {
        a.check_ctx(b);
        return LocFraction(a.num_ * b.num_, a.dexp_ + b.dexp_, a.ctx_);
    }

    friend LocFraction operator*(const Rational& c, const LocFraction& a) {
        return LocFraction(c * a.num_, a.dexp_, a.ctx_);
    }

    friend bool eq_window(const LocFraction& a, const LocFraction& b) {
        a.check_ctx(b);
        SpeciesPoly lhs = a.num_ * a.ctx_->kpow(b.dexp_);
        SpeciesPoly rhs = b.num_ * a.ctx_->kpow(a.dexp_);
        return eq_window(lhs, rhs); // ADL: the SpeciesPoly overload
    }

    // Unit iff the numerator is a unit of the truncated ring; the inverse of
    // num/K^a is (num^{-1} K^a)/K^0.
    bool is_unit() const { return num_.constant_term() != 0; }

    LocFraction inverse() const {
        return LocFraction(num_.mult_inverse() * ctx_->kpow(dexp_), 0, ctx_);
    }

    void check_ctx(const LocFraction& o) const {
        if (ctx_ != o.ctx_) throw ConfigError("fractions from different localization contexts");
    }

private:
    SpeciesPoly num_;
    long long dexp_;
    LocContextPtr ctx_;
};

// Plain quotient-rule derivative with the common K-power never materialized:
// (num/K^a)' = (K num' - a K' num)/K^(a+1).
inline LocFraction frac_derive_plain(const LocFraction& f) {
    const SpeciesPoly& K = f.context()->k();
    SpeciesPoly num = K * f.num().derive() - Rational(f.denom_exp()) * (K.derive() * f.num());
    return LocFraction(std::move(num), f.denom_exp() + 1, f.context());
}

// Modified derivation D_K(num/K^a) = (num/K^(a+1))', written literally with
// the quotient rule: (K^(a+1) num' - (K^(a+1))' num)/K^(2a+2).
inline LocFraction d_mod(const LocFraction& f) {
    long long a = f.denom_exp();
    const SpeciesPoly ka1 = f.context()->kpow(a + 1);
    SpeciesPoly num = ka1 * f.num().derive() - ka1.derive() * f.num();
    return LocFraction(std::move(num), 2 * a + 2, f.context());
}

// Modified integration P_K = K * int_{e^X}, the Joyal series applied with
// plain fraction derivatives: K sum_{i>=1} (-1)^{i-1} (X^i/i!) f^{(i-1)}.
inline LocFraction p_mod(const LocFraction& f) {
    const LocContextPtr& ctx = f.context();
    int N = f.trunc();
    LocFraction acc = LocFraction::zero(ctx);
    LocFraction d = f;
    for (int i = 1; i <= N; ++i) {
        if (!d.is_zero()) {
            SpeciesPoly xi = SpeciesPoly::from_monomial(Monomial::gen(Generator::x(), i),
                                                        Rational(1, factorial(i)), N);
            LocFraction term = LocFraction::embed(xi, ctx) * d;
            acc = acc + (i % 2 == 1 ? term : -term);
        }
        d = frac_derive_plain(d);
    }
    return LocFraction::embed(ctx->k(), ctx) * acc;
}

// Evaluation for a constant K: E(f) = sum_n (-X)^n/n! f^{(n)}.
inline LocFraction eval_loc(const LocFraction& f) {
    const LocContextPtr& ctx = f.context();
    if (!ctx->constant_k())
        throw UnsupportedContextError("eval_loc needs a differential-constant K");
    int N = f.trunc();
    LocFraction acc = LocFraction::zero(ctx);
    LocFraction d = f;
    for (int n = 0; n <= N; ++n) {
        if (!d.is_zero()) {
            SpeciesPoly xn = SpeciesPoly::from_monomial(
                n == 0 ? Monomial::one() : Monomial::gen(Generator::x(), n),
                Rational(1, factorial(n)), N);
            LocFraction term = LocFraction::embed(xn, ctx) * d;
            acc = acc + (n % 2 == 0 ? term : -term);
        }
        d = frac_derive_plain(d);
    }
    return acc;
}

// Seeded random fractions: sampled polynomial numerators over denominators
// K^0..K^2.
class FracSampler {
public:
    explicit FracSampler(LocContextPtr ctx) : ctx_(std::move(ctx)), poly_(ctx_->trunc()) {}

    LocFraction sample(std::uint64_t seed, std::uint64_t index) const {
        Rng rng(Rng::mix(seed ^ 0xf4ac710ULL, index));
        long long a = rng.range(0, 2);
        return LocFraction(poly_.sample(seed, index), a, ctx_);
    }

    LocFraction sample_unit(std::uint64_t seed, std::uint64_t index) const {
        Rng rng(Rng::mix(seed ^ 0xf4ac710ULL, index));
        long long a = rng.range(0, 2);
        return LocFraction(poly_.sample_unit(seed, index), a, ctx_);
    }

    const LocContextPtr& context() const { return ctx_; }

private:
    LocContextPtr ctx_;
    PolySampler poly_;
};

// The four modified-structure checks for (D_K, P_K), J = P o D:
//   unit-modified Leibniz   D(xy) = D(x)y + xD(y) - xD(1)y
//   modified section        D(P(x)) = x
//   Reynolds                P(x)P(y) = P(P(x)y) + P(xP(y)) - P(P(x)D(1)P(y))
//   modified integro-diff.  J(x)J(y) = J(x)y + xJ(y) - J(xy) - J(1)(xy - J(xy))
inline std::vector<AxiomReport> check_modified_axioms(const LocContextPtr& ctx, int samples,
                                                      std::uint64_t seed) {
    if (samples < 1) throw ConfigError("check_modified_axioms needs samples >= 1");
    FracSampler sampler(ctx);
    int floor = ctx->trunc() - 3;
    LocFraction one = LocFraction::one(ctx);
    LocFraction d1 = d_mod(one);
    auto J = [](const LocFraction& v) { return p_mod(d_mod(v)); };
    LocFraction j1 = J(one);

    struct Id {
        const char* name;
        std::function<std::pair<LocFraction, LocFraction>(const LocFraction&, const LocFraction&)> sides;
    };
    std::vector<Id> ids = {
        {"unit_modified_leibniz",
         [&](const LocFraction& x, const LocFraction& y) {
             return std::pair(d_mod(x * y), d_mod(x) * y + x * d_mod(y) - x * d1 * y);
         }},
        {"modified_section",
         [&](const LocFraction& x, const LocFraction&) {
             return std::pair(d_mod(p_mod(x)), x);
         }},
        {"reynolds",
         [&](const LocFraction& x, const LocFraction& y) {
             LocFraction px = p_mod(x), py = p_mod(y);
             return std::pair(px * py, p_mod(px * y) + p_mod(x * py) - p_mod(px * d1 * py));
         }},
        {"modified_integro_differential",
         [&](const LocFraction& x, const LocFraction& y) {
             LocFraction xy = x * y;
             LocFraction jxy = J(xy);
             return std::pair(J(x) * J(y), J(x) * y + x * J(y) - jxy - j1 * (xy - jxy));
         }},
    };

    std::vector<AxiomReport> reports;
    for (const auto& id : ids) {
        AxiomReport rep;
        rep.axiom = id.name;
        rep.samples = samples;
        for (int i = 0; i < samples && rep.holds; ++i) {
            LocFraction x = sampler.sample(seed, 2 * static_cast<std::uint64_t>(i));
            LocFraction y = sampler.sample(seed, 2 * static_cast<std::uint64_t>(i) + 1);
            auto [lhs, rhs] = id.sides(x, y);
            int w = std::min(lhs.window(), rhs.window());
            if (w < floor) {
                ++rep.inconclusive_count;
                continue;
            }
            if (!eq_window(lhs, rhs)) {
                rep.holds = false;
                rep.witness = AxiomWitness{{x.str(), y.str()}, lhs.str(), rhs.str(), w};
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

} // namespace species
