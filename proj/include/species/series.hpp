#pragma once

#include <string>
#include <vector>

#include "species/linear.hpp"
#include "species/localization.hpp"

namespace species {

/// Truncated power series sum a_n x^n over exact rationals (exponential
/// generating series store a_n = f_n/n!). Windowed like the species rings.
class EGFSeries {
public:
    explicit EGFSeries(int trunc) : trunc_(check(trunc)), window_(trunc), a_(trunc + 1, 0) {}

    static EGFSeries zero(int N) { return EGFSeries(N); }

    static EGFSeries from_coeffs(std::vector<Rational> coeffs, int trunc) {
        EGFSeries s(trunc);
        for (size_t i = 0; i < coeffs.size() && i <= static_cast<size_t>(trunc); ++i)
            s.a_[i] = std::move(coeffs[i]);
        return s;
    }

    static EGFSeries one(int N) { return monomial(0, 1, N); }
    static EGFSeries x(int N) { return monomial(1, 1, N); }

    static EGFSeries monomial(int k, const Rational& c, int N) {
        EGFSeries s(N);
        if (k <= N) s.a_[k] = c;
        return s;
    }

    int trunc() const { return trunc_; }
    int window() const { return window_; }
    const Rational& coeff(int n) const { return a_.at(n); }

    bool is_zero() const {
        for (const auto& c : a_)
            if (c != 0) return false;
        return true;
    }

    int known_order() const {
        for (int n = 0; n <= window_; ++n)
            if (a_[n] != 0) return n;
        return window_ + 1;
    }

    EGFSeries with_window(int w) const {
        EGFSeries r = *this;
        r.window_ = std::clamp(w, 0, trunc_);
        r.a_.resize(r.window_ + 1, 0);
        return r;
    }

    friend EGFSeries operator+(const EGFSeries& a, const EGFSeries& b) {
        a.check_same(b);
        EGFSeries r(a.trunc_);
        r.window_ = std::min(a.window_, b.window_);
        r.a_.assign(r.window_ + 1, 0);
        for (int n = 0; n <= r.window_; ++n) r.a_[n] = a.a_[n] + b.a_[n];
        return r;
    }

    friend EGFSeries operator-(const EGFSeries& a) {
        EGFSeries r = a;
        for (auto& c : r.a_) c = -c;
        return r;
    }

    friend EGFSeries operator-(const EGFSeries& a, const EGFSeries& b) { return a + (-b); }

    friend EGFSeries operator*(const Rational& c, const EGFSeries& a) {
        EGFSeries r = a;
        if (c == 0) return EGFSeries(a.trunc_);
        for (auto& v : r.a_) v = c * v;
        return r;
    }

    friend EGFSeries operator*(const EGFSeries& a, const EGFSeries& b) {
        a.check_same(b);
        EGFSeries r(a.trunc_);
        r.window_ = std::min({a.trunc_, a.window_ + b.known_order(), b.window_ + a.known_order()});
        r.a_.assign(r.window_ + 1, 0);
        for (int i = 0; i <= a.window_; ++i) {
            if (a.a_[i] == 0) continue;
            for (int j = 0; j <= b.window_ && i + j <= r.window_; ++j)
                r.a_[i + j] += a.a_[i] * b.a_[j];
        }
        return r;
    }

    EGFSeries derive() const { // d/dx
        EGFSeries r(trunc_);
        r.window_ = std::max(0, window_ - 1);
        r.a_.assign(r.window_ + 1, 0);
        for (int n = 0; n + 1 <= window_; ++n) r.a_[n] = Rational(n + 1) * a_[n + 1];
        return r;
    }

    EGFSeries derive(int k) const {
        EGFSeries r = *this;
        for (int i = 0; i < k; ++i) r = r.derive();
        return r;
    }

    EGFSeries integrate() const { // int_0^x
        EGFSeries r(trunc_);
        r.window_ = std::min(trunc_, window_ + 1);
        r.a_.assign(r.window_ + 1, 0);
        for (int n = 1; n <= r.window_; ++n) r.a_[n] = a_[n - 1] / n;
        return r;
    }

    EGFSeries inverse() const {
        if (a_[0] == 0) throw NotAUnitError("series inverse needs a nonzero constant term");
        EGFSeries r(trunc_);
        r.window_ = window_;
        r.a_.assign(r.window_ + 1, 0);
        r.a_[0] = 1 / a_[0];
        for (int n = 1; n <= r.window_; ++n) {
            Rational acc = 0;
            for (int k = 1; k <= n; ++k) acc += a_[k] * r.a_[n - k];
            r.a_[n] = -acc / a_[0];
        }
        return r;
    }

    EGFSeries pow(long long e) const {
        if (e < 0) throw ConfigError("pow requires a nonnegative exponent");
        EGFSeries base = *this, r = one(trunc_);
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // F(G(x)) for G(0) = 0.
    EGFSeries compose(const EGFSeries& g) const {
        check_same(g);
        if (g.a_[0] != 0) throw NotInitializedError("series composition needs g(0) = 0");
        int w = std::min(window_, g.window_);
        EGFSeries acc(trunc_), gpow = one(trunc_);
        for (int k = 0; k <= trunc_; ++k) {
            if (k <= window_ && a_[k] != 0) acc = acc + a_[k] * gpow;
            gpow = gpow * g;
        }
        return acc.with_window(w);
    }

    friend bool eq_window(const EGFSeries& a, const EGFSeries& b) {
        a.check_same(b);
        int w = std::min(a.window_, b.window_);
        for (int n = 0; n <= w; ++n)
            if (a.a_[n] != b.a_[n]) return false;
        return true;
    }

    // "a0 + a1*x + ... + O(x^{w+1})", nonzero terms only
    std::string str() const {
        std::string s;
        for (int n = 0; n <= window_; ++n) {
            if (a_[n] == 0) continue;
            Rational c = a_[n];
            if (s.empty()) {
                if (c < 0) { s += "-"; c = -c; }
            } else {
                s += (c < 0) ? " - " : " + ";
                if (c < 0) c = -c;
            }
            if (n == 0) s += rat_str(c);
            else {
                std::string xs = (n == 1) ? "x" : "x^" + std::to_string(n);
                s += (c == 1) ? xs : rat_str(c) + "*" + xs;
            }
        }
        if (s.empty()) s = "0";
        return s + " + O(x^" + std::to_string(window_ + 1) + ")";
    }

private:
    static int check(int N) {
        if (N < 0) throw ConfigError("truncation bound must be >= 0");
        return N;
    }
    void check_same(const EGFSeries& o) const {
        if (trunc_ != o.trunc_)
            throw ConfigError("mismatched truncation bounds (" + std::to_string(trunc_) +
                              " vs " + std::to_string(o.trunc_) + ")");
    }

    int trunc_;
    int window_;
    std::vector<Rational> a_;
};

/// Generating series of a species polynomial: X -> x, E_n -> x^n/n!,
/// C_n -> x^n/n, extended multiplicatively and linearly. A ring and
/// integro-differential homomorphism (and not injective: gs(X^3 - 3C_3) = 0).
inline EGFSeries gs(const SpeciesPoly& phi) {
    EGFSeries s(phi.trunc());
    std::vector<Rational> a(phi.trunc() + 1, 0);
    for (const auto& [m, c] : phi.terms()) a[m.degree()] += c * egf_monomial_factor(m);
    return EGFSeries::from_coeffs(std::move(a), phi.trunc()).with_window(phi.window());
}

inline EGFSeries gs(const LinSpecies& f) {
    std::vector<Rational> a(f.trunc() + 1, 0);
    for (int n = 0; n <= f.window(); ++n) a[n] = Rational(f.count(n), factorial(n));
    return EGFSeries::from_coeffs(std::move(a), f.trunc()).with_window(f.window());
}

// gs(num/K^a) = gs(num) * gs(K)^{-a}
inline EGFSeries gs(const LocFraction& f) {
    return gs(f.num()) * gs(f.context()->k()).inverse().pow(f.denom_exp());
}

// Modified series operators of the localized homomorphism target:
// K_der(s) = d/dx (K(x)^{-1} s), K_int(s) = K(x) int_0^x s.
inline EGFSeries k_der(const EGFSeries& Kx, const EGFSeries& s) {
    if (Kx.coeff(0) == 0) throw NotAUnitError("K(0) = 0 is not invertible");
    return (Kx.inverse() * s).derive();
}

inline EGFSeries k_int(const EGFSeries& Kx, const EGFSeries& s) {
    if (Kx.coeff(0) == 0) throw NotAUnitError("K(0) = 0 is not invertible");
    return Kx * s.integrate();
}

// Taking generating series respects +, *, derivation and the canonical
// integral; checked on seeded samples.
inline AxiomReport check_gs_homomorphism(int trunc, int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("check_gs_homomorphism needs samples >= 1");
    AxiomReport rep;
    rep.axiom = "gs_homomorphism";
    rep.samples = samples;
    PolySampler sampler(trunc);
    DifferentialTower exp = DifferentialTower::analytic_exp(trunc);
    int floor = trunc - 3;
    auto record = [&](const SpeciesPoly& x, const SpeciesPoly& y, const EGFSeries& lhs,
                      const EGFSeries& rhs) {
        int w = std::min(lhs.window(), rhs.window());
        if (w < floor) {
            ++rep.inconclusive_count;
            return true;
        }
        if (eq_window(lhs, rhs)) return true;
        rep.holds = false;
        rep.witness = AxiomWitness{{x.str(), y.str()}, lhs.str(), rhs.str(), w};
        return false;
    };
    for (int i = 0; i < samples; ++i) {
        SpeciesPoly x = sampler.sample(seed, 2 * static_cast<std::uint64_t>(i));
        SpeciesPoly y = sampler.sample(seed, 2 * static_cast<std::uint64_t>(i) + 1);
        if (!record(x, y, gs(x + y), gs(x) + gs(y))) return rep;
        if (!record(x, y, gs(x * y), gs(x) * gs(y))) return rep;
        if (!record(x, y, gs(x.derive()), gs(x).derive())) return rep;
        if (!record(x, y, gs(joyal_integral(exp, x)), gs(x).integrate())) return rep;
    }
    return rep;
}

// Modified homomorphism at a localization: gs o D_K = K_der o gs and
// gs o P_K = K_int o gs (any K with nonzero constant term).
inline AxiomReport check_gs_homomorphism_modified(const LocContextPtr& ctx, int samples,
                                                  std::uint64_t seed) {
    if (samples < 1) throw ConfigError("check_gs_homomorphism_modified needs samples >= 1");
    AxiomReport rep;
    rep.axiom = "gs_homomorphism_modified";
    rep.samples = samples;
    FracSampler sampler(ctx);
    EGFSeries Kx = gs(ctx->k());
    int floor = ctx->trunc() - 3;
    for (int i = 0; i < samples; ++i) {
        LocFraction f = sampler.sample(seed, i);
        EGFSeries lhs_d = gs(d_mod(f)), rhs_d = k_der(Kx, gs(f));
        EGFSeries lhs_p = gs(p_mod(f)), rhs_p = k_int(Kx, gs(f));
        int w = std::min({lhs_d.window(), rhs_d.window(), lhs_p.window(), rhs_p.window()});
        if (w < floor) {
            ++rep.inconclusive_count;
            continue;
        }
        if (!eq_window(lhs_d, rhs_d)) {
            rep.holds = false;
            rep.witness = AxiomWitness{{f.str()}, lhs_d.str(), rhs_d.str(), w};
            return rep;
        }
        if (!eq_window(lhs_p, rhs_p)) {
            rep.holds = false;
            rep.witness = AxiomWitness{{f.str()}, lhs_p.str(), rhs_p.str(), w};
            return rep;
        }
    }
    return rep;
}

// Series shape of the Joyal integral: gs(int_T x) = sum (-1)^{i-1} T_i(x) gs(x)^{(i-1)}.
inline AxiomReport check_gs_joyal(const DifferentialTower& T, int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("check_gs_joyal needs samples >= 1");
    int trunc = T.trunc();
    AxiomReport rep;
    rep.axiom = "gs_joyal_series";
    rep.samples = samples;
    PolySampler sampler(trunc);
    int floor = trunc - 3;
    for (int i = 0; i < samples; ++i) {
        SpeciesPoly x = sampler.sample(seed, i);
        EGFSeries sx = gs(x);
        EGFSeries rhs = EGFSeries::zero(trunc);
        rhs = rhs.with_window(std::min(trunc, x.window() + 1));
        EGFSeries d = sx;
        for (int k = 1; k <= trunc && !d.is_zero(); ++k) {
            EGFSeries term = gs(T.piece(k)) * d;
            rhs = rhs + (k % 2 == 1 ? term : -term);
            d = d.derive();
        }
        EGFSeries lhs = gs(joyal_integral(T, x));
        int w = std::min(lhs.window(), rhs.window());
        if (w < floor) {
            ++rep.inconclusive_count;
            continue;
        }
        if (!eq_window(lhs, rhs)) {
            rep.holds = false;
            rep.witness = AxiomWitness{{x.str()}, lhs.str(), rhs.str(), w};
            return rep;
        }
    }
    return rep;
}

} // namespace species
