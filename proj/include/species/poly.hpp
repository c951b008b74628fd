#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "species/errors.hpp"
#include "species/monomial.hpp"
#include "species/rational.hpp"

namespace species {

enum class CoefficientDomain { NAT, INT, RAT };

inline const char* domain_name(CoefficientDomain d) {
    switch (d) {
        case CoefficientDomain::NAT: return "NAT";
        case CoefficientDomain::INT: return "INT";
        case CoefficientDomain::RAT: return "RAT";
    }
    return "?";
}

struct Classification {
    CoefficientDomain domain;
    bool is_diff_constant;
    bool is_initialized;
};

/// Element of the rational virtual species ring, represented as a sparse
/// polynomial in X, E_n, C_n truncated at cardinality `trunc`. Degrees up to
/// `window` are exact; nothing is stored, claimed or compared beyond it.
/// Values are immutable after construction and every operation is pure.
class SpeciesPoly {
public:
    explicit SpeciesPoly(int trunc) : trunc_(check_trunc(trunc)), window_(trunc) {}

    static SpeciesPoly zero(int N) { return SpeciesPoly(N); }

    static SpeciesPoly scalar(const Rational& c, int N) {
        SpeciesPoly p(N);
        p.add_term(Monomial::one(), c);
        p.normalize();
        return p;
    }

    static SpeciesPoly one(int N) { return scalar(1, N); }

    static SpeciesPoly from_monomial(const Monomial& m, const Rational& c, int N) {
        SpeciesPoly p(N);
        p.add_term(m, c);
        p.normalize();
        return p;
    }

    static SpeciesPoly x(int N) { return from_monomial(Monomial::gen(Generator::x()), 1, N); }

    // E_n with the identifications E_0 = 1, E_1 = X.
    static SpeciesPoly e_n(int n, int N) {
        if (n == 0) return one(N);
        if (n == 1) return x(N);
        return from_monomial(Monomial::gen(Generator::e(n)), 1, N);
    }

    // C_n with the identifications C_1 = X, C_2 = E_2.
    static SpeciesPoly c_n(int n, int N) {
        if (n == 1) return x(N);
        if (n == 2) return e_n(2, N);
        if (n < 1) throw ConfigError("c_n requires n >= 1");
        return from_monomial(Monomial::gen(Generator::c(n)), 1, N);
    }

    // Combinatorial exponential E = sum E_n, as its degree-N jet.
    static SpeciesPoly comb_exp(int N) {
        SpeciesPoly p(N);
        p.add_term(Monomial::one(), 1);
        if (N >= 1) p.add_term(Monomial::gen(Generator::x()), 1);
        for (int n = 2; n <= N; ++n) p.add_term(Monomial::gen(Generator::e(n)), 1);
        p.normalize();
        return p;
    }

    // Alternating sum E_1 - E_2 + E_3 - ...
    static SpeciesPoly e_alt(int N) {
        SpeciesPoly p(N);
        if (N >= 1) p.add_term(Monomial::gen(Generator::x()), 1);
        for (int n = 2; n <= N; ++n)
            p.add_term(Monomial::gen(Generator::e(n)), (n % 2 == 1) ? 1 : -1);
        p.normalize();
        return p;
    }

    // Analytic exponential e^{lambda X} = sum lambda^n X^n / n!, as a jet.
    static SpeciesPoly analytic_exp(const Rational& lambda, int N) {
        SpeciesPoly p(N);
        Rational c = 1;
        for (int n = 0; n <= N; ++n) {
            p.add_term(n == 0 ? Monomial::one() : Monomial::gen(Generator::x(), n), c);
            c = c * lambda / (n + 1);
        }
        p.normalize();
        return p;
    }

    // Linear orders L = sum_{k>=0} X^k, as a jet.
    static SpeciesPoly linear_orders(int N) {
        SpeciesPoly p(N);
        for (int k = 0; k <= N; ++k)
            p.add_term(k == 0 ? Monomial::one() : Monomial::gen(Generator::x(), k), 1);
        p.normalize();
        return p;
    }

    // Cycles C = C_1 + C_2 + C_3 + ... = X + E_2 + C_3 + ..., as a jet.
    static SpeciesPoly cycles(int N) {
        SpeciesPoly p(N);
        if (N >= 1) p.add_term(Monomial::gen(Generator::x()), 1);
        if (N >= 2) p.add_term(Monomial::gen(Generator::e(2)), 1);
        for (int n = 3; n <= N; ++n) p.add_term(Monomial::gen(Generator::c(n)), 1);
        p.normalize();
        return p;
    }

    int trunc() const { return trunc_; }
    int window() const { return window_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); } // zero through the window

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coeff(Monomial::one()); }

    // Least degree carrying a known nonzero term; window+1 when the known
    // part vanishes. Drives the window rule for products.
    int known_order() const {
        if (terms_.empty()) return window_ + 1;
        return terms_.begin()->first.degree(); // map is ordered by degree first
    }

    SpeciesPoly with_window(int w) const {
        SpeciesPoly r = *this;
        r.window_ = std::min(w, trunc_);
        if (r.window_ < 0) r.window_ = 0;
        r.normalize();
        return r;
    }

    friend SpeciesPoly operator+(const SpeciesPoly& a, const SpeciesPoly& b) {
        a.check_same_trunc(b);
        SpeciesPoly r(a.trunc_);
        r.window_ = std::min(a.window_, b.window_);
        r.terms_ = a.terms_;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        r.normalize();
        return r;
    }

    friend SpeciesPoly operator-(const SpeciesPoly& a, const SpeciesPoly& b) { return a + (-b); }

    friend SpeciesPoly operator-(const SpeciesPoly& a) {
        SpeciesPoly r(a.trunc_);
        r.window_ = a.window_;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend SpeciesPoly operator*(const SpeciesPoly& a, const SpeciesPoly& b) {
        a.check_same_trunc(b);
        SpeciesPoly r(a.trunc_);
        // Jet-sound window: unknown coefficients of one factor can only reach
        // degrees above w + known_order of the other.
        r.window_ = std::min({a.trunc_,
                              a.window_ + b.known_order(),
                              b.window_ + a.known_order()});
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.degree() + mb.degree() > r.window_) continue;
                r.add_term(ma.times(mb), ca * cb);
            }
        }
        r.normalize();
        return r;
    }

    friend SpeciesPoly operator*(const Rational& c, const SpeciesPoly& a) {
        SpeciesPoly r(a.trunc_);
        if (c == 0) return r; // exactly zero, full window
        r.window_ = a.window_;
        for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, c * k);
        return r;
    }

    friend SpeciesPoly operator*(const SpeciesPoly& a, const Rational& c) { return c * a; }

    SpeciesPoly pow(long long e) const {
        if (e < 0) throw ConfigError("pow requires a nonnegative exponent");
        SpeciesPoly base = *this, r = one(trunc_);
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // Combinatorial derivation: d/dX on X-powers, dE_n = E_{n-1}, dC_n = X^{n-1}.
    SpeciesPoly derive() const {
        SpeciesPoly r(trunc_);
        r.window_ = std::max(0, window_ - 1);
        for (const auto& [m, c] : terms_) {
            const auto& fs = m.factors();
            for (size_t i = 0; i < fs.size(); ++i) {
                auto [g, e] = fs[i];
                // rest = m with g's exponent reduced by one
                Monomial rest;
                for (size_t j = 0; j < fs.size(); ++j) {
                    int exp = fs[j].second - (j == i ? 1 : 0);
                    if (exp > 0) rest = rest.times(Monomial::gen(fs[j].first, exp));
                }
                Monomial dg; // derivative of the single generator g
                switch (g.kind) {
                    case GenKind::X: dg = Monomial::one(); break;
                    case GenKind::E:
                        dg = (g.index == 2) ? Monomial::gen(Generator::x())
                                            : Monomial::gen(Generator::e(g.index - 1));
                        break;
                    case GenKind::C: dg = Monomial::gen(Generator::x(), g.index - 1); break;
                }
                r.add_term(rest.times(dg), c * e);
            }
        }
        r.normalize();
        return r;
    }

    SpeciesPoly derive(int n) const {
        SpeciesPoly r = *this;
        for (int i = 0; i < n; ++i) r = r.derive();
        return r;
    }

    /// Homogeneous degree-n part. Requires n <= window; the extracted part is
    /// exact at every degree, so the result carries the full window.
    SpeciesPoly graded_component(int n) const {
        if (n > window_)
            throw WindowError("graded component " + std::to_string(n) +
                              " exceeds window " + std::to_string(window_));
        SpeciesPoly r(trunc_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == n) r.terms_.emplace(m, c);
        return r;
    }

    Classification classify() const {
        bool all_int = true, all_nat = true;
        for (const auto& [m, c] : terms_) {
            if (!is_integer(c)) all_int = all_nat = false;
            else if (c < 0) all_nat = false;
        }
        CoefficientDomain dom = all_nat   ? CoefficientDomain::NAT
                                : all_int ? CoefficientDomain::INT
                                          : CoefficientDomain::RAT;
        return {dom, derive().is_zero(), constant_term() == 0};
    }

    /// Multiplicative inverse by graded recursion; requires a nonzero
    /// constant term.
    SpeciesPoly mult_inverse() const {
        Rational c0 = constant_term();
        if (c0 == 0) throw NotAUnitError("mult_inverse: zero constant term");
        std::vector<SpeciesPoly> phi(window_ + 1, SpeciesPoly(trunc_));
        for (int n = 0; n <= window_; ++n) phi[n] = graded_component(n);
        SpeciesPoly r(trunc_);
        r.window_ = window_;
        std::vector<SpeciesPoly> psi(window_ + 1, SpeciesPoly(trunc_));
        psi[0] = scalar(1 / c0, trunc_);
        for (int n = 1; n <= window_; ++n) {
            SpeciesPoly acc(trunc_);
            for (int k = 1; k <= n; ++k) acc = acc + phi[k] * psi[n - k];
            psi[n] = (-1 / c0) * acc;
        }
        for (int n = 0; n <= window_; ++n)
            for (const auto& [m, c] : psi[n].terms_) r.add_term(m, c);
        r.normalize();
        return r;
    }

    // Equality of the exact parts, through the common window.
    friend bool eq_window(const SpeciesPoly& a, const SpeciesPoly& b) {
        a.check_same_trunc(b);
        int w = std::min(a.window_, b.window_);
        return a.prefix(w) == b.prefix(w);
    }

    friend int common_window(const SpeciesPoly& a, const SpeciesPoly& b) {
        return std::min(a.window_, b.window_);
    }

    // Canonical text form: terms in canonical monomial order, "p/q" or "p"
    // coefficients, e.g. "1 - 1/3*X^3 + C3".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) { s += "-"; a = -a; }
            } else {
                s += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            if (m.is_one()) s += rat_str(a);
            else if (a == 1) s += m.str();
            else s += rat_str(a) + "*" + m.str();
            first = false;
        }
        return s;
    }

private:
    static int check_trunc(int N) {
        if (N < 0) throw ConfigError("truncation bound must be >= 0");
        return N;
    }

    void check_same_trunc(const SpeciesPoly& o) const {
        if (trunc_ != o.trunc_)
            throw ConfigError("mismatched truncation bounds (" + std::to_string(trunc_) +
                              " vs " + std::to_string(o.trunc_) + ")");
    }

    void add_term(const Monomial& m, const Rational& c) {
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) it->second += c;
    }

    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0 || it->first.degree() > window_) it = terms_.erase(it);
            else ++it;
        }
    }

    std::map<Monomial, Rational> prefix(int w) const {
        std::map<Monomial, Rational> r;
        for (const auto& [m, c] : terms_)
            if (m.degree() <= w) r.emplace(m, c);
        return r;
    }

    std::map<Monomial, Rational> terms_;
    int trunc_;
    int window_;
};

// Named per the module surface.
inline SpeciesPoly derive(const SpeciesPoly& p) { return p.derive(); }
inline SpeciesPoly graded_component(const SpeciesPoly& p, int n) { return p.graded_component(n); }
inline Classification classify(const SpeciesPoly& p) { return p.classify(); }
inline SpeciesPoly mult_inverse(const SpeciesPoly& p) { return p.mult_inverse(); }

} // namespace species
