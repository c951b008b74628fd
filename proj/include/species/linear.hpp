#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "species/poly.hpp"
#include "species/sampling.hpp"

namespace species {

// x^deg coefficient of the generating series of a monomial: X -> x,
// E_n -> x^n/n!, C_n -> x^n/n, multiplied over the factors.
inline Rational egf_monomial_factor(const Monomial& m) {
    Rational r = 1;
    for (const auto& [g, e] : m.factors()) {
        Int c = 1;
        switch (g.kind) {
            case GenKind::X: c = 1; break;
            case GenKind::E: c = factorial(g.index); break;
            case GenKind::C: c = g.index; break;
        }
        r /= rat_pow(Rational(c), e);
    }
    return r;
}

/// Virtual linear species as its sequence of structure counts f_0..f_N
/// (negative counts allowed). Product is binomial convolution; derivative
/// and integral shift the sequence. Indices up to `window` are exact.
class LinSpecies {
public:
    explicit LinSpecies(int trunc) : trunc_(check(trunc)), window_(trunc), counts_(trunc + 1, 0) {}

    static LinSpecies from_counts(std::vector<Int> counts, int trunc) {
        LinSpecies f(trunc);
        for (size_t i = 0; i < counts.size() && i <= static_cast<size_t>(trunc); ++i)
            f.counts_[i] = std::move(counts[i]);
        return f;
    }

    static LinSpecies zero(int N) { return LinSpecies(N); }

    static LinSpecies one(int N) {
        LinSpecies f(N);
        f.counts_[0] = 1;
        return f;
    }

    static LinSpecies singleton(int N) { // counts of X
        LinSpecies f(N);
        if (N >= 1) f.counts_[1] = 1;
        return f;
    }

    static LinSpecies all_ones(int N) { // counts of E (and of e^X)
        LinSpecies f(N);
        for (auto& c : f.counts_) c = 1;
        return f;
    }

    static LinSpecies linear_orders(int N) { // counts n!
        LinSpecies f(N);
        for (int n = 0; n <= N; ++n) f.counts_[n] = factorial(n);
        return f;
    }

    int trunc() const { return trunc_; }
    int window() const { return window_; }
    const Int& count(int n) const { return counts_.at(n); }
    const std::vector<Int>& counts() const { return counts_; }

    bool is_zero() const {
        return std::all_of(counts_.begin(), counts_.end(), [](const Int& c) { return c == 0; });
    }

    int known_order() const {
        for (int n = 0; n <= window_; ++n)
            if (counts_[n] != 0) return n;
        return window_ + 1;
    }

    LinSpecies with_window(int w) const {
        LinSpecies r = *this;
        r.window_ = std::clamp(w, 0, trunc_);
        r.counts_.resize(r.window_ + 1, 0);
        return r;
    }

    friend LinSpecies operator+(const LinSpecies& a, const LinSpecies& b) {
        a.check_same(b);
        LinSpecies r(a.trunc_);
        r.window_ = std::min(a.window_, b.window_);
        r.counts_.assign(r.window_ + 1, 0);
        for (int n = 0; n <= r.window_; ++n) r.counts_[n] = a.counts_[n] + b.counts_[n];
        return r;
    }

    friend LinSpecies operator-(const LinSpecies& a) {
        LinSpecies r = a;
        for (auto& c : r.counts_) c = -c;
        return r;
    }

    friend LinSpecies operator-(const LinSpecies& a, const LinSpecies& b) { return a + (-b); }

    friend LinSpecies operator*(const Int& c, const LinSpecies& a) {
        LinSpecies r = a;
        if (c == 0) return LinSpecies(a.trunc_);
        for (auto& v : r.counts_) v = c * v;
        return r;
    }

    // (fg)_n = sum_k C(n,k) f_k g_{n-k}
    friend LinSpecies operator*(const LinSpecies& a, const LinSpecies& b) {
        a.check_same(b);
        LinSpecies r(a.trunc_);
        r.window_ = std::min({a.trunc_, a.window_ + b.known_order(), b.window_ + a.known_order()});
        r.counts_.assign(r.window_ + 1, 0);
        for (int n = 0; n <= r.window_; ++n) {
            Int acc = 0;
            for (int k = std::max(0, n - b.window_); k <= std::min(n, a.window_); ++k)
                acc += binomial(n, k) * a.counts_[k] * b.counts_[n - k];
            r.counts_[n] = acc;
        }
        return r;
    }

    LinSpecies derive() const {
        LinSpecies r(trunc_);
        r.window_ = std::max(0, window_ - 1);
        r.counts_.assign(r.window_ + 1, 0);
        for (int n = 0; n + 1 <= window_; ++n) r.counts_[n] = counts_[n + 1];
        return r;
    }

    LinSpecies derive(int k) const {
        LinSpecies r = *this;
        for (int i = 0; i < k; ++i) r = r.derive();
        return r;
    }

    LinSpecies integrate() const {
        LinSpecies r(trunc_);
        r.window_ = std::min(trunc_, window_ + 1);
        r.counts_.assign(r.window_ + 1, 0);
        for (int n = 1; n <= r.window_; ++n) r.counts_[n] = counts_[n - 1];
        return r;
    }

    LinSpecies evaluate() const { // F(0): the constant sequence (f_0, 0, ...)
        LinSpecies r(trunc_);
        r.window_ = window_;
        r.counts_.assign(r.window_ + 1, 0);
        r.counts_[0] = counts_[0];
        return r;
    }

    friend bool eq_window(const LinSpecies& a, const LinSpecies& b) {
        a.check_same(b);
        int w = std::min(a.window_, b.window_);
        for (int n = 0; n <= w; ++n)
            if (a.counts_[n] != b.counts_[n]) return false;
        return true;
    }

    // Text form "[f0, f1, ..., fw]"
    std::string str() const {
        std::string s = "[";
        for (int n = 0; n <= window_; ++n) {
            if (n) s += ", ";
            s += int_str(counts_[n]);
        }
        return s + "]";
    }

private:
    static int check(int N) {
        if (N < 0) throw ConfigError("truncation bound must be >= 0");
        return N;
    }
    void check_same(const LinSpecies& o) const {
        if (trunc_ != o.trunc_)
            throw ConfigError("mismatched truncation bounds (" + std::to_string(trunc_) +
                              " vs " + std::to_string(o.trunc_) + ")");
    }

    int trunc_;
    int window_;
    std::vector<Int> counts_;
};

/// Partitional composition via exponential generating functions, computed in
/// exact rationals; the resulting counts of integral inputs are integral (a
/// violation would be an internal error, not bad input).
inline LinSpecies lin_compose(const LinSpecies& f, const LinSpecies& g) {
    if (f.trunc() != g.trunc()) throw ConfigError("mismatched truncation bounds");
    if (g.window() < 0 || g.count(0) != 0)
        throw NotInitializedError("composition needs an inner species with g_0 = 0");
    int N = f.trunc();
    int w = std::min(f.window(), g.window());
    std::vector<Rational> b(N + 1, 0), acc(N + 1, 0), gpow(N + 1, 0);
    for (int n = 1; n <= g.window(); ++n) b[n] = Rational(g.count(n), factorial(n));
    gpow[0] = 1; // g^0
    for (int k = 0; k <= N; ++k) {
        if (k <= f.window()) {
            Rational fk(f.count(k), factorial(k));
            for (int n = 0; n <= N; ++n) acc[n] += fk * gpow[n];
        }
        // gpow *= b; valuation of gpow is >= k so the loop terminates at N
        std::vector<Rational> next(N + 1, 0);
        for (int i = 0; i <= N; ++i) {
            if (gpow[i] == 0) continue;
            for (int j = 1; i + j <= N; ++j) next[i + j] += gpow[i] * b[j];
        }
        gpow = std::move(next);
    }
    std::vector<Int> counts(N + 1, 0);
    for (int n = 0; n <= w; ++n) {
        Rational c = acc[n] * factorial(n);
        if (!is_integer(c))
            throw std::logic_error("lin_compose produced a non-integral count");
        counts[n] = numerator(c);
    }
    return LinSpecies::from_counts(std::move(counts), N).with_window(w);
}

struct MetricBound {
    long long value; // ord when exact, else a certified lower bound on ord
    bool exact;

    Rational dist() const { return rat_pow(Rational(1, 2), value); } // exact or upper bound
};

// Least index with a nonzero count of a - b; bound form past the window.
inline MetricBound lin_ord(const LinSpecies& a, const LinSpecies& b) {
    LinSpecies d = a - b;
    int z = d.known_order();
    if (z <= d.window()) return {z, true};
    return {d.window() + 1, false};
}

inline MetricBound lin_ord(const LinSpecies& a) { return lin_ord(a, LinSpecies::zero(a.trunc())); }

/// Limit of a finite Cauchy-at-horizon sequence: consecutive iterates must
/// satisfy ord(F_{j+1} - F_j) >= j+1 (trivially true for vanishing
/// differences); the limit is the coordinatewise last iterate.
inline LinSpecies lin_limit(const std::vector<LinSpecies>& iterates) {
    if (iterates.empty()) throw ConfigError("lin_limit needs at least one iterate");
    for (size_t j = 0; j + 1 < iterates.size(); ++j) {
        MetricBound m = lin_ord(iterates[j + 1], iterates[j]);
        if (m.exact && m.value < static_cast<long long>(j) + 1)
            throw NotCauchyError("coordinate " + std::to_string(m.value) +
                                 " still changing at step " + std::to_string(j + 1));
    }
    return iterates.back();
}

// Count extraction from the set-species side: f_n = n! [x^n] gs(phi).
inline LinSpecies lin_from_set_species(const SpeciesPoly& phi) {
    int N = phi.trunc();
    std::vector<Rational> a(N + 1, 0);
    for (const auto& [m, c] : phi.terms()) a[m.degree()] += c * egf_monomial_factor(m);
    std::vector<Int> counts(N + 1, 0);
    for (int n = 0; n <= phi.window(); ++n) {
        Rational f = a[n] * factorial(n);
        if (!is_integer(f))
            throw NotASpeciesError("non-integral structure count at cardinality " +
                                   std::to_string(n));
        counts[n] = numerator(f);
    }
    return LinSpecies::from_counts(std::move(counts), N).with_window(phi.window());
}

// Seeded random count sequences, coefficients uniform in {-9..9}.
class LinSampler {
public:
    explicit LinSampler(int trunc) : trunc_(trunc) {}

    LinSpecies sample(std::uint64_t seed, std::uint64_t index) const {
        Rng rng(Rng::mix(seed ^ 0x5e0a1ed5ULL, index));
        std::vector<Int> counts(trunc_ + 1);
        for (auto& c : counts) c = rng.range(-9, 9);
        return LinSpecies::from_counts(std::move(counts), trunc_);
    }

    // f_0 = 1: a unit whose inverse again has integer counts
    LinSpecies sample_unit(std::uint64_t seed, std::uint64_t index) const {
        LinSpecies f = sample(seed, index);
        std::vector<Int> counts = f.counts();
        counts[0] = 1;
        return LinSpecies::from_counts(std::move(counts), trunc_);
    }

private:
    int trunc_;
};

} // namespace species
