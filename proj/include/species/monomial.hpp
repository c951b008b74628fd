#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "species/generator.hpp"

namespace species {

// Multiset of generators with positive exponents, kept sorted by the
// canonical generator order. Degree is the label-set cardinality the
// monomial describes.
class Monomial {
public:
    using Factor = std::pair<Generator, int>;

    Monomial() = default; // the empty product (constant monomial)

    static Monomial one() { return Monomial(); }

    static Monomial gen(Generator g, int exp = 1) {
        Monomial m;
        if (exp < 0) throw ConfigError("monomial exponents must be >= 0");
        if (exp > 0) m.factors_.push_back({g, exp});
        return m;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [g, e] : factors_) d += g.degree() * e;
        return d;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        auto a = factors_.begin(), b = o.factors_.begin();
        while (a != factors_.end() || b != o.factors_.end()) {
            if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
                r.factors_.push_back(*a++);
            } else if (a == factors_.end() || b->first < a->first) {
                r.factors_.push_back(*b++);
            } else {
                r.factors_.push_back({a->first, a->second + b->second});
                ++a;
                ++b;
            }
        }
        return r;
    }

    // Exponent of a generator (0 if absent).
    int exponent(const Generator& g) const {
        for (const auto& [h, e] : factors_)
            if (h == g) return e;
        return 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

    // Canonical order used for storage and printing: total degree first; at
    // equal degree the monomial with the higher power of the earliest
    // generator comes first (so X^3 precedes C3, X^2 precedes E2).
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() && j != b.factors_.end()) {
            if (i->first == j->first) {
                if (i->second != j->second) return i->second > j->second;
                ++i;
                ++j;
            } else if (i->first < j->first) {
                return true; // a has the earlier generator with positive power
            } else {
                return false;
            }
        }
        return i != a.factors_.end();
    }

    std::string str() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& [g, e] : factors_) {
            if (!s.empty()) s += "*";
            s += g.str();
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<Factor> factors_;
};

} // namespace species
