#pragma once

#include <cstdint>
#include <vector>

#include "species/poly.hpp"

namespace species {

// Self-contained deterministic PRNG (splitmix64). std engines would do, but
// the distributions are not pinned across standard libraries and checker
// output must be byte-identical for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // nonzero coefficient in {-9..9}
    long long small_coeff() {
        long long c = range(-9, 8);
        return c >= 0 ? c + 1 : c;
    }

    // Per-sample substream: scheduling-independent seed -> sample mapping.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed * 0x2545f4914f6cdd1dULL + index + 1);
        r.next();
        return r.next();
    }

private:
    std::uint64_t state_;
};

// Seeded random species polynomials: uniform monomials of degree <= N,
// coefficients uniform in {-9..9}\{0}, at most 6 terms.
class PolySampler {
public:
    explicit PolySampler(int trunc) : trunc_(trunc) {
        std::vector<Generator> gens;
        gens.push_back(Generator::x());
        for (int n = 2; n <= trunc_; ++n) {
            gens.push_back(Generator::e(n));
            if (n >= 3) gens.push_back(Generator::c(n));
        }
        build(gens, 0, Monomial::one(), trunc_);
    }

    int trunc() const { return trunc_; }
    size_t pool_size() const { return pool_.size(); }

    SpeciesPoly sample(std::uint64_t seed, std::uint64_t index) const {
        Rng rng(Rng::mix(seed, index));
        SpeciesPoly p(trunc_);
        int nterms = static_cast<int>(rng.range(1, 6));
        for (int t = 0; t < nterms; ++t) {
            const Monomial& m = pool_[rng.below(pool_.size())];
            Rational c(rng.small_coeff());
            p = p + SpeciesPoly::from_monomial(m, c, trunc_);
        }
        return p;
    }

    // Sample with a nonzero constant term (a unit of the truncated ring).
    SpeciesPoly sample_unit(std::uint64_t seed, std::uint64_t index) const {
        SpeciesPoly p = sample(seed, index);
        if (p.constant_term() == 0) p = p + SpeciesPoly::one(trunc_);
        return p;
    }

private:
    void build(const std::vector<Generator>& gens, size_t i, const Monomial& cur, int budget) {
        pool_.push_back(cur);
        for (size_t j = i; j < gens.size(); ++j)
            for (int e = 1; e * gens[j].degree() <= budget; ++e)
                build(gens, j + 1, cur.times(Monomial::gen(gens[j], e)),
                      budget - e * gens[j].degree());
    }

    int trunc_;
    std::uint64_t seed_;
    std::vector<Monomial> pool_;
};

} // namespace species
