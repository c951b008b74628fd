#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "species/sampling.hpp"
#include "species/tower.hpp"

namespace species {

struct AxiomWitness {
    std::vector<std::string> inputs;
    std::string lhs;
    std::string rhs;
    int window = 0;
};

struct AxiomReport {
    std::string axiom;
    std::optional<Rational> lambda;
    bool holds = true;
    int samples = 0;
    int inconclusive_count = 0;
    std::optional<AxiomWitness> witness;
};

enum class AxiomKind {
    Section,
    Leibniz,
    RotaBaxter,
    HybridRB,
    EvalMult,
    InitWeightM1, // initialization is a weight -1 differential operator
};

inline const char* axiom_name(AxiomKind k) {
    switch (k) {
        case AxiomKind::Section: return "section";
        case AxiomKind::Leibniz: return "leibniz";
        case AxiomKind::RotaBaxter: return "rota_baxter";
        case AxiomKind::HybridRB: return "hybrid_rb";
        case AxiomKind::EvalMult: return "eval_multiplicative";
        case AxiomKind::InitWeightM1: return "init_weight_minus1";
    }
    return "?";
}

// Evaluates one identity instance; Inst supplies ring and calculus handles.
// Returns (lhs, rhs).
template <class Inst>
std::pair<typename Inst::Elem, typename Inst::Elem>
axiom_sides(const Inst& R, AxiomKind kind, const Rational& lambda,
            const typename Inst::Elem& x, const typename Inst::Elem& y) {
    using E = typename Inst::Elem;
    auto J = [&](const E& v) { return R.integrate(R.derive(v)); };
    switch (kind) {
        case AxiomKind::Section:
            return {R.derive(R.integrate(x)), x};
        case AxiomKind::Leibniz: {
            E lhs = R.derive(R.mul(x, y));
            E rhs = R.add(R.mul(R.derive(x), y), R.mul(x, R.derive(y)));
            if (lambda != 0)
                rhs = R.add(rhs, R.scalar_mul(lambda, R.mul(R.derive(x), R.derive(y))));
            return {lhs, rhs};
        }
        case AxiomKind::RotaBaxter: {
            E lhs = R.mul(R.integrate(x), R.integrate(y));
            E rhs = R.add(R.integrate(R.mul(x, R.integrate(y))),
                          R.integrate(R.mul(y, R.integrate(x))));
            if (lambda != 0) rhs = R.add(rhs, R.scalar_mul(lambda, R.integrate(R.mul(x, y))));
            return {lhs, rhs};
        }
        case AxiomKind::HybridRB: {
            E lhs = R.integrate(R.mul(R.derive(x), R.integrate(y)));
            E rhs = R.sub(R.mul(x, R.integrate(y)), R.integrate(R.mul(x, y)));
            if (lambda != 0)
                rhs = R.sub(rhs, R.scalar_mul(lambda, R.integrate(R.mul(R.derive(x), y))));
            return {lhs, rhs};
        }
        case AxiomKind::EvalMult:
            return {R.evaluate(R.mul(x, y)), R.mul(R.evaluate(x), R.evaluate(y))};
        case AxiomKind::InitWeightM1: {
            E lhs = R.add(R.mul(J(x), J(y)), J(R.mul(x, y)));
            E rhs = R.add(R.mul(J(x), y), R.mul(x, J(y)));
            return {lhs, rhs};
        }
    }
    throw ConfigError("unknown axiom kind");
}

// Seeded sample run. Sides are compared through their common window; pairs
// whose common window sinks below the floor (trunc - 3, accounting for the
// operator depth of the identities) count as inconclusive, not as failures.
template <class Inst>
AxiomReport check_axiom_generic(const Inst& R, AxiomKind kind, const Rational& lambda,
                                int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("check_axiom needs samples >= 1");
    AxiomReport rep;
    rep.axiom = axiom_name(kind);
    rep.lambda = lambda;
    rep.samples = samples;
    for (int i = 0; i < samples; ++i) {
        auto x = R.sample(seed, 2 * static_cast<std::uint64_t>(i));
        auto y = R.sample(seed, 2 * static_cast<std::uint64_t>(i) + 1);
        auto [lhs, rhs] = axiom_sides(R, kind, lambda, x, y);
        int w = R.common_window(lhs, rhs);
        if (w < R.window_floor()) {
            ++rep.inconclusive_count;
            continue;
        }
        if (!R.eq(lhs, rhs)) {
            rep.holds = false;
            rep.witness = AxiomWitness{{R.str(x), R.str(y)}, R.str(lhs), R.str(rhs), w};
            return rep;
        }
    }
    return rep;
}

// One directed pair instead of random samples (failure witnesses etc.).
template <class Inst>
AxiomReport check_axiom_pair(const Inst& R, AxiomKind kind, const Rational& lambda,
                             const typename Inst::Elem& x, const typename Inst::Elem& y) {
    AxiomReport rep;
    rep.axiom = axiom_name(kind);
    rep.lambda = lambda;
    rep.samples = 1;
    auto [lhs, rhs] = axiom_sides(R, kind, lambda, x, y);
    int w = R.common_window(lhs, rhs);
    if (w < R.window_floor()) {
        rep.inconclusive_count = 1;
        return rep;
    }
    if (!R.eq(lhs, rhs)) {
        rep.holds = false;
        rep.witness = AxiomWitness{{R.str(x), R.str(y)}, R.str(lhs), R.str(rhs), w};
    }
    return rep;
}

// Set-species ring with pluggable derivation/integration/evaluation handles.
struct SetRingOps {
    using Elem = SpeciesPoly;
    using Op = std::function<SpeciesPoly(const SpeciesPoly&)>;

    int trunc;
    Op der;
    Op integ;
    Op eval; // defaults to id - integ(der(.)) when empty
    PolySampler sampler;

    SetRingOps(int N, Op d, Op i, Op e = {})
        : trunc(N), der(std::move(d)), integ(std::move(i)), eval(std::move(e)), sampler(N) {}

    SpeciesPoly add(const SpeciesPoly& a, const SpeciesPoly& b) const { return a + b; }
    SpeciesPoly sub(const SpeciesPoly& a, const SpeciesPoly& b) const { return a - b; }
    SpeciesPoly mul(const SpeciesPoly& a, const SpeciesPoly& b) const { return a * b; }
    SpeciesPoly scalar_mul(const Rational& c, const SpeciesPoly& a) const { return c * a; }
    SpeciesPoly one() const { return SpeciesPoly::one(trunc); }
    SpeciesPoly zero() const { return SpeciesPoly::zero(trunc); }
    SpeciesPoly derive(const SpeciesPoly& a) const { return der(a); }
    SpeciesPoly integrate(const SpeciesPoly& a) const { return integ(a); }
    SpeciesPoly evaluate(const SpeciesPoly& a) const {
        return eval ? eval(a) : a - integ(der(a));
    }
    bool eq(const SpeciesPoly& a, const SpeciesPoly& b) const { return eq_window(a, b); }
    int common_window(const SpeciesPoly& a, const SpeciesPoly& b) const {
        return std::min(a.window(), b.window());
    }
    int window_floor() const { return trunc - 3; }
    std::string str(const SpeciesPoly& a) const { return a.str(); }
    SpeciesPoly sample(std::uint64_t seed, std::uint64_t index) const {
        return sampler.sample(seed, index);
    }
};

// Named surface: check one axiom for arbitrary derivation/integration handles
// on the species ring.
inline AxiomReport check_axiom(AxiomKind kind, const Rational& lambda, SetRingOps::Op der,
                               SetRingOps::Op integ, int trunc, int samples,
                               std::uint64_t seed) {
    SetRingOps ops(trunc, std::move(der), std::move(integ));
    return check_axiom_generic(ops, kind, lambda, samples, seed);
}

inline SetRingOps tower_ring_ops(const DifferentialTower& T) {
    int N = T.trunc();
    return SetRingOps(
        N, [](const SpeciesPoly& p) { return p.derive(); },
        [T](const SpeciesPoly& p) { return joyal_integral(T, p); },
        [T](const SpeciesPoly& p) { return evaluate_tower(T, p); });
}

// Matching Rota-Baxter family check: P_a(x)P_b(y) = P_a(x P_b(y)) + P_b(P_a(x) y)
// across all weight pairs from `omegas` (differential constants).
inline AxiomReport check_matching_rb(const std::vector<SpeciesPoly>& omegas, int trunc,
                                     int samples, std::uint64_t seed) {
    if (samples < 1) throw ConfigError("check_matching_rb needs samples >= 1");
    for (const auto& w : omegas) check_matching_constant(w);
    AxiomReport rep;
    rep.axiom = "matching_rb";
    rep.samples = samples;
    PolySampler sampler(trunc);
    int floor = trunc - 3;
    for (int i = 0; i < samples; ++i) {
        SpeciesPoly x = sampler.sample(seed, 2 * static_cast<std::uint64_t>(i));
        SpeciesPoly y = sampler.sample(seed, 2 * static_cast<std::uint64_t>(i) + 1);
        for (const auto& a : omegas) {
            for (const auto& b : omegas) {
                SpeciesPoly lhs = matching_p(a, x) * matching_p(b, y);
                SpeciesPoly rhs = matching_p(a, x * matching_p(b, y)) +
                                  matching_p(b, matching_p(a, x) * y);
                int w = std::min(lhs.window(), rhs.window());
                if (w < floor) {
                    ++rep.inconclusive_count;
                    continue;
                }
                if (!eq_window(lhs, rhs)) {
                    rep.holds = false;
                    rep.witness = AxiomWitness{
                        {x.str(), y.str(), a.str(), b.str()}, lhs.str(), rhs.str(), w};
                    return rep;
                }
            }
        }
    }
    return rep;
}

} // namespace species
