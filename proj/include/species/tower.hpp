#pragma once

#include <string>
#include <vector>

#include "species/poly.hpp"

namespace species {

/// Differential tower T_0..T_N: T_0 = 1, derive(T_n) = T_{n-1}, each piece
/// homogeneous of degree n. Bijective with differential constants K (K_0 = 1)
/// via T = K*E.
class DifferentialTower {
public:
    // T = e^X, the canonical integro-differential choice.
    static DifferentialTower analytic_exp(int N) {
        DifferentialTower t;
        t.name_ = "exp";
        for (int n = 0; n <= N; ++n)
            t.pieces_.push_back(SpeciesPoly::from_monomial(
                n == 0 ? Monomial::one() : Monomial::gen(Generator::x(), n),
                Rational(1, factorial(n)), N));
        return t;
    }

    // T = E, the combinatorial exponential.
    static DifferentialTower comb_exp(int N) {
        DifferentialTower t;
        t.name_ = "E";
        for (int n = 0; n <= N; ++n) t.pieces_.push_back(SpeciesPoly::e_n(n, N));
        return t;
    }

    // T_n = sum_{i<=n} K_i E_{n-i} for a differential constant K with K_0 = 1.
    static DifferentialTower from_constant(const SpeciesPoly& K) {
        auto cls = K.classify();
        if (!cls.is_diff_constant)
            throw InvalidConstantError("tower constant must satisfy K' = 0");
        if (K.constant_term() != 1)
            throw InvalidConstantError("tower constant must have K_0 = 1");
        int N = K.trunc();
        DifferentialTower t;
        t.name_ = "const";
        for (int n = 0; n <= N; ++n) {
            SpeciesPoly piece(N);
            for (int i = 0; i <= n && i <= K.window(); ++i)
                piece = piece + K.graded_component(i) * SpeciesPoly::e_n(n - i, N);
            t.pieces_.push_back(piece);
        }
        return t;
    }

    // Inverse of from_constant: K_n = T_n - sum_{i<n} K_i E_{n-i}.
    SpeciesPoly constant() const {
        int N = trunc();
        std::vector<SpeciesPoly> k;
        SpeciesPoly acc(N);
        for (int n = 0; n <= N; ++n) {
            SpeciesPoly kn = pieces_[n];
            for (int i = 0; i < n; ++i) kn = kn - k[i] * SpeciesPoly::e_n(n - i, N);
            k.push_back(kn);
            acc = acc + kn;
        }
        return acc;
    }

    int trunc() const { return static_cast<int>(pieces_.size()) - 1; }
    const SpeciesPoly& piece(int n) const { return pieces_.at(n); }
    const std::string& name() const { return name_; }

    bool valid() const {
        if (pieces_.empty()) return false;
        if (!eq_window(pieces_[0], SpeciesPoly::one(trunc()))) return false;
        for (int n = 1; n <= trunc(); ++n) {
            for (const auto& [m, c] : pieces_[n].terms())
                if (m.degree() != n) return false;
            if (!eq_window(pieces_[n].derive(), pieces_[n - 1])) return false;
        }
        return true;
    }

private:
    DifferentialTower() = default;
    std::vector<SpeciesPoly> pieces_;
    std::string name_;
};

inline DifferentialTower tower_from_constant(const SpeciesPoly& K) {
    return DifferentialTower::from_constant(K);
}
inline SpeciesPoly tower_constant(const DifferentialTower& T) { return T.constant(); }

// X^i - i*C_i, the canonical homogeneous differential constants (zero for i = 1).
inline SpeciesPoly canonical_diff_constant(int i, int N) {
    return SpeciesPoly::x(N).pow(i) - Rational(i) * SpeciesPoly::c_n(i, N);
}

/// Joyal integral sum_{i>=1} (-1)^{i-1} T_i Phi^{(i-1)}. The sum is finite:
/// past the top stored degree of Phi all derivatives vanish. The result is
/// initialized and an antiderivative of Phi through its window.
inline SpeciesPoly joyal_integral(const DifferentialTower& T, const SpeciesPoly& phi) {
    int N = phi.trunc();
    if (T.trunc() != N) throw ConfigError("tower and operand truncations differ");
    SpeciesPoly acc(N);
    acc = acc.with_window(std::min(N, phi.window() + 1));
    SpeciesPoly d = phi;
    for (int i = 1; i <= N && !d.is_zero(); ++i) {
        SpeciesPoly term = T.piece(i) * d;
        acc = acc + (i % 2 == 1 ? term : -term);
        d = d.derive();
    }
    return acc;
}

/// Evaluation attached to a tower: E_T(Phi) = sum_n (-1)^n T_n Phi^{(n)},
/// equal to Phi - joyal_integral(T, derive(Phi)).
inline SpeciesPoly evaluate_tower(const DifferentialTower& T, const SpeciesPoly& phi) {
    int N = phi.trunc();
    if (T.trunc() != N) throw ConfigError("tower and operand truncations differ");
    SpeciesPoly acc(N);
    acc = acc.with_window(phi.window());
    SpeciesPoly d = phi;
    for (int n = 0; n <= N && !d.is_zero(); ++n) {
        SpeciesPoly term = T.piece(n) * d;
        acc = acc + (n % 2 == 0 ? term : -term);
        d = d.derive();
    }
    return acc;
}

struct AnalyticExpTests {
    bool binom_holds;   // F_p F_q = C(p+q,p) F_{p+q} for p+q <= window
    bool jet_matches;   // F equals the e^{lambda X} jet, lambda = [X]F
    Rational lambda;
    bool result;        // lambda != 0 and both tests pass
};

// Runs both characterizations; they agree whenever lambda != 0.
inline AnalyticExpTests analytic_exponential_tests(const SpeciesPoly& F) {
    if (F.window() < 2) throw DomainError("analytic-exponential test needs window >= 2");
    AnalyticExpTests r;
    r.lambda = F.coeff(Monomial::gen(Generator::x()));
    r.binom_holds = true;
    int w = F.window();
    std::vector<SpeciesPoly> parts;
    for (int n = 0; n <= w; ++n) parts.push_back(F.graded_component(n));
    for (int p = 0; p <= w && r.binom_holds; ++p)
        for (int q = 0; p + q <= w && r.binom_holds; ++q)
            if (!eq_window(parts[p] * parts[q], Rational(binomial(p + q, p)) * parts[p + q]))
                r.binom_holds = false;
    r.jet_matches = eq_window(F, SpeciesPoly::analytic_exp(r.lambda, F.trunc()));
    r.result = (r.lambda != 0) && r.binom_holds;
    return r;
}

inline bool is_analytic_exponential(const SpeciesPoly& F) {
    return analytic_exponential_tests(F).result;
}

// Matching family: d_omega(Phi) = omega * Phi', P_omega(Phi) = omega * int_{e^X} Phi,
// indexed by differential constants omega.
inline void check_matching_constant(const SpeciesPoly& omega) {
    if (!omega.classify().is_diff_constant)
        throw InvalidConstantError("matching operators need a differential constant weight");
}

inline SpeciesPoly matching_d(const SpeciesPoly& omega, const SpeciesPoly& phi) {
    check_matching_constant(omega);
    return omega * phi.derive();
}

inline SpeciesPoly matching_p(const SpeciesPoly& omega, const SpeciesPoly& phi) {
    check_matching_constant(omega);
    return omega * joyal_integral(DifferentialTower::analytic_exp(phi.trunc()), phi);
}

} // namespace species
