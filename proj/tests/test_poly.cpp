#include <catch2/catch_amalgamated.hpp>

#include "species/poly.hpp"
#include "species/sampling.hpp"

using namespace species;

namespace {
constexpr int N = 8;

SpeciesPoly X(int n = N) { return SpeciesPoly::x(n); }
SpeciesPoly E2(int n = N) { return SpeciesPoly::e_n(2, n); }
SpeciesPoly C3(int n = N) { return SpeciesPoly::c_n(3, n); }
} // namespace

TEST_CASE("monomial product and canonical order") {
    Monomial x3 = Monomial::gen(Generator::x(), 3);
    Monomial c3 = Monomial::gen(Generator::c(3));
    Monomial xe2 = Monomial::gen(Generator::x()).times(Monomial::gen(Generator::e(2)));
    REQUIRE(x3.degree() == 3);
    REQUIRE(c3.degree() == 3);
    REQUIRE(x3 < xe2);
    REQUIRE(xe2 < c3);
    REQUIRE(Monomial::one() < x3);
    REQUIRE(x3.times(c3).str() == "X^3*C3");
}

TEST_CASE("ring arithmetic basics") {
    REQUIRE(eq_window(X() * X(), SpeciesPoly::from_monomial(Monomial::gen(Generator::x(), 2), 1, N)));
    // mul(E, E) at N=2: (1 + X + E2)^2 = 1 + 2X + X^2 + 2E2
    SpeciesPoly e2jet = SpeciesPoly::comb_exp(2);
    SpeciesPoly sq = e2jet * e2jet;
    SpeciesPoly expected = SpeciesPoly::one(2) + Rational(2) * X(2) +
                           SpeciesPoly::from_monomial(Monomial::gen(Generator::x(), 2), 1, 2) +
                           Rational(2) * E2(2);
    REQUIRE(eq_window(sq, expected));
    // additive identity
    SpeciesPoly f = C3() - Rational(1, 3) * X().pow(3);
    REQUIRE(eq_window(f + SpeciesPoly::zero(N), f));
    REQUIRE(f.str() == "-1/3*X^3 + C3");
}

TEST_CASE("trunc mismatch rejected") {
    REQUIRE_THROWS_AS(X(4) + X(5), ConfigError);
}

TEST_CASE("derivation on generators and Leibniz") {
    REQUIRE(eq_window(C3().derive(), X() * X()));
    REQUIRE(eq_window(E2().derive(), X()));
    // d(X*E2) = E2 + X^2
    REQUIRE(eq_window((X() * E2()).derive(), E2() + X() * X()));
    REQUIRE(eq_window(SpeciesPoly::e_n(5, N).derive(), SpeciesPoly::e_n(4, N)));
    REQUIRE(eq_window(SpeciesPoly::c_n(5, N).derive(), X().pow(4)));
    REQUIRE(X().derive().str() == "1");
}

TEST_CASE("window bookkeeping") {
    SpeciesPoly e = SpeciesPoly::comb_exp(N);
    REQUIRE(e.window() == N);
    REQUIRE(e.derive().window() == N - 1);
    REQUIRE((e * e).window() == N);
    REQUIRE((e.derive() * e).window() == N - 1);
    // homogeneous shift: multiplying by X lifts the viable window
    SpeciesPoly d = e.derive(); // window N-1
    REQUIRE((X() * d).window() == N);
}

TEST_CASE("graded components") {
    SpeciesPoly e = SpeciesPoly::comb_exp(N);
    REQUIRE(eq_window(e.graded_component(2), E2()));
    REQUIRE(e.graded_component(0).str() == "1");
    REQUIRE((X() * X()).graded_component(1).is_zero());
    SpeciesPoly f = SpeciesPoly::one(N) + X().pow(3) - Rational(3) * C3();
    REQUIRE(eq_window(f.graded_component(3), X().pow(3) - Rational(3) * C3()));
    // reconstruction
    SpeciesPoly acc(N);
    for (int n = 0; n <= f.window(); ++n) acc = acc + f.graded_component(n);
    REQUIRE(eq_window(acc, f));
    REQUIRE_THROWS_AS(f.derive().graded_component(N), WindowError);
}

TEST_CASE("classify") {
    SpeciesPoly f = SpeciesPoly::one(N) + X().pow(3) - Rational(3) * C3();
    auto c = f.classify();
    REQUIRE(c.domain == CoefficientDomain::INT);
    REQUIRE(c.is_diff_constant);
    REQUIRE_FALSE(c.is_initialized);

    auto d = (Rational(1, 2) * X() * X()).classify();
    REQUIRE(d.domain == CoefficientDomain::RAT);
    REQUIRE_FALSE(d.is_diff_constant);
    REQUIRE(d.is_initialized);

    auto z = SpeciesPoly::zero(N).classify();
    REQUIRE(z.domain == CoefficientDomain::NAT);
    REQUIRE(z.is_diff_constant);
    REQUIRE(z.is_initialized);

    REQUIRE(SpeciesPoly::comb_exp(N).classify().domain == CoefficientDomain::NAT);
}

TEST_CASE("multiplicative inverse") {
    REQUIRE(eq_window(SpeciesPoly::one(N).mult_inverse(), SpeciesPoly::one(N)));
    SpeciesPoly ex = SpeciesPoly::analytic_exp(1, N);
    REQUIRE(eq_window(ex.mult_inverse(), SpeciesPoly::analytic_exp(-1, N)));
    REQUIRE(eq_window(ex * ex.mult_inverse(), SpeciesPoly::one(N)));
    REQUIRE_THROWS_AS(X().mult_inverse(), NotAUnitError);

    PolySampler sampler(N);
    for (int i = 0; i < 25; ++i) {
        SpeciesPoly u = sampler.sample_unit(7, i);
        REQUIRE(eq_window(u * u.mult_inverse(), SpeciesPoly::one(N)));
    }
}

TEST_CASE("ring axioms on seeded samples") {
    PolySampler sampler(N);
    for (int i = 0; i < 20; ++i) {
        SpeciesPoly a = sampler.sample(11, 3 * i);
        SpeciesPoly b = sampler.sample(11, 3 * i + 1);
        SpeciesPoly c = sampler.sample(11, 3 * i + 2);
        REQUIRE(eq_window(a + b, b + a));
        REQUIRE(eq_window(a * b, b * a));
        REQUIRE(eq_window((a + b) + c, a + (b + c)));
        REQUIRE(eq_window((a * b) * c, a * (b * c)));
        REQUIRE(eq_window(a * (b + c), a * b + a * c));
        // Leibniz
        REQUIRE(eq_window((a * b).derive(), a.derive() * b + a * b.derive()));
        // grading of products
        for (int n = 0; n <= (a * b).window(); ++n) {
            SpeciesPoly conv(N);
            for (int k = 0; k <= n; ++k)
                conv = conv + a.graded_component(k) * b.graded_component(n - k);
            REQUIRE(eq_window((a * b).graded_component(n), conv));
        }
    }
}

TEST_CASE("derivation maps degree n to n-1") {
    PolySampler sampler(N);
    for (int i = 0; i < 10; ++i) {
        SpeciesPoly a = sampler.sample(23, i);
        for (int n = 1; n <= a.window(); ++n) {
            SpeciesPoly hom = a.graded_component(n);
            SpeciesPoly d = hom.derive();
            for (const auto& [m, coef] : d.terms()) REQUIRE(m.degree() == n - 1);
        }
    }
}

TEST_CASE("canonical text form") {
    SpeciesPoly f = SpeciesPoly::one(N) - Rational(1, 3) * X().pow(3) + C3();
    REQUIRE(f.str() == "1 - 1/3*X^3 + C3");
    REQUIRE(SpeciesPoly::zero(N).str() == "0");
    SpeciesPoly g = Rational(-2) * X() + E2() * X();
    REQUIRE(g.str() == "-2*X + X*E2");
}
