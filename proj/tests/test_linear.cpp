#include <catch2/catch_amalgamated.hpp>

#include "species/calculus.hpp"
#include "species/linear.hpp"

using namespace species;

namespace {
constexpr int N = 10;
} // namespace

TEST_CASE("linear arithmetic") {
    LinSpecies L = LinSpecies::linear_orders(N);
    LinSpecies sq = L * L;
    for (int n = 0; n <= N; ++n) REQUIRE(sq.count(n) == factorial(n + 1));
    REQUIRE(eq_window(L * LinSpecies::one(N), L));
    REQUIRE((L - L).is_zero());
    REQUIRE_THROWS_AS(L + LinSpecies::one(N - 1), ConfigError);
    // counts exceed native integer ranges without issue
    LinSpecies big = LinSpecies::linear_orders(25);
    REQUIRE(int_str(big.count(25)) == "15511210043330985984000000");
}

TEST_CASE("linear calculus") {
    LinSpecies L = LinSpecies::linear_orders(N);
    // L' = L*L (shift of n!)
    REQUIRE(eq_window(L.derive(), L * L));
    REQUIRE(L.derive().window() == N - 1);
    REQUIRE(eq_window(L.evaluate(), LinSpecies::one(N)));

    LinSampler sampler(N);
    for (int i = 0; i < 30; ++i) {
        LinSpecies f = sampler.sample(3, i);
        REQUIRE(eq_window(f.integrate().derive(), f));
        REQUIRE(eq_window(f.evaluate(), LinSpecies::from_counts({f.count(0)}, N)));
        // J(f) = f - f(0)
        LinSpecies j = f.integrate().derive(); // placeholder to exercise chain
        REQUIRE(eq_window(f.derive().integrate() + f.evaluate(), f));
        // n-fold derive then evaluate extracts f_n
        for (int n = 0; n <= 3; ++n)
            REQUIRE(f.derive(n).evaluate().count(0) == f.count(n));
    }
}

TEST_CASE("linear composition") {
    // E-like o X = E-like
    LinSpecies ones = LinSpecies::all_ones(N);
    REQUIRE(eq_window(lin_compose(ones, LinSpecies::singleton(N)), ones));
    // f o 0 = (f_0, 0, ...)
    LinSampler sampler(N);
    for (int i = 0; i < 10; ++i) {
        LinSpecies f = sampler.sample(5, i);
        REQUIRE(eq_window(lin_compose(f, LinSpecies::zero(N)), f.evaluate()));
    }
    // L o (X + X^2 counts) = n! [x^n] 1/(1-x-x^2): Fibonacci growth
    LinSpecies L = LinSpecies::linear_orders(N);
    LinSpecies g = LinSpecies::from_counts({0, 1, 2}, N);
    LinSpecies c = lin_compose(L, g);
    std::vector<Int> fib{1, 1};
    for (int n = 2; n <= N; ++n) fib.push_back(fib[n - 1] + fib[n - 2]);
    for (int n = 0; n <= N; ++n) REQUIRE(c.count(n) == fib[n] * factorial(n));

    REQUIRE_THROWS_AS(lin_compose(L, ones), NotInitializedError);
}

TEST_CASE("linear metric") {
    LinSpecies f = LinSpecies::from_counts({1, 1, 2}, N);
    LinSpecies g = LinSpecies::from_counts({1, 1, 3}, N);
    MetricBound m = lin_ord(f, g);
    REQUIRE(m.exact);
    REQUIRE(m.value == 2);
    REQUIRE(m.dist() == Rational(1, 4));

    MetricBound same = lin_ord(f, f);
    REQUIRE_FALSE(same.exact);
    REQUIRE(same.value == N + 1);

    // agreement exactly through n <-> d <= 2^-(n+1), exhaustively
    LinSampler sampler(N);
    for (int i = 0; i < 20; ++i) {
        LinSpecies a = sampler.sample(7, 2 * i);
        LinSpecies b = sampler.sample(7, 2 * i + 1);
        MetricBound d = lin_ord(a, b);
        for (int n = 0; n <= N; ++n) {
            bool agree = true;
            for (int k = 0; k <= n; ++k) agree = agree && a.count(k) == b.count(k);
            REQUIRE(agree == (d.value >= n + 1));
        }
        // ultrametric inequality through a third point
        LinSpecies c = sampler.sample(8, i);
        MetricBound ab = lin_ord(a, b), ac = lin_ord(a, c), cb = lin_ord(c, b);
        REQUIRE(ab.dist() <= std::max(ac.dist(), cb.dist()));
        REQUIRE(lin_ord(a, b).value == lin_ord(b, a).value);
    }
}

TEST_CASE("continuity at the count level") {
    LinSampler sampler(N);
    for (int i = 0; i < 20; ++i) {
        LinSpecies a = sampler.sample(9, 3 * i);
        LinSpecies t = sampler.sample(9, 3 * i + 1);
        LinSpecies b = sampler.sample(9, 3 * i + 2);
        long long d = lin_ord(a, t).value;
        REQUIRE(lin_ord(a + b, t + b).value >= d);
        REQUIRE(lin_ord(a * b, t * b).value >= d);
        REQUIRE(lin_ord(a.derive(), t.derive()).value >= d - 1);
        REQUIRE(lin_ord(a.integrate(), t.integrate()).value >= std::min<long long>(N + 1, d + 1));
    }
}

TEST_CASE("linear limits") {
    LinSpecies a = LinSpecies::from_counts({1, 0, 0}, 2);
    LinSpecies b = LinSpecies::from_counts({1, 1, 0}, 2);
    LinSpecies c = LinSpecies::from_counts({1, 1, 1}, 2);
    REQUIRE(eq_window(lin_limit({a, b, c}), c));

    LinSpecies f = LinSpecies::from_counts({4, 5, 6}, 2);
    REQUIRE(eq_window(lin_limit({f, f, f}), f));

    // a coordinate changing too late is rejected
    LinSpecies bad = LinSpecies::from_counts({2, 1, 1}, 2);
    REQUIRE_THROWS_AS(lin_limit({a, b, bad}), NotCauchyError);

    // fixed point of F -> 1 + int(F^2) has counts n!
    std::vector<LinSpecies> iters{LinSpecies::one(N)};
    for (int k = 0; k <= N + 1; ++k) {
        const LinSpecies& prev = iters.back();
        iters.push_back(LinSpecies::one(N) + (prev * prev).integrate());
    }
    LinSpecies fix = lin_limit(iters);
    REQUIRE(eq_window(fix, LinSpecies::linear_orders(N)));
}

TEST_CASE("counts from set species") {
    REQUIRE(eq_window(lin_from_set_species(SpeciesPoly::comb_exp(N)), LinSpecies::all_ones(N)));
    LinSpecies c3 = lin_from_set_species(SpeciesPoly::c_n(3, N));
    for (int n = 0; n <= N; ++n) REQUIRE(c3.count(n) == (n == 3 ? 2 : 0));
    REQUIRE_THROWS_AS(lin_from_set_species(Rational(1, 2) * SpeciesPoly::x(N)),
                      NotASpeciesError);
    // X^2/2 is fine: count 1 at n = 2
    LinSpecies h = lin_from_set_species(Rational(1, 2) * SpeciesPoly::x(N).pow(2));
    REQUIRE(h.count(2) == 1);
}

TEST_CASE("linear integro-differential suite") {
    LinIDR R = make_lin_instance(N);
    for (auto kind : {AxiomKind::Section, AxiomKind::Leibniz, AxiomKind::HybridRB,
                      AxiomKind::RotaBaxter, AxiomKind::EvalMult, AxiomKind::InitWeightM1}) {
        AxiomReport rep = check_axiom_generic(R, kind, 0, 50, 11);
        INFO(rep.axiom);
        REQUIRE(rep.holds);
        REQUIRE(rep.inconclusive_count == 0);
    }
}
