#include <catch2/catch_amalgamated.hpp>

#include "species/eval.hpp"

using namespace species;

namespace {
constexpr int N = 8;

EvalContext set_ctx(int n = N) {
    EvalContext c;
    c.trunc = n;
    return c;
}

SpeciesPoly eval_set(const std::string& src, const EvalContext& ctx = set_ctx()) {
    return std::get<SpeciesPoly>(eval_value(*parse_expr(src), ctx));
}
} // namespace

TEST_CASE("parser basics") {
    REQUIRE(print_expr(*parse_expr("J[exp](X^2/2)")) == "J(X^2/2)");
    REQUIRE(print_expr(*parse_expr("Ev(C3)")) == "Ev(C3)");
    REQUIRE(print_expr(*parse_expr("J[E](X)")) == "J[E](X)");
    REQUIRE(print_expr(*parse_expr("J[const:1+X^3-3*C3](X)")) ==
            "J[const:1 + X^3 - 3*C3](X)");
    REQUIRE(print_expr(*parse_expr("e(2X)")) == "e(2X)");
    REQUIRE(print_expr(*parse_expr("e(-1X)")) == "e(-1X)");
    REQUIRE(print_expr(*parse_expr("eX")) == "eX");
    REQUIRE_THROWS_AS(parse_expr("X +"), ParseError);
    REQUIRE_THROWS_AS(parse_expr("(X"), ParseError);
    REQUIRE_THROWS_AS(parse_expr("J[foo](X)"), ParseError);
    // unary minus binds loosest
    REQUIRE(print_expr(*parse_expr("-X + E")) == "-X + E");
    SpeciesPoly v = eval_set("-X + E");
    REQUIRE(eq_window(v, SpeciesPoly::zero(N) - (SpeciesPoly::x(N) + SpeciesPoly::comb_exp(N))));
}

TEST_CASE("parse-print round trip") {
    // deterministically generated trees
    Rng rng(1234);
    PolySampler dummy(2);
    std::vector<std::string> atoms{"X", "E", "E2", "C3", "L", "Cyc", "eX", "e(2X)", "3", "1/2"};
    for (int i = 0; i < 200; ++i) {
        // build a random expression source by structural recursion
        std::function<std::string(int)> gen = [&](int depth) -> std::string {
            if (depth == 0 || rng.below(3) == 0)
                return std::string(atoms[rng.below(atoms.size())]);
            switch (rng.below(8)) {
                case 0: return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
                case 1: return "(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
                case 2: return gen(depth - 1) + "*" + atoms[rng.below(atoms.size())];
                case 3: return "D(" + gen(depth - 1) + ")";
                case 4: return "J(" + gen(depth - 1) + ")";
                case 5: return "Ev(" + gen(depth - 1) + ")";
                case 6: return "(" + gen(depth - 1) + ")^" + std::to_string(rng.below(4) + 1);
                default: return "comp(" + gen(depth - 1) + ", X)";
            }
        };
        std::string src = gen(3);
        ExprPtr e = parse_expr(src);
        std::string printed = print_expr(*e);
        REQUIRE(print_expr(*parse_expr(printed)) == printed);
    }
}

TEST_CASE("set-ring evaluation") {
    REQUIRE(eval_set("D(C3) - X^2").is_zero());
    REQUIRE(eval_set("Ev(C3)").str() == "-1/3*X^3 + C3");
    REQUIRE(eq_window(eval_set("J[exp](X^2/2)"),
                      Rational(1, 6) * SpeciesPoly::x(N).pow(3)));
    REQUIRE(eq_window(eval_set("exp(X)"), SpeciesPoly::analytic_exp(1, N)));
    REQUIRE(eq_window(eval_set("log(E)"), SpeciesPoly::x(N)));
    REQUIRE(eq_window(eval_set("pow(eX, 2*One)"), SpeciesPoly::analytic_exp(2, N)));
    REQUIRE(eq_window(eval_set("inv(eX)"), SpeciesPoly::analytic_exp(-1, N)));
    REQUIRE(eq_window(eval_set("comp(C3, X)"), SpeciesPoly::c_n(3, N)));
    REQUIRE(eq_window(eval_set("divpow(X, 3)"), Rational(1, 6) * SpeciesPoly::x(N).pow(3)));
    REQUIRE(eq_window(eval_set("J[const:1+X^2-2*E2](X)"),
                      joyal_integral(tower_from_constant(SpeciesPoly::one(N) +
                                                         canonical_diff_constant(2, N)),
                                     SpeciesPoly::x(N))));
    REQUIRE_THROWS_AS(eval_set("Graphs"), DomainError);
    REQUIRE_THROWS_AS(eval_set("inv(X)"), NotAUnitError);
    REQUIRE_THROWS_AS(eval_set("frobnicate"), DomainError);
}

TEST_CASE("ord, dist, gs and fcomp values") {
    EvalContext ctx = set_ctx();
    Value v = eval_value(*parse_expr("ord(X^2)"), ctx);
    REQUIRE(std::get<OrdDist>(v).ord == 2);
    Value d = eval_value(*parse_expr("dist(E, E + X^3)"), ctx);
    REQUIRE(std::get<OrdDist>(d).dist == Rational(1, 8));
    Value s = eval_value(*parse_expr("gs(E)"), ctx);
    REQUIRE(std::get<EGFSeries>(s).coeff(5) == Rational(1, 120));
    Value fc = eval_value(*parse_expr("fcomp(E, X^2)"), ctx);
    for (int n = 0; n <= N; ++n)
        REQUIRE(std::get<EGFSeries>(fc).coeff(n) == Rational(1, factorial(n)));
}

TEST_CASE("linear-ring evaluation") {
    EvalContext ctx = set_ctx();
    ctx.ring = RingKind::Linear;
    Value v = eval_value(*parse_expr("D(L) - L*L"), ctx);
    REQUIRE(std::get<LinSpecies>(v).is_zero());
    Value e = eval_value(*parse_expr("E"), ctx);
    REQUIRE(eq_window(std::get<LinSpecies>(e), LinSpecies::all_ones(N)));
    // comp is the native partitional composition on count sequences
    Value p = eval_value(*parse_expr("comp(E, Cyc)"), ctx);
    REQUIRE(eq_window(std::get<LinSpecies>(p), LinSpecies::linear_orders(N)));
    Value g = eval_value(*parse_expr("Graphs"), ctx);
    REQUIRE(std::get<LinSpecies>(g).count(4) == 64);
}

TEST_CASE("localized evaluation via the CLI context") {
    EvalContext ctx = set_ctx();
    ctx.ring = RingKind::Localized;
    ctx.loc = make_loc_context(SpeciesPoly::comb_exp(N), N);
    Value v = eval_value(*parse_expr("D(J(X)) - X"), ctx);
    REQUIRE(eq_window(std::get<LocFraction>(v), LocFraction::zero(ctx.loc)));
    // with a non-constant K, Ev is unsupported
    REQUIRE_THROWS_AS(eval_value(*parse_expr("Ev(X)"), ctx), UnsupportedContextError);
    // with a constant K it reduces to the usual evaluation
    ctx.loc = make_loc_context(SpeciesPoly::one(N) + canonical_diff_constant(2, N), N);
    Value w = eval_value(*parse_expr("Ev(C3)"), ctx);
    REQUIRE(eq_window(std::get<LocFraction>(w),
                      LocFraction::embed(SpeciesPoly::c_n(3, N) -
                                             Rational(1, 3) * SpeciesPoly::x(N).pow(3),
                                         ctx.loc)));
}

TEST_CASE("counts_at and functorial composition") {
    EvalContext ctx = set_ctx();
    REQUIRE(counts_at(*parse_expr("E"), 10, ctx) == 1);
    REQUIRE(counts_at(*parse_expr("L"), 4, ctx) == 24);
    REQUIRE(counts_at(*parse_expr("X^2"), 2, ctx) == 2);
    REQUIRE(counts_at(*parse_expr("Graphs"), 5, ctx) == 1024);
    REQUIRE_THROWS_AS(counts_at(*parse_expr("X/2"), 1, ctx), NotASpeciesError);

    // inner counts above the truncation force recomputation: (E*E) has 2^n
    // structures, so F[|G[8]|] needs counts at 256
    REQUIRE(counts_at(*parse_expr("E*E"), 8, ctx) == 256);
    EGFSeries f = functorial_compose_series(*parse_expr("E"), *parse_expr("E*E"), 6, ctx);
    for (int n = 0; n <= 6; ++n) REQUIRE(f.coeff(n) == Rational(1, factorial(n)));

    FcompComparison cmp = compare_fcomp(*parse_expr("E"), *parse_expr("X^2"), set_ctx(5));
    REQUIRE(cmp.first_mismatch.has_value());
    REQUIRE(*cmp.first_mismatch == 1); // e^x versus e^{x^2}
    // both routes agree for E o X
    FcompComparison same = compare_fcomp(*parse_expr("E"), *parse_expr("X"), set_ctx(5));
    REQUIRE_FALSE(same.first_mismatch.has_value());
    // the functorial neutral element is the pointed-set species X*E, not X:
    // |(X*E)[n]| = n, so F[(X*E)[n]] has f_n structures
    EGFSeries neutral =
        functorial_compose_series(*parse_expr("C3"), *parse_expr("X*E"), 6, set_ctx(6));
    REQUIRE(eq_window(neutral, gs(SpeciesPoly::c_n(3, 6))));
    FcompComparison c3x = compare_fcomp(*parse_expr("C3"), *parse_expr("X"), set_ctx(5));
    REQUIRE(c3x.first_mismatch.has_value());
    REQUIRE(*c3x.first_mismatch == 3); // |C3[{n=1}]| = 0 versus x^3/3
}

TEST_CASE("environment bindings") {
    Env env;
    EvalContext ctx = set_ctx();
    ctx.env = &env;
    env.emplace("f", eval_value(*parse_expr("1 + X^3 - 3*C3"), ctx));
    Value v = eval_value(*parse_expr("D(f)"), ctx);
    REQUIRE(std::get<SpeciesPoly>(v).is_zero());
}
