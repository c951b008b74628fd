#pragma once

#include "species/instances.hpp"

namespace species {

struct OrdDist {
    long long ord;   // exact order, or a certified lower bound
    bool exact;      // false: ord >= value, dist <= 2^-value
    Rational dist;   // 2^-ord

    std::string str() const {
        if (exact) return "ord=" + std::to_string(ord) + " dist=" + rat_str(dist);
        return "ord>=" + std::to_string(ord) + " dist<=" + rat_str(dist);
    }
};

// ord(a - b) = least n with E(d^n (a-b)) nonzero; dist = 2^-ord. Without a
// witness inside the window only the bound is reported.
template <class Inst>
OrdDist ord_and_dist(const Inst& R, const typename Inst::Elem& a, const typename Inst::Elem& b) {
    auto d = R.sub(a, b);
    int w = R.window(d);
    auto cur = d;
    for (int n = 0; n <= w; ++n) {
        if (R.rep_nonzero(R.evaluate(cur)))
            return {n, true, rat_pow(Rational(1, 2), n)};
        cur = R.derive(cur);
    }
    return {w + 1, false, rat_pow(Rational(1, 2), w + 1)};
}

template <class Inst>
OrdDist ord_of(const Inst& R, const typename Inst::Elem& a) {
    return ord_and_dist(R, a, R.zero());
}

// n-th divided power: x^[0] = 1, x^[n] = int(x^[n-1] x').
template <class Inst>
typename Inst::Elem divided_power(const Inst& R, const typename Inst::Elem& x, int n) {
    if (n < 0) throw DomainError("divided powers need n >= 0");
    auto cur = R.one();
    auto dx = R.derive(x);
    for (int k = 1; k <= n; ++k) cur = R.integrate(R.mul(cur, dx));
    return cur;
}

// exp(x) = sum_n x^[n] for x in ker E. The sum stops at the horizon: each
// divided power gains one order of vanishing, which is checked at runtime.
template <class Inst>
typename Inst::Elem exp_op(const Inst& R, const typename Inst::Elem& x) {
    if (!R.eq(R.evaluate(x), R.zero()))
        throw DomainError("exp needs an argument with evaluation 0");
    auto acc = R.one();
    auto cur = R.one();
    auto dx = R.derive(x);
    for (int n = 1; n <= R.horizon(); ++n) {
        cur = R.integrate(R.mul(cur, dx));
        acc = R.add(acc, cur);
    }
    cur = R.integrate(R.mul(cur, dx));
    if (!R.eq(cur, R.zero()))
        throw std::logic_error("divided powers failed to vanish past the horizon");
    return acc;
}

// log(x) = int(x^{-1} x') for invertible x.
template <class Inst>
typename Inst::Elem log_op(const Inst& R, const typename Inst::Elem& x) {
    if (!R.is_unit(x)) throw DomainError("log needs an invertible argument");
    return R.integrate(R.mul(R.inverse(x), R.derive(x)));
}

// base^expo = exp(expo * log(base)).
template <class Inst>
typename Inst::Elem pow_op(const Inst& R, const typename Inst::Elem& base,
                           const typename Inst::Elem& expo) {
    return exp_op(R, R.mul(expo, log_op(R, base)));
}

// Composition x o y = sum_n E(x^(n)) y^[n] for y in ker E.
template <class Inst>
typename Inst::Elem id_compose(const Inst& R, const typename Inst::Elem& x,
                               const typename Inst::Elem& y) {
    if (!R.eq(R.evaluate(y), R.zero()))
        throw DomainError("composition needs an inner argument with evaluation 0");
    auto acc = R.zero();
    auto dx = x;
    auto ypow = R.one(); // y^[n]
    auto dy = R.derive(y);
    for (int n = 0; n <= R.horizon(); ++n) {
        acc = R.add(acc, R.mul(R.evaluate(dx), ypow));
        dx = R.derive(dx);
        ypow = R.integrate(R.mul(ypow, dy));
    }
    return acc;
}

} // namespace species
