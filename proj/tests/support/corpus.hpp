#pragma once

// Random inputs and slow reference computations shared by the test suites.

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "revham/field.hpp"

namespace revham::testing {

inline Rational random_rational(std::mt19937_64& rng, int height, bool nonzero = false)
{
    std::uniform_int_distribution<int> num(-height, height);
    std::uniform_int_distribution<int> den(1, height);
    for (;;) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        if (!nonzero || sgn(q) != 0) {
            return q;
        }
    }
}

inline Series2<Rational> random_series(std::mt19937_64& rng, int order, int height, double density = 0.5)
{
    std::bernoulli_distribution keep(density);
    Series2<Rational> s(order);
    for (int k = 0; k <= order; ++k) {
        for (int j = 0; j <= k; ++j) {
            if (keep(rng)) {
                s.set(k - j, j, random_rational(rng, height));
            }
        }
    }
    return s;
}

enum class LinearKind { saddle, center };

/// R-reversible field (beta v + P2, gamma u + Q2) with P2 odd and Q2 even in
/// v, nonlinear degrees 2..max_degree, rational heights <= height.
inline PlanarField<Rational> random_reversible(std::mt19937_64& rng, LinearKind kind, int order, int max_degree = 4,
                                               int height = 8)
{
    std::bernoulli_distribution keep(0.5);
    Series2<Rational> p(order);
    Series2<Rational> q(order);
    Rational beta = random_rational(rng, height, true);
    Rational gamma = abs(random_rational(rng, height, true));
    if ((kind == LinearKind::saddle) != (sgn(beta) > 0)) {
        gamma = -gamma;
    }
    p.set(0, 1, beta);
    q.set(1, 0, gamma);
    for (int k = 2; k <= std::min(max_degree, order); ++k) {
        for (int j = 0; j <= k; ++j) {
            if (!keep(rng)) {
                continue;
            }
            if (j % 2 == 1) {
                p.set(k - j, j, random_rational(rng, height));
            } else {
                q.set(k - j, j, random_rational(rng, height));
            }
        }
    }
    return {std::move(p), std::move(q)};
}

/// Sparse exact polynomial used as an independent reference for products and
/// compositions.
using Sparse = std::map<std::pair<int, int>, Rational>;

inline Sparse to_sparse(const Series2<Rational>& s)
{
    Sparse out;
    s.for_each_term([&](int i, int j, const Rational& c) { out[{i, j}] = c; });
    return out;
}

inline Sparse sparse_mul(const Sparse& a, const Sparse& b)
{
    Sparse r;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            r[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
        }
    }
    return r;
}

inline Sparse sparse_pow(const Sparse& a, int n)
{
    Sparse r{{{0, 0}, Rational(1)}};
    for (int k = 0; k < n; ++k) {
        r = sparse_mul(r, a);
    }
    return r;
}

/// f(g1, g2) by full expansion, then truncation.
inline Series2<Rational> reference_compose(const Series2<Rational>& f, const Series2<Rational>& g1,
                                           const Series2<Rational>& g2, int order)
{
    Sparse s1 = to_sparse(g1);
    Sparse s2 = to_sparse(g2);
    Sparse acc;
    f.for_each_term([&](int i, int j, const Rational& c) {
        for (const auto& [e, v] : sparse_mul(sparse_pow(s1, i), sparse_pow(s2, j))) {
            acc[e] += c * v;
        }
    });
    Series2<Rational> out(order);
    for (const auto& [e, v] : acc) {
        if (e.first + e.second <= order) {
            out.set(e.first, e.second, v);
        }
    }
    return out;
}

} // namespace revham::testing
