#include "revham/diagnostics.hpp"

#include <cmath>

namespace revham {

Series2<Rational> hat_series(const Series2<Rational>& s)
{
    Series2<Rational> r(s.order());
    s.for_each_term([&](int i, int j, const Rational& c) { r.set(i, j, abs(c)); });
    return r;
}

Series2<Rational> hat_series(const Series2<Complex>& s)
{
    Series2<Rational> r(s.order());
    s.for_each_term([&](int i, int j, const Complex& c) { r.set(i, j, Rational(abs(c.re()) + abs(c.im()))); });
    return r;
}

Series1<Rational> hat_series(const Series1<Rational>& s)
{
    Series1<Rational> r(s.order());
    s.for_each_term([&](int m, const Rational& c) { r.set(m, abs(c)); });
    return r;
}

Rational denominator_bound(int order)
{
    if (order < 2) {
        throw Error("denominator bound needs order at least 2");
    }
    const Rational c(2);
    for (int k = 2; k <= order; ++k) {
        for (int j = 0; j <= k; ++j) {
            int d = -k + 2 * j + 1;
            if (d == 0) {
                continue;
            }
            if (Rational(1, std::abs(d)) > c || Rational(std::abs(k - 2 * j), std::abs(d)) > c) {
                throw Error("denominator bound fails at k = " + std::to_string(k) + ", j = " + std::to_string(j));
            }
        }
    }
    return c;
}

RadiusEstimate radius_estimate(const std::vector<double>& magnitudes)
{
    std::vector<std::pair<double, double>> roots; // (1/m, |c_m|^(1/m))
    for (std::size_t m = 1; m < magnitudes.size(); ++m) {
        double a = std::abs(magnitudes[m]);
        if (a > 0.0 && std::isfinite(a)) {
            roots.emplace_back(1.0 / static_cast<double>(m), std::pow(a, 1.0 / static_cast<double>(m)));
        }
    }
    RadiusEstimate out;
    out.terms_used = static_cast<int>(roots.size());
    if (roots.size() < 4) {
        return out;
    }
    auto tail = std::vector<std::pair<double, double>>(roots.end() - 3, roots.end());
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (const auto& [x, y] : tail) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = 3.0;
    double den = n * sxx - sx * sx;
    double slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    double limit = (sy - slope * sx) / n;
    if (!(limit > 0.0)) {
        // extrapolation overshoots; fall back to the last root-test value
        limit = tail.back().second;
    }
    out.radius = 1.0 / limit;
    out.low_confidence = false;
    return out;
}

RadiusEstimate radius_estimate(const Series1<Rational>& s)
{
    std::vector<double> mags(static_cast<std::size_t>(s.order()) + 1, 0.0);
    s.for_each_term([&](int m, const Rational& c) { mags[static_cast<std::size_t>(m)] = std::abs(c.get_d()); });
    return radius_estimate(mags);
}

RadiusEstimate radius_estimate(const Series2<Rational>& s)
{
    std::vector<double> mags(static_cast<std::size_t>(s.order()) + 1, 0.0);
    s.for_each_term([&](int i, int j, const Rational& c) {
        auto& slot = mags[static_cast<std::size_t>(i + j)];
        slot = std::max(slot, std::abs(c.get_d()));
    });
    return radius_estimate(mags);
}

Series2<Rational> geometric_bound(const Series2<Rational>& f_hat, const Rational& c)
{
    int n = f_hat.order();
    Series2<Rational> cf = scale(f_hat, c);
    cf.at(0, 0) = 0;
    // sum_{p >= 1} (cf)^p = cf (1 + sum ...), Horner from the top power
    Series2<Rational> acc(n);
    for (int p = 0; p < n; ++p) {
        acc.at(0, 0) += 1;
        acc = mul_trunc(cf, acc, n);
    }
    return acc;
}

MajorantReport majorant_bound(const NormalFormResult& result)
{
    MajorantReport rep;
    int n = result.order;
    rep.c = denominator_bound(std::max(n, 2));
    rep.f_hat = hat_series(result.atilde);
    rep.g_hat = hat_series(result.g);
    rep.h_hat = hat_series(result.h1);
    rep.bound_series = geometric_bound(rep.f_hat, rep.c);
    rep.h_hat.for_each_term([&](int i, int j, const Rational& b) {
        if (b > rep.bound_series.coeff(i, j)) {
            rep.dominance_ok = false;
            rep.failures.push_back({"h1", i, j});
        }
    });
    rep.g_hat.for_each_term([&](int m, const Rational& g) {
        if (g > rep.f_hat.coeff(m + 1, m)) {
            rep.dominance_ok = false;
            rep.failures.push_back({"g", m + 1, m});
        }
    });
    rep.radius_estimates["g"] = radius_estimate(result.g);
    rep.radius_estimates["h1"] = radius_estimate(result.h1);
    rep.radius_estimates["f_hat"] = radius_estimate(rep.f_hat);
    return rep;
}

} // namespace revham
