#include "revham/verify.hpp"

#include <cmath>
#include <numbers>

namespace revham {

double NumericPoly::operator()(double x, double y) const
{
    // powers up to the largest exponent actually used
    double px[64];
    double py[64];
    int ni = std::min(max_i_, 63);
    int nj = std::min(max_j_, 63);
    px[0] = 1.0;
    py[0] = 1.0;
    for (int k = 1; k <= ni; ++k) {
        px[k] = px[k - 1] * x;
    }
    for (int k = 1; k <= nj; ++k) {
        py[k] = py[k - 1] * y;
    }
    double acc = 0.0;
    for (const auto& t : terms_) {
        double xi = t.i <= 63 ? px[t.i] : std::pow(x, t.i);
        double yj = t.j <= 63 ? py[t.j] : std::pow(y, t.j);
        acc += t.c * xi * yj;
    }
    return acc;
}

std::vector<Point> integrate_rk4(const NumericMap& x, Point q0, double dt, long steps)
{
    if (!(dt > 0.0)) {
        throw Error("time step must be positive");
    }
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(q0);
    Point q = q0;
    auto shift = [](const Point& a, const Point& k, double s) { return Point{a[0] + s * k[0], a[1] + s * k[1]}; };
    for (long n = 1; n <= steps; ++n) {
        Point k1 = x(q);
        Point k2 = x(shift(q, k1, dt / 2));
        Point k3 = x(shift(q, k2, dt / 2));
        Point k4 = x(shift(q, k3, dt));
        for (int c = 0; c < 2; ++c) {
            q[c] += dt / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
        }
        if (!std::isfinite(q[0]) || !std::isfinite(q[1])) {
            throw Divergence("trajectory left the finite range", n);
        }
        out.push_back(q);
    }
    return out;
}

double max_norm_distance(const Point& a, const Point& b) { return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

double trajectory_conjugacy_error(const NumericMap& x, const NumericMap& xh, const NumericMap& hbar, Point q0, double dt,
                                  long steps)
{
    auto orbit = integrate_rk4(x, q0, dt, steps);
    auto image = integrate_rk4(xh, hbar(q0), dt, steps);
    double worst = 0.0;
    for (std::size_t n = 0; n < orbit.size(); ++n) {
        worst = std::max(worst, max_norm_distance(hbar(orbit[n]), image[n]));
    }
    return worst;
}

double first_return_time(const NumericMap& x, Point q0, double dt, long max_steps)
{
    if (!(dt > 0.0)) {
        throw Error("time step must be positive");
    }
    Point q = q0;
    auto shift = [](const Point& a, const Point& k, double s) { return Point{a[0] + s * k[0], a[1] + s * k[1]}; };
    // direction in which the orbit leaves the section
    double leaving = x(q0)[1];
    if (leaving == 0.0) {
        throw Error("initial point is an equilibrium of the section flow");
    }
    for (long n = 1; n <= max_steps; ++n) {
        Point k1 = x(q);
        Point k2 = x(shift(q, k1, dt / 2));
        Point k3 = x(shift(q, k2, dt / 2));
        Point k4 = x(shift(q, k3, dt));
        Point next = q;
        for (int c = 0; c < 2; ++c) {
            next[c] += dt / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
        }
        if (!std::isfinite(next[0]) || !std::isfinite(next[1])) {
            throw Divergence("trajectory left the finite range", n);
        }
        bool crosses = (q[1] < 0.0) != (next[1] < 0.0) || next[1] == 0.0;
        bool same_direction = (next[1] - q[1]) * leaving > 0.0;
        if (n > 1 && crosses && same_direction && next[0] > 0.0) {
            double frac = q[1] / (q[1] - next[1]);
            return (static_cast<double>(n - 1) + frac) * dt;
        }
        q = next;
    }
    throw Error("no return to the section within " + std::to_string(max_steps) + " steps");
}

PeriodResult period_error(const NumericMap& x, const NumericMap& xh, const NumericMap& hbar, Point q0, double dt,
                          long max_steps)
{
    PeriodResult r;
    r.period_x = first_return_time(x, q0, dt, max_steps);
    r.period_xh = first_return_time(xh, hbar(q0), dt, max_steps);
    r.relative_error = std::abs(r.period_x - r.period_xh) / std::abs(r.period_x);
    return r;
}

double integral_drift(const NumericPoly& h, const NumericMap& hbar, const NumericMap& x, Point q0, double dt,
                      long steps)
{
    auto orbit = integrate_rk4(x, q0, dt, steps);
    auto level = [&](const Point& q) {
        Point p = hbar(q);
        return h(p[0], p[1]);
    };
    double h0 = level(q0);
    double worst = 0.0;
    for (const auto& q : orbit) {
        worst = std::max(worst, std::abs(level(q) - h0));
    }
    return worst;
}

std::string VerificationReport::first_failure(const Tolerances& tol) const
{
    if (!symbolic_ok()) {
        return "symbolic_residual";
    }
    if (!equivariance_ok) {
        return "equivariance";
    }
    for (const auto& t : trajectory_errors) {
        if (!(t.max_error < tol.trajectory)) {
            return "trajectory_conjugacy";
        }
    }
    for (const auto& d : integral_drift) {
        if (!(d.max_drift < tol.drift)) {
            return "integral_drift";
        }
    }
    for (const auto& p : period_tests) {
        if (!(p.result.relative_error < tol.period)) {
            return "period";
        }
    }
    return {};
}

VerificationReport verify_conjugacy(const PlanarField<Rational>& x, const SeriesPair<Surd>& h_bar,
                                    const HamiltonianNF& ham, const VerifyOptions& options)
{
    VerificationReport rep;
    rep.order = x.order();
    rep.symbolic_residual_max_degree_ok = rep.order;
    rep.equivariance_ok = true;
    if (options.symbolic) {
        if (!is_zero(h_bar.first.coeff(0, 0)) || !is_zero(h_bar.second.coeff(0, 0))) {
            // a map moving the origin already fails at degree 0
            rep.symbolic_residual_max_degree_ok = -1;
        } else {
            auto res = conjugacy_residual(convert<Surd>(x), h_bar, ham.X_H, x.order());
            rep.symbolic_residual_max_degree_ok = std::min(residual_valuation(res) - 1, rep.order);
        }
        auto eq = equivariance_residual(h_bar, convert<Surd>(standard_involution()));
        rep.equivariance_ok = eq.first.is_zero() && eq.second.is_zero();
    }
    if (!options.numeric && !options.periods) {
        return rep;
    }
    NumericMap xn(x);
    NumericMap xh(ham.X_H);
    NumericMap hb(h_bar);
    Point q0{options.amplitude, 0.0};
    long steps = std::lround(options.horizon / options.dt);
    if (options.numeric) {
        rep.trajectory_errors.push_back({q0, options.horizon, trajectory_conjugacy_error(xn, xh, hb, q0, options.dt, steps)});
        rep.integral_drift.push_back({q0, integral_drift(NumericPoly(ham.H), hb, xn, q0, options.dt, steps)});
    }
    if (options.periods && ham.kind.is_center()) {
        double linear_period = 2 * std::numbers::pi / ham.kind.modulus;
        long budget = std::lround(options.period_budget * linear_period / options.dt);
        rep.period_tests.push_back({q0, period_error(xn, xh, hb, q0, options.dt, budget)});
    }
    return rep;
}

} // namespace revham
