#pragma once

#include <array>
#include <string>
#include <vector>

#include "revham/hamiltonian.hpp"

namespace revham {

/// Dh . X - Y o h through the given order.
template <class R>
SeriesPair<R> conjugacy_residual(const PlanarField<R>& x, const SeriesPair<R>& h, const PlanarField<R>& y, int order)
{
    if (!is_zero(h.first.coeff(0, 0)) || !is_zero(h.second.coeff(0, 0))) {
        throw Error("conjugacy must fix the origin");
    }
    const auto& p = x.p();
    const auto& q = x.q();
    auto dh = [&](const Series2<R>& c) {
        // X has valuation one, so the derivative is only needed below order
        return add(mul_trunc(partial(c, Axis::first), p, order), mul_trunc(partial(c, Axis::second), q, order));
    };
    Series2<R> l1 = dh(h.first);
    Series2<R> l2 = dh(h.second);
    auto yh = compose_many<R>({y.p(), y.q()}, h.first, h.second);
    return {sub(l1, yh[0]), sub(l2, yh[1])};
}

/// h o R - R o h.
template <class R>
SeriesPair<R> equivariance_residual(const SeriesPair<R>& h, const LinearMap2<R>& r)
{
    auto hr = linear_subst(h, r);
    auto rh = apply_linear(r, h);
    return {sub(hr.first, rh.first), sub(hr.second, rh.second)};
}

/// Lowest degree carrying a nonzero coefficient of either component, or
/// order + 1 when the pair vanishes.
template <class R>
int residual_valuation(const SeriesPair<R>& s)
{
    return std::min(s.first.valuation(), s.second.valuation());
}

using Point = std::array<double, 2>;

/// Polynomial in two variables compiled for fast double evaluation.
class NumericPoly {
public:
    NumericPoly() = default;
    template <class R>
    explicit NumericPoly(const Series2<R>& s)
    {
        s.for_each_term([&](int i, int j, const R& c) { terms_.push_back({i, j, to_double(c)}); });
        for (const auto& t : terms_) {
            max_i_ = std::max(max_i_, t.i);
            max_j_ = std::max(max_j_, t.j);
        }
    }

    double operator()(double x, double y) const;

private:
    struct Term {
        int i;
        int j;
        double c;
    };
    std::vector<Term> terms_;
    int max_i_ = 0;
    int max_j_ = 0;
};

class NumericMap {
public:
    NumericMap() = default;
    template <class R>
    explicit NumericMap(const SeriesPair<R>& s) : first_(s.first), second_(s.second)
    {
    }
    template <class R>
    explicit NumericMap(const PlanarField<R>& x) : first_(x.p()), second_(x.q())
    {
    }

    Point operator()(const Point& q) const { return {first_(q[0], q[1]), second_(q[0], q[1])}; }

private:
    NumericPoly first_;
    NumericPoly second_;
};

/// Classical RK4; returns steps + 1 states starting at q0. Throws Divergence
/// on a non-finite state.
std::vector<Point> integrate_rk4(const NumericMap& x, Point q0, double dt, long steps);

double max_norm_distance(const Point& a, const Point& b);

/// max_t |hbar(phi_X^t(q0)) - phi_XH^t(hbar(q0))| in the max norm.
double trajectory_conjugacy_error(const NumericMap& x, const NumericMap& xh, const NumericMap& hbar, Point q0, double dt,
                                  long steps);

/// First return to {y = 0, x > 0} after leaving q0, by sign change and
/// linear interpolation. Throws Error if no return is seen within max_steps.
double first_return_time(const NumericMap& x, Point q0, double dt, long max_steps);

struct PeriodResult {
    double period_x = 0.0;
    double period_xh = 0.0;
    double relative_error = 0.0;
};

PeriodResult period_error(const NumericMap& x, const NumericMap& xh, const NumericMap& hbar, Point q0, double dt,
                          long max_steps);

/// max_t |H(hbar(q_t)) - H(hbar(q0))| along the X trajectory.
double integral_drift(const NumericPoly& h, const NumericMap& hbar, const NumericMap& x, Point q0, double dt,
                      long steps);

struct Tolerances {
    double trajectory = 1e-6;
    double drift = 1e-8;
    double period = 1e-6;
};

struct TrajectoryCheck {
    Point q0;
    double horizon = 0.0;
    double max_error = 0.0;
};

struct PeriodCheck {
    Point q0;
    PeriodResult result;
};

struct DriftCheck {
    Point q0;
    double max_drift = 0.0;
};

struct VerificationReport {
    int order = 0;
    /// Residual vanishes through this degree; equals order when exact.
    int symbolic_residual_max_degree_ok = 0;
    bool equivariance_ok = false;
    std::vector<TrajectoryCheck> trajectory_errors;
    std::vector<PeriodCheck> period_tests;
    std::vector<DriftCheck> integral_drift;

    bool symbolic_ok() const { return symbolic_residual_max_degree_ok >= order; }
    /// Name of the first failing check, empty when all pass.
    std::string first_failure(const Tolerances& tol) const;
};

struct VerifyOptions {
    bool symbolic = true;
    bool numeric = true;
    bool periods = true;
    double amplitude = 1e-2;
    double dt = 1e-3;
    double horizon = 5.0;
    /// Period search budget in multiples of the linear period.
    double period_budget = 4.0;
};

/// Runs the selected checks on an original field, its conjugacy and the
/// Hamiltonian normal form.
VerificationReport verify_conjugacy(const PlanarField<Rational>& x, const SeriesPair<Surd>& h_bar,
                                    const HamiltonianNF& ham, const VerifyOptions& options);

} // namespace revham
