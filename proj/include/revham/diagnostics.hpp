#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "revham/normalform.hpp"

namespace revham {

/// Coefficient-wise absolute value; |re| + |im| for complex coefficients,
/// which dominates the modulus.
Series2<Rational> hat_series(const Series2<Rational>& s);
Series2<Rational> hat_series(const Series2<Complex>& s);
Series1<Rational> hat_series(const Series1<Rational>& s);

/// Uniform bound c for |1/(-k+2j+1)| and |(k-2j)/(-k+2j+1)| over the
/// non-resonant indices with k <= order. Always 2; the enumeration checks it.
Rational denominator_bound(int order);

struct RadiusEstimate {
    double radius = std::numeric_limits<double>::infinity();
    bool low_confidence = true;
    int terms_used = 0;
};

/// Root-test estimate from magnitudes[m] = |c_m| (slot 0 is ignored): the
/// last three values of |c_m|^(1/m) are fitted linearly in 1/m and
/// extrapolated to m = infinity.
RadiusEstimate radius_estimate(const std::vector<double>& magnitudes);
RadiusEstimate radius_estimate(const Series1<Rational>& s);
/// Uses the largest coefficient of each homogeneous part.
RadiusEstimate radius_estimate(const Series2<Rational>& s);

struct DominanceFailure {
    std::string series;
    int i = 0;
    int j = 0;
};

struct MajorantReport {
    Rational c;
    Series2<Rational> f_hat;
    Series1<Rational> g_hat;
    Series2<Rational> h_hat;
    /// c f / (1 - c f) truncated.
    Series2<Rational> bound_series;
    bool dominance_ok = true;
    std::vector<DominanceFailure> failures;
    std::map<std::string, RadiusEstimate> radius_estimates;
};

/// Geometric majorant sum_{n >= 1} (c f)^n through the order of f.
Series2<Rational> geometric_bound(const Series2<Rational>& f_hat, const Rational& c);

MajorantReport majorant_bound(const NormalFormResult& result);

} // namespace revham
