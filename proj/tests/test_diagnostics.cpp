#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "revham/diagnostics.hpp"
#include "revham/parser.hpp"
#include "support/corpus.hpp"

using namespace revham;

namespace {

const VarNames uv{"u", "v"};

Series2<Rational> S(const char* text, int order = 6) { return parse(text, uv, order); }

} // namespace

TEST_CASE("hat series")
{
    CHECK(hat_series(S("u-v")) == S("u+v"));
    CHECK(hat_series(S("0")).is_zero());
    CHECK(hat_series(S("-3/2*u^2*v")) == S("3/2*u^2*v"));

    Series2<Complex> z(3);
    z.set(1, 0, Complex(Rational(-1, 2), Rational(3)));
    z.set(0, 2, Complex(Rational(0), Rational(-2)));
    auto hz = hat_series(z);
    CHECK(hz.coeff(1, 0) == Rational(7, 2));
    CHECK(hz.coeff(0, 2) == Rational(2));

    Series1<Rational> g(4);
    g.set(1, Rational(-2));
    g.set(3, Rational(5, 3));
    auto hg = hat_series(g);
    CHECK(hg.coeff(1) == Rational(2));
    CHECK(hg.coeff(3) == Rational(5, 3));
}

TEST_CASE("hat series is idempotent")
{
    std::mt19937_64 rng(5);
    for (int n = 0; n < 50; ++n) {
        auto s = testing::random_series(rng, 6, 9);
        auto h = hat_series(s);
        CHECK(hat_series(h) == h);
        h.for_each_term([](int, int, const Rational& c) { CHECK(sgn(c) > 0); });
    }
}

TEST_CASE("denominator bound")
{
    CHECK(denominator_bound(2) == Rational(2));
    CHECK(denominator_bound(50) == Rational(2));
    CHECK_THROWS_AS(denominator_bound(1), Error);

    // enumeration of both quotients over every non-resonant slot
    Rational worst_inverse(0);
    Rational worst_ratio(0);
    for (int k = 2; k <= 50; ++k) {
        for (int j = 0; j <= k; ++j) {
            int d = -k + 2 * j + 1;
            if (d == 0) {
                continue;
            }
            worst_inverse = std::max(worst_inverse, Rational(1, std::abs(d)));
            worst_ratio = std::max(worst_ratio, Rational(std::abs(k - 2 * j), std::abs(d)));
        }
    }
    CHECK(worst_inverse == Rational(1));
    CHECK(worst_ratio == Rational(2));
    CHECK(Rational(std::abs(-1), std::abs(-1)) <= Rational(2)); // k = 2, j = 0
    CHECK(Rational(1, 2) <= Rational(2));                       // k = 5, j = 3
}

TEST_CASE("radius of a geometric series")
{
    std::vector<double> ones(13, 1.0);
    auto r = radius_estimate(ones);
    CHECK(!r.low_confidence);
    CHECK(r.radius == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<double> halves{0.0};
    for (int m = 1; m <= 12; ++m) {
        halves.push_back(std::pow(2.0, m));
    }
    CHECK(radius_estimate(halves).radius == doctest::Approx(0.5).epsilon(1e-9));

    Series1<Rational> g(10);
    for (int m = 1; m <= 10; ++m) {
        g.set(m, Rational(1));
    }
    CHECK(radius_estimate(g).radius == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("radius of a polynomial")
{
    Series1<Rational> g(10);
    g.set(1, Rational(3));
    g.set(2, Rational(-1));
    auto r = radius_estimate(g);
    CHECK(std::isinf(r.radius));
    CHECK(r.low_confidence);
    CHECK(std::isinf(radius_estimate(std::vector<double>{0.0, 1.0, 0.0, 2.0}).radius));
}

TEST_CASE("radius of a factorial series shrinks")
{
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 6; n <= 20; n += 2) {
        std::vector<double> c{0.0};
        double f = 1.0;
        for (int m = 1; m <= n; ++m) {
            f *= m;
            c.push_back(f);
        }
        double r = radius_estimate(c).radius;
        CHECK(r < previous);
        previous = r;
    }
    CHECK(previous < 0.25);
}

TEST_CASE("geometric bound")
{
    // c f = 2 * 3 xi^2: coefficients 6, 36, 216 at degrees 2, 4, 6
    auto b = geometric_bound(S("3*u^2"), Rational(2));
    CHECK(b.coeff(2, 0) == Rational(6));
    CHECK(b.coeff(4, 0) == Rational(36));
    CHECK(b.coeff(6, 0) == Rational(216));
    CHECK(b.coeff(3, 0) == Rational(0));

    auto mixed = geometric_bound(S("u^2+u*v"), Rational(2));
    // (2u^2 + 2uv)^2 = 4u^4 + 8u^3 v + 4u^2 v^2
    CHECK(mixed.coeff(4, 0) == Rational(4));
    CHECK(mixed.coeff(3, 1) == Rational(8));
    CHECK(mixed.coeff(2, 2) == Rational(4));
}

TEST_CASE("geometric bound is monotone in f")
{
    std::mt19937_64 rng(17);
    for (int n = 0; n < 30; ++n) {
        auto f = hat_series(testing::random_series(rng, 6, 5));
        f.set(0, 0, Rational(0));
        f.set(1, 0, Rational(0));
        f.set(0, 1, Rational(0));
        auto bigger = add(f, hat_series(testing::random_series(rng, 6, 5)));
        bigger.set(0, 0, Rational(0));
        bigger.set(1, 0, Rational(0));
        bigger.set(0, 1, Rational(0));
        auto lo = geometric_bound(f, Rational(2));
        auto hi = geometric_bound(bigger, Rational(2));
        for (int d = 0; d <= 6; ++d) {
            for (int j = 0; j <= d; ++j) {
                CHECK(lo.coeff(d - j, j) <= hi.coeff(d - j, j));
            }
        }
    }
}

TEST_CASE("majorant of a linear field")
{
    PlanarField<Rational> x{S("v"), S("u")};
    auto rep = majorant_bound(compute_normal_form(x));
    CHECK(rep.c == Rational(2));
    CHECK(rep.f_hat.is_zero());
    CHECK(rep.g_hat.is_zero());
    CHECK(rep.h_hat.is_zero());
    CHECK(rep.bound_series.is_zero());
    CHECK(rep.dominance_ok);
}

TEST_CASE("majorant of a quadratic perturbation")
{
    PlanarField<Rational> x{S("v+u*v"), S("u+u^2")};
    auto rep = majorant_bound(compute_normal_form(x));
    CHECK(rep.dominance_ok);
    CHECK(rep.failures.empty());
    // the bound grows geometrically in the degree
    Rational last(0);
    for (int d = 2; d <= 6; d += 2) {
        Rational top(0);
        for (int j = 0; j <= d; ++j) {
            top = std::max(top, rep.bound_series.coeff(d - j, j));
        }
        CHECK(top > last);
        last = top;
    }
    CHECK(rep.radius_estimates.count("g") == 1);
}

TEST_CASE("dominance holds on random pipelines")
{
    std::mt19937_64 rng(2024);
    for (int n = 0; n < 20; ++n) {
        auto kind = n % 2 ? testing::LinearKind::center : testing::LinearKind::saddle;
        auto x = testing::random_reversible(rng, kind, 7);
        auto rep = majorant_bound(compute_normal_form(x));
        CHECK(rep.dominance_ok);
        rep.h_hat.for_each_term([](int, int, const Rational& c) { CHECK(sgn(c) >= 0); });
        rep.f_hat.for_each_term([](int, int, const Rational& c) { CHECK(sgn(c) >= 0); });
        rep.g_hat.for_each_term([](int, const Rational& c) { CHECK(sgn(c) >= 0); });
    }
}
