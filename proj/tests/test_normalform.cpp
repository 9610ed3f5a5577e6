#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "revham/normalform.hpp"
#include "revham/parser.hpp"
#include "support/corpus.hpp"

using namespace revham;

namespace {

const VarNames uv{"u", "v"};
const VarNames xe{"x", "e"};

PlanarField<Rational> F(const char* p, const char* q, int order = 6)
{
    return {parse(p, uv, order), parse(q, uv, order)};
}

/// The pair (-sum a_{k-j,j} x^{k-j} e^j, sum a_{j,k-j} x^{k-j} e^j).
SeriesPair<Rational> homogeneous_input(const std::vector<long>& a, int order)
{
    int k = static_cast<int>(a.size()) - 1;
    Series2<Rational> first(order);
    for (int j = 0; j <= k; ++j) {
        first.set(k - j, j, Rational(-a[static_cast<std::size_t>(j)]));
    }
    return {first, -swap_vars(first)};
}

template <class T>
EigenField<T> eigen_of(const PlanarField<Rational>& x)
{
    auto kind = classify(x);
    auto sys = to_eigenbasis(prenormalize_linear(x), kind);
    return std::get<EigenField<T>>(sys.field);
}

} // namespace

TEST_CASE("degree-two homological solution")
{
    auto sol = homological_solve_degree(2, homogeneous_input({1, 2, 3}, 4), Rational(1));
    CHECK(sol.h.first.coeff(2, 0) == 1);
    CHECK(sol.h.first.coeff(1, 1) == -2);
    CHECK(sol.h.first.coeff(0, 2) == -1);
    CHECK_FALSE(sol.resonant.has_value());
    CHECK(sol.h.second == swap_vars(sol.h.first));
}

TEST_CASE("degree-three homological solution and resonance")
{
    auto sol = homological_solve_degree(3, homogeneous_input({1, 5, 2, 4}, 4), Rational(1));
    CHECK(sol.h.first.coeff(3, 0) == Rational(1, 2));
    CHECK(sol.h.first.coeff(1, 2) == -1);
    CHECK(sol.h.first.coeff(0, 3) == -1);
    CHECK(sol.h.first.coeff(2, 1) == 0);
    REQUIRE(sol.resonant.has_value());
    CHECK(*sol.resonant == 5);
}

TEST_CASE("homological solution scales with the eigenvalue")
{
    auto sol = homological_solve_degree(2, homogeneous_input({1, 2, 3}, 4), Rational(2));
    CHECK(sol.h.first.coeff(2, 0) == Rational(1, 2));
    CHECK(sol.h.first.coeff(1, 1) == -1);
    CHECK(sol.h.first.coeff(0, 2) == Rational(-1, 2));
}

TEST_CASE("zero homological input")
{
    SeriesPair<Rational> zero{Series2<Rational>(5), Series2<Rational>(5)};
    auto sol = homological_solve_degree(5, zero, Rational(1));
    CHECK(sol.h.first.is_zero());
    REQUIRE(sol.resonant.has_value());
    CHECK(*sol.resonant == 0);
}

TEST_CASE("homological input errors")
{
    SeriesPair<Rational> bad = homogeneous_input({1, 2, 3}, 4);
    bad.second.set(2, 0, Rational(7));
    CHECK_THROWS_AS(homological_solve_degree(2, bad, Rational(1)), NotReversible);
    CHECK_THROWS_AS(homological_solve_degree(3, homogeneous_input({1, 2, 3}, 4), Rational(1)), Error);
    CHECK_THROWS_AS(homological_solve_degree(1, homogeneous_input({1, 2}, 4), Rational(1)), Error);
}

TEST_CASE("prenormalize_linear")
{
    auto id = prenormalize_linear(F("v", "u"));
    CHECK(id.pre_linear == LinearMap2<Surd>::identity());
    CHECK(id.mu == Surd(1));

    auto four = prenormalize_linear(F("4*v", "u"));
    CHECK(four.mu == Surd(2));
    CHECK(four.scale_squared == Rational(1, 4));
    CHECK(four.pre_linear == LinearMap2<Surd>::diagonal(Surd(1), Surd(2)));
    CHECK(jacobian_origin(four.field) == LinearMap2<Surd>(Surd(0), Surd(2), Surd(2), Surd(0)));

    auto flip = prenormalize_linear(F("-v", "-u"));
    CHECK(flip.sign_flip);
    CHECK(flip.mu == Surd(1));
    CHECK(flip.field == convert<Surd>(F("v", "u")));

    auto irr = prenormalize_linear(F("2*v+u*v", "-u^2-u"));
    CHECK(irr.mu == surd_sqrt(Rational(2)));
    CHECK(jacobian_origin(irr.field) == LinearMap2<Surd>(Surd(0), irr.mu, -irr.mu, Surd(0)));
    auto r = convert<Surd>(standard_involution());
    CHECK(irr.pre_linear * r == r * irr.pre_linear);
    auto res = reversibility_residual(irr.field, r);
    CHECK(res.first.is_zero());
    CHECK(res.second.is_zero());

    CHECK_THROWS_AS(prenormalize_linear(F("v", "u^2")), DegenerateJacobian);
    CHECK_THROWS_AS(prenormalize_linear(F("u+v", "u")), NotReversible);
}

TEST_CASE("eigenbasis change")
{
    auto f = eigen_of<Rational>(F("v", "u"));
    CHECK(f.kappa == 1);
    CHECK(f.f1.is_zero());
    CHECK(f.f2.is_zero());

    auto c = eigen_of<Complex>(F("v", "-u"));
    CHECK(c.kappa == Complex::i());
    CHECK(c.f1.is_zero());
    CHECK(c.f2.is_zero());

    auto x = F("v+u*v", "u+u^2");
    auto sys = to_eigenbasis(prenormalize_linear(x), classify(x));
    auto e = std::get<EigenField<Rational>>(sys.field);
    // f1 = (P - Q)/2 and f2 = (P + Q)/2 at (u, v) = (x + e, -x + e), nonlinear parts only
    auto P = parse("u*v", uv, 6);
    auto Q = parse("u^2", uv, 6);
    auto g1 = parse("x+e", xe, 6);
    auto g2 = parse("-x+e", xe, 6);
    auto pc = testing::reference_compose(P, g1, g2, 6);
    auto qc = testing::reference_compose(Q, g1, g2, 6);
    CHECK(e.f1 == scale(sub(pc, qc), Rational(1, 2)));
    CHECK(e.f2 == scale(add(pc, qc), Rational(1, 2)));
    CHECK(e.f2 == -swap_vars(e.f1));

    const auto& ch = sys.change;
    LinearMap2<Complex> s{Complex(0), Complex(1), Complex(1), Complex(0)};
    LinearMap2<Complex> r{Complex(1), Complex(0), Complex(0), Complex(-1)};
    CHECK(ch.c * s == r * ch.c);
    CHECK(ch.c * ch.c_inv == LinearMap2<Complex>::identity());
    auto rs = convert<Surd>(standard_involution());
    CHECK(ch.pre_linear * rs == rs * ch.pre_linear);

    auto cx = F("v", "-u+u^2");
    auto csys = to_eigenbasis(prenormalize_linear(cx), classify(cx));
    CHECK(csys.change.c * s == r * csys.change.c);
    CHECK(csys.change.c * csys.change.c_inv == LinearMap2<Complex>::identity());
}

TEST_CASE("linear field gives the identity")
{
    auto f = eigen_of<Rational>(F("v", "u", 8));
    auto rec = run_recursion(f, 8);
    CHECK(rec.g.is_zero());
    CHECK(rec.h1.is_zero());
    auto orc = stepwise_oracle(f, 8);
    CHECK(orc.g.is_zero());
    CHECK(orc.h1.is_zero());
}

TEST_CASE("a field already in normal form is a fixed point")
{
    EigenField<Rational> f{parse("-x^2*e", xe, 7), parse("x*e^2", xe, 7), Rational(1)};
    auto rec = run_recursion(f, 7);
    CHECK(rec.h1.is_zero());
    CHECK(rec.g.coeff(1) == 1);
    CHECK(rec.g.coeff(2) == 0);
    CHECK(rec.g.coeff(3) == 0);
    auto orc = stepwise_oracle(f, 7);
    CHECK(orc.h1.is_zero());
    CHECK(orc.g == rec.g);
}

TEST_CASE("recursion and stepwise oracle agree")
{
    auto f = eigen_of<Rational>(F("v+u*v", "u+u^2", 10));
    auto rec = run_recursion(f, 10);
    auto orc = stepwise_oracle(f, 10);
    CHECK(rec.g == orc.g);
    CHECK(rec.h1 == orc.h1);
    CHECK_FALSE(rec.g.is_zero());
    for (int m = 1; 2 * m + 1 <= 10; ++m) {
        CHECK(rec.h1.coeff(m + 1, m) == 0);
    }
    for (const auto& st : orc.stages) {
        CHECK(st.normal);
        CHECK(st.reversible);
    }
    REQUIRE(rec.log.size() == 9);
    CHECK(rec.log[1].resonant_index == 1);
    CHECK_FALSE(rec.log[0].resonant_index.has_value());
}

TEST_CASE("center recursion stays real")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = testing::random_reversible(rng, testing::LinearKind::center, 7);
        auto f = eigen_of<Complex>(x);
        auto rec = run_recursion(f, 7);
        rec.g.for_each_term([](int, const Complex& c) { CHECK(is_zero(c.im())); });
        rec.h1.for_each_term([](int, int, const Complex& c) { CHECK(is_zero(c.im())); });
        auto orc = stepwise_oracle(f, 7);
        CHECK(orc.g == rec.g);
        CHECK(orc.h1 == rec.h1);
    }
}

TEST_CASE("compose_full")
{
    auto id = compute_normal_form(F("v", "u"));
    CHECK(id.h_bar.first == convert<Surd>(parse("u", uv, 6)));
    CHECK(id.h_bar.second == convert<Surd>(parse("v", uv, 6)));

    // linear field with pre_linear = diag(1, 2)
    auto lin = compute_normal_form(F("4*v", "u"));
    CHECK(lin.change.pre_linear == LinearMap2<Surd>::diagonal(Surd(1), Surd(2)));
    CHECK(lin.h_bar.first == convert<Surd>(parse("u", uv, 6)));
    CHECK(lin.h_bar.second == convert<Surd>(parse("2*v", uv, 6)));

    auto nl = compute_normal_form(F("v+u*v", "u+u^2", 8));
    auto r = convert<Surd>(standard_involution());
    auto hr = linear_subst(nl.h_bar, r);
    auto rh = apply_linear(r, nl.h_bar);
    CHECK(hr == rh);
    CHECK(nl.h_eigen().second == swap_vars(nl.h_eigen().first));
}

TEST_CASE("normal form input is recovered exactly")
{
    // X = (v G, u G) with G = 2 (1 + u^2 - v^2)
    auto nf = compute_normal_form(F("2*v+2*v*(u^2-v^2)", "2*u+2*u*(u^2-v^2)", 9));
    CHECK(nf.mu == Surd(2));
    CHECK(nf.g.coeff(1) == 4);
    for (int m = 2; m <= nf.g.order(); ++m) {
        CHECK(nf.g.coeff(m) == 0);
    }
    CHECK(nf.h_bar.first == convert<Surd>(parse("u", uv, 9)));
    CHECK(nf.h_bar.second == convert<Surd>(parse("v", uv, 9)));
}

TEST_CASE("pipeline is deterministic")
{
    auto x = F("3/2*v+u*v-v^3", "-1/2*u+u^2+u*v^2", 8);
    auto a = compute_normal_form(x);
    auto b = compute_normal_form(x);
    CHECK(a.g == b.g);
    CHECK(a.h1 == b.h1);
    CHECK(a.h_bar == b.h_bar);
    CHECK(a.kind.is_center());
}

TEST_CASE("degenerate and non-reversible inputs are rejected")
{
    CHECK_THROWS_AS(compute_normal_form(F("v", "u^2")), DegenerateJacobian);
    CHECK_THROWS_AS(compute_normal_form(F("v+u^2", "u")), NotReversible);
}
