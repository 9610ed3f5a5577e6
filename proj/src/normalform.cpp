#include "revham/normalform.hpp"

#include <algorithm>

namespace revham {

namespace {

template <class T>
T ring_int(long n)
{
    return from_rational<T>(Rational(n));
}

template <class T>
bool homogeneous_of_degree(const Series2<T>& s, int k)
{
    bool ok = true;
    s.for_each_term([&](int i, int j, const T&) { ok = ok && (i + j == k); });
    return ok;
}

template <class T>
std::string value_text(const T& x)
{
    return to_string(x);
}

/// True when the degree-d part of (y1, y2) is zero (even d) or lies on the
/// resonant line (-c xi^{m+1} eta^m, c xi^m eta^{m+1}) (odd d = 2m + 1).
template <class T>
bool normal_part(const Series2<T>& y1, const Series2<T>& y2, int d)
{
    for (int j = 0; j <= d; ++j) {
        const T& a = y1.coeff(d - j, j);
        const T& b = y2.coeff(d - j, j);
        bool resonant1 = d % 2 == 1 && j == (d - 1) / 2;
        bool resonant2 = d % 2 == 1 && j == (d + 1) / 2;
        if (!resonant1 && !is_zero(a)) {
            return false;
        }
        if (!resonant2 && !is_zero(b)) {
            return false;
        }
    }
    if (d % 2 == 1) {
        int m = (d - 1) / 2;
        return y2.coeff(m, m + 1) == -y1.coeff(m + 1, m);
    }
    return true;
}

template <class T>
bool s_reversible(const Series2<T>& y1, const Series2<T>& y2)
{
    return y2 == -swap_vars(y1);
}

} // namespace

Prenormalized prenormalize_linear(const PlanarField<Rational>& x)
{
    auto a = jacobian_origin(x);
    if (!is_zero(a(0, 0)) || !is_zero(a(1, 1))) {
        throw NotReversible("linear part has a nonzero diagonal");
    }
    const Rational& beta = a(0, 1);
    const Rational& gamma = a(1, 0);
    if (is_zero(beta) || is_zero(gamma)) {
        throw DegenerateJacobian("det DX(0,0) = 0");
    }
    Prenormalized out{PlanarField<Surd>(Series2<Surd>(x.order()), Series2<Surd>(x.order())), {}, {}, false, {}};
    out.sign_flip = sgn(beta) < 0;
    out.scale_squared = abs(gamma) / abs(beta);
    Surd s = surd_sqrt(out.scale_squared);
    out.mu = Surd(abs(beta)) * s;
    Surd tau(out.sign_flip ? Rational(-1) : Rational(1));
    out.pre_linear = LinearMap2<Surd>::diagonal(tau, ring_one<Surd>() / s);
    out.field = transform_linear(convert<Surd>(x), out.pre_linear.inverse());
    return out;
}

PlanarField<Rational> factor_time_scale(const PlanarField<Surd>& x, const Surd& mu)
{
    auto divide = [&](const Series2<Surd>& s) {
        Series2<Rational> r(s.order());
        s.for_each_term([&](int i, int j, const Surd& c) { r.set(i, j, real_rational(c / mu)); });
        return r;
    };
    return {divide(x.p()), divide(x.q())};
}

EigenSystem to_eigenbasis(const Prenormalized& pre, const EquilibriumKind& kind)
{
    if (kind.type == EquilibriumKind::Type::degenerate) {
        throw DegenerateJacobian("no eigenbasis for a degenerate equilibrium");
    }
    PlanarField<Rational> scaled = factor_time_scale(pre.field, pre.mu);
    const Complex kappa_c = kind.is_center() ? Complex::i() : Complex(1);
    // C = [[1, 1], [-k, k]], C^-1 = 1/2 [[1, -1/k], [1, 1/k]]
    LinearMap2<Complex> c{Complex(1), Complex(1), -kappa_c, kappa_c};
    LinearMap2<Complex> c_inv = c.inverse();
    EigenbasisChange change{pre.pre_linear, c, c_inv, kind, pre.mu};

    auto build = [&](auto tag) {
        using T = decltype(tag);
        T kappa(1);
        if constexpr (std::is_same_v<T, Complex>) {
            kappa = Complex::i();
        }
        LinearMap2<T> ct{T(1), T(1), -kappa, kappa};
        PlanarField<T> xt = convert<T>(scaled);
        PlanarField<T> eig = transform_linear(xt, ct);
        Series2<T> f1 = eig.p();
        Series2<T> f2 = eig.q();
        if (f1.coeff(1, 0) != -kappa || !is_zero(f1.coeff(0, 1)) || !is_zero(f2.coeff(1, 0)) || f2.coeff(0, 1) != kappa) {
            throw Error("eigenbasis change did not diagonalize the linear part");
        }
        f1.set(1, 0, T{});
        f2.set(0, 1, T{});
        if (!s_reversible(f1, f2)) {
            throw NotReversible("transformed field is not reversible under the swap");
        }
        return EigenField<T>{std::move(f1), std::move(f2), kappa};
    };

    if (kind.is_center()) {
        return {change, scaled, build(Complex{})};
    }
    return {change, scaled, build(Rational{})};
}

template <class T>
HomologicalSolution<T> homological_solve_degree(int k, const SeriesPair<T>& xk, const T& mu)
{
    if (k < 2) {
        throw Error("homological equation needs degree at least 2");
    }
    if (is_zero(mu)) {
        throw DegenerateJacobian("zero eigenvalue");
    }
    if (!homogeneous_of_degree(xk.first, k) || !homogeneous_of_degree(xk.second, k)) {
        throw Error("homological input is not homogeneous of degree " + std::to_string(k));
    }
    if (!s_reversible(xk.first, xk.second)) {
        throw NotReversible("homological input does not have the reversible pattern");
    }
    int n = std::min(xk.first.order(), xk.second.order());
    Series2<T> h1(n);
    HomologicalSolution<T> out;
    for (int j = 0; j <= k; ++j) {
        T a = -xk.first.coeff(k - j, j);
        if (k % 2 == 1 && j == (k - 1) / 2) {
            out.resonant = a / mu;
            continue;
        }
        if (!is_zero(a)) {
            h1.set(k - j, j, a / (mu * ring_int<T>(k - 2 * j - 1)));
        }
    }
    Series2<T> h2 = swap_vars(h1);
    out.h = {std::move(h1), std::move(h2)};
    if (!out.resonant && k % 2 == 1) {
        out.resonant = T{};
    }
    return out;
}

template <class T>
RecursionOutput<T> run_recursion(const EigenField<T>& x, int order)
{
    const int n = std::min(order, x.order());
    const T& kappa = x.kappa;
    RecursionOutput<T> out{Series2<T>(n), Series1<T>(std::max((n - 1) / 2, 0)), Series2<T>(n), {}};
    auto& h1 = out.h1;
    auto b = [&](int i, int j) -> T {
        if (i == 1 && j == 0) {
            return ring_one<T>();
        }
        if (i + j < 2) {
            return T{};
        }
        return h1.coeff(i, j);
    };

    for (int k = 2; k <= n; ++k) {
        // h is known through degree k - 1, which is all a~ at degree k needs
        Series2<T> big_h1 = h1.resized(k);
        big_h1.at(1, 0) += ring_one<T>();
        Series2<T> big_h2 = swap_vars(big_h1);
        Series2<T> comp = compose_pair(x.f1.resized(k), big_h1, big_h2);

        ResonanceRecord rec;
        rec.degree = k;
        for (int j = 0; j <= k; ++j) {
            const T& at = comp.coeff(k - j, j);
            out.atilde.set(k - j, j, at);
            if (k % 2 == 1 && j == (k - 1) / 2) {
                T gm = -at / kappa;
                rec.resonant_index = j;
                rec.resonant_value = value_text(gm);
                out.g.set(j, std::move(gm));
                continue;
            }
            T sum{};
            for (int m = 1; m <= std::min(k - j, j); ++m) {
                const T& gm = out.g.coeff(m);
                if (!is_zero(gm)) {
                    fma_acc(sum, gm, b(k - j - m, j - m));
                }
            }
            T num = at + kappa * ring_int<T>(k - 2 * j) * sum;
            if (!is_zero(at)) {
                ++rec.eliminated;
            }
            if (!is_zero(num)) {
                h1.set(k - j, j, num / (kappa * ring_int<T>(-k + 2 * j + 1)));
            }
        }
        out.log.push_back(std::move(rec));
    }
    return out;
}

template <class T>
OracleOutput<T> stepwise_oracle(const EigenField<T>& x, int order)
{
    const int n = std::min(order, x.order());
    const T& kappa = x.kappa;
    Series2<T> xi = Series2<T>::variable(n, Axis::first);
    Series2<T> eta = Series2<T>::variable(n, Axis::second);
    Series2<T> big_f1 = x.f1.resized(n);
    big_f1.at(1, 0) -= kappa;
    Series2<T> big_f2 = x.f2.resized(n);
    big_f2.at(0, 1) += kappa;
    const SeriesPair<T> field{big_f1, big_f2};

    // Field in new coordinates, where old = H(new): DH^-1 X(H).
    auto pushforward = [&](const SeriesPair<T>& h) -> SeriesPair<T> {
        SeriesPair<T> moved = compose_map(field, h);
        // H is a polynomial map, so its partials are exact at any order
        Series2<T> a = partial(h.first, Axis::first).resized(n);
        Series2<T> bb = partial(h.first, Axis::second).resized(n);
        Series2<T> c = partial(h.second, Axis::first).resized(n);
        Series2<T> d = partial(h.second, Axis::second).resized(n);
        Series2<T> det = sub(mul_trunc(a, d, n), mul_trunc(bb, c, n));
        Series2<T> inv = reciprocal(det);
        Series2<T> y1 = mul_trunc(sub(mul_trunc(d, moved.first, n), mul_trunc(bb, moved.second, n)), inv, n);
        Series2<T> y2 = mul_trunc(sub(mul_trunc(a, moved.second, n), mul_trunc(c, moved.first, n)), inv, n);
        return {std::move(y1), std::move(y2)};
    };

    OracleOutput<T> out{Series2<T>(n), Series1<T>(std::max((n - 1) / 2, 0)), {}, {}};
    SeriesPair<T> total{xi, eta};
    SeriesPair<T> current = field;
    auto record = [&](int d) {
        OracleStage<T> st;
        st.degree = d;
        st.part = {homogeneous_part(current.first, d), homogeneous_part(current.second, d)};
        st.normal = normal_part(current.first, current.second, d);
        st.reversible = s_reversible(current.first, current.second);
        out.stages.push_back(std::move(st));
    };

    for (int k = 2; k <= n; ++k) {
        SeriesPair<T> part{homogeneous_part(current.first, k), homogeneous_part(current.second, k)};
        auto sol = homological_solve_degree(k, part, kappa);
        total.first = add(total.first, sol.h.first);
        total.second = add(total.second, sol.h.second);
        if (sol.resonant) {
            out.g.set((k - 1) / 2, *sol.resonant);
        }
        current = pushforward(total);
        record(k);
    }
    out.h1 = sub(total.first, xi);
    out.final_field = current;
    return out;
}

template HomologicalSolution<Rational> homological_solve_degree(int, const SeriesPair<Rational>&, const Rational&);
template HomologicalSolution<Complex> homological_solve_degree(int, const SeriesPair<Complex>&, const Complex&);
template RecursionOutput<Rational> run_recursion(const EigenField<Rational>&, int);
template RecursionOutput<Complex> run_recursion(const EigenField<Complex>&, int);
template OracleOutput<Rational> stepwise_oracle(const EigenField<Rational>&, int);
template OracleOutput<Complex> stepwise_oracle(const EigenField<Complex>&, int);

SeriesPair<Rational> NormalFormResult::h_eigen() const
{
    Series2<Rational> first = h1;
    first.at(1, 0) += Rational(1);
    return {first, swap_vars(first)};
}

SeriesPair<Rational> scaled_conjugacy(const EigenbasisChange& change, const Series2<Rational>& h1)
{
    Series2<Rational> first = h1;
    first.at(1, 0) += Rational(1);
    SeriesPair<Rational> h{first, swap_vars(first)};
    SeriesPair<Rational> h_inv = invert_near_identity(h);
    if (change.kind.is_center()) {
        SeriesPair<Complex> hc{convert<Complex>(h_inv.first), convert<Complex>(h_inv.second)};
        auto phi = apply_linear(change.c, linear_subst(hc, change.c_inv));
        return {convert<Rational>(phi.first), convert<Rational>(phi.second)};
    }
    auto c = convert<Rational>(change.c);
    auto c_inv = convert<Rational>(change.c_inv);
    return apply_linear(c, linear_subst(h_inv, c_inv));
}

SeriesPair<Surd> compose_full(const NormalFormResult& result)
{
    auto phi = scaled_conjugacy(result.change, result.h1);
    SeriesPair<Surd> phi_s{convert<Surd>(phi.first), convert<Surd>(phi.second)};
    return linear_subst(phi_s, result.change.pre_linear);
}

NormalFormResult compute_normal_form(const PlanarField<Rational>& x)
{
    EquilibriumKind kind = classify(x);
    if (kind.type == EquilibriumKind::Type::degenerate) {
        throw DegenerateJacobian("det DX(0,0) = 0");
    }
    Prenormalized pre = prenormalize_linear(x);
    EigenSystem eig = to_eigenbasis(pre, kind);
    NormalFormResult out{eig.change, kind, pre.mu, x.order(), {}, {}, {}, {}, eig.scaled, {}};
    std::visit(
        [&](const auto& f) {
            auto rec = run_recursion(f, x.order());
            // real in both cases; convert throws if an imaginary part survives
            out.g = convert<Rational>(rec.g);
            out.h1 = convert<Rational>(rec.h1);
            out.atilde = convert<Complex>(rec.atilde);
            out.resonance_log = std::move(rec.log);
        },
        eig.field);
    out.h_bar = compose_full(out);
    return out;
}

} // namespace revham
