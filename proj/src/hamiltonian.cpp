#include "revham/hamiltonian.hpp"

namespace revham {

Series1<Surd> build_G(const Series1<Rational>& g, const Surd& mu)
{
    Series1<Surd> G(g.order());
    G.set(0, mu);
    Rational four_m(1);
    for (int m = 1; m <= g.order(); ++m) {
        four_m *= 4;
        if (!is_zero(g.coeff(m))) {
            G.set(m, mu * Surd(Rational(g.coeff(m) / four_m)));
        }
    }
    return G;
}

Series1<Surd> build_G(const NormalFormResult& result) { return build_G(result.g, result.mu); }

Series1<Surd> build_F(const Series1<Surd>& G) { return scale(integrate1(G), Surd(Rational(1, 2))); }

Series2<Surd> build_H(const Series1<Surd>& F, const EquilibriumKind& kind, int order)
{
    if (kind.type == EquilibriumKind::Type::degenerate) {
        throw DegenerateJacobian("no Hamiltonian normal form at a degenerate equilibrium");
    }
    Series2<Surd> t(order);
    if (order >= 2) {
        t.set(2, 0, Surd(1));
        t.set(0, 2, kind.is_center() ? Surd(1) : Surd(-1));
    }
    Series2<Surd> h = substitute(F, t, order);
    return kind.is_center() ? h : -h;
}

PlanarField<Surd> hamiltonian_field(const Series2<Surd>& H)
{
    Series2<Surd> p = partial(H, Axis::second);
    Series2<Surd> q = -partial(H, Axis::first);
    return {std::move(p), std::move(q)};
}

HamiltonianNF build_hamiltonian(const NormalFormResult& result)
{
    Series1<Surd> G = build_G(result);
    Series1<Surd> F = build_F(G);
    Series2<Surd> H = build_H(F, result.kind, result.order + 1);
    PlanarField<Surd> xh = hamiltonian_field(H);
    return {result.kind, std::move(G), std::move(F), std::move(H), std::move(xh)};
}

} // namespace revham
