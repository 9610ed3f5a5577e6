#pragma once

#include "revham/normalform.hpp"

namespace revham {

struct HamiltonianNF {
    EquilibriumKind kind;
    /// G(t) = mu (1 + g(t / 4)); G(0) = mu > 0.
    Series1<Surd> G;
    /// F(t) = 1/2 int_0^t G.
    Series1<Surd> F;
    /// F(x^2 + y^2) for a center, -F(x^2 - y^2) for a saddle; order N + 1.
    Series2<Surd> H;
    /// (dH/dy, -dH/dx); order N.
    PlanarField<Surd> X_H;
};

Series1<Surd> build_G(const NormalFormResult& result);
Series1<Surd> build_G(const Series1<Rational>& g, const Surd& mu);
Series1<Surd> build_F(const Series1<Surd>& G);
Series2<Surd> build_H(const Series1<Surd>& F, const EquilibriumKind& kind, int order);
PlanarField<Surd> hamiltonian_field(const Series2<Surd>& H);

HamiltonianNF build_hamiltonian(const NormalFormResult& result);

} // namespace revham
