#pragma once

#include <optional>
#include <string>

#include "revham/linear_map.hpp"

namespace revham {

/// Planar vector field (p, q) with a singular point at the origin.
template <class R>
class PlanarField {
public:
    PlanarField(Series2<R> p, Series2<R> q) : p_(std::move(p)), q_(std::move(q))
    {
        if (p_.order() != q_.order()) {
            throw Error("field components have different truncation orders");
        }
        if (!is_zero(p_.coeff(0, 0)) || !is_zero(q_.coeff(0, 0))) {
            throw OriginNotSingular("the origin is not a singular point of the field");
        }
    }

    const Series2<R>& p() const { return p_; }
    const Series2<R>& q() const { return q_; }
    int order() const { return p_.order(); }
    SeriesPair<R> pair() const { return {p_, q_}; }

    friend bool operator==(const PlanarField& a, const PlanarField& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

private:
    Series2<R> p_;
    Series2<R> q_;
};

template <class To, class From>
PlanarField<To> convert(const PlanarField<From>& x)
{
    return {convert<To>(x.p()), convert<To>(x.q())};
}

/// DR X + X o R for a linear involution R. Zero exactly when X is
/// R-reversible up to the truncation order.
template <class R>
SeriesPair<R> reversibility_residual(const PlanarField<R>& x, const LinearMap2<R>& inv)
{
    auto rx = apply_linear(inv, x.pair());
    auto xr = linear_subst(x.pair(), inv);
    return {add(rx.first, xr.first), add(rx.second, xr.second)};
}

/// Matrix of degree-one coefficients of (p, q).
template <class R>
LinearMap2<R> jacobian_origin(const PlanarField<R>& x)
{
    return {x.p().coeff(1, 0), x.p().coeff(0, 1), x.q().coeff(1, 0), x.q().coeff(0, 1)};
}

/// RA + AR; the zero matrix iff A anticommutes with R.
template <class R>
LinearMap2<R> anticommute_residual(const LinearMap2<R>& a, const LinearMap2<R>& r)
{
    return r * a + a * r;
}

/// Linear conjugation of a field: with old = M new, returns the field in the
/// new coordinates, M^-1 X(M new).
template <class R>
PlanarField<R> transform_linear(const PlanarField<R>& x, const LinearMap2<R>& m)
{
    auto moved = linear_subst(x.pair(), m);
    auto out = apply_linear(m.inverse(), moved);
    return {std::move(out.first), std::move(out.second)};
}

struct EquilibriumKind {
    enum class Type { center, saddle, degenerate };

    Type type = Type::degenerate;
    /// lambda^2 for saddles, omega^2 for centers, zero when degenerate.
    Rational modulus_squared;
    double modulus = 0.0;

    bool is_center() const { return type == Type::center; }
    bool is_saddle() const { return type == Type::saddle; }
    std::string name() const;
};

/// First nonzero monomial of a residual pair, as "component:i:j:coefficient".
struct Offender {
    int component = 0;
    int i = 0;
    int j = 0;
    Rational coefficient;
};

std::optional<Offender> first_offender(const SeriesPair<Rational>& residual);

/// Classifies the origin of a reversible field under R = diag(1, -1). Throws
/// NotReversible (naming the first offending monomial) when the residual does
/// not vanish.
EquilibriumKind classify(const PlanarField<Rational>& x, const LinearMap2<Rational>& r = standard_involution());

} // namespace revham
