#include "revham/field.hpp"

#include <cmath>

namespace revham {

std::string EquilibriumKind::name() const
{
    switch (type) {
    case Type::center: return "center";
    case Type::saddle: return "saddle";
    case Type::degenerate: return "degenerate";
    }
    return "degenerate";
}

std::optional<Offender> first_offender(const SeriesPair<Rational>& residual)
{
    std::optional<Offender> found;
    int best_degree = -1;
    auto scan = [&](const Series2<Rational>& s, int component) {
        s.for_each_term([&](int i, int j, const Rational& c) {
            if (!found || i + j < best_degree) {
                found = Offender{component, i, j, c};
                best_degree = i + j;
            }
        });
    };
    scan(residual.first, 1);
    scan(residual.second, 2);
    return found;
}

EquilibriumKind classify(const PlanarField<Rational>& x, const LinearMap2<Rational>& r)
{
    if (r != standard_involution()) {
        throw Error("classification is defined for the involution (u, v) -> (u, -v)");
    }
    if (!is_zero(x.p().coeff(0, 0)) || !is_zero(x.q().coeff(0, 0))) {
        throw OriginNotSingular("the origin is not a singular point of the field");
    }
    auto residual = reversibility_residual(x, r);
    if (auto off = first_offender(residual)) {
        throw NotReversible("field is not reversible: residual term " + to_string(off->coefficient) + "*u^" +
                            std::to_string(off->i) + "*v^" + std::to_string(off->j) + " in component " +
                            std::to_string(off->component));
    }
    auto a = jacobian_origin(x);
    Rational bg = a(0, 1) * a(1, 0);
    EquilibriumKind k;
    if (sgn(bg) > 0) {
        k.type = EquilibriumKind::Type::saddle;
        k.modulus_squared = bg;
    } else if (sgn(bg) < 0) {
        k.type = EquilibriumKind::Type::center;
        k.modulus_squared = -bg;
    } else {
        k.type = EquilibriumKind::Type::degenerate;
        k.modulus_squared = 0;
    }
    k.modulus = std::sqrt(k.modulus_squared.get_d());
    return k;
}

} // namespace revham
