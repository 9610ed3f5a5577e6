#pragma once

// Equivariant normal form of an R-reversible planar field with a
// nondegenerate equilibrium.
//
// Pipeline (all exact):
//   original (u, v)
//     -> pre_linear       sign flip and v-scaling; field becomes mu * Xs with
//                         Xs rational and linear part [[0, 1], [sigma, 0]]
//     -> C^-1             eigen coordinates (xi, eta) of Xs; the involution
//                         R becomes the swap S. C = [[1, 1], [-k, k]] with
//                         k = 1 (saddle) or k = i (center)
//     -> h_eigen^-1       normal form xi' = -k xi (1 + g(xi eta)),
//                                     eta' = k eta (1 + g(xi eta))
//     -> C                Hamiltonian chart (x, y), where xi eta = (x^2 -+ y^2)/4
//
// Factoring mu out as a time scale keeps the recursion over Q (saddle) or
// Q(i) (center); only pre_linear and the final Hamiltonian involve sqrt.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "revham/field.hpp"

namespace revham {

struct Prenormalized {
    /// Field in prenormalized coordinates, linear part [[0, mu], [+-mu, 0]].
    PlanarField<Surd> field;
    /// prenormalized coordinates = pre_linear * original coordinates.
    LinearMap2<Surd> pre_linear;
    Surd mu;
    bool sign_flip = false;
    /// s^2 = |gamma| / |beta| for the scaling v = s v'.
    Rational scale_squared;
};

Prenormalized prenormalize_linear(const PlanarField<Rational>& x);

/// Divides a field exactly by mu; throws if any coefficient stays irrational.
PlanarField<Rational> factor_time_scale(const PlanarField<Surd>& x, const Surd& mu);

struct EigenbasisChange {
    LinearMap2<Surd> pre_linear;
    LinearMap2<Complex> c;
    LinearMap2<Complex> c_inv;
    EquilibriumKind kind;
    Surd mu;
};

/// xi' = -kappa xi + f1, eta' = kappa eta + f2, in time units scaled by mu.
template <class T>
struct EigenField {
    Series2<T> f1;
    Series2<T> f2;
    T kappa;

    int order() const { return f1.order(); }
};

struct EigenSystem {
    EigenbasisChange change;
    /// The rational field Xs with prenormalized field = mu * Xs.
    PlanarField<Rational> scaled;
    std::variant<EigenField<Rational>, EigenField<Complex>> field;
};

EigenSystem to_eigenbasis(const Prenormalized& pre, const EquilibriumKind& kind);

template <class T>
struct HomologicalSolution {
    /// (h1, h2) with h2 = swap(h1); eigen coordinates = new + h(new).
    SeriesPair<T> h;
    /// g_m for odd degree 2m + 1.
    std::optional<T> resonant;
};

/// Solves the degree-k homological equation for an S-reversible homogeneous
/// pair xk = (-sum a_{k-j,j} xi^{k-j} eta^j, sum a_{j,k-j} xi^{k-j} eta^j)
/// with linear part diag(-mu, mu):
///   b_{k-j,j} = a_{k-j,j} / ((k - 2j - 1) mu),
/// the resonant slot j = m of odd k = 2m + 1 giving g_m = a_{m+1,m} / mu and
/// b_{m+1,m} = 0.
template <class T>
HomologicalSolution<T> homological_solve_degree(int k, const SeriesPair<T>& xk, const T& mu);

struct ResonanceRecord {
    int degree = 0;
    /// Nonzero non-resonant coefficients removed at this degree.
    int eliminated = 0;
    /// m for odd degree 2m + 1.
    std::optional<int> resonant_index;
    std::string resonant_value;
};

template <class T>
struct RecursionOutput {
    Series2<T> h1;
    Series1<T> g;
    /// Coefficients of f1 o h_eigen, each read at the degree it was needed.
    Series2<T> atilde;
    std::vector<ResonanceRecord> log;
};

/// Direct coefficient recursion, degree by degree:
///   kappa (-k + 2j + 1) b_{k-j,j} = a~_{k-j,j} + kappa (k - 2j) sum_m g_m b_{k-j-m,j-m}
/// with b_{1,0} = 1 inside the sum, and g_m = -a~_{m+1,m} / kappa,
/// b_{m+1,m} = 0 at the resonant slot.
template <class T>
RecursionOutput<T> run_recursion(const EigenField<T>& x, int order);

template <class T>
struct OracleStage {
    int degree = 0;
    /// Degree part of the transformed field right after eliminating it.
    SeriesPair<T> part;
    bool normal = false;     // zero for even degree, resonant line for odd
    bool reversible = false; // whole transformed field is S-reversible
};

template <class T>
struct OracleOutput {
    Series2<T> h1;
    Series1<T> g;
    std::vector<OracleStage<T>> stages;
    SeriesPair<T> final_field;
};

/// Independent path: applies each degree-k change explicitly and pushes the
/// full field forward (compose, invert the Jacobian, multiply) before reading
/// the next degree.
template <class T>
OracleOutput<T> stepwise_oracle(const EigenField<T>& x, int order);

struct NormalFormResult {
    EigenbasisChange change;
    EquilibriumKind kind;
    Surd mu;
    int order = 0;
    /// g(t) = sum g_m t^m, order (N - 1) / 2.
    Series1<Rational> g;
    /// First component of h_eigen minus xi; real in both cases.
    Series2<Rational> h1;
    Series2<Complex> atilde;
    /// Conjugacy from the original field to the Hamiltonian field.
    SeriesPair<Surd> h_bar;
    PlanarField<Rational> scaled_field;
    std::vector<ResonanceRecord> resonance_log;

    /// (xi + h1, eta + swap(h1)); eigen coordinates as a function of
    /// normal-form coordinates.
    SeriesPair<Rational> h_eigen() const;
};

/// C o h_eigen^-1 o C^-1 in prenormalized coordinates; rational and tangent
/// to the identity.
SeriesPair<Rational> scaled_conjugacy(const EigenbasisChange& change, const Series2<Rational>& h1);

SeriesPair<Surd> compose_full(const NormalFormResult& result);

/// Full pipeline at the order of the input field.
NormalFormResult compute_normal_form(const PlanarField<Rational>& x);

} // namespace revham
