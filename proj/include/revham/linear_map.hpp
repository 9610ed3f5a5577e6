#pragma once

#include <array>
#include <string>

#include "revham/series.hpp"

namespace revham {

/// 2x2 matrix acting on column vectors (u, v).
template <class R = Rational>
class LinearMap2 {
public:
    LinearMap2() : LinearMap2(R{}, R{}, R{}, R{}) {}
    LinearMap2(R a11, R a12, R a21, R a22) : m_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {}

    static LinearMap2 identity() { return {ring_one<R>(), R{}, R{}, ring_one<R>()}; }
    static LinearMap2 diagonal(R d1, R d2) { return {std::move(d1), R{}, R{}, std::move(d2)}; }

    const R& operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }

    R det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    LinearMap2 inverse() const
    {
        R d = det();
        if (is_zero(d)) {
            throw DegenerateJacobian("singular 2x2 matrix");
        }
        return {m_[3] / d, -m_[1] / d, -m_[2] / d, m_[0] / d};
    }

    bool is_zero_matrix() const { return is_zero(m_[0]) && is_zero(m_[1]) && is_zero(m_[2]) && is_zero(m_[3]); }

    /// M != I and M^2 = I, decided exactly.
    bool is_involution() const { return *this != identity() && (*this) * (*this) == identity(); }

    friend LinearMap2 operator*(const LinearMap2& a, const LinearMap2& b)
    {
        return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
    }
    friend LinearMap2 operator+(const LinearMap2& a, const LinearMap2& b)
    {
        return {a(0, 0) + b(0, 0), a(0, 1) + b(0, 1), a(1, 0) + b(1, 0), a(1, 1) + b(1, 1)};
    }
    friend LinearMap2 operator*(const R& s, const LinearMap2& a) { return {s * a(0, 0), s * a(0, 1), s * a(1, 0), s * a(1, 1)}; }
    friend bool operator==(const LinearMap2& a, const LinearMap2& b) { return a.m_ == b.m_; }
    friend bool operator!=(const LinearMap2& a, const LinearMap2& b) { return !(a == b); }

private:
    std::array<R, 4> m_;
};

/// The reversing involution (u, v) -> (u, -v).
inline LinearMap2<Rational> standard_involution() { return LinearMap2<Rational>::diagonal(Rational(1), Rational(-1)); }

/// The swap (xi, eta) -> (eta, xi).
template <class R = Rational>
LinearMap2<R> swap_involution()
{
    return {R{}, ring_one<R>(), ring_one<R>(), R{}};
}

template <class To, class From>
LinearMap2<To> convert(const LinearMap2<From>& m)
{
    auto c = [](const From& x) {
        if constexpr (std::is_same_v<From, Rational> || std::is_same_v<To, From>) {
            return To(x);
        } else {
            return To(real_rational(x));
        }
    };
    return {c(m(0, 0)), c(m(0, 1)), c(m(1, 0)), c(m(1, 1))};
}

/// The linear form row . (u, v) as a series of the given order.
template <class R>
Series2<R> linear_form(int order, const R& a, const R& b)
{
    Series2<R> s(order);
    if (order >= 1) {
        s.set(1, 0, a);
        s.set(0, 1, b);
    }
    return s;
}

/// f composed with M: f(M (u, v)). Each homogeneous degree is preserved.
template <class R>
Series2<R> linear_subst(const Series2<R>& f, const LinearMap2<R>& m)
{
    int n = f.order();
    return compose_pair(f, linear_form(n, m(0, 0), m(0, 1)), linear_form(n, m(1, 0), m(1, 1)));
}

template <class R>
SeriesPair<R> linear_subst(const SeriesPair<R>& f, const LinearMap2<R>& m)
{
    int n = std::min(f.first.order(), f.second.order());
    auto r = compose_many<R>({f.first, f.second}, linear_form(n, m(0, 0), m(0, 1)), linear_form(n, m(1, 0), m(1, 1)));
    return {std::move(r[0]), std::move(r[1])};
}

/// M applied to a vector of series: (m11 a + m12 b, m21 a + m22 b).
template <class R>
SeriesPair<R> apply_linear(const LinearMap2<R>& m, const SeriesPair<R>& s)
{
    int n = std::min(s.first.order(), s.second.order());
    Series2<R> a(n);
    Series2<R> b(n);
    axpy(a, m(0, 0), s.first);
    axpy(a, m(0, 1), s.second);
    axpy(b, m(1, 0), s.first);
    axpy(b, m(1, 1), s.second);
    return {std::move(a), std::move(b)};
}

} // namespace revham
