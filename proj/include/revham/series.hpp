#pragma once

// Truncated power series in one and two variables over a coefficient ring.
//
// A Series2 of order N stores every coefficient c_{ij} with i + j <= N in a
// dense table ordered by total degree, and within one degree by descending
// power of the first variable (graded lexicographic order):
//   (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
// Coefficients beyond N are unknown, not zero; every operation truncates to
// the order it can certify.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "revham/number.hpp"

namespace revham {

enum class Axis { first, second };

inline std::size_t series2_size(int order) { return static_cast<std::size_t>(order + 1) * (order + 2) / 2; }

inline std::size_t degree_offset(int k) { return static_cast<std::size_t>(k) * (k + 1) / 2; }

inline std::size_t series2_index(int i, int j) { return degree_offset(i + j) + static_cast<std::size_t>(j); }

template <class R>
class Series2 {
public:
    using coeff_type = R;

    Series2() : Series2(0) {}

    explicit Series2(int order) : order_(order)
    {
        if (order < 0) {
            throw std::invalid_argument("series order must be nonnegative");
        }
        coeffs_.assign(series2_size(order), R{});
    }

    static Series2 constant(int order, const R& c)
    {
        Series2 s(order);
        s.coeffs_[0] = c;
        return s;
    }

    /// c * u^i v^j, or the zero series when i + j exceeds the order.
    static Series2 monomial(int order, int i, int j, const R& c)
    {
        Series2 s(order);
        if (i + j <= order) {
            s.set(i, j, c);
        }
        return s;
    }

    static Series2 variable(int order, Axis axis)
    {
        return axis == Axis::first ? monomial(order, 1, 0, ring_one<R>()) : monomial(order, 0, 1, ring_one<R>());
    }

    int order() const { return order_; }

    /// Coefficient of u^i v^j; zero for exponents beyond the order.
    const R& coeff(int i, int j) const
    {
        static const R zero{};
        if (i < 0 || j < 0 || i + j > order_) {
            return zero;
        }
        return coeffs_[series2_index(i, j)];
    }

    void set(int i, int j, R c)
    {
        if (i < 0 || j < 0 || i + j > order_) {
            throw std::out_of_range("exponent beyond series order");
        }
        coeffs_[series2_index(i, j)] = std::move(c);
    }

    R& at(int i, int j)
    {
        if (i < 0 || j < 0 || i + j > order_) {
            throw std::out_of_range("exponent beyond series order");
        }
        return coeffs_[series2_index(i, j)];
    }

    /// Raw graded-lex table.
    const std::vector<R>& table() const { return coeffs_; }
    std::vector<R>& table() { return coeffs_; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return revham::is_zero(c); });
    }

    /// Lowest total degree with a nonzero coefficient, order + 1 for zero.
    int valuation() const
    {
        for (int k = 0; k <= order_; ++k) {
            for (int j = 0; j <= k; ++j) {
                if (!revham::is_zero(coeffs_[degree_offset(k) + j])) {
                    return k;
                }
            }
        }
        return order_ + 1;
    }

    /// Visits nonzero terms in graded-lex order as f(i, j, c).
    template <class F>
    void for_each_term(F&& f) const
    {
        for (int k = 0; k <= order_; ++k) {
            for (int j = 0; j <= k; ++j) {
                const R& c = coeffs_[degree_offset(k) + j];
                if (!revham::is_zero(c)) {
                    f(k - j, j, c);
                }
            }
        }
    }

    /// Truncates, or pads with zeros when the caller knows the series is an
    /// exact polynomial of degree at most the current order.
    Series2 resized(int order) const
    {
        Series2 r(order);
        std::size_t n = std::min(coeffs_.size(), r.coeffs_.size());
        std::copy_n(coeffs_.begin(), n, r.coeffs_.begin());
        return r;
    }

    Series2 operator-() const
    {
        Series2 r(order_);
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            r.coeffs_[n] = -coeffs_[n];
        }
        return r;
    }

    friend bool operator==(const Series2& a, const Series2& b) { return a.order_ == b.order_ && a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Series2& a, const Series2& b) { return !(a == b); }

private:
    int order_;
    std::vector<R> coeffs_;
};

template <class R>
class Series1 {
public:
    using coeff_type = R;

    Series1() : Series1(0) {}

    explicit Series1(int order) : order_(order)
    {
        if (order < 0) {
            throw std::invalid_argument("series order must be nonnegative");
        }
        coeffs_.assign(static_cast<std::size_t>(order) + 1, R{});
    }

    int order() const { return order_; }

    const R& coeff(int m) const
    {
        static const R zero{};
        if (m < 0 || m > order_) {
            return zero;
        }
        return coeffs_[static_cast<std::size_t>(m)];
    }

    void set(int m, R c)
    {
        if (m < 0 || m > order_) {
            throw std::out_of_range("exponent beyond series order");
        }
        coeffs_[static_cast<std::size_t>(m)] = std::move(c);
    }

    const std::vector<R>& table() const { return coeffs_; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return revham::is_zero(c); });
    }

    template <class F>
    void for_each_term(F&& f) const
    {
        for (int m = 0; m <= order_; ++m) {
            if (!revham::is_zero(coeffs_[static_cast<std::size_t>(m)])) {
                f(m, coeffs_[static_cast<std::size_t>(m)]);
            }
        }
    }

    friend bool operator==(const Series1& a, const Series1& b) { return a.order_ == b.order_ && a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Series1& a, const Series1& b) { return !(a == b); }

private:
    int order_;
    std::vector<R> coeffs_;
};

template <class R>
using SeriesPair = std::pair<Series2<R>, Series2<R>>;

// ---------------------------------------------------------------------------
// Ring conversion

template <class To, class From>
Series2<To> convert(const Series2<From>& s)
{
    Series2<To> r(s.order());
    s.for_each_term([&](int i, int j, const From& c) {
        if constexpr (std::is_same_v<To, double>) {
            r.set(i, j, to_double(c));
        } else if constexpr (std::is_same_v<From, Rational> || std::is_same_v<To, From>) {
            r.set(i, j, To(c));
        } else {
            r.set(i, j, To(real_rational(c)));
        }
    });
    return r;
}

template <class To, class From>
Series1<To> convert(const Series1<From>& s)
{
    Series1<To> r(s.order());
    s.for_each_term([&](int m, const From& c) {
        if constexpr (std::is_same_v<To, double>) {
            r.set(m, to_double(c));
        } else if constexpr (std::is_same_v<From, Rational> || std::is_same_v<To, From>) {
            r.set(m, To(c));
        } else {
            r.set(m, To(real_rational(c)));
        }
    });
    return r;
}

// ---------------------------------------------------------------------------
// Bivariate arithmetic

template <class R>
Series2<R> add(const Series2<R>& a, const Series2<R>& b)
{
    int n = std::min(a.order(), b.order());
    Series2<R> r(n);
    auto& t = r.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = a.table()[k] + b.table()[k];
    }
    return r;
}

template <class R>
Series2<R> sub(const Series2<R>& a, const Series2<R>& b)
{
    int n = std::min(a.order(), b.order());
    Series2<R> r(n);
    auto& t = r.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = a.table()[k] - b.table()[k];
    }
    return r;
}

template <class R>
Series2<R> scale(const Series2<R>& a, const R& c)
{
    Series2<R> r(a.order());
    if (revham::is_zero(c)) {
        return r;
    }
    auto& t = r.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!revham::is_zero(a.table()[k])) {
            t[k] = a.table()[k] * c;
        }
    }
    return r;
}

/// acc += c * a over the common range, in place.
template <class R>
void axpy(Series2<R>& acc, const R& c, const Series2<R>& a)
{
    if (revham::is_zero(c)) {
        return;
    }
    auto& t = acc.table();
    std::size_t n = std::min(t.size(), a.table().size());
    for (std::size_t k = 0; k < n; ++k) {
        if (!revham::is_zero(a.table()[k])) {
            fma_acc(t[k], c, a.table()[k]);
        }
    }
}

/// Cauchy product up to an explicit total degree. The caller is responsible
/// for the result being meaningful at that order.
template <class R>
Series2<R> mul_trunc(const Series2<R>& a, const Series2<R>& b, int order)
{
    Series2<R> r(order);
    auto& out = r.table();
    const auto& ta = a.table();
    const auto& tb = b.table();
    int va = a.valuation();
    int vb = b.valuation();
    int max_a = std::min(a.order(), order - vb);
    for (int da = va; da <= max_a; ++da) {
        int max_b = std::min(b.order(), order - da);
        std::size_t oa = degree_offset(da);
        for (int ja = 0; ja <= da; ++ja) {
            const R& ca = ta[oa + ja];
            if (revham::is_zero(ca)) {
                continue;
            }
            for (int db = vb; db <= max_b; ++db) {
                std::size_t ob = degree_offset(db);
                std::size_t orow = degree_offset(da + db) + ja;
                for (int jb = 0; jb <= db; ++jb) {
                    const R& cb = tb[ob + jb];
                    if (!revham::is_zero(cb)) {
                        fma_acc(out[orow + jb], ca, cb);
                    }
                }
            }
        }
    }
    return r;
}

/// Product truncated to the smaller of the two orders.
template <class R>
Series2<R> mul(const Series2<R>& a, const Series2<R>& b)
{
    return mul_trunc(a, b, std::min(a.order(), b.order()));
}

template <class R>
Series2<R> homogeneous_part(const Series2<R>& f, int k)
{
    if (k < 0 || k > f.order()) {
        throw std::out_of_range("degree " + std::to_string(k) + " outside series order " + std::to_string(f.order()));
    }
    Series2<R> r(f.order());
    for (int j = 0; j <= k; ++j) {
        r.set(k - j, j, f.coeff(k - j, j));
    }
    return r;
}

/// Exponent pairs (i, j) mapped to (j, i).
template <class R>
Series2<R> swap_vars(const Series2<R>& f)
{
    Series2<R> r(f.order());
    f.for_each_term([&](int i, int j, const R& c) { r.set(j, i, c); });
    return r;
}

/// Formal partial derivative; the order drops by one.
template <class R>
Series2<R> partial(const Series2<R>& f, Axis axis)
{
    Series2<R> r(std::max(f.order() - 1, 0));
    f.for_each_term([&](int i, int j, const R& c) {
        if (axis == Axis::first && i > 0 && i + j - 1 <= r.order()) {
            r.set(i - 1, j, c * from_rational<R>(Rational(i)));
        } else if (axis == Axis::second && j > 0 && i + j - 1 <= r.order()) {
            r.set(i, j - 1, c * from_rational<R>(Rational(j)));
        }
    });
    return r;
}

/// 1/f for a series with invertible constant term.
template <class R>
Series2<R> reciprocal(const Series2<R>& f)
{
    const R& c0 = f.coeff(0, 0);
    if (revham::is_zero(c0)) {
        throw std::domain_error("reciprocal of a series with zero constant term");
    }
    R inv0 = ring_one<R>() / c0;
    // 1/f = inv0 * sum_n e^n with e = 1 - f * inv0
    Series2<R> e = scale(f, R(-inv0));
    e.at(0, 0) = R{};
    Series2<R> acc = Series2<R>::constant(f.order(), ring_one<R>());
    for (int n = 1; n <= f.order(); ++n) {
        acc = mul_trunc(e, acc, f.order());
        acc.at(0, 0) += ring_one<R>();
    }
    return scale(acc, inv0);
}

/// Substitutes (g1, g2) into every series of fs. The substituted series must
/// have zero constant term; the result order is min(order fs, g1, g2).
template <class R>
std::vector<Series2<R>> compose_many(const std::vector<Series2<R>>& fs, const Series2<R>& g1, const Series2<R>& g2)
{
    if (!revham::is_zero(g1.coeff(0, 0)) || !revham::is_zero(g2.coeff(0, 0))) {
        throw std::invalid_argument("composition needs substituted series with zero constant term");
    }
    int n = std::min(g1.order(), g2.order());
    for (const auto& f : fs) {
        n = std::min(n, f.order());
    }
    // powers of the second argument
    std::vector<Series2<R>> pow2;
    pow2.reserve(static_cast<std::size_t>(n) + 1);
    pow2.push_back(Series2<R>::constant(n, ring_one<R>()));
    Series2<R> g2n = g2.resized(n);
    for (int b = 1; b <= n; ++b) {
        pow2.push_back(mul_trunc(pow2.back(), g2n, n));
    }
    Series2<R> g1n = g1.resized(n);

    std::vector<Series2<R>> out;
    out.reserve(fs.size());
    for (const auto& f : fs) {
        // Horner in the first argument: sum_i g1^i * (sum_b f_ib g2^b)
        Series2<R> acc(0);
        bool acc_zero = true;
        for (int i = n; i >= 0; --i) {
            int row_order = n - i;
            Series2<R> inner(row_order);
            for (int b = 0; b <= row_order; ++b) {
                axpy(inner, f.coeff(i, b), pow2[static_cast<std::size_t>(b)]);
            }
            if (!acc_zero) {
                Series2<R> shifted = mul_trunc(g1n, acc, row_order);
                auto& t = inner.table();
                for (std::size_t k = 0; k < t.size(); ++k) {
                    t[k] += shifted.table()[k];
                }
            }
            acc = std::move(inner);
            acc_zero = acc.is_zero();
        }
        out.push_back(std::move(acc));
    }
    return out;
}

/// f(g1, g2), truncated to the smallest order involved.
template <class R>
Series2<R> compose_pair(const Series2<R>& f, const Series2<R>& g1, const Series2<R>& g2)
{
    return std::move(compose_many<R>({f}, g1, g2).front());
}

template <class R>
Series2<R> compose_pair(const Series2<R>& f, const SeriesPair<R>& g)
{
    return compose_pair(f, g.first, g.second);
}

/// Composition of two maps of the plane, f after g.
template <class R>
SeriesPair<R> compose_map(const SeriesPair<R>& f, const SeriesPair<R>& g)
{
    auto r = compose_many<R>({f.first, f.second}, g.first, g.second);
    return {std::move(r[0]), std::move(r[1])};
}

/// Sum of the monomials evaluated at a point, in double precision.
template <class R>
double eval(const Series2<R>& f, double x, double y)
{
    double result = 0.0;
    for (int k = f.order(); k >= 0; --k) {
        // Horner inside each homogeneous block is not worth it at these sizes
        for (int j = 0; j <= k; ++j) {
            const R& c = f.coeff(k - j, j);
            if (!revham::is_zero(c)) {
                double term = to_double(c);
                for (int p = 0; p < k - j; ++p) {
                    term *= x;
                }
                for (int p = 0; p < j; ++p) {
                    term *= y;
                }
                result += term;
            }
        }
    }
    return result;
}

/// Inverse of a near-identity map (u + a(u,v), v + b(u,v)) with a, b of
/// valuation at least two, by fixed-point iteration; each pass fixes one more
/// degree.
template <class R>
SeriesPair<R> invert_near_identity(const SeriesPair<R>& h)
{
    int n = std::min(h.first.order(), h.second.order());
    auto u = Series2<R>::variable(n, Axis::first);
    auto v = Series2<R>::variable(n, Axis::second);
    for (int k = 0; k <= 1; ++k) {
        for (int j = 0; j <= k; ++j) {
            R expect_first = (k == 1 && j == 0) ? ring_one<R>() : R{};
            R expect_second = (k == 1 && j == 1) ? ring_one<R>() : R{};
            if (h.first.coeff(k - j, j) != expect_first || h.second.coeff(k - j, j) != expect_second) {
                throw std::invalid_argument("map is not tangent to the identity");
            }
        }
    }
    SeriesPair<R> tail{sub(h.first.resized(n), u), sub(h.second.resized(n), v)};
    SeriesPair<R> k{u, v};
    for (int pass = 2; pass <= n; ++pass) {
        auto t = compose_map(tail, k);
        k = {sub(u, t.first), sub(v, t.second)};
    }
    return k;
}

// ---------------------------------------------------------------------------
// Univariate

template <class R>
Series1<R> add(const Series1<R>& a, const Series1<R>& b)
{
    int n = std::min(a.order(), b.order());
    Series1<R> r(n);
    for (int m = 0; m <= n; ++m) {
        r.set(m, a.coeff(m) + b.coeff(m));
    }
    return r;
}

template <class R>
Series1<R> scale(const Series1<R>& a, const R& c)
{
    Series1<R> r(a.order());
    a.for_each_term([&](int m, const R& x) { r.set(m, x * c); });
    return r;
}

/// Term-wise antiderivative with zero constant; the order grows by one.
template <class R>
Series1<R> integrate1(const Series1<R>& g)
{
    Series1<R> r(g.order() + 1);
    g.for_each_term([&](int m, const R& c) { r.set(m + 1, c / from_rational<R>(Rational(m + 1))); });
    return r;
}

/// d/dt; the order drops by one.
template <class R>
Series1<R> derivative1(const Series1<R>& g)
{
    Series1<R> r(std::max(g.order() - 1, 0));
    g.for_each_term([&](int m, const R& c) {
        if (m > 0) {
            r.set(m - 1, c * from_rational<R>(Rational(m)));
        }
    });
    return r;
}

template <class R>
double eval(const Series1<R>& g, double t)
{
    double acc = 0.0;
    for (int m = g.order(); m >= 0; --m) {
        acc = acc * t + to_double(g.coeff(m));
    }
    return acc;
}

/// F(t(u, v)) truncated at the given bivariate order; t must vanish at the
/// origin.
template <class R>
Series2<R> substitute(const Series1<R>& f, const Series2<R>& t, int order)
{
    if (!revham::is_zero(t.coeff(0, 0))) {
        throw std::invalid_argument("substituted series must vanish at the origin");
    }
    Series2<R> tt = t.resized(std::min(t.order(), order));
    Series2<R> acc(order);
    for (int m = f.order(); m >= 0; --m) {
        acc = mul_trunc(tt, acc, order);
        acc.at(0, 0) += f.coeff(m);
    }
    return acc;
}

} // namespace revham
