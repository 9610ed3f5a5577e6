#pragma once

// Coefficient rings used by the series engine:
//   Rational - arbitrary precision rational (GMP), always canonical
//   Complex  - Gaussian extension a + b i over Rational
//   Surd     - real quadratic extension a + b sqrt(d) over Rational
//   double   - floating point, used only for numerical verification

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include "revham/error.hpp"

namespace revham {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws Error on bad
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

class Complex {
public:
    Complex() = default;
    Complex(Rational re) : re_(std::move(re)) {}
    Complex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(long n) : re_(n) {}

    static Complex i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    Complex conj() const { return {re_, -im_}; }

    Complex& operator+=(const Complex& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

private:
    Rational re_{0};
    Rational im_{0};
};

inline bool is_zero(const Complex& z) { return is_zero(z.re()) && is_zero(z.im()); }

/// "re" when the imaginary part vanishes, otherwise "re+imi" / "re-imi".
std::string to_string(const Complex& z);

/// Element a + b*sqrt(d) of Q(sqrt d), d a positive non-square integer.
/// Values with b == 0 carry d == 1 and combine with any radicand.
class Surd {
public:
    Surd() = default;
    Surd(Rational a) : a_(std::move(a)) {}
    Surd(long n) : a_(n) {}
    Surd(Rational a, Rational b, Integer d);

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    const Integer& radicand() const { return d_; }
    bool is_rational() const { return is_zero(b_); }

    /// Sign of the real number represented, computed exactly.
    int sign() const;
    double to_double() const;

    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    Surd& operator/=(const Surd& o);

    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
    friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
    friend Surd operator-(const Surd& a)
    {
        Surd r = a;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }
    friend bool operator==(const Surd& a, const Surd& b)
    {
        return a.a_ == b.a_ && a.b_ == b.b_ && (a.is_rational() || a.d_ == b.d_);
    }
    friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

private:
    const Integer& common_radicand(const Surd& o) const;
    void normalize();

    Rational a_{0};
    Rational b_{0};
    Integer d_{1};
};

inline bool is_zero(const Surd& s) { return is_zero(s.rational_part()) && is_zero(s.surd_part()); }
inline double to_double(const Surd& s) { return s.to_double(); }

/// "a", "b*sqrt(d)" or "a+b*sqrt(d)".
std::string to_string(const Surd& s);
std::string to_string(double x);

/// Exact square root of a nonnegative rational, as a surd.
Surd surd_sqrt(const Rational& q);

/// Writes n = r^2 * d with d having no square factor below the trial bound
/// and d not a perfect square. Requires n > 0.
std::pair<Integer, Integer> split_square(const Integer& n);

/// Rational value of an exact number, throwing if it has an irrational or
/// imaginary component.
Rational real_rational(const Rational& q);
Rational real_rational(const Complex& z);
Rational real_rational(const Surd& s);

/// Embeds a rational into any coefficient ring.
template <class R>
R from_rational(const Rational& q)
{
    if constexpr (std::is_same_v<R, double>) {
        return q.get_d();
    } else {
        return R(q);
    }
}

template <class R>
R ring_one()
{
    return from_rational<R>(Rational(1));
}

/// acc += a * b without a temporary on the GMP path.
inline void fma_acc(Rational& acc, const Rational& a, const Rational& b)
{
    thread_local Rational tmp;
    mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
}

template <class R>
void fma_acc(R& acc, const R& a, const R& b)
{
    acc += a * b;
}

} // namespace revham
