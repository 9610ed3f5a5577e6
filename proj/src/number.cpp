#include "revham/number.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace revham {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw Error("malformed rational '" + std::string(text) + "'");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) {
        throw Error("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Complex& Complex::operator*=(const Complex& o)
{
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Complex& Complex::operator/=(const Complex& o)
{
    Rational den = o.re_ * o.re_ + o.im_ * o.im_;
    if (is_zero(den)) {
        throw Error("division by zero");
    }
    Rational re = (re_ * o.re_ + im_ * o.im_) / den;
    Rational im = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string to_string(const Complex& z)
{
    if (is_zero(z.im())) {
        return to_string(z.re());
    }
    std::string s = to_string(z.re());
    if (sgn(z.im()) >= 0) {
        s += '+';
    }
    return s + to_string(z.im()) + "i";
}

Surd::Surd(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d))
{
    if (d_ <= 0) {
        throw Error("surd radicand must be positive");
    }
    if (d_ != 1 && mpz_perfect_square_p(d_.get_mpz_t())) {
        Integer r;
        mpz_sqrt(r.get_mpz_t(), d_.get_mpz_t());
        a_ += b_ * r;
        b_ = 0;
    }
    if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
    normalize();
}

void Surd::normalize()
{
    if (is_zero(b_)) {
        d_ = 1;
    }
}

const Integer& Surd::common_radicand(const Surd& o) const
{
    if (is_rational()) {
        return o.d_;
    }
    if (!o.is_rational() && d_ != o.d_) {
        throw RingMismatch("surds with radicands " + d_.get_str() + " and " + o.d_.get_str());
    }
    return d_;
}

Surd& Surd::operator+=(const Surd& o)
{
    Integer d = common_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = std::move(d);
    normalize();
    return *this;
}

Surd& Surd::operator-=(const Surd& o)
{
    Integer d = common_radicand(o);
    a_ -= o.a_;
    b_ -= o.b_;
    d_ = std::move(d);
    normalize();
    return *this;
}

Surd& Surd::operator*=(const Surd& o)
{
    Integer d = common_radicand(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = std::move(d);
    normalize();
    return *this;
}

Surd& Surd::operator/=(const Surd& o)
{
    if (revham::is_zero(o)) {
        throw Error("division by zero");
    }
    Integer d = common_radicand(o);
    Rational den = o.a_ * o.a_ - o.b_ * o.b_ * Rational(d);
    Rational a = (a_ * o.a_ - b_ * o.b_ * Rational(d)) / den;
    Rational b = (b_ * o.a_ - a_ * o.b_) / den;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = std::move(d);
    normalize();
    return *this;
}

int Surd::sign() const
{
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) {
        return sa;
    }
    if (sa == 0 || sa == sb) {
        return sb;
    }
    // opposite signs: compare a^2 with b^2 d
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(d_);
    int c = cmp(lhs, rhs);
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

double Surd::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

std::string to_string(const Surd& s)
{
    if (s.is_rational()) {
        return to_string(s.rational_part());
    }
    std::string root = "sqrt(" + s.radicand().get_str() + ")";
    std::string b;
    if (s.surd_part() == 1) {
        b = root;
    } else if (s.surd_part() == -1) {
        b = "-" + root;
    } else {
        b = to_string(s.surd_part()) + "*" + root;
    }
    if (is_zero(s.rational_part())) {
        return b;
    }
    std::string a = to_string(s.rational_part());
    return b.front() == '-' ? a + b : a + "+" + b;
}

std::string to_string(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::pair<Integer, Integer> split_square(const Integer& n)
{
    if (n <= 0) {
        throw Error("split_square needs a positive integer");
    }
    Integer rest = n;
    Integer root = 1;
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
        return {root, Integer(1)};
    }
    constexpr unsigned long trial_limit = 100000;
    for (unsigned long p = 2; p <= trial_limit; ++p) {
        Integer pp = Integer(p) * p;
        if (pp > rest) {
            break;
        }
        while (mpz_divisible_p(rest.get_mpz_t(), pp.get_mpz_t())) {
            rest /= pp;
            root *= p;
        }
    }
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
        Integer r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        return {root * r, Integer(1)};
    }
    return {root, rest};
}

Surd surd_sqrt(const Rational& q)
{
    if (sgn(q) < 0) {
        throw Error("square root of a negative rational");
    }
    if (sgn(q) == 0) {
        return Surd(Rational(0));
    }
    // sqrt(p/q) = sqrt(p q) / q
    Integer pq = q.get_num() * q.get_den();
    auto [root, d] = split_square(pq);
    Rational coef(root, q.get_den());
    coef.canonicalize();
    if (d == 1) {
        return Surd(coef);
    }
    return Surd(Rational(0), coef, d);
}

Rational real_rational(const Rational& q) { return q; }

Rational real_rational(const Complex& z)
{
    if (!is_zero(z.im())) {
        throw Error("value " + to_string(z) + " is not real");
    }
    return z.re();
}

Rational real_rational(const Surd& s)
{
    if (!s.is_rational()) {
        throw Error("value " + to_string(s) + " is irrational");
    }
    return s.rational_part();
}

} // namespace revham
