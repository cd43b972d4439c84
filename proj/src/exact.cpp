#include "ctlink/exact.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ctlink
{

namespace
{

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0)
    {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::domain_error("Rational: zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den)
{
    if (den == 0)
        throw std::domain_error("Rational: zero denominator");
    if (den < 0)
    {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1)
    {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den))
        throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

std::string Rational::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text)
{
    auto slash = text.find('/');
    try
    {
        if (slash == std::string::npos)
            return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    catch (const std::logic_error&)
    {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

Rational Rational::operator-() const
{
    return from_wide(-static_cast<__int128>(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + (-b);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0)
        throw std::domain_error("Rational: division by zero");
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
}

double QSqrt2::to_double() const
{
    return a_.to_double() + b_.to_double() * std::sqrt(2.0);
}

int QSqrt2::sign() const
{
    int sa = a_.sign();
    int sb = b_.sign();
    if (sa >= 0 && sb >= 0)
        return sa + sb > 0 ? 1 : 0;
    if (sa <= 0 && sb <= 0)
        return -1;
    // opposite signs: compare a^2 with 2 b^2
    auto c = (a_ * a_) <=> (Rational(2) * b_ * b_);
    int mag = c > 0 ? 1 : (c < 0 ? -1 : 0);
    return sa > 0 ? mag : -mag;
}

std::string QSqrt2::str() const
{
    if (b_.is_zero())
        return a_.str();
    std::string s = a_.is_zero() ? "" : a_.str() + (b_.sign() > 0 ? "+" : "");
    return s + b_.str() + "*sqrt2";
}

QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y)
{
    return {x.a_ * y.a_ + Rational(2) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
}

QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y)
{
    Rational n = y.norm();
    if (n.is_zero())
        throw std::domain_error("QSqrt2: division by zero");
    QSqrt2 num = x * y.conjugate();
    return {num.a_ / n, num.b_ / n};
}

Scalar Scalar::operator-() const
{
    if (exact_)
        return Scalar(-*exact_);
    return Scalar(-value_);
}

namespace
{

template <class ExactOp, class FloatOp>
Scalar combine(const Scalar& x, const Scalar& y, ExactOp eop, FloatOp fop)
{
    if (x.is_exact() && y.is_exact())
    {
        try
        {
            return Scalar(eop(*x.exact(), *y.exact()));
        }
        catch (const std::overflow_error&)
        {
            // fall through to floating point
        }
    }
    return Scalar(fop(x.value(), y.value()));
}

} // namespace

Scalar operator+(const Scalar& x, const Scalar& y)
{
    return combine(x, y, [](auto a, auto b) { return a + b; }, [](double a, double b) { return a + b; });
}

Scalar operator-(const Scalar& x, const Scalar& y)
{
    return combine(x, y, [](auto a, auto b) { return a - b; }, [](double a, double b) { return a - b; });
}

Scalar operator*(const Scalar& x, const Scalar& y)
{
    return combine(x, y, [](auto a, auto b) { return a * b; }, [](double a, double b) { return a * b; });
}

Scalar operator/(const Scalar& x, const Scalar& y)
{
    return combine(x, y, [](auto a, auto b) { return a / b; }, [](double a, double b) { return a / b; });
}

int compare(const Scalar& x, const Scalar& y, double rel_tol)
{
    if (x.is_exact() && y.is_exact())
    {
        auto c = *x.exact() <=> *y.exact();
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    double scale = std::max({1.0, std::abs(x.value()), std::abs(y.value())});
    double diff = x.value() - y.value();
    if (std::abs(diff) <= rel_tol * scale)
        return 0;
    return diff < 0 ? -1 : 1;
}

} // namespace ctlink
