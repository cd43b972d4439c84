#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace ctlink
{

/// Rational number with 64-bit numerator and positive denominator, always in
/// lowest terms. Intermediate products use 128-bit integers; a result that
/// does not fit throws std::overflow_error.
class Rational
{
  public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    int sign() const { return (num_ > 0) - (num_ < 0); }
    bool is_zero() const { return num_ == 0; }

    // "p/q" or "p"
    std::string str() const;
    static Rational parse(const std::string& text);

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Element a + b*sqrt(2) of the field Q(sqrt 2), with exact sign and ordering.
class QSqrt2
{
  public:
    constexpr QSqrt2() = default;
    QSqrt2(Rational a, Rational b = Rational(0)) : a_(a), b_(b) {}
    QSqrt2(std::int64_t a) : a_(a) {}

    static QSqrt2 sqrt2() { return QSqrt2(Rational(0), Rational(1)); }

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt2_part() const { return b_; }

    double to_double() const;
    int sign() const;
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    std::string str() const;

    QSqrt2 conjugate() const { return {a_, -b_}; }
    // a^2 - 2 b^2, the field norm
    Rational norm() const { return a_ * a_ - Rational(2) * b_ * b_; }

    QSqrt2 operator-() const { return {-a_, -b_}; }
    friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y);
    friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y);

    friend bool operator==(const QSqrt2&, const QSqrt2&) = default;
    friend std::strong_ordering operator<=>(const QSqrt2& x, const QSqrt2& y)
    {
        return (x - y).sign() <=> 0;
    }

  private:
    Rational a_;
    Rational b_;
};

/// A real scalar that remembers an exact Q(sqrt 2) value when one is known.
/// Arithmetic stays exact while both operands are exact and degrades to
/// floating point otherwise.
class Scalar
{
  public:
    Scalar() : value_(0.0), exact_(QSqrt2()) {}
    Scalar(double v) : value_(v) {}
    Scalar(QSqrt2 e) : value_(e.to_double()), exact_(e) {}
    Scalar(Rational r) : Scalar(QSqrt2(r)) {}
    Scalar(int v) : Scalar(QSqrt2(v)) {}

    double value() const { return value_; }
    const std::optional<QSqrt2>& exact() const { return exact_; }
    bool is_exact() const { return exact_.has_value(); }

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);

  private:
    double value_;
    std::optional<QSqrt2> exact_;
};

/// Three-way comparison of two scalars. Exact when both are exact; otherwise
/// values within rel_tol * max(1, |x|, |y|) compare equal.
int compare(const Scalar& x, const Scalar& y, double rel_tol);

} // namespace ctlink
