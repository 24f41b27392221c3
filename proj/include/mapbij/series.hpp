#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace mapbij {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Truncated formal power series with exact rational coefficients.
// A series of order N stores coefficients of x^0 .. x^(N-1); all arithmetic
// truncates to the smaller order of the operands.
class RationalSeries {
public:
    RationalSeries() = default;
    explicit RationalSeries(int order) : coef_(order) {}
    RationalSeries(std::vector<Rational> coef) : coef_(std::move(coef)) {}

    static RationalSeries constant(const Rational& c, int order);
    static RationalSeries monomial(const Rational& c, int k, int order);
    // The identity series x.
    static RationalSeries x(int order);

    int order() const { return static_cast<int>(coef_.size()); }
    const Rational& coeff(int k) const;
    void set_coeff(int k, const Rational& c);
    const std::vector<Rational>& coeffs() const { return coef_; }

    RationalSeries truncated(int order) const;

    RationalSeries operator-() const;
    RationalSeries operator+(const RationalSeries& o) const;
    RationalSeries operator-(const RationalSeries& o) const;
    RationalSeries operator*(const RationalSeries& o) const;
    // Requires o.coeff(0) != 0.
    RationalSeries operator/(const RationalSeries& o) const;
    RationalSeries operator*(const Rational& c) const;
    RationalSeries operator+(const Rational& c) const;
    RationalSeries operator-(const Rational& c) const;

    bool operator==(const RationalSeries& o) const;

    // Integer power; negative exponents require an invertible constant term.
    RationalSeries pow(long long n) const;
    // Square root with sqrt(1) = 1; requires coeff(0) == 1.
    RationalSeries sqrt() const;
    // Composition f(g); requires g.coeff(0) == 0.
    RationalSeries compose(const RationalSeries& g) const;
    // Compositional inverse g with f(g(x)) = x; requires coeff(0) == 0 and
    // coeff(1) != 0.
    RationalSeries reversion() const;

    RationalSeries derivative() const;
    // x * d/dx, order preserved.
    RationalSeries x_derivative() const;
    // Termwise antiderivative with constant term 0, order preserved (the
    // coefficient of x^(order-1) of the result comes from x^(order-2) input).
    RationalSeries antiderivative() const;

    bool is_zero() const;
    std::string to_string(const std::string& var = "x") const;

private:
    std::vector<Rational> coef_;
};

RationalSeries operator*(const Rational& c, const RationalSeries& s);

} // namespace mapbij
