#include "mapbij/series.hpp"

#include <sstream>
#include <stdexcept>

namespace mapbij {

RationalSeries RationalSeries::constant(const Rational& c, int order) {
    RationalSeries s(order);
    if (order > 0) s.coef_[0] = c;
    return s;
}

RationalSeries RationalSeries::monomial(const Rational& c, int k, int order) {
    RationalSeries s(order);
    if (k < order) s.coef_[k] = c;
    return s;
}

RationalSeries RationalSeries::x(int order) {
    return monomial(1, 1, order);
}

const Rational& RationalSeries::coeff(int k) const {
    static const Rational zero = 0;
    if (k < 0 || k >= order()) return zero;
    return coef_[k];
}

void RationalSeries::set_coeff(int k, const Rational& c) {
    if (k < 0 || k >= order()) throw std::out_of_range("series coefficient index");
    coef_[k] = c;
}

RationalSeries RationalSeries::truncated(int order) const {
    std::vector<Rational> c(coef_.begin(), coef_.begin() + std::min<size_t>(order, coef_.size()));
    c.resize(order);
    return RationalSeries(std::move(c));
}

RationalSeries RationalSeries::operator-() const {
    RationalSeries r(order());
    for (int k = 0; k < order(); k++) r.coef_[k] = -coef_[k];
    return r;
}

RationalSeries RationalSeries::operator+(const RationalSeries& o) const {
    int n = std::min(order(), o.order());
    RationalSeries r(n);
    for (int k = 0; k < n; k++) r.coef_[k] = coef_[k] + o.coef_[k];
    return r;
}

RationalSeries RationalSeries::operator-(const RationalSeries& o) const {
    int n = std::min(order(), o.order());
    RationalSeries r(n);
    for (int k = 0; k < n; k++) r.coef_[k] = coef_[k] - o.coef_[k];
    return r;
}

RationalSeries RationalSeries::operator*(const RationalSeries& o) const {
    int n = std::min(order(), o.order());
    RationalSeries r(n);
    for (int i = 0; i < n; i++) {
        if (coef_[i] == 0) continue;
        for (int j = 0; i + j < n; j++) {
            if (o.coef_[j] == 0) continue;
            r.coef_[i + j] += coef_[i] * o.coef_[j];
        }
    }
    return r;
}

RationalSeries RationalSeries::operator/(const RationalSeries& o) const {
    int n = std::min(order(), o.order());
    if (n == 0) return RationalSeries(0);
    if (o.coef_[0] == 0) throw std::domain_error("series division by series with zero constant term");
    RationalSeries r(n);
    for (int k = 0; k < n; k++) {
        Rational acc = coef_[k];
        for (int j = 0; j < k; j++) acc -= r.coef_[j] * o.coef_[k - j];
        r.coef_[k] = acc / o.coef_[0];
    }
    return r;
}

RationalSeries RationalSeries::operator*(const Rational& c) const {
    RationalSeries r(order());
    for (int k = 0; k < order(); k++) r.coef_[k] = coef_[k] * c;
    return r;
}

RationalSeries RationalSeries::operator+(const Rational& c) const {
    RationalSeries r = *this;
    if (r.order() > 0) r.coef_[0] += c;
    return r;
}

RationalSeries RationalSeries::operator-(const Rational& c) const {
    return *this + (-c);
}

bool RationalSeries::operator==(const RationalSeries& o) const {
    int n = std::min(order(), o.order());
    for (int k = 0; k < n; k++)
        if (coef_[k] != o.coef_[k]) return false;
    return true;
}

RationalSeries RationalSeries::pow(long long n) const {
    if (n < 0) {
        RationalSeries inv = constant(1, order()) / *this;
        return inv.pow(-n);
    }
    RationalSeries r = constant(1, order());
    RationalSeries base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

RationalSeries RationalSeries::sqrt() const {
    int n = order();
    if (n == 0) return RationalSeries(0);
    if (coef_[0] != 1) throw std::domain_error("series sqrt requires constant term 1");
    RationalSeries r(n);
    r.coef_[0] = 1;
    for (int k = 1; k < n; k++) {
        Rational acc = coef_[k];
        for (int j = 1; j < k; j++) acc -= r.coef_[j] * r.coef_[k - j];
        r.coef_[k] = acc / 2;
    }
    return r;
}

RationalSeries RationalSeries::compose(const RationalSeries& g) const {
    int n = std::min(order(), g.order());
    if (n == 0) return RationalSeries(0);
    if (g.coeff(0) != 0) throw std::domain_error("series composition requires g(0) = 0");
    RationalSeries gt = g.truncated(n);
    RationalSeries r = constant(0, n);
    for (int k = n - 1; k >= 0; k--) {
        r = r * gt;
        r.coef_[0] += coef_[k];
    }
    return r;
}

RationalSeries RationalSeries::reversion() const {
    int n = order();
    if (n < 2) throw std::domain_error("series reversion needs order >= 2");
    if (coef_[0] != 0) throw std::domain_error("series reversion requires f(0) = 0");
    if (coef_[1] == 0) throw std::domain_error("series reversion requires f'(0) != 0");
    RationalSeries g(n);
    g.coef_[1] = Rational(1) / coef_[1];
    for (int k = 2; k < n; k++) {
        // With g known through x^(k-1), [x^k] f(g) is linear in the unknown
        // [x^k] g with slope f'(0).
        Rational err = compose(g).coeff(k);
        g.coef_[k] = -err / coef_[1];
    }
    return g;
}

RationalSeries RationalSeries::derivative() const {
    int n = order();
    if (n == 0) return RationalSeries(0);
    RationalSeries r(n - 1);
    for (int k = 1; k < n; k++) r.coef_[k - 1] = coef_[k] * k;
    return r;
}

RationalSeries RationalSeries::x_derivative() const {
    RationalSeries r(order());
    for (int k = 0; k < order(); k++) r.coef_[k] = coef_[k] * k;
    return r;
}

RationalSeries RationalSeries::antiderivative() const {
    RationalSeries r(order());
    for (int k = 1; k < order(); k++) r.coef_[k] = coef_[k - 1] / k;
    return r;
}

bool RationalSeries::is_zero() const {
    for (const Rational& c : coef_)
        if (c != 0) return false;
    return true;
}

std::string RationalSeries::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < order(); k++) {
        if (coef_[k] == 0) continue;
        if (!first) os << " + ";
        os << coef_[k];
        if (k >= 1) os << "*" << var;
        if (k >= 2) os << "^" << k;
        first = false;
    }
    if (first) os << "0";
    os << " + O(" << var << "^" << order() << ")";
    return os.str();
}

RationalSeries operator*(const Rational& c, const RationalSeries& s) {
    return s * c;
}

} // namespace mapbij
