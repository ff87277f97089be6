#include "phasekit/polynomial.hpp"

#include "phasekit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace phasekit {

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Complex Polynomial::eval(Complex s) const {
    Complex v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * s + *it;
    return v;
}

double Polynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<double> out(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) out[i] += rhs.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    return *this + rhs * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double c) const {
    std::vector<double> out = coeffs_;
    for (double& v : out) v *= c;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * (1.0 / leading());
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a,
                                                     const Polynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("Polynomial::divmod: division by zero");
    std::vector<double> rem = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<double> quot(a.degree() - db + 1, 0.0);
    for (int k = a.degree(); k >= db; --k) {
        const double f = rem[k] / b.coeffs_[db];
        quot[k - db] = f;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs_[j];
        rem[k] = 0.0;
    }
    rem.resize(db > 0 ? db : 0);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

bool Polynomial::divides(const Polynomial& b, const Polynomial& a, double tol) {
    if (b.is_zero()) return a.is_zero();
    const auto [q, r] = divmod(a, b);
    return r.max_abs_coefficient() <= tol * (1.0 + a.max_abs_coefficient());
}

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b, double tol) {
    Polynomial x = a.monic();
    Polynomial y = b.monic();
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    while (!y.is_zero() && y.degree() > 0) {
        auto [q, r] = divmod(x, y);
        // Drop remainder coefficients that are pure cancellation noise.
        std::vector<double> rc = r.coefficients();
        const double scale = x.max_abs_coefficient() + y.max_abs_coefficient();
        for (double& c : rc) {
            if (std::abs(c) <= tol * (1.0 + scale)) c = 0.0;
        }
        x = y;
        y = Polynomial(std::move(rc)).monic();
    }
    return y.is_zero() ? x : Polynomial::one();
}

Polynomial Polynomial::lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    const Polynomial g = gcd(a, b);
    if (g.degree() > 0 && divides(g, a) && divides(g, b)) {
        const Polynomial l = (divmod(a, g).first * b).monic();
        if (divides(a, l) && divides(b, l)) return l;
    }
    return (a * b).monic();
}

}  // namespace phasekit
