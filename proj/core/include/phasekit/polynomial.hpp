#pragma once

#include "phasekit/types.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace phasekit {

/// Dense real polynomial in ascending powers of s. The zero polynomial has an
/// empty coefficient list; otherwise the leading coefficient is nonzero.
class Polynomial {
   public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) { trim(); }
    explicit Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
        trim();
    }

    static Polynomial one() { return Polynomial{1.0}; }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
    const std::vector<double>& coefficients() const { return coeffs_; }
    double coefficient(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0;
    }

    Complex eval(Complex s) const;
    double max_abs_coefficient() const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(double c) const;

    Polynomial monic() const;

    /// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                    const Polynomial& b);

    /// Monic approximate GCD via the Euclidean algorithm with coefficient
    /// truncation; returns 1 when no nontrivial common factor survives.
    static Polynomial gcd(const Polynomial& a, const Polynomial& b, double tol = 1e-9);

    /// Least common multiple through gcd; falls back to the plain product when
    /// the gcd does not divide both inputs to working accuracy.
    static Polynomial lcm(const Polynomial& a, const Polynomial& b);

    /// True when the remainder of a/b is negligible relative to a's scale.
    static bool divides(const Polynomial& b, const Polynomial& a, double tol = 1e-9);

    bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

   private:
    void trim();
    std::vector<double> coeffs_;
};

}  // namespace phasekit
