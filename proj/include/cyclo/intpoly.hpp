#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

/// Dense polynomial with arbitrary-precision integer coefficients.
/// Invariant: the coefficient vector is empty (zero polynomial) or its
/// last entry is nonzero. All ring operations are exact.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(const mpz_class& coeff, unsigned exponent);

    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpz_class& coeff(unsigned i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    IntPoly derivative() const;

    /// Exact quotient, or nullopt when the division leaves a remainder or
    /// a coefficient step is not divisible by the divisor's leading term.
    std::optional<IntPoly> divide_exact(const IntPoly& divisor) const;

    std::string str() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

std::ostream& operator<<(std::ostream& os, const IntPoly& p);

}  // namespace cyclo
