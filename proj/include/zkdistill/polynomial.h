#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace zkd {

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending powers with no trailing zeros. The zero polynomial has
/// no coefficients and degree -1.
class IntPoly {
   public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coefficients);
    IntPoly(long constant);  // NOLINT(google-explicit-constructor)

    static IntPoly monomial(const mpz_class &c, size_t power);
    /// (a + b*eps)^e, expanded with binomial coefficients.
    static IntPoly binomial_power(long a, long b, size_t e);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<mpz_class> &coefficients() const { return coeffs_; }
    /// Coefficient of eps^i, zero beyond the degree.
    mpz_class operator[](size_t i) const;
    const mpz_class &leading() const { return coeffs_.back(); }

    IntPoly &operator+=(const IntPoly &rhs);
    IntPoly &operator-=(const IntPoly &rhs);
    IntPoly &operator*=(const mpz_class &scalar);
    IntPoly operator+(const IntPoly &rhs) const;
    IntPoly operator-(const IntPoly &rhs) const;
    IntPoly operator*(const IntPoly &rhs) const;
    IntPoly operator*(const mpz_class &scalar) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly &rhs) const { return coeffs_ == rhs.coeffs_; }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    mpz_class content() const;
    /// Divides every coefficient exactly by `divisor`.
    IntPoly exact_div(const mpz_class &divisor) const;

    mpq_class evaluate(const mpq_class &x) const;
    /// Evaluates exactly at the (dyadic) value of `x` and rounds.
    double evaluate(double x) const;

    std::string to_string() const;

   private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

/// Greatest common divisor over Z[eps]: primitive, positive leading
/// coefficient, times the gcd of the contents.
IntPoly gcd(const IntPoly &a, const IntPoly &b);

/// Exact quotient a / b. Throws std::domain_error if b does not divide a in
/// Z[eps].
IntPoly exact_quotient(const IntPoly &a, const IntPoly &b);

/// Ratio of integer polynomials in eps, always kept canonical: numerator and
/// denominator coprime, joint content 1, denominator's leading coefficient
/// positive, and 0 represented as 0/1.
class RationalFunction {
   public:
    RationalFunction() : den_(1) {}
    RationalFunction(IntPoly numerator);  // NOLINT(google-explicit-constructor)
    RationalFunction(IntPoly numerator, IntPoly denominator);
    /// Polynomial with rational coefficients, cleared to a common denominator.
    static RationalFunction from_rational_coefficients(const std::vector<mpq_class> &coefficients);

    const IntPoly &numerator() const { return num_; }
    const IntPoly &denominator() const { return den_; }

    RationalFunction operator+(const RationalFunction &rhs) const;
    RationalFunction operator-(const RationalFunction &rhs) const;
    RationalFunction operator*(const RationalFunction &rhs) const;
    RationalFunction operator/(const RationalFunction &rhs) const;
    bool operator==(const RationalFunction &rhs) const { return num_ == rhs.num_ && den_ == rhs.den_; }

    mpq_class evaluate(const mpq_class &x) const;
    double evaluate(double x) const;

    /// Taylor coefficients c_0..c_order about eps = 0. Requires den(0) != 0.
    std::vector<mpq_class> series(size_t order) const;

   private:
    void canonicalize();
    IntPoly num_;
    IntPoly den_;
};

std::ostream &operator<<(std::ostream &out, const IntPoly &p);
std::ostream &operator<<(std::ostream &out, const RationalFunction &f);

}  // namespace zkd
