#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace birkhoff {

using BigInt = boost::multiprecision::cpp_int;

// Dense univariate polynomial with exact integer coefficients, stored in
// ascending powers of x. Trailing zeros are trimmed so the zero polynomial is
// the empty coefficient list.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<BigInt> coeffs);
    static Polynomial constant(const BigInt& c);
    static Polynomial monomial(const BigInt& c, std::size_t power);

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    BigInt coeff(std::size_t power) const;

    Polynomial derivative() const;
    long double eval(long double x) const;
    // Largest coefficient bit length; tracks blowup of the derivative recurrence.
    std::size_t max_bits() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const BigInt& s, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

// Exact quotient numerator/denominator of integer-coefficient polynomials.
// No GCD reduction is attempted; equality is by cross multiplication.
class RationalFunction {
public:
    RationalFunction() : num_(Polynomial::constant(0)), den_(Polynomial::constant(1)) {}
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    long double eval(long double x) const;
    // Quotient rule, (N'D - ND') / D^2.
    RationalFunction derivative() const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    // Same rational function (cross-multiplied), not merely same representation.
    bool equivalent(const RationalFunction& other) const;

private:
    Polynomial num_;
    Polynomial den_;
};

}  // namespace birkhoff
