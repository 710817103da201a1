#pragma once

#include <vector>

#include "padicx/arith.hpp"

namespace padicx {

/**
 * Dense integer polynomial, coefficients in ascending degree, trailing
 * zeros stripped (zero polynomial has empty coefficient list).
 */
class int_polynomial {
public:
    int_polynomial() = default;
    explicit int_polynomial(std::vector<Int> coeffs);
    static int_polynomial monomial(const Int& c, std::size_t deg);

    const std::vector<Int>& coeffs() const { return c_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }

    int_polynomial operator+(const int_polynomial& o) const;
    int_polynomial operator-(const int_polynomial& o) const;
    int_polynomial operator*(const int_polynomial& o) const;
    bool operator==(const int_polynomial& o) const { return c_ == o.c_; }

    // z -> z^s
    int_polynomial compose_power(std::size_t s) const;
    Rat eval(const Rat& x) const;
    // b^n * P(1/b), exact; requires n >= deg(P).
    Int eval_scaled_reciprocal(unsigned long b, std::uint64_t n) const;

private:
    std::vector<Int> c_;
    void normalize();
};

}  // namespace padicx
