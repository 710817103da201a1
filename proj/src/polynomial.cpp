#include "padicx/polynomial.hpp"

#include <stdexcept>

namespace padicx {

int_polynomial::int_polynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
    normalize();
}

void int_polynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int_polynomial int_polynomial::monomial(const Int& c, std::size_t deg) {
    if (c == 0) return {};
    std::vector<Int> v(deg + 1);
    v[deg] = c;
    return int_polynomial(std::move(v));
}

int_polynomial int_polynomial::operator+(const int_polynomial& o) const {
    std::vector<Int> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return int_polynomial(std::move(v));
}

int_polynomial int_polynomial::operator-(const int_polynomial& o) const {
    std::vector<Int> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
    return int_polynomial(std::move(v));
}

int_polynomial int_polynomial::operator*(const int_polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Int> v(c_.size() + o.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) v[i + j] += c_[i] * o.c_[j];
    }
    return int_polynomial(std::move(v));
}

int_polynomial int_polynomial::compose_power(std::size_t s) const {
    if (s == 0) throw std::invalid_argument("compose_power: s >= 1");
    if (is_zero()) return {};
    std::vector<Int> v((c_.size() - 1) * s + 1, Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * s] = c_[i];
    return int_polynomial(std::move(v));
}

Rat int_polynomial::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc *= x;
        acc += Rat(c_[i]);
    }
    acc.canonicalize();
    return acc;
}

Int int_polynomial::eval_scaled_reciprocal(unsigned long b, std::uint64_t n) const {
    if (degree() > static_cast<long>(n))
        throw std::invalid_argument("eval_scaled_reciprocal: n >= deg required");
    // sum c_i b^{n-i} by Horner from the constant term down
    Int acc = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        acc *= b;
        acc += c_[i];
    }
    Int pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), b, n - (c_.empty() ? 0 : c_.size() - 1));
    return acc * pw;
}

}  // namespace padicx
