#include "padicx/hankel.hpp"

#include <cmath>
#include <stdexcept>

namespace padicx {

coeff_series series_from_poly(const int_polynomial& p, std::string id) {
    coeff_series f;
    f.id = std::move(id);
    f.coeffs.reserve(p.coeffs().size());
    for (const Int& c : p.coeffs()) f.coeffs.emplace_back(c);
    return f;
}

int_polynomial gtilde(int k) {
    if (k < 0) throw std::invalid_argument("gtilde: k >= 0");
    int_polynomial g0(std::vector<Int>{1, 1, -1});  // 1 + z - z^2
    int_polynomial prod(std::vector<Int>{1});
    for (int j = 0; j < k; ++j) {
        std::vector<Int> f(std::size_t(1) << j, Int(0));
        f.resize((std::size_t(1) << j) + 1);
        f[0] = 1;
        f[std::size_t(1) << j] = -1;
        prod = prod * int_polynomial(std::move(f));
    }
    int_polynomial g = prod * g0.compose_power(std::size_t(1) << k);

    // cross-check against the reversed Thue-Morse prefix
    const std::uint64_t n = 3ull << k;
    const int sign = (k % 2 == 0) ? -1 : 1;  // (-1)^{k+1}
    std::vector<Int> tmv(n);
    for (std::uint64_t i = 0; i < n; ++i) tmv[i] = sign * tm_digit(n - 1 - i);
    if (!(g == int_polynomial(std::move(tmv))))
        throw std::logic_error("gtilde: product and word constructions disagree");
    return g;
}

int_polynomial tk_poly(int k) {
    if (k < 0) throw std::invalid_argument("tk_poly: k >= 0");
    int_polynomial prod(std::vector<Int>{1});
    for (int j = 0; j < k; ++j) {
        std::vector<Int> f((std::size_t(1) << j) + 1, Int(0));
        f[0] = 1;
        f[std::size_t(1) << j] = -1;
        prod = prod * int_polynomial(std::move(f));
    }
    return prod;
}

Rat hankel_det(const coeff_series& f, unsigned k) {
    if (k < 1) throw std::invalid_argument("hankel_det: k >= 1");
    // clear denominators of c_0..c_{2k-2}
    Int den = 1;
    for (unsigned i = 0; i + 1 <= 2 * k - 1; ++i) {
        Rat c = f.at(i);
        Int d = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<std::vector<Int>> M(k, std::vector<Int>(k));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) {
            Rat c = f.at(i + j) * Rat(den);
            c.canonicalize();
            M[i][j] = c.get_num();  // den divides out exactly
        }

    // Bareiss fraction-free elimination with row pivoting
    int sign = 1;
    Int prev = 1;
    for (unsigned col = 0; col < k; ++col) {
        unsigned piv = col;
        while (piv < k && M[piv][col] == 0) ++piv;
        if (piv == k) return Rat(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            sign = -sign;
        }
        for (unsigned r = col + 1; r < k; ++r) {
            for (unsigned c2 = col + 1; c2 < k; ++c2) {
                Int t = M[col][col] * M[r][c2] - M[r][col] * M[col][c2];
                mpz_divexact(M[r][c2].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[r][col] = 0;
        }
        prev = M[col][col];
    }
    Int dk;
    mpz_pow_ui(dk.get_mpz_t(), den.get_mpz_t(), k);
    Rat out(sign * M[k - 1][k - 1], dk);
    out.canonicalize();
    return out;
}

hankel_table hankel_range(const coeff_series& f, unsigned k_lo, unsigned k_hi) {
    hankel_table t;
    t.series_id = f.id;
    for (unsigned k = k_lo; k <= k_hi; ++k) t.entries[k] = hankel_det(f, k);
    return t;
}

boundqp_result second_largest_pq_bound(int k, unsigned long p) {
    if (k < 2) throw std::invalid_argument("second_largest_pq_bound: k >= 2");
    auto tmw = digit_sequence::thue_morse();
    const std::uint64_t m = (3ull << k) + (p == 2 ? 1 : 0);
    full_records fr = expand_records(prefix_rational(tmw, m, p), m, p);

    Int half;
    mpz_ui_pow_ui(half.get_mpz_t(), p, 1ull << (k - 1));
    Int den_sig = half + 1;
    if (p != 2) den_sig /= 2;

    boundqp_result out;
    out.k = k;
    out.p = p;
    std::size_t hit = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < fr.recs.size(); ++i)
        if (fr.recs[i].conv_den == den_sig &&
            (hit == static_cast<std::size_t>(-1) || fr.recs[i].r > fr.recs[hit].r))
            hit = i;
    if (hit == static_cast<std::size_t>(-1))
        throw std::runtime_error("second_largest_pq_bound: expected denominator not found");
    out.excluded_r = fr.recs[hit].r;
    out.excluded_j = fr.recs[hit].j;
    out.second_r = 0;
    for (std::size_t i = 0; i < fr.recs.size(); ++i)
        if (i != hit && fr.recs[i].r > out.second_r) out.second_r = fr.recs[i].r;

    signed long e2;
    const double d2 = mpz_get_d_2exp(&e2, out.second_r.get_mpz_t());
    const double log_second = std::log(d2) + e2 * std::log(2.0);
    const double logp = std::log(static_cast<double>(p));
    out.second_norm = std::exp(log_second - static_cast<double>(1ull << (k - 1)) * logp);
    out.second_scan_ratio = (log_second / logp) / (3.0 * static_cast<double>(1ull << k) / 24.0);
    return out;
}

}  // namespace padicx
