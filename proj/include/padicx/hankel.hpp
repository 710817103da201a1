#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicx/cf.hpp"
#include "padicx/polynomial.hpp"

namespace padicx {

/**
 * Finite coefficient list c_0, c_1, ... of a power series, zero-extended
 * beyond the stored length.
 */
struct coeff_series {
    std::string id;
    std::vector<Rat> coeffs;
    Rat at(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : Rat(0); }
};

coeff_series series_from_poly(const int_polynomial& p, std::string id);

/**
 * gtilde_0(z) = 1 + z - z^2 and
 * gtilde_k(z) = (1-z)(1-z^2)...(1-z^{2^{k-1}}) gtilde_0(z^{2^k}).
 * Both this product form and the reversed sign-adjusted Thue-Morse prefix
 * (-1)^{k+1} (t_{3*2^k-1} + ... + t_0 z^{3*2^k-1}) are computed and
 * compared; a mismatch throws std::logic_error.
 */
int_polynomial gtilde(int k);

// T_k(X) = prod_{j<k} (1 - X^{2^j}); coefficients are t_0..t_{2^k-1}.
int_polynomial tk_poly(int k);

// Determinant of the k x k matrix (c_{i+j}), fraction-free Bareiss after
// clearing denominators.
Rat hankel_det(const coeff_series& f, unsigned k);

struct hankel_table {
    std::string series_id;
    std::map<unsigned, Rat> entries;
};
hankel_table hankel_range(const coeff_series& f, unsigned k_lo, unsigned k_hi);

/**
 * Pade pair for [u/v]_f: integer polynomials A, B (cleared from the exact
 * rational solution by a common denominator, content removed) with
 * deg A <= u, deg B <= v, B != 0 and ord(B f - A) >= u+v+1. order is the
 * attained vanishing order (-1 when B f - A == 0 identically).
 */
struct pade_pair {
    int_polynomial A, B;
    unsigned u = 0, v = 0;
    long order = 0;
    bool rank_deficient = false;  // solution space dimension > 1
    bool b0_nonzero = false;
    Rat err_coeff;                // (B f - A)[order] / B(0), when defined
};

// NotExists (nullopt) only if the linear system forces B = 0; with exact
// elimination this does not happen for finite series.
std::optional<pade_pair> pade(const coeff_series& f, unsigned u, unsigned v);

struct ladder_row {
    unsigned j = 0, m = 0;
    Int p_int, q_int;           // p_{j,m}, q_{j,m}
    Rat err;                    // |gtilde_{K+m}(1/p) - p_{j,m}/q_{j,m}|
    double err_norm = 0.0;      // err * p^{2^{m+1} j}
    double q_norm = 0.0;        // q_{j,m} / p^{2^m j}
    double err_q2 = 0.0;        // err * q_{j,m}^2
};

/**
 * The approximation ladder p_{j,m}/q_{j,m} built from the Pade pairs of
 * gtilde_K: P_{j,m}(z) = prod_{h<m}(1-z^{2^h}) P_{j,0}(z^{2^m}),
 * Q_{j,m}(z) = Q_{j,0}(z^{2^m}). Refuses j whose Hankel determinant
 * vanishes (std::domain_error).
 */
std::vector<ladder_row> pade_ladder(int K, unsigned m_max, unsigned long p,
                                    unsigned j_lo, unsigned j_hi);

struct boundqp_result {
    int k = 0;
    unsigned long p = 0;
    Int excluded_r;              // the large quotient at the known denominator
    std::size_t excluded_j = 0;
    Int second_r;                // largest remaining quotient
    double second_norm = 0.0;    // second_r / p^{2^{k-1}}
    double second_scan_ratio = 0.0;  // log_p(second_r) / (3*2^k / 24)
};

// CF of z_{3*2^k} (z_{3*2^k+1} for p = 2) with the known large quotient
// removed; reports the largest remaining quotient.
boundqp_result second_largest_pq_bound(int k, unsigned long p);

}  // namespace padicx
