#pragma once

#include <string>
#include <vector>

#include "padicx/cf.hpp"

namespace padicx {

enum class family_tag { tm_main, tm_generalized, fib_r, fib_x };
std::string to_string(family_tag t);

struct family_pair {
    family_tag tag = family_tag::tm_main;
    unsigned index = 0;        // k for Thue-Morse, n for Fibonacci
    int j = -1;                // generalized-family parameter, else -1
    Int a, b;
    long v = 0;                // exact valuation v_p(b xi - a)
    double mu_sample = 0.0;
    bool height_ok = false;
    bool bound_ok = false;     // family-specific quality inequality
};

/**
 * The pair b = 1 + p^{2^k}, a = unique centered residue of b xi_t modulo
 * p^{3 * 2^{k+1}} with |a| <= 2 p^{3*2^k + 1}. Verifies the balanced-digit
 * structure of a (digits t_j + t_{j-2^k}, degree <= 3*2^k - 1) and the
 * exact bound |b xi - a|_p <= 4 p^3 |ab|^{-3/2}; throws std::runtime_error
 * if either the residue window or the digit structure breaks.
 */
family_pair tm_family_pair(unsigned k, unsigned long p);

struct zero_run_row {
    unsigned j = 0;
    std::uint64_t run_start = 0, run_length = 0;
    bool zeros_ok = false;     // digits vanish along the predicted run
    long v = 0;                // exact valuation of the truncated pair
    long v_predicted = 0;      // 2^{k-1} (12 + 16 j)
    double mu_sample = 0.0;
};

// Zero-coefficient runs in the balanced expansion of (1 + p^{2^k}) xi_t,
// one row per j = 0..j_max; sample exponents approach (3+4j)/(2+4j) * 2/2.
std::vector<zero_run_row> tm_zero_run_scan(unsigned k, unsigned j_max,
                                           unsigned long p);

/**
 * Fibonacci pairs against y_n = p^{F_n} - 1: r_n = -C_{F_n} (valuation
 * F_{n+2} - 2) and x_n = (p^{F_n}-1) C_{F_{n+1}} - p^{F_{n+1}} C_{F_n}
 * (valuation 2 F_{n+2} - 2). The caller-facing pair (a, b) is
 * (r_n or x_n, y_n); valuations are recomputed independently.
 */
std::pair<family_pair, family_pair> fib_family_pairs(unsigned n, unsigned long p);

struct fib_w_result {
    pq_record rec1, rec2;       // largest records at m = F_{n+2}-2, 2F_{n+2}-2
    bool size_ok1 = false;      // r within factor p^2 of p^{F_{n-1}}
    bool size_ok2 = false;      // r within factor p^2 of p^{F_{n+1}}
    bool den_divides1 = false;  // conv_den divides p^{F_n} - 1
    bool den_divides2 = false;
    double eta2 = 0.0;          // eta at the second record
    double bound_4g1 = 0.0;     // 1/(4 gamma + 1)
    double bound_g3g21 = 0.0;   // gamma/(3 gamma^2 + 1)
};
fib_w_result fib_w_pq_records(unsigned n, unsigned long p);

struct mahler_quality {
    cf_expansion cf;
    Int max_pq;
    double fitted_K = 0.0;      // max log(1/(q^2 |x - p/q|)) / (log b sqrt(log q loglog q))
    std::uint64_t n_convergents = 0;
};

// CF quality certificate for prod_{h<=l} (1 - b^{-2^h}).
mahler_quality mahler_product_quality(unsigned long b, unsigned l);

}  // namespace padicx
