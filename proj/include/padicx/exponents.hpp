#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "padicx/cf.hpp"

namespace padicx {

/**
 * One approximation pair: coprime integers (a, b), b > 0, with the exact
 * valuation v = v_p(b xi - a) >= 1. The scale of a sample is its valuation
 * (|b xi - a|_p = p^{-v}); mu_sample = 2 v ln p / ln|ab|.
 */
struct approx_sample {
    Int a, b;
    long v = 0;
    std::uint64_t m = 0;       // truncation index that produced it (v >= m)
    Int abs_ab;
    double mu_sample = 0.0;
    // raw emission data (before removing the common p-power): the next
    // partial quotient drives the bracket p^m/(3 b|a|) <= r <= p^m/(b|a|)
    Int raw_a, raw_b, next_pq;
};

struct scan_row {
    std::uint64_t m = 0;
    pq_record best;            // largest partial quotient (ties: smallest j)
    bool degenerate = false;   // <= 1 partial quotient; eta reported as 0
    std::size_t n_pqs = 0;
};

struct exponent_report {
    unsigned long p = 0;
    std::uint64_t m_max = 0;
    std::uint64_t window_lo = 0, window_hi = 0;  // tail window on m (and on v)
    double eta_sup = 0.0, eta_inf = 1.0;
    double mu_times_est = 0.0, mu_hat_est = 0.0;
    bool has_mu = false;
    std::vector<scan_row> rows;
    std::vector<approx_sample> samples;      // canonical, deduplicated
    std::vector<approx_sample> best_pairs;   // strictly improving valuations
    std::vector<approx_sample> filtered;     // Q p^{-v} strictly decreasing
};

/**
 * Expands x_m for m in [m_lo, m_hi] (one shared incremental C_m pass) and
 * hands each full_records to the visitor in increasing m order. jobs > 1
 * splits the range into chunks computed in parallel.
 */
void scan_prefix_quotients(
    const digit_sequence& digits, unsigned long p, std::uint64_t m_lo,
    std::uint64_t m_hi,
    const std::function<void(const full_records&)>& visit, int jobs = 1);

/**
 * Per-m largest partial quotient and eta_m, with eta_sup / eta_inf over the
 * tail window m >= m_max - floor(window_frac * m_max). Samples from the
 * top per_m_top records per m feed the mu estimates (0 = all records).
 */
exponent_report pq_scan(const digit_sequence& digits, unsigned long p,
                        std::uint64_t m_max, double window_frac = 0.5,
                        std::size_t per_m_top = 3, int jobs = 1);

/**
 * Mahler correspondence: every convergent T/b of C_m/p^m with b < p^m
 * yields the pair (b C_m - p^m T, b). Pairs are reduced to coprime form,
 * deduplicated, and carry exact valuations.
 */
std::vector<approx_sample> convergent_driven_samples(
    const digit_sequence& digits, unsigned long p, std::uint64_t m_lo,
    std::uint64_t m_hi, std::size_t per_m_top = 0, int jobs = 1);

struct best_pair_result {
    std::vector<approx_sample> best_pairs;
    std::optional<std::pair<Int, Int>> exact_hit;  // b xi == a met during search
};

/**
 * Small-instance oracle: for growing Q <= Q_max, the coprime pair
 * minimizing |b xi - a|_p over 0 < sqrt|ab| <= Q. Pairs of equal height
 * |ab| are resolved before the improvement sweep; ties break by smallest
 * b, then smallest |a|, then positive a.
 */
best_pair_result brute_force_best_pairs(const digit_sequence& digits,
                                        unsigned long p, unsigned Q_max);

// Grouped strict-improvement sweep / filtered extraction (i_1 = first pair;
// i_{k+1} = first j with Q_j p^{-v_j} < Q_{i_k} p^{-v_{i_k}}, exact compare).
std::vector<approx_sample> extract_best_pairs(std::vector<approx_sample> samples);
std::vector<approx_sample> filter_best_pairs(const std::vector<approx_sample>& best,
                                             unsigned long p);

// Windowed estimates: samples with v >= window_lo and |ab| > p^10.
void fill_estimates(exponent_report& rep);

struct duality_diag {
    double mu_times_est = 0, mu_from_eta_sup = 0, diff_times = 0;
    double mu_hat_est = 0, mu_from_eta_inf = 0, diff_hat = 0;
};
duality_diag duality_check(const exponent_report& rep);

struct bound_scan_result {
    double max_ratio = 0.0;    // max r / p^{exponent m}
    pq_record witness;
    bool found = false;
};
bound_scan_result global_pq_bound_scan(const digit_sequence& digits,
                                       unsigned long p, std::uint64_t m_max,
                                       double exponent, int jobs = 1);

// (eta_inf, 1/(2 eta_sup + 1)) for the report window; diagnostic only.
std::pair<double, double> hetabound_diagnostic(const exponent_report& rep);

struct search_stats {
    std::uint64_t nodes = 0;
    unsigned deepest = 0;
    std::vector<int> deepest_prefix;
    bool reached_depth_limit = false;
};

/**
 * Backtracking over digit prefixes c_0..c_{m-1} keeping every partial
 * quotient of every x_1..x_m at most cap. Digits range over [alpha_lo,
 * alpha_hi] (defaults 0..base-1); c_0 must not be divisible by the base
 * (the all-zero tail is a rational degenerate).
 */
search_stats bounded_pq_search(unsigned base, const Int& cap,
                               unsigned depth_limit, int alpha_lo = 0,
                               int alpha_hi = -1);

struct legendre_check_result {
    bool pass = true;
    std::uint64_t n_checked = 0, n_skipped = 0;
    std::string first_failure;
};

/**
 * For all coprime pairs with 0 < |a|, b <= bound and 2|ab| < p^v (the
 * correspondence hypothesis): with m = v and T = (b C_m - a)/p^m, verifies
 * that T/b is a convergent of C_m/p^m and that the following partial
 * quotient satisfies p^m/(3 b|a|) <= r <= p^m/(b|a|), exactly.
 */
legendre_check_result legendre_correspondence_check(const digit_sequence& digits,
                                                    unsigned long p,
                                                    unsigned bound);

}  // namespace padicx
