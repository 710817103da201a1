#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "padicx/arith.hpp"

namespace padicx {

/**
 * Canonical continued fraction of a rational: floor-based a0 plus positive
 * partial quotients a_1..a_l with a_l >= 2, except [a0;] for integers.
 */
struct cf_expansion {
    Int a0;
    std::vector<Int> pqs;
    std::size_t length() const { return pqs.size(); }
};

cf_expansion cf_expand(const Rat& x);
Rat cf_value(const cf_expansion& cf);
// Equivalent expansion terminating in 1 ([..., a_l - 1, 1]).
cf_expansion to_one_terminated(const cf_expansion& cf);

// Convergents (p_j, q_j) for j = 0..l, numerators including a0.
std::vector<std::pair<Int, Int>> convergents(const cf_expansion& cf);

enum class pq_class {
    maximal,            // case (i): both neighbours carry the quotient shrunk by p
    unclassified,       // eligible (r >= 2p) but not yet classified
    case_ii,            // shrinks into x_{m-1}, grows into x_{m+1}
    case_iii,           // grows into x_{m-1}, shrinks into x_{m+1}
    below_threshold,    // r < 2p, never classified
};
std::string to_string(pq_class c);

/**
 * One partial quotient a_j of one x_m. The associated convergent is
 * [0; a_1..a_{j-1}] in lowest terms (a0 excluded from eta accounting);
 * eta = ln(r) / (m ln p).
 */
struct pq_record {
    std::uint64_t m = 0;
    std::size_t j = 0;
    Int r;
    Int conv_num, conv_den;
    double eta = 0.0;
    pq_class cls = pq_class::unclassified;
};

/**
 * Full expansion of one x_m with per-record data. true_num[i] is the
 * numerator p_{j-1} of the associated convergent including a0 (needed for
 * propagation into neighbouring x_{m +- 1}).
 */
struct full_records {
    std::uint64_t m = 0;
    Rat x;
    cf_expansion cf;
    std::vector<pq_record> recs;
    std::vector<Int> true_num;
};

// Expansion + records of an explicit rational (eta computed against m, p).
full_records expand_records(const Rat& x, std::uint64_t m, unsigned long p);

// One record per partial quotient of x_m = prefix_rational(digits, m, p).
std::vector<pq_record> associated_records(const digit_sequence& digits,
                                          unsigned long p, std::uint64_t m);

struct propagation_evidence {
    pq_class cls = pq_class::unclassified;
    pq_record left, right;   // matched neighbour records
    Int left_den, right_den; // denominators of the propagated convergents
};

/**
 * Classifies record (m, j) of x_m by inspecting x_{m-1} and x_{m+1}.
 * Requires m >= 2. Records with r < 2p come back below_threshold.
 * Throws std::runtime_error if no case matches (that would falsify the
 * three-case analysis and is a test failure, not a recoverable error).
 */
propagation_evidence classify_propagation(const digit_sequence& digits,
                                          unsigned long p, std::uint64_t m,
                                          std::size_t j);

// Same classification against precomputed neighbour expansions.
propagation_evidence classify_record(const full_records& prev,
                                     const full_records& cur,
                                     const full_records& next,
                                     std::size_t j, unsigned long p,
                                     int c_m_minus_1, int c_m);

/**
 * Classifies every record with r >= 2p for m in [m_lo, m_hi], sharing
 * neighbour expansions across consecutive m.
 */
void propagation_scan(
    const digit_sequence& digits, unsigned long p, std::uint64_t m_lo,
    std::uint64_t m_hi,
    const std::function<void(const pq_record&, const propagation_evidence&)>& visit);

// Finite-scale forms of the interval bounds on eta_u for m <= u <= n.
double etabound_upper(std::uint64_t m, double eta_m, std::uint64_t n, double eta_n);
double etabound_lower(std::uint64_t m, double teta_m, std::uint64_t n, double teta_n);

}  // namespace padicx
