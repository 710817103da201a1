#pragma once

#include <cstdint>
#include <gmpxx.h>

#include "padicx/words.hpp"

namespace padicx {

using Int = mpz_class;
using Rat = mpq_class;

/**
 * p-adic valuation of a rational or of a linear form b*xi - a.
 * exact=false means only ">= value" is known (truncation-limited bound);
 * infinite is set only for the zero element.
 */
struct valuation {
    long value = 0;
    bool exact = true;
    bool infinite = false;
};

bool is_prime(unsigned long p);

// Hard stop for valuation searches: PADIC_CF_GUARD when set, else 10^6
// digit positions (effectively "compute until decided" at desk scale).
std::uint64_t valuation_guard();

// v_p(n) for nonzero n.
long int_valuation(const Int& n, unsigned long p);

// C_m = c_0 + c_1 b + ... + c_{m-1} b^{m-1}, exact.
Int truncated_integer(const digit_sequence& digits, std::uint64_t m,
                      unsigned long base);

// x_m = c_0/b^m + c_1/b^{m-1} + ... + c_{m-1}/b = C_m / b^m, reduced.
Rat prefix_rational(const digit_sequence& digits, std::uint64_t m,
                    unsigned long base);

/**
 * Exact v_p(b*xi - a) where xi = sum c_k p^k, found by doubling truncation
 * lengths until v_p(b*C_N - a) < N. Returns exact=false with value=guard
 * when undecided within the guard window (a suspiciously good
 * approximation, not a failure). For finite digit sequences an exact hit
 * b*xi == a reports infinite=true.
 */
valuation linear_form_valuation(const Int& a, const Int& b,
                                const digit_sequence& digits,
                                unsigned long p, std::uint64_t guard);

// prod_{h=0}^{l} (1 - base^{-2^h}), exact.
Rat lacunary_product(unsigned long base, unsigned l);

}  // namespace padicx
