#include "padicx/arith.hpp"

#include <cstdlib>
#include <stdexcept>

namespace padicx {

bool is_prime(unsigned long p) {
    mpz_class z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

std::uint64_t valuation_guard() {
    if (const char* env = std::getenv("PADIC_CF_GUARD")) {
        char* end = nullptr;
        const unsigned long long g = std::strtoull(env, &end, 10);
        if (!end || *end != '\0' || g < 1)
            throw std::invalid_argument("PADIC_CF_GUARD must be a positive integer");
        return g;
    }
    return 1000000;
}

long int_valuation(const Int& n, unsigned long p) {
    if (n == 0) throw std::invalid_argument("int_valuation: zero has no finite valuation");
    Int rest, pz(p);
    return static_cast<long>(
        mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

Int truncated_integer(const digit_sequence& digits, std::uint64_t m,
                      unsigned long base) {
    if (m < 1) throw std::invalid_argument("truncated_integer: m >= 1");
    if (base < 2) throw std::invalid_argument("truncated_integer: base >= 2");
    const auto d = digits.prefix(m);
    Int c = 0;
    for (std::uint64_t k = m; k-- > 0;) {
        c *= base;
        c += d[k];
    }
    return c;
}

Rat prefix_rational(const digit_sequence& digits, std::uint64_t m,
                    unsigned long base) {
    Int c = truncated_integer(digits, m, base);
    Int bm;
    mpz_ui_pow_ui(bm.get_mpz_t(), base, m);
    Rat x(c, bm);
    x.canonicalize();
    return x;
}

valuation linear_form_valuation(const Int& a, const Int& b,
                                const digit_sequence& digits,
                                unsigned long p, std::uint64_t guard) {
    if (a == 0 && b == 0)
        throw std::invalid_argument("linear_form_valuation: (a,b) != (0,0)");
    if (guard < 1) throw std::invalid_argument("linear_form_valuation: guard >= 1");
    if (b == 0) return {int_valuation(a, p), true, false};

    // a finite digit list represents the rational C_size exactly
    const bool fin = digits.finite();
    const std::uint64_t hard_end = fin ? digits.size() : guard;

    Int c = 0, pw = 1, pz(p);
    std::uint64_t built = 0;
    std::uint64_t n = 64;
    for (;;) {
        if (n > guard) n = guard;
        if (fin && n > hard_end) n = hard_end;
        digits.ensure(n);
        for (std::uint64_t k = built; k < n; ++k) {
            c += digits.at0(k) * pw;
            pw *= pz;
        }
        built = n;
        const bool complete = fin && n == hard_end;
        Int d = b * c - a;
        if (d != 0) {
            long w = int_valuation(d, p);
            if (w < static_cast<long>(n) || complete) return {w, true, false};
        } else if (complete) {
            return {0, true, true};  // b*xi == a exactly
        }
        if (n == guard) return {static_cast<long>(guard), false, false};
        n *= 2;
    }
}

Rat lacunary_product(unsigned long base, unsigned l) {
    if (base < 2) throw std::invalid_argument("lacunary_product: base >= 2");
    Rat x(1);
    for (unsigned h = 0; h <= l; ++h) {
        Int d;
        mpz_ui_pow_ui(d.get_mpz_t(), base, 1ull << h);
        Rat f(d - 1, d);
        f.canonicalize();
        x *= f;
    }
    return x;
}

}  // namespace padicx
