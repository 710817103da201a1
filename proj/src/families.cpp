#include "padicx/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace padicx {

namespace {

double log_mpz(const Int& n) {
    signed long exp;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(exp) * std::log(2.0);
}

double mu_of(long v, unsigned long p, const Int& abs_ab) {
    return 2.0 * static_cast<double>(v) * std::log(static_cast<double>(p)) /
           log_mpz(abs_ab);
}

Int pow_p(unsigned long p, std::uint64_t e) {
    Int out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, e);
    return out;
}

}  // namespace

std::string to_string(family_tag t) {
    switch (t) {
        case family_tag::tm_main: return "tm-main";
        case family_tag::tm_generalized: return "tm-generalized";
        case family_tag::fib_r: return "fib-r";
        case family_tag::fib_x: return "fib-x";
    }
    return "?";
}

family_pair tm_family_pair(unsigned k, unsigned long p) {
    if (k < 1) throw std::invalid_argument("tm_family_pair: k >= 1");
    auto tmw = digit_sequence::thue_morse();
    const std::uint64_t M = 3ull << (k + 1);
    const Int pM = pow_p(p, M);
    const Int b = 1 + pow_p(p, 1ull << k);
    Int CM = truncated_integer(tmw, M, p);

    Int rho;
    mpz_fdiv_r(rho.get_mpz_t(), Int(b * CM).get_mpz_t(), pM.get_mpz_t());
    if (2 * rho > pM) rho -= pM;

    const Int height = 2 * pow_p(p, (3ull << k) + 1);
    if (abs(rho) > height)
        throw std::runtime_error("tm_family_pair: centered residue outside the height window");

    // balanced-digit structure: a = sum_{j < 3*2^k} (t_j + t_{j-2^k}) p^j
    Int recon = 0, pw = 1;
    for (std::uint64_t i = 0; i < (3ull << k); ++i) {
        int d = tm_digit(i) + (i >= (1ull << k) ? tm_digit(i - (1ull << k)) : 0);
        recon += d * pw;
        pw *= static_cast<long>(p);
    }
    if (recon != rho)
        throw std::runtime_error("tm_family_pair: balanced digit structure mismatch");

    family_pair out;
    out.tag = family_tag::tm_main;
    out.index = k;
    out.a = rho;
    out.b = b;
    valuation v = linear_form_valuation(out.a, out.b, tmw, p,
                                        std::min<std::uint64_t>(16 * M, valuation_guard()));
    if (!v.exact)
        throw std::runtime_error("tm_family_pair: valuation not decided within guard");
    out.v = v.value;
    Int ab = abs(out.a * out.b);
    out.mu_sample = mu_of(out.v, p, ab);
    out.height_ok = abs(out.a) <= height && out.b <= pow_p(p, (1ull << k) + 1);
    // |b xi - a|_p <= 4 p^3 |ab|^{-3/2}  <=>  |ab|^3 <= 16 p^{6 + 2v}
    out.bound_ok = ab * ab * ab <= 16 * pow_p(p, 6 + 2 * static_cast<std::uint64_t>(out.v));
    return out;
}

std::vector<zero_run_row> tm_zero_run_scan(unsigned k, unsigned j_max,
                                           unsigned long p) {
    if (k < 1) throw std::invalid_argument("tm_zero_run_scan: k >= 1");
    auto tmw = digit_sequence::thue_morse();
    const Int b = 1 + pow_p(p, 1ull << k);
    const std::uint64_t half = 1ull << (k - 1);

    std::vector<zero_run_row> rows;
    auto digit = [&](std::uint64_t i) {
        return tm_digit(i) + (i >= (1ull << k) ? tm_digit(i - (1ull << k)) : 0);
    };
    for (unsigned j = 0; j <= j_max; ++j) {
        zero_run_row row;
        row.j = j;
        row.run_start = half * (6 + 16ull * j);
        row.run_length = half * 6;
        row.v_predicted = static_cast<long>(half * (12 + 16ull * j));
        row.zeros_ok = true;
        for (std::uint64_t i = row.run_start; i < row.run_start + row.run_length; ++i)
            if (digit(i) != 0) {
                row.zeros_ok = false;
                break;
            }
        Int a = 0, pw = 1;
        for (std::uint64_t i = 0; i < row.run_start; ++i) {
            a += digit(i) * pw;
            pw *= static_cast<long>(p);
        }
        valuation v = linear_form_valuation(
            a, b, tmw, p,
            std::min<std::uint64_t>(8 * (row.run_start + row.run_length + 64),
                                    valuation_guard()));
        if (!v.exact)
            throw std::runtime_error("tm_zero_run_scan: valuation not decided");
        row.v = v.value;
        row.mu_sample = mu_of(row.v, p, abs(a * b));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::pair<family_pair, family_pair> fib_family_pairs(unsigned n, unsigned long p) {
    if (n < 4) throw std::invalid_argument("fib_family_pairs: n >= 4");
    auto fw = digit_sequence::fibonacci_word();
    fibonacci_numbers F;
    const std::uint64_t Fn = F.get_ui(n), Fn1 = F.get_ui(n + 1), Fn2 = F.get_ui(n + 2);
    const Int y = pow_p(p, Fn) - 1;
    const Int CFn = truncated_integer(fw, Fn, p);
    const Int CFn1 = truncated_integer(fw, Fn1, p);

    family_pair fr;
    fr.tag = family_tag::fib_r;
    fr.index = n;
    fr.a = -CFn;
    fr.b = y;
    valuation vr = linear_form_valuation(fr.a, fr.b, fw, p,
                                         std::min<std::uint64_t>(8 * Fn2 + 64, valuation_guard()));
    if (!vr.exact) throw std::runtime_error("fib_family_pairs: r-valuation undecided");
    fr.v = vr.value;
    fr.mu_sample = mu_of(fr.v, p, abs(fr.a * fr.b));
    fr.height_ok = abs(fr.a) >= pow_p(p, Fn > 2 ? Fn - 2 : 0) &&
                   abs(fr.a) <= pow_p(p, Fn + 2);
    fr.bound_ok = std::labs(fr.v - static_cast<long>(Fn2)) <= 2;

    family_pair fx;
    fx.tag = family_tag::fib_x;
    fx.index = n;
    fx.a = y * CFn1 - pow_p(p, Fn1) * CFn;
    fx.b = y;
    valuation vx = linear_form_valuation(fx.a, fx.b, fw, p,
                                         std::min<std::uint64_t>(8 * Fn2 + 64, valuation_guard()));
    if (!vx.exact) throw std::runtime_error("fib_family_pairs: x-valuation undecided");
    fx.v = vx.value;
    fx.mu_sample = mu_of(fx.v, p, abs(fx.a * fx.b));
    fx.height_ok = abs(fx.a) >= pow_p(p, Fn2 > 2 ? Fn2 - 2 : 0) &&
                   abs(fx.a) <= pow_p(p, Fn2 + 2);
    fx.bound_ok = std::labs(fx.v - 2 * static_cast<long>(Fn2)) <= 2;
    return {fr, fx};
}

fib_w_result fib_w_pq_records(unsigned n, unsigned long p) {
    if (n < 5) throw std::invalid_argument("fib_w_pq_records: n >= 5");
    auto fw = digit_sequence::fibonacci_word();
    fibonacci_numbers F;
    const std::uint64_t m1 = F.get_ui(n + 2) - 2;
    const std::uint64_t m2 = 2 * F.get_ui(n + 2) - 2;
    const Int y = pow_p(p, F.get_ui(n)) - 1;

    fib_w_result out;
    auto largest = [&](std::uint64_t m) {
        full_records fr = expand_records(prefix_rational(fw, m, p), m, p);
        if (fr.recs.empty()) throw std::runtime_error("fib_w_pq_records: empty expansion");
        std::size_t bi = 0;
        for (std::size_t i = 1; i < fr.recs.size(); ++i)
            if (fr.recs[i].r > fr.recs[bi].r) bi = i;
        return fr.recs[bi];
    };
    out.rec1 = largest(m1);
    out.rec2 = largest(m2);
    const std::uint64_t Fm1 = F.get_ui(n - 1), Fp1 = F.get_ui(n + 1);
    out.size_ok1 = out.rec1.r >= pow_p(p, Fm1 > 2 ? Fm1 - 2 : 0) &&
                   out.rec1.r <= pow_p(p, Fm1 + 2);
    out.size_ok2 = out.rec2.r >= pow_p(p, Fp1 > 2 ? Fp1 - 2 : 0) &&
                   out.rec2.r <= pow_p(p, Fp1 + 2);
    out.den_divides1 = out.rec1.conv_den != 0 && y % out.rec1.conv_den == 0;
    out.den_divides2 = out.rec2.conv_den != 0 && y % out.rec2.conv_den == 0;
    out.eta2 = out.rec2.eta;
    const double g = (1.0 + std::sqrt(5.0)) / 2.0;
    out.bound_4g1 = 1.0 / (4.0 * g + 1.0);
    out.bound_g3g21 = g / (3.0 * g * g + 1.0);
    return out;
}

mahler_quality mahler_product_quality(unsigned long b, unsigned l) {
    if (l > 14) throw std::invalid_argument("mahler_product_quality: l <= 14");
    mahler_quality out;
    Rat x = lacunary_product(b, l);
    out.cf = cf_expand(x);
    out.max_pq = 0;
    for (const Int& a : out.cf.pqs)
        if (a > out.max_pq) out.max_pq = a;

    const double logb = std::log(static_cast<double>(b));
    auto conv = convergents(out.cf);
    out.n_convergents = conv.size();
    double bestK = 0.0;
    for (std::size_t j = 0; j + 1 < conv.size(); ++j) {
        const Int& q = conv[j].second;
        if (q < 3) continue;
        Rat diff = abs(x - Rat(conv[j].first, conv[j].second));
        if (diff == 0) continue;
        // 1/(q^2 |x - p/q|), in logs
        const double quality = -(log_mpz(diff.get_num()) - log_mpz(diff.get_den())) -
                               2.0 * log_mpz(q);
        const double lq = log_mpz(q);
        const double denom = logb * std::sqrt(lq * std::log(lq));
        if (denom > 0) bestK = std::max(bestK, quality / denom);
    }
    out.fitted_K = bestK;
    return out;
}

}  // namespace padicx
