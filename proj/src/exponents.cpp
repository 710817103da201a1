#include "padicx/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace padicx {

namespace {

double log_mpz(const Int& n) {
    signed long exp;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(exp) * std::log(2.0);
}

struct mpz_pair_less {
    bool operator()(const std::pair<Int, Int>& x, const std::pair<Int, Int>& y) const {
        int c = cmp(x.first, y.first);
        if (c != 0) return c < 0;
        return cmp(x.second, y.second) < 0;
    }
};

}  // namespace

void scan_prefix_quotients(
    const digit_sequence& digits, unsigned long p, std::uint64_t m_lo,
    std::uint64_t m_hi,
    const std::function<void(const full_records&)>& visit, int jobs) {
    if (m_lo < 1) m_lo = 1;
    if (m_hi < m_lo) return;
    digits.ensure(m_hi);

    if (jobs <= 1) {
        Int c = 0, pw = 1, pz(p);
        for (std::uint64_t m = 1; m <= m_hi; ++m) {
            c += digits.at0(m - 1) * pw;
            pw *= pz;
            if (m < m_lo) continue;
            Rat x(c, pw);
            x.canonicalize();
            visit(expand_records(x, m, p));
        }
        return;
    }

    // waves of `jobs` chunks; results visited in m order, then freed
    const std::uint64_t chunk = 32;
    std::uint64_t next = m_lo;
    while (next <= m_hi) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
        for (int t = 0; t < jobs && next <= m_hi; ++t) {
            const std::uint64_t lo = next;
            const std::uint64_t hi = std::min(m_hi, lo + chunk - 1);
            ranges.emplace_back(lo, hi);
            next = hi + 1;
        }
        std::vector<std::vector<full_records>> buf(ranges.size());
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < ranges.size(); ++t) {
            threads.emplace_back([&, t] {
                const auto [lo, hi] = ranges[t];
                Int c = 0, pw = 1, pz(p);
                for (std::uint64_t k = 0; k < lo - 1; ++k) {
                    c += digits.at0(k) * pw;
                    pw *= pz;
                }
                for (std::uint64_t m = lo; m <= hi; ++m) {
                    c += digits.at0(m - 1) * pw;
                    pw *= pz;
                    Rat x(c, pw);
                    x.canonicalize();
                    buf[t].push_back(expand_records(x, m, p));
                }
            });
        }
        for (auto& th : threads) th.join();
        for (auto& part : buf)
            for (auto& fr : part) visit(fr);
    }
}

namespace {

// C_m recovered from the reduced x_m (den(x_m) divides p^m).
Int numerator_at_scale(const Rat& x, const Int& pm) {
    return x.get_num() * (pm / x.get_den());
}

// Emits samples for the chosen records of one x_m into the dedup map. CN is
// a shared long truncation for exact valuations; samples whose valuation
// reaches the truncation fall back to the guarded form.
void emit_samples(const full_records& fr, const Int& Cm, const Int& pm,
                  unsigned long p, std::size_t per_m_top, const Int& CN,
                  std::uint64_t N, const digit_sequence& digits,
                  std::map<std::pair<Int, Int>, approx_sample, mpz_pair_less>& out) {
    std::vector<std::size_t> idx(fr.recs.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (per_m_top != 0 && per_m_top < idx.size()) {
        std::partial_sort(idx.begin(), idx.begin() + per_m_top, idx.end(),
                          [&](std::size_t x, std::size_t y) {
                              int c = cmp(fr.recs[x].r, fr.recs[y].r);
                              if (c != 0) return c > 0;
                              return x < y;
                          });
        idx.resize(per_m_top);
    }
    const double logp = std::log(static_cast<double>(p));
    for (std::size_t i : idx) {
        const pq_record& rec = fr.recs[i];
        const Int& b = rec.conv_den;
        if (b >= pm) continue;
        const Int& T = fr.true_num[i];
        Int a = b * Cm - pm * T;
        if (a == 0) continue;
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        approx_sample s;
        s.raw_a = a;
        s.raw_b = b;
        s.next_pq = rec.r;
        s.a = a / g;
        s.b = b / g;
        s.m = fr.m;
        long v;
        Int d = s.b * CN - s.a;
        if (d != 0 && (v = int_valuation(d, p)) < static_cast<long>(N)) {
            // decided by the shared truncation
        } else {
            valuation vv = linear_form_valuation(
                s.a, s.b, digits, p, std::min<std::uint64_t>(8 * N, valuation_guard()));
            if (!vv.exact || vv.infinite) continue;
            v = vv.value;
        }
        if (v < 1) continue;
        s.v = v;
        s.abs_ab = abs(s.a * s.b);
        s.mu_sample = 2.0 * static_cast<double>(v) * logp / log_mpz(s.abs_ab);
        auto key = std::make_pair(s.a, s.b);
        auto it = out.find(key);
        if (it == out.end() || it->second.v < s.v) out[key] = std::move(s);
    }
}

}  // namespace

std::vector<approx_sample> convergent_driven_samples(
    const digit_sequence& digits, unsigned long p, std::uint64_t m_lo,
    std::uint64_t m_hi, std::size_t per_m_top, int jobs) {
    std::map<std::pair<Int, Int>, approx_sample, mpz_pair_less> dedup;
    std::uint64_t N = m_hi + 64;
    if (digits.finite() && digits.size() < N) N = digits.size();
    Int CN = truncated_integer(digits, N, p);
    scan_prefix_quotients(
        digits, p, m_lo, m_hi,
        [&](const full_records& fr) {
            Int pm;
            mpz_ui_pow_ui(pm.get_mpz_t(), p, fr.m);
            emit_samples(fr, numerator_at_scale(fr.x, pm), pm, p, per_m_top, CN, N,
                         digits, dedup);
        },
        jobs);
    std::vector<approx_sample> out;
    out.reserve(dedup.size());
    for (auto& [k, s] : dedup) out.push_back(std::move(s));
    return out;
}

std::vector<approx_sample> extract_best_pairs(std::vector<approx_sample> samples) {
    std::sort(samples.begin(), samples.end(),
              [](const approx_sample& x, const approx_sample& y) {
                  int c = cmp(x.abs_ab, y.abs_ab);
                  if (c != 0) return c < 0;
                  if (x.v != y.v) return x.v > y.v;
                  c = cmp(x.b, y.b);
                  if (c != 0) return c < 0;
                  c = cmp(abs(x.a), abs(y.a));
                  if (c != 0) return c < 0;
                  return x.a > y.a;
              });
    std::vector<approx_sample> best;
    long vbest = 0;
    std::size_t i = 0;
    while (i < samples.size()) {
        std::size_t j = i;  // group of equal |ab|; champion is samples[i]
        while (j < samples.size() && samples[j].abs_ab == samples[i].abs_ab) ++j;
        if (samples[i].v > vbest) {
            vbest = samples[i].v;
            best.push_back(samples[i]);
        }
        i = j;
    }
    return best;
}

std::vector<approx_sample> filter_best_pairs(const std::vector<approx_sample>& best,
                                             unsigned long p) {
    std::vector<approx_sample> out;
    if (best.empty()) return out;
    out.push_back(best.front());
    for (std::size_t i = 1; i < best.size(); ++i) {
        // Q_i p^{-v_i} < Q_last p^{-v_last}, exactly:
        // |ab_i| p^{2 v_last} < |ab_last| p^{2 v_i}
        const approx_sample& last = out.back();
        Int pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), p, 2 * static_cast<unsigned long>(last.v));
        Int lhs = best[i].abs_ab * pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), p, 2 * static_cast<unsigned long>(best[i].v));
        Int rhs = last.abs_ab * pw;
        if (lhs < rhs) out.push_back(best[i]);
    }
    return out;
}

void fill_estimates(exponent_report& rep) {
    const unsigned long p = rep.p;
    const double logp = std::log(static_cast<double>(p));
    Int small_cut;
    mpz_ui_pow_ui(small_cut.get_mpz_t(), p, 10);

    rep.best_pairs = extract_best_pairs(rep.samples);
    rep.filtered = filter_best_pairs(rep.best_pairs, p);

    auto selected = [&](const approx_sample& s) {
        return s.abs_ab > small_cut && s.v >= static_cast<long>(rep.window_lo);
    };

    rep.mu_times_est = 0.0;
    for (const auto& s : rep.filtered)
        if (selected(s)) rep.mu_times_est = std::max(rep.mu_times_est, s.mu_sample);

    double mh = 0.0;
    bool have = false;
    for (std::size_t i = 0; i + 1 < rep.filtered.size(); ++i) {
        const approx_sample& s = rep.filtered[i];
        const approx_sample& t = rep.filtered[i + 1];
        if (!selected(s)) continue;
        const double lQ1 = 0.5 * log_mpz(s.abs_ab), lQ2 = 0.5 * log_mpz(t.abs_ab);
        const double val = (static_cast<double>(s.v) * logp + (lQ2 - lQ1)) / lQ2;
        if (!have || val < mh) { mh = val; have = true; }
    }
    rep.mu_hat_est = have ? mh : 0.0;
    rep.has_mu = true;
}

exponent_report pq_scan(const digit_sequence& digits, unsigned long p,
                        std::uint64_t m_max, double window_frac,
                        std::size_t per_m_top, int jobs) {
    if (m_max < 2) throw std::invalid_argument("pq_scan: m_max >= 2");
    if (window_frac <= 0 || window_frac > 1)
        throw std::invalid_argument("pq_scan: window_frac in (0,1]");
    exponent_report rep;
    rep.p = p;
    rep.m_max = m_max;
    rep.window_lo = m_max - static_cast<std::uint64_t>(window_frac * m_max);
    rep.window_hi = m_max;

    std::map<std::pair<Int, Int>, approx_sample, mpz_pair_less> dedup;
    std::uint64_t N = m_max + 64;
    if (digits.finite() && digits.size() < N) N = digits.size();
    Int CN = truncated_integer(digits, N, p);
    double esup = 0.0, einf = 1.0;
    bool any_window = false;

    scan_prefix_quotients(
        digits, p, 1, m_max,
        [&](const full_records& fr) {
            scan_row row;
            row.m = fr.m;
            row.n_pqs = fr.recs.size();
            if (fr.recs.size() <= 1) {
                row.degenerate = true;
                if (!fr.recs.empty()) row.best = fr.recs.front();
                row.best.eta = 0.0;
                row.best.m = fr.m;
            } else {
                std::size_t bi = 0;
                for (std::size_t i = 1; i < fr.recs.size(); ++i)
                    if (fr.recs[i].r > fr.recs[bi].r) bi = i;
                row.best = fr.recs[bi];
            }
            const double eta = row.degenerate ? 0.0 : row.best.eta;
            if (fr.m >= rep.window_lo) {
                esup = std::max(esup, eta);
                einf = std::min(einf, eta);
                any_window = true;
            }
            if (per_m_top != 0) {
                Int pm;
                mpz_ui_pow_ui(pm.get_mpz_t(), p, fr.m);
                emit_samples(fr, numerator_at_scale(fr.x, pm), pm, p, per_m_top, CN,
                             N, digits, dedup);
            }
            rep.rows.push_back(std::move(row));
        },
        jobs);

    rep.eta_sup = esup;
    rep.eta_inf = any_window ? einf : 0.0;
    rep.samples.reserve(dedup.size());
    for (auto& [k, s] : dedup) rep.samples.push_back(std::move(s));
    if (per_m_top != 0) fill_estimates(rep);
    return rep;
}

best_pair_result brute_force_best_pairs(const digit_sequence& digits,
                                        unsigned long p, unsigned Q_max) {
    if (Q_max < 1 || Q_max > 5000)
        throw std::invalid_argument("brute_force_best_pairs: Q_max in [1, 5000]");
    best_pair_result out;
    const std::uint64_t H = static_cast<std::uint64_t>(Q_max) * Q_max;

    // v < K fits a 64-bit power of p; larger valuations take the big path
    unsigned K = 1;
    unsigned __int128 pk = p;
    while (pk <= (static_cast<unsigned __int128>(1) << 62) / p) {
        pk *= p;
        ++K;
    }
    const std::uint64_t pkv = static_cast<std::uint64_t>(pk);
    std::uint64_t N = 4ull * K + 64;
    if (digits.finite() && digits.size() < N) N = digits.size();
    Int CN = truncated_integer(digits, N, p);
    Int pK, cmod_z;
    mpz_ui_pow_ui(pK.get_mpz_t(), p, K);
    mpz_fdiv_r(cmod_z.get_mpz_t(), CN.get_mpz_t(), pK.get_mpz_t());
    const std::uint64_t cmod = cmod_z.get_ui();

    const double logp = std::log(static_cast<double>(p));
    std::vector<approx_sample> samples;
    for (std::uint64_t b = 1; b <= H; ++b) {
        const std::uint64_t amax = H / b;
        const std::uint64_t bc = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(b % pkv) * cmod) % pkv);
        for (std::uint64_t au = 1; au <= amax; ++au) {
            if (std::gcd(au, b) != 1) continue;
            for (int sign = +1; sign >= -1; sign -= 2) {
                const std::uint64_t am =
                    sign > 0 ? au % pkv : (pkv - au % pkv) % pkv;
                std::uint64_t r = (bc + pkv - am) % pkv;
                long v = 0;
                if (r == 0) {
                    Int a = sign > 0 ? Int(au) : Int(-static_cast<long>(au));
                    Int d = Int(b) * CN - a;
                    if (d == 0) {
                        if (digits.finite() && N >= digits.size()) {
                            out.exact_hit = std::make_pair(a, Int(b));
                            continue;
                        }
                        valuation vv =
                            linear_form_valuation(a, Int(b), digits, p,
                                                  std::min<std::uint64_t>(1u << 20, valuation_guard()));
                        if (!vv.exact) continue;
                        if (vv.infinite) {
                            out.exact_hit = std::make_pair(a, Int(b));
                            continue;
                        }
                        v = vv.value;
                    } else {
                        v = int_valuation(d, p);
                        if (v >= static_cast<long>(N)) {
                            valuation vv =
                                linear_form_valuation(a, Int(b), digits, p,
                                                  std::min<std::uint64_t>(1u << 20, valuation_guard()));
                            if (!vv.exact) continue;
                            v = vv.value;
                        }
                    }
                } else {
                    while (r % p == 0) {
                        r /= p;
                        ++v;
                    }
                }
                if (v < 1) continue;
                approx_sample s;
                s.a = sign > 0 ? Int(au) : Int(-static_cast<long>(au));
                s.b = Int(b);
                s.v = v;
                s.m = static_cast<std::uint64_t>(v);
                s.abs_ab = Int(au * b);
                s.mu_sample = 2.0 * static_cast<double>(v) * logp / log_mpz(s.abs_ab);
                samples.push_back(std::move(s));
            }
        }
    }
    out.best_pairs = extract_best_pairs(std::move(samples));
    return out;
}

duality_diag duality_check(const exponent_report& rep) {
    duality_diag d;
    d.mu_times_est = rep.mu_times_est;
    d.mu_hat_est = rep.mu_hat_est;
    d.mu_from_eta_sup = rep.eta_sup < 1.0 ? 2.0 / (1.0 - rep.eta_sup)
                                          : std::numeric_limits<double>::infinity();
    d.mu_from_eta_inf = rep.eta_inf < 1.0 ? 2.0 / (1.0 - rep.eta_inf)
                                          : std::numeric_limits<double>::infinity();
    d.diff_times = std::abs(d.mu_times_est - d.mu_from_eta_sup);
    d.diff_hat = std::abs(d.mu_hat_est - d.mu_from_eta_inf);
    return d;
}

bound_scan_result global_pq_bound_scan(const digit_sequence& digits,
                                       unsigned long p, std::uint64_t m_max,
                                       double exponent, int jobs) {
    if (exponent <= 0 || exponent > 1)
        throw std::invalid_argument("global_pq_bound_scan: exponent in (0,1]");
    bound_scan_result out;
    const double logp = std::log(static_cast<double>(p));
    double best_log = -std::numeric_limits<double>::infinity();
    scan_prefix_quotients(
        digits, p, 1, m_max,
        [&](const full_records& fr) {
            for (const pq_record& rec : fr.recs) {
                const double lr =
                    log_mpz(rec.r) / logp - exponent * static_cast<double>(fr.m);
                if (lr > best_log) {
                    best_log = lr;
                    out.witness = rec;
                    out.found = true;
                }
            }
        },
        jobs);
    out.max_ratio = out.found ? std::exp(best_log * logp) : 0.0;
    return out;
}

std::pair<double, double> hetabound_diagnostic(const exponent_report& rep) {
    return {rep.eta_inf, 1.0 / (2.0 * rep.eta_sup + 1.0)};
}

namespace {

bool all_pqs_at_most(const Int& num, const Int& den, const Int& cap) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int a = den, b = r;
    while (b != 0) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (q > cap) return false;
        a = b;
        b = r;
    }
    return true;
}

void search_rec(unsigned base, const Int& cap, unsigned depth_limit,
                int alpha_lo, int alpha_hi, std::vector<int>& prefix, Int& C,
                Int& pw, search_stats& st) {
    const unsigned depth = static_cast<unsigned>(prefix.size());
    if (depth > st.deepest) {
        st.deepest = depth;
        st.deepest_prefix = prefix;
        if (depth >= depth_limit) st.reached_depth_limit = true;
    }
    if (depth >= depth_limit) return;
    for (int d = alpha_lo; d <= alpha_hi; ++d) {
        if (depth == 0 && d % static_cast<int>(base) == 0) continue;
        prefix.push_back(d);
        Int Cn = C + d * pw;
        Int pwn = pw * base;
        ++st.nodes;
        if (all_pqs_at_most(Cn, pwn, cap)) {
            std::swap(C, Cn);
            std::swap(pw, pwn);
            search_rec(base, cap, depth_limit, alpha_lo, alpha_hi, prefix, C, pw, st);
            std::swap(C, Cn);
            std::swap(pw, pwn);
        }
        prefix.pop_back();
    }
}

}  // namespace

search_stats bounded_pq_search(unsigned base, const Int& cap,
                               unsigned depth_limit, int alpha_lo, int alpha_hi) {
    if (base < 2) throw std::invalid_argument("bounded_pq_search: base >= 2");
    if (cap < 1) throw std::invalid_argument("bounded_pq_search: cap >= 1");
    if (alpha_hi < alpha_lo) {
        alpha_lo = 0;
        alpha_hi = static_cast<int>(base) - 1;
    }
    search_stats st;
    std::vector<int> prefix;
    Int C = 0, pw = 1;
    search_rec(base, cap, depth_limit, alpha_lo, alpha_hi, prefix, C, pw, st);
    return st;
}

legendre_check_result legendre_correspondence_check(const digit_sequence& digits,
                                                    unsigned long p,
                                                    unsigned bound) {
    if (bound < 1 || bound > 200)
        throw std::invalid_argument("legendre_correspondence_check: bound in [1, 200]");
    legendre_check_result out;
    const std::uint64_t N = 256;
    Int CN = truncated_integer(digits, N, p);

    std::vector<Int> C(N + 1);
    C[0] = 0;
    Int pw = 1, pz(p);
    for (std::uint64_t k = 0; k < N; ++k) {
        C[k + 1] = C[k] + digits.at0(k) * pw;
        pw *= pz;
    }

    for (unsigned b = 1; b <= bound; ++b) {
        for (long a = -static_cast<long>(bound); a <= static_cast<long>(bound); ++a) {
            if (a == 0) continue;
            if (std::gcd(static_cast<unsigned long>(std::labs(a)),
                         static_cast<unsigned long>(b)) != 1)
                continue;
            Int d = Int(b) * CN - Int(a);
            if (d == 0) continue;  // exact rational hit, outside the hypothesis
            long v = int_valuation(d, p);
            if (v < 1 || v >= static_cast<long>(N)) {
                ++out.n_skipped;
                continue;
            }
            Int pv;
            mpz_ui_pow_ui(pv.get_mpz_t(), p, static_cast<unsigned long>(v));
            Int ab = Int(b) * std::labs(a);
            if (2 * ab >= pv) {
                ++out.n_skipped;
                continue;
            }

            const std::uint64_t m = static_cast<std::uint64_t>(v);
            Int num = Int(b) * C[m] - Int(a);
            Int T;
            mpz_divexact(T.get_mpz_t(), num.get_mpz_t(), pv.get_mpz_t());

            Rat xm(C[m], pv);
            xm.canonicalize();
            full_records fr = expand_records(xm, m, p);
            std::size_t hit = static_cast<std::size_t>(-1);
            for (std::size_t i = 0; i < fr.recs.size(); ++i)
                if (fr.recs[i].conv_den == b && fr.true_num[i] == T) {
                    hit = i;
                    break;
                }
            ++out.n_checked;
            if (hit == static_cast<std::size_t>(-1)) {
                out.pass = false;
                if (out.first_failure.empty())
                    out.first_failure = "pair (" + Int(a).get_str() + "," +
                                        std::to_string(b) +
                                        "): T/b not a convergent of x_" +
                                        std::to_string(m);
                continue;
            }
            const Int& r = fr.recs[hit].r;
            Int rba = r * ab;
            if (!(pv <= 3 * rba && rba <= pv)) {
                out.pass = false;
                if (out.first_failure.empty())
                    out.first_failure = "pair (" + Int(a).get_str() + "," +
                                        std::to_string(b) + "): bracket fails at m=" +
                                        std::to_string(m);
            }
        }
    }
    return out;
}

}  // namespace padicx
