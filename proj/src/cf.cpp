#include "padicx/cf.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace padicx {

cf_expansion cf_expand(const Rat& x) {
    cf_expansion out;
    Int num = x.get_num(), den = x.get_den();
    Int r;
    mpz_fdiv_qr(out.a0.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    // Euclid on (den, r); all iterates positive, last quotient >= 2.
    Int a = den, b = r, q, rem;
    while (b != 0) {
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        out.pqs.push_back(q);
        a = b;
        b = rem;
    }
    return out;
}

Rat cf_value(const cf_expansion& cf) {
    Rat x(cf.pqs.empty() ? Int(0) : cf.pqs.back());
    for (std::size_t i = cf.pqs.size(); i-- > 1;) {
        x = Rat(cf.pqs[i - 1]) + Rat(1) / x;
        x.canonicalize();
    }
    Rat out = Rat(cf.a0) + (cf.pqs.empty() ? Rat(0) : Rat(1) / x);
    out.canonicalize();
    return out;
}

cf_expansion to_one_terminated(const cf_expansion& cf) {
    cf_expansion out = cf;
    if (out.pqs.empty()) {
        out.a0 -= 1;
        out.pqs.push_back(1);
        return out;
    }
    if (out.pqs.back() == 1) return out;  // only [0;1] reaches here canonically
    out.pqs.back() -= 1;
    out.pqs.push_back(1);
    return out;
}

std::vector<std::pair<Int, Int>> convergents(const cf_expansion& cf) {
    std::vector<std::pair<Int, Int>> out;
    Int p1 = cf.a0, q1 = 1, p2 = 1, q2 = 0;
    out.emplace_back(p1, q1);
    for (const Int& a : cf.pqs) {
        Int p = a * p1 + p2, q = a * q1 + q2;
        out.emplace_back(p, q);
        p2 = p1; q2 = q1; p1 = p; q1 = q;
    }
    return out;
}

std::string to_string(pq_class c) {
    switch (c) {
        case pq_class::maximal: return "maximal";
        case pq_class::unclassified: return "shrinks-both-ways-unclassified";
        case pq_class::case_ii: return "case-ii";
        case pq_class::case_iii: return "case-iii";
        case pq_class::below_threshold: return "below-threshold";
    }
    return "?";
}

namespace {
double log_mpz(const Int& n) {
    signed long exp;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(exp) * std::log(2.0);
}
}  // namespace

full_records expand_records(const Rat& x, std::uint64_t m, unsigned long p) {
    full_records out;
    out.m = m;
    out.x = x;
    out.cf = cf_expand(x);
    const double mlogp = static_cast<double>(m) * std::log(static_cast<double>(p));
    const Int two_p = 2 * Int(p);
    // convergent recursion of [0; a_1, ...]: h_{-1}=1, h_0=0; q_{-1}=0, q_0=1
    Int h1 = 0, q1 = 1, h2 = 1, q2 = 0;
    out.recs.reserve(out.cf.pqs.size());
    out.true_num.reserve(out.cf.pqs.size());
    for (std::size_t i = 0; i < out.cf.pqs.size(); ++i) {
        const Int& a = out.cf.pqs[i];
        pq_record rec;
        rec.m = m;
        rec.j = i + 1;
        rec.r = a;
        rec.conv_num = h1;
        rec.conv_den = q1;
        rec.eta = m ? log_mpz(a) / mlogp : 0.0;
        rec.cls = (a >= two_p) ? pq_class::unclassified : pq_class::below_threshold;
        out.true_num.push_back(out.cf.a0 * q1 + h1);
        out.recs.push_back(std::move(rec));
        Int h = a * h1 + h2, q = a * q1 + q2;
        h2 = h1; q2 = q1; h1 = h; q1 = q;
    }
    return out;
}

std::vector<pq_record> associated_records(const digit_sequence& digits,
                                          unsigned long p, std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("associated_records: m >= 1");
    return expand_records(prefix_rational(digits, m, p), m, p).recs;
}

namespace {

// Searches `fr` for the record whose true associated convergent equals
// num/den (already in lowest terms). Returns index or npos.
std::size_t find_convergent(const full_records& fr, const Int& num, const Int& den) {
    for (std::size_t i = 0; i < fr.recs.size(); ++i)
        if (fr.recs[i].conv_den == den && fr.true_num[i] == num) return i;
    return static_cast<std::size_t>(-1);
}

bool in_shrink_interval(const Int& rp, const Int& r, unsigned long p) {
    // r/p - 2 < r' < (r+2)/p  <=>  r - 2p < p r' < r + 2
    Int prp = Int(p) * rp;
    return prp > r - 2 * Int(p) && prp < r + 2;
}

bool in_grow_interval(const Int& rp, const Int& r, unsigned long p) {
    // p r - 2 < r' < p (r+2)
    return rp > Int(p) * r - 2 && rp < Int(p) * (r + 2);
}

[[noreturn]] void trichotomy_violation(std::uint64_t m, std::size_t j,
                                       const std::string& what) {
    std::ostringstream os;
    os << "propagation trichotomy violated at m=" << m << " j=" << j << ": " << what;
    throw std::runtime_error(os.str());
}

}  // namespace

propagation_evidence classify_record(const full_records& prev,
                                     const full_records& cur,
                                     const full_records& next,
                                     std::size_t j, unsigned long p,
                                     int c_m_minus_1, int c_m) {
    if (j < 1 || j > cur.recs.size())
        throw std::invalid_argument("classify_record: no such record");
    const pq_record& rec = cur.recs[j - 1];
    propagation_evidence ev;
    if (rec.r < 2 * Int(p)) {
        ev.cls = pq_class::below_threshold;
        return ev;
    }
    const Int& B = rec.conv_den;
    const Int A = cur.true_num[j - 1];

    Rat left(Int(p) * A - B * c_m_minus_1, B);
    left.canonicalize();
    Rat right(A + B * c_m, Int(p) * B);
    right.canonicalize();

    const std::size_t il = find_convergent(prev, left.get_num(), left.get_den());
    const std::size_t ir = find_convergent(next, right.get_num(), right.get_den());
    if (il == static_cast<std::size_t>(-1))
        trichotomy_violation(cur.m, j, "propagated convergent missing in x_{m-1}");
    if (ir == static_cast<std::size_t>(-1))
        trichotomy_violation(cur.m, j, "propagated convergent missing in x_{m+1}");

    const Int& rl = prev.recs[il].r;
    const Int& rr = next.recs[ir].r;
    ev.left = prev.recs[il];
    ev.right = next.recs[ir];
    ev.left_den = left.get_den();
    ev.right_den = right.get_den();

    const bool lshr = left.get_den() == B && in_shrink_interval(rl, rec.r, p);
    const bool lgro = B % p == 0 && left.get_den() == B / p && in_grow_interval(rl, rec.r, p);
    const bool rshr = right.get_den() == Int(p) * B && in_shrink_interval(rr, rec.r, p);
    const bool rgro = right.get_den() == B && in_grow_interval(rr, rec.r, p);

    const int matches = (lshr && rshr) + (lshr && rgro) + (lgro && rshr);
    if (matches != 1) {
        if (lgro && rgro)
            trichotomy_violation(cur.m, j, "both neighbours grow (coprimality broken?)");
        trichotomy_violation(cur.m, j, "neighbour quotient outside the predicted interval");
    }
    ev.cls = lshr && rshr ? pq_class::maximal
           : lshr         ? pq_class::case_ii
                          : pq_class::case_iii;
    return ev;
}

propagation_evidence classify_propagation(const digit_sequence& digits,
                                          unsigned long p, std::uint64_t m,
                                          std::size_t j) {
    if (m < 2) throw std::invalid_argument("classify_propagation: m >= 2");
    full_records prev = expand_records(prefix_rational(digits, m - 1, p), m - 1, p);
    full_records cur = expand_records(prefix_rational(digits, m, p), m, p);
    full_records next = expand_records(prefix_rational(digits, m + 1, p), m + 1, p);
    return classify_record(prev, cur, next, j, p, digits.at0(m - 1), digits.at0(m));
}

void propagation_scan(
    const digit_sequence& digits, unsigned long p, std::uint64_t m_lo,
    std::uint64_t m_hi,
    const std::function<void(const pq_record&, const propagation_evidence&)>& visit) {
    if (m_lo < 2) m_lo = 2;
    if (m_hi < m_lo) return;
    digits.ensure(m_hi + 1);
    Int c = 0, pw = 1, pz(p);
    std::vector<full_records> win;
    // window holds x_{m-1}, x_m, x_{m+1}
    for (std::uint64_t mm = 1; mm <= m_hi + 1; ++mm) {
        c += digits.at0(mm - 1) * pw;
        pw *= pz;
        if (mm + 1 < m_lo) continue;
        Rat x(c, pw);
        x.canonicalize();
        win.push_back(expand_records(x, mm, p));
        if (win.size() > 3) win.erase(win.begin());
        if (win.size() < 3) continue;
        const std::uint64_t m = win[1].m;
        const Int two_p = 2 * Int(p);
        for (const pq_record& rec : win[1].recs) {
            if (rec.r < two_p) continue;
            auto ev = classify_record(win[0], win[1], win[2], rec.j, p,
                                      digits.at0(m - 1), digits.at0(m));
            visit(rec, ev);
        }
    }
}

double etabound_upper(std::uint64_t m, double eta_m, std::uint64_t n, double eta_n) {
    if (!(m >= 1 && m < n))
        throw std::invalid_argument("etabound: need 1 <= m < n");
    if (eta_m < 0 || eta_m > 1 || eta_n < 0 || eta_n > 1)
        throw std::invalid_argument("etabound: eta values in [0,1]");
    const double num = static_cast<double>(n) * (1 + eta_n) - static_cast<double>(m) * (1 - eta_m);
    const double den = static_cast<double>(n) * (1 + eta_n) + static_cast<double>(m) * (1 - eta_m);
    return num / den;
}

double etabound_lower(std::uint64_t m, double teta_m, std::uint64_t n, double teta_n) {
    if (!(m >= 1 && m < n))
        throw std::invalid_argument("etabound: need 1 <= m < n");
    if (teta_m < 0 || teta_m > 1 || teta_n < 0 || teta_n > 1)
        throw std::invalid_argument("etabound: eta values in [0,1]");
    const double num = static_cast<double>(m) * (1 + teta_m) - static_cast<double>(n) * (1 - teta_n);
    const double den = static_cast<double>(m) * (1 + teta_m) + static_cast<double>(n) * (1 - teta_n);
    return num / den;
}

}  // namespace padicx
