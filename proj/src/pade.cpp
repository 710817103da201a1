#include <cmath>
#include <stdexcept>

#include "padicx/hankel.hpp"

namespace padicx {

namespace {

// B*f as a finite rational coefficient list (f is finite, zero-extended).
std::vector<Rat> poly_times_series(const int_polynomial& B, const coeff_series& f) {
    const std::size_t lf = f.coeffs.size();
    const std::size_t lb = B.coeffs().size();
    std::vector<Rat> out(lf + lb, Rat(0));
    for (std::size_t i = 0; i < lb; ++i) {
        if (B.coeff(i) == 0) continue;
        Rat bi(B.coeff(i));
        for (std::size_t j = 0; j < lf; ++j) {
            if (f.coeffs[j] == 0) continue;
            out[i + j] += bi * f.coeffs[j];
        }
    }
    for (auto& c : out) c.canonicalize();
    return out;
}

Int content(const int_polynomial& p) {
    Int g = 0;
    for (const Int& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

}  // namespace

std::optional<pade_pair> pade(const coeff_series& f, unsigned u, unsigned v) {
    // homogeneous system: sum_i b_i c_{n-i} = 0 for n = u+1..u+v
    const unsigned rows = v, cols = v + 1;
    std::vector<std::vector<Rat>> E(rows, std::vector<Rat>(cols, Rat(0)));
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned i = 0; i < cols; ++i) {
            const long n = static_cast<long>(u) + 1 + r - static_cast<long>(i);
            if (n >= 0) E[r][i] = f.at(static_cast<std::size_t>(n));
        }

    // exact reduced row echelon form
    std::vector<int> pivot_col(rows, -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
        unsigned piv = rank;
        while (piv < rows && E[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(E[piv], E[rank]);
        Rat inv = Rat(1) / E[rank][col];
        for (unsigned c2 = col; c2 < cols; ++c2) {
            E[rank][c2] *= inv;
            E[rank][c2].canonicalize();
        }
        for (unsigned r = 0; r < rows; ++r) {
            if (r == rank || E[r][col] == 0) continue;
            Rat fmul = E[r][col];
            for (unsigned c2 = col; c2 < cols; ++c2) {
                E[r][c2] -= fmul * E[rank][c2];
                E[r][c2].canonicalize();
            }
        }
        pivot_col[rank] = static_cast<int>(col);
        ++rank;
    }

    std::vector<bool> is_pivot(cols, false);
    for (unsigned r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;

    // kernel basis: one vector per free column
    std::vector<std::vector<Rat>> basis;
    for (unsigned fcol = 0; fcol < cols; ++fcol) {
        if (is_pivot[fcol]) continue;
        std::vector<Rat> x(cols, Rat(0));
        x[fcol] = 1;
        for (unsigned r = 0; r < rank; ++r) {
            x[pivot_col[r]] = -E[r][fcol];
            x[pivot_col[r]].canonicalize();
        }
        basis.push_back(std::move(x));
    }
    if (basis.empty()) return std::nullopt;  // system forces B = 0

    // prefer B(0) != 0; otherwise the kernel vector of minimal degree
    auto deg_of = [](const std::vector<Rat>& x) {
        long d = -1;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0) d = static_cast<long>(i);
        return d;
    };
    const std::vector<Rat>* pick = nullptr;
    for (const auto& x : basis)
        if (x[0] != 0) { pick = &x; break; }
    if (!pick) {
        long best = -1;
        for (const auto& x : basis) {
            long d = deg_of(x);
            if (best == -1 || d < best) { best = d; pick = &x; }
        }
    }

    // clear B to integers
    Int lam = 1;
    for (const Rat& c : *pick) {
        Int d = c.get_den();
        mpz_lcm(lam.get_mpz_t(), lam.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Int> bc(pick->size());
    for (std::size_t i = 0; i < pick->size(); ++i) {
        Rat s = (*pick)[i] * Rat(lam);
        s.canonicalize();
        bc[i] = s.get_num();
    }
    int_polynomial B(std::move(bc));

    // A = truncation of B*f to degree <= u, then clear A's denominators
    std::vector<Rat> bf = poly_times_series(B, f);
    Int lam2 = 1;
    for (std::size_t i = 0; i <= u && i < bf.size(); ++i) {
        Int d = bf[i].get_den();
        mpz_lcm(lam2.get_mpz_t(), lam2.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Int> ac(u + 1, Int(0));
    for (std::size_t i = 0; i <= u && i < bf.size(); ++i) {
        Rat s = bf[i] * Rat(lam2);
        s.canonicalize();
        ac[i] = s.get_num();
    }
    int_polynomial A(std::move(ac));
    if (lam2 != 1) {
        std::vector<Int> b2 = B.coeffs();
        for (auto& c : b2) c *= lam2;
        B = int_polynomial(std::move(b2));
        bf = poly_times_series(B, f);
    }

    // strip common content
    Int g;
    mpz_gcd(g.get_mpz_t(), content(A).get_mpz_t(), content(B).get_mpz_t());
    if (g > 1) {
        std::vector<Int> a2 = A.coeffs(), b2 = B.coeffs();
        for (auto& c : a2) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        for (auto& c : b2) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        A = int_polynomial(std::move(a2));
        B = int_polynomial(std::move(b2));
        bf = poly_times_series(B, f);
    }

    pade_pair out;
    out.u = u;
    out.v = v;
    out.A = A;
    out.B = B;
    out.rank_deficient = basis.size() > 1;
    out.b0_nonzero = B.coeff(0) != 0;

    out.order = -1;
    for (std::size_t i = 0; i < bf.size(); ++i) {
        Rat d = bf[i] - Rat(A.coeff(i));
        d.canonicalize();
        if (d != 0) {
            out.order = static_cast<long>(i);
            if (out.b0_nonzero) {
                out.err_coeff = d / Rat(B.coeff(0));
                out.err_coeff.canonicalize();
            }
            break;
        }
    }
    if (out.order >= 0 && out.order < static_cast<long>(u + v + 1))
        throw std::logic_error("pade: attained order below u+v+1");
    return out;
}

std::vector<ladder_row> pade_ladder(int K, unsigned m_max, unsigned long p,
                                    unsigned j_lo, unsigned j_hi) {
    if (K < 1) throw std::invalid_argument("pade_ladder: K >= 1");
    if (j_lo > j_hi) throw std::invalid_argument("pade_ladder: empty j range");
    coeff_series gK = series_from_poly(gtilde(K), "gtilde:" + std::to_string(K));
    for (unsigned j = j_lo; j <= j_hi; ++j)
        if (hankel_det(gK, j) == 0)
            throw std::domain_error("pade_ladder: H_" + std::to_string(j) +
                                    " vanishes for gtilde_" + std::to_string(K));

    std::vector<ladder_row> rows;
    const double logp = std::log(static_cast<double>(p));
    for (unsigned j = j_lo; j <= j_hi; ++j) {
        auto pp = pade(gK, j - 1, j);
        if (!pp || !pp->b0_nonzero)
            throw std::runtime_error("pade_ladder: Pade pair unavailable at j=" +
                                     std::to_string(j));
        for (unsigned m = 0; m <= m_max; ++m) {
            const std::uint64_t scale = (std::uint64_t(1) << m) * j;
            int_polynomial Pjm = pp->A.compose_power(std::size_t(1) << m);
            for (unsigned h = 0; h < m; ++h) {
                std::vector<Int> f((std::size_t(1) << h) + 1, Int(0));
                f[0] = 1;
                f[std::size_t(1) << h] = -1;
                Pjm = Pjm * int_polynomial(std::move(f));
            }
            int_polynomial Qjm = pp->B.compose_power(std::size_t(1) << m);

            ladder_row row;
            row.j = j;
            row.m = m;
            row.p_int = Pjm.eval_scaled_reciprocal(p, scale);
            row.q_int = Qjm.eval_scaled_reciprocal(p, scale);

            const std::uint64_t deg = (3ull << (K + m)) - 1;
            Int G = gtilde(K + m).eval_scaled_reciprocal(p, deg);
            Int pd;
            mpz_ui_pow_ui(pd.get_mpz_t(), p, deg);
            Rat target(G, pd);
            target.canonicalize();
            Rat approx(row.p_int, row.q_int);
            approx.canonicalize();
            row.err = abs(target - approx);

            Int p2m1j;
            mpz_ui_pow_ui(p2m1j.get_mpz_t(), p, 2 * scale);
            Rat en = row.err * Rat(p2m1j);
            en.canonicalize();
            row.err_norm = en.get_d();
            Int p2mj;
            mpz_ui_pow_ui(p2mj.get_mpz_t(), p, scale);
            Rat qn(row.q_int, p2mj);
            qn.canonicalize();
            row.q_norm = qn.get_d();
            Rat eq2 = row.err * Rat(row.q_int) * Rat(row.q_int);
            eq2.canonicalize();
            row.err_q2 = eq2.get_d();
            (void)logp;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace padicx
