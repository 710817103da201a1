#include "padicx/words.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace padicx {

struct digit_sequence::impl {
    virtual ~impl() = default;
    virtual int digit(std::uint64_t k) const = 0;
    virtual void materialize(std::uint64_t) const {}
    virtual bool finite() const { return false; }
    virtual std::uint64_t size() const { return UINT64_MAX; }

    std::vector<int> alphabet;
    int origin = 0;
    std::string label;
};

namespace {

struct values_impl final : digit_sequence::impl {
    std::vector<int> vals;
    int digit(std::uint64_t k) const override {
        if (k >= vals.size())
            throw std::out_of_range("digit_sequence: index " + std::to_string(k) +
                                    " past end of finite sequence '" + label + "'");
        return vals[k];
    }
    bool finite() const override { return true; }
    std::uint64_t size() const override { return vals.size(); }
};

struct periodic_impl final : digit_sequence::impl {
    std::vector<int> pre, block;
    int digit(std::uint64_t k) const override {
        if (k < pre.size()) return pre[k];
        return block[(k - pre.size()) % block.size()];
    }
};

struct substitution_impl final : digit_sequence::impl {
    std::map<int, std::vector<int>> rules;
    mutable std::vector<int> buf;
    mutable std::mutex mu;

    void grow_to(std::uint64_t n) const {
        while (buf.size() < n) {
            std::vector<int> next;
            next.reserve(buf.size() * 2);
            for (int c : buf) {
                const auto& img = rules.at(c);
                next.insert(next.end(), img.begin(), img.end());
            }
            buf = std::move(next);
        }
    }
    int digit(std::uint64_t k) const override {
        std::scoped_lock lock(mu);
        grow_to(k + 1);
        return buf[k];
    }
    void materialize(std::uint64_t n) const override {
        std::scoped_lock lock(mu);
        grow_to(n);
    }
};

struct affine_impl final : digit_sequence::impl {
    digit_sequence base{digit_sequence::thue_morse()};
    long u = 1, v = 1;
    unsigned long p = 2;
    mutable std::vector<int> buf;
    mutable mpq_class carry;
    mutable std::mutex mu;

    // One Hensel digit of (u*xi + carry)/v at the current position, then
    // shift the tail: carry' = (u*c_k + carry - v*d)/p.
    void grow_to(std::uint64_t n) const {
        while (buf.size() < n) {
            const std::uint64_t k = buf.size();
            mpq_class t = mpq_class(u * static_cast<long>(base.at0(k))) + carry;
            // d = t/v mod p; denominators are prime to p by construction.
            mpz_class td = t.get_den() * v;
            mpz_class inv, pz(p);
            if (mpz_invert(inv.get_mpz_t(), td.get_mpz_t(), pz.get_mpz_t()) == 0)
                throw std::logic_error("affine digits: denominator not invertible mod p");
            mpz_class d = (t.get_num() % pz) * inv % pz;
            if (d < 0) d += pz;
            const int di = static_cast<int>(d.get_ui());
            buf.push_back(di);
            carry = (t - mpq_class(v * static_cast<long>(di))) / mpq_class(static_cast<long>(p));
            carry.canonicalize();
        }
    }
    int digit(std::uint64_t k) const override {
        std::scoped_lock lock(mu);
        grow_to(k + 1);
        return buf[k];
    }
    void materialize(std::uint64_t n) const override {
        std::scoped_lock lock(mu);
        grow_to(n);
    }
};

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

digit_sequence digit_sequence::substitution(std::map<int, std::vector<int>> rules,
                                            int seed, int index_origin,
                                            std::string name) {
    auto it = rules.find(seed);
    if (it == rules.end())
        throw std::invalid_argument("substitution: seed letter has no rule");
    if (it->second.size() < 2 || it->second.front() != seed)
        throw std::invalid_argument(
            "substitution: image of seed must start with the seed and have length >= 2");
    for (const auto& [letter, img] : rules) {
        if (img.empty())
            throw std::invalid_argument("substitution: empty image");
        for (int c : img)
            if (!rules.count(c))
                throw std::invalid_argument("substitution: image letter " +
                                            std::to_string(c) + " has no rule");
        (void)letter;
    }
    auto im = std::make_shared<substitution_impl>();
    std::vector<int> alpha;
    for (const auto& [letter, img] : rules) { alpha.push_back(letter); (void)img; }
    im->alphabet = sorted_unique(alpha);
    im->rules = std::move(rules);
    im->buf = {seed};
    im->origin = index_origin;
    im->label = std::move(name);
    return digit_sequence(im);
}

digit_sequence digit_sequence::thue_morse() {
    return substitution({{1, {1, -1}}, {-1, {-1, 1}}}, 1, 0, "tm");
}

digit_sequence digit_sequence::thue_morse01() {
    return substitution({{1, {1, 0}}, {0, {0, 1}}}, 1, 0, "tm01");
}

digit_sequence digit_sequence::fibonacci_word() {
    return substitution({{0, {0, 1}}, {1, {0}}}, 0, 1, "fib");
}

digit_sequence digit_sequence::from_values(std::vector<int> values,
                                           int index_origin, std::string name) {
    auto im = std::make_shared<values_impl>();
    im->alphabet = sorted_unique(values);
    im->vals = std::move(values);
    im->origin = index_origin;
    im->label = std::move(name);
    return digit_sequence(im);
}

digit_sequence digit_sequence::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open digit file: " + path);
    std::vector<int> vals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ss(line);
        long x;
        if (ss >> x) {
            vals.push_back(static_cast<int>(x));
            std::string rest;
            if (ss >> rest)
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": expected one integer per line");
        }
    }
    if (vals.empty())
        throw std::invalid_argument(path + ": no digits found");
    return from_values(std::move(vals), 0, "file:" + path);
}

digit_sequence digit_sequence::periodic(std::vector<int> block, std::string name) {
    if (block.empty()) throw std::invalid_argument("periodic: empty block");
    auto im = std::make_shared<periodic_impl>();
    im->alphabet = sorted_unique(block);
    im->block = std::move(block);
    im->label = std::move(name);
    return digit_sequence(im);
}

digit_sequence digit_sequence::prefix_then_periodic(std::vector<int> prefix,
                                                    std::vector<int> block,
                                                    std::string name) {
    if (block.empty()) throw std::invalid_argument("prefix_then_periodic: empty block");
    auto im = std::make_shared<periodic_impl>();
    auto all = prefix;
    all.insert(all.end(), block.begin(), block.end());
    im->alphabet = sorted_unique(all);
    im->pre = std::move(prefix);
    im->block = std::move(block);
    im->label = std::move(name);
    return digit_sequence(im);
}

digit_sequence digit_sequence::affine(digit_sequence base, long u, long v,
                                      const mpq_class& w, unsigned long p) {
    if (v == 0) throw std::invalid_argument("affine: v must be nonzero");
    mpq_class wc = w;
    wc.canonicalize();
    if (mpz_class(std::abs(v)) % p == 0 || wc.get_den() % p == 0)
        throw std::invalid_argument("affine: p must not divide v or den(w)");
    auto im = std::make_shared<affine_impl>();
    im->base = std::move(base);
    im->u = u;
    im->v = v;
    im->p = p;
    im->carry = wc;
    std::vector<int> alpha(p);
    for (unsigned long i = 0; i < p; ++i) alpha[i] = static_cast<int>(i);
    im->alphabet = std::move(alpha);
    im->label = "affine";
    return digit_sequence(im);
}

int digit_sequence::at0(std::uint64_t k) const { return impl_->digit(k); }

int digit_sequence::at(std::uint64_t n) const {
    const int o = impl_->origin;
    if (n < static_cast<std::uint64_t>(o))
        throw std::out_of_range("digit_sequence::at: index below origin");
    return impl_->digit(n - o);
}

int digit_sequence::index_origin() const { return impl_->origin; }
bool digit_sequence::finite() const { return impl_->finite(); }
std::uint64_t digit_sequence::size() const { return impl_->size(); }

std::vector<int> digit_sequence::prefix(std::uint64_t n) const {
    impl_->materialize(n);
    std::vector<int> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = impl_->digit(i);
    return out;
}

void digit_sequence::ensure(std::uint64_t n) const { impl_->materialize(n); }
const std::vector<int>& digit_sequence::alphabet() const { return impl_->alphabet; }
const std::string& digit_sequence::name() const { return impl_->label; }

int tm_digit(std::uint64_t n) {
    return (std::popcount(n) & 1) ? -1 : 1;
}

namespace {
// floor(n * golden ratio) = (n + floor(sqrt(5 n^2))) / 2, exactly.
mpz_class floor_n_gamma(const mpz_class& n) {
    mpz_class s = 5 * n * n, r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    mpz_class out = n + r;
    mpz_fdiv_q_2exp(out.get_mpz_t(), out.get_mpz_t(), 1);
    return out;
}
}  // namespace

int fib_digit(const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("fib_digit: index starts at 1");
    mpz_class d = floor_n_gamma(n + 1) - floor_n_gamma(n);
    return static_cast<int>(2 - d.get_si());
}

mpz_class fibonacci_numbers::operator()(std::size_t n) {
    while (cache_.size() <= n)
        cache_.push_back(cache_[cache_.size() - 1] + cache_[cache_.size() - 2]);
    return cache_[n];
}

unsigned long fibonacci_numbers::get_ui(std::size_t n) {
    return (*this)(n).get_ui();
}

block_identity_report check_tm_block_identities(int k) {
    if (k < 1) throw std::invalid_argument("check_tm_block_identities: k >= 1");
    block_identity_report rep;
    rep.k = k;
    const std::uint64_t two_k = 1ull << k;
    const std::uint64_t lo = 1ull << (k + 1);
    const std::uint64_t hi = (1ull << (k + 2)) + two_k - 1;  // inclusive
    auto t = [](std::uint64_t n) { return tm_digit(n); };

    for (std::uint64_t j = lo; j <= hi; ++j) {
        if (t(j) + t(j + two_k) != 0) {
            rep.has_counterexample = true;
            rep.first_bad_j = j;
            rep.detail = "t_j + t_{j+2^k} != 0 at j=" + std::to_string(j);
            return rep;
        }
    }
    const int sign = (k % 2 == 0) ? -1 : 1;  // (-1)^{k+1}
    struct { std::uint64_t a, b; int want; } edges[] = {
        {lo - 1, lo + two_k - 1, 2 * sign},
        {(1ull << (k + 2)) + two_k, (1ull << (k + 2)) + 2 * two_k, 2},
        {(1ull << (k + 2)) + two_k + 1, (1ull << (k + 2)) + 2 * two_k + 1, -2},
    };
    for (const auto& e : edges) {
        if (t(e.a) + t(e.b) != e.want) {
            rep.has_counterexample = true;
            rep.first_bad_j = e.a;
            rep.detail = "boundary sum t_" + std::to_string(e.a) + " + t_" +
                         std::to_string(e.b) + " != " + std::to_string(e.want);
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

std::uint64_t longest_common_prefix(const digit_sequence& w1,
                                    const digit_sequence& w2,
                                    std::uint64_t cap) {
    for (std::uint64_t i = 0; i < cap; ++i)
        if (w1.at0(i) != w2.at0(i)) return i;
    return cap;
}

bool is_palindrome_prefix(const digit_sequence& w, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("is_palindrome_prefix: n >= 1");
    w.ensure(n);
    for (std::uint64_t i = 0, j = n - 1; i < j; ++i, --j)
        if (w.at0(i) != w.at0(j)) return false;
    return true;
}

}  // namespace padicx
