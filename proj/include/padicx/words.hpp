#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace padicx {

/**
 * Lazily indexable infinite (or file-bounded) integer digit sequence with
 * bounded values. Immutable after construction; memoization behind the
 * shared implementation is internally synchronized, so concurrent reads
 * are safe. Call ensure(n) before sharing across workers to avoid lock
 * contention in hot loops.
 */
class digit_sequence {
public:
    // Thue-Morse word over {-1,1}, 0-indexed: fixed point of 1 -> 1,-1.
    static digit_sequence thue_morse();
    // Thue-Morse word over {0,1}, 0-indexed: (t_n + 1)/2.
    static digit_sequence thue_morse01();
    // Fibonacci word over {0,1}, 1-indexed: fixed point of 0 -> 01, 1 -> 0.
    static digit_sequence fibonacci_word();

    // Fixed point of an arbitrary substitution. The image of the seed must
    // start with the seed and have length >= 2; every letter used in an
    // image must itself have a rule. Throws std::invalid_argument otherwise.
    static digit_sequence substitution(std::map<int, std::vector<int>> rules,
                                       int seed, int index_origin = 0,
                                       std::string name = "substitution");

    // Finite list; indexing past the end throws std::out_of_range.
    static digit_sequence from_values(std::vector<int> values,
                                      int index_origin = 0,
                                      std::string name = "values");
    // One integer per line, UTF-8, '#' starts a comment.
    static digit_sequence from_file(const std::string& path);

    static digit_sequence periodic(std::vector<int> block,
                                   std::string name = "periodic");
    static digit_sequence prefix_then_periodic(std::vector<int> prefix,
                                               std::vector<int> block,
                                               std::string name = "mixed");

    // Hensel digits (over {0..p-1}) of (u*xi + w)/v, where xi is the p-adic
    // number with digits `base`. Requires p prime to v and to den(w).
    static digit_sequence affine(digit_sequence base, long u, long v,
                                 const mpq_class& w, unsigned long p);

    // 0-based digit c_k, independent of the declared index origin.
    int at0(std::uint64_t k) const;
    // Origin-aware index: w[n] with n >= index_origin().
    int at(std::uint64_t n) const;

    int index_origin() const;
    bool finite() const;
    std::uint64_t size() const;  // meaningful only when finite()
    std::vector<int> prefix(std::uint64_t n) const;
    void ensure(std::uint64_t n) const;
    const std::vector<int>& alphabet() const;
    const std::string& name() const;

    struct impl;

private:
    explicit digit_sequence(std::shared_ptr<const impl> p) : impl_(std::move(p)) {}
    std::shared_ptr<const impl> impl_;
};

// t_n via popcount parity; independent of the substitution engine and used
// as its cross-check oracle.
int tm_digit(std::uint64_t n);

// f_n (1-indexed) via the golden-ratio Beatty characterisation
// f_n = 2 + floor(n*g) - floor((n+1)*g); exact integer arithmetic.
int fib_digit(const mpz_class& n);

// F_0 = 0, F_1 = 1, F_{n+2} = F_{n+1} + F_n, arbitrary precision, memoized.
class fibonacci_numbers {
public:
    mpz_class operator()(std::size_t n);
    // convenience for indices known to fit
    unsigned long get_ui(std::size_t n);
private:
    std::vector<mpz_class> cache_{0, 1};
};

struct block_identity_report {
    int k = 0;
    bool pass = false;
    bool has_counterexample = false;
    std::uint64_t first_bad_j = 0;   // index of first failing identity
    std::string detail;
};

// Checks t_j + t_{j+2^k} = 0 for j = 2^{k+1} .. 2^{k+2}+2^k-1 together with
// the three boundary pair-sums (2*(-1)^{k+1}, +2, -2).
block_identity_report check_tm_block_identities(int k);

// Exact length of the longest common prefix (in 0-based digit positions),
// or cap if no disagreement occurs below cap.
std::uint64_t longest_common_prefix(const digit_sequence& w1,
                                    const digit_sequence& w2,
                                    std::uint64_t cap);

bool is_palindrome_prefix(const digit_sequence& w, std::uint64_t n);

}  // namespace padicx
