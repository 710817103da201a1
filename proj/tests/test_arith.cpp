#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicx/arith.hpp"

using namespace padicx;

namespace {
Int ppow(unsigned long p, std::uint64_t e) {
    Int out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, e);
    return out;
}
}  // namespace

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("truncated_integer examples") {
    auto tmw = digit_sequence::thue_morse();
    CHECK(truncated_integer(tmw, 3, 3) == -11);  // 1 - 3 - 9
    auto zeros = digit_sequence::from_values(std::vector<int>(16, 0));
    CHECK(truncated_integer(zeros, 8, 5) == 0);
    auto t01 = digit_sequence::thue_morse01();
    CHECK(truncated_integer(t01, 4, 2) == 9);  // digits 1,0,0,1
}

TEST_CASE("prefix_rational examples") {
    auto tmw = digit_sequence::thue_morse();
    auto zeros = digit_sequence::from_values(std::vector<int>(16, 0));
    CHECK(prefix_rational(zeros, 12, 7) == 0);

    SUBCASE("(1 + p^-2) z_12 expansion, p = 3") {
        const unsigned long p = 3;
        Rat z12 = prefix_rational(tmw, 12, p);
        Rat lhs = (Rat(1) + Rat(1, (long)(p * p))) * z12;
        lhs.canonicalize();
        Rat rhs = -Rat(1, (long)p) + Rat(1, (long)(p * p)) + Rat(2) / Rat(ppow(p, 9)) -
                  Rat(2) / Rat(ppow(p, 10)) - Rat(1) / Rat(ppow(p, 13)) +
                  Rat(1) / Rat(ppow(p, 14));
        rhs.canonicalize();
        CHECK(lhs == rhs);
    }
    SUBCASE("z_16 = 3^-1 prod_{h<=3} (1 - 3^-2^h)") {
        Rat z16 = prefix_rational(tmw, 16, 3);
        Rat rhs = lacunary_product(3, 3) / 3;
        rhs.canonicalize();
        CHECK(z16 == rhs);
    }
}

TEST_CASE("prefix_rational * p^m == truncated_integer") {
    auto tmw = digit_sequence::thue_morse();
    auto fw = digit_sequence::fibonacci_word();
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        for (std::uint64_t m : {1ull, 2ull, 7ull, 33ull, 100ull}) {
            for (const auto& seq : {tmw, fw}) {
                Rat x = prefix_rational(seq, m, p);
                Rat lhs = x * Rat(ppow(p, m));
                lhs.canonicalize();
                CHECK(lhs == Rat(truncated_integer(seq, m, p)));
            }
        }
    }
}

TEST_CASE("recursion p x_{m+1} - x_m = c_m") {
    auto tmw = digit_sequence::thue_morse();
    const unsigned long p = 3;
    for (std::uint64_t m = 1; m <= 2000; m += 97) {
        Rat d = Rat((long)p) * prefix_rational(tmw, m + 1, p) - prefix_rational(tmw, m, p);
        d.canonicalize();
        CHECK(d == tmw.at0(m));
    }
}

TEST_CASE("linear_form_valuation examples") {
    auto tmw = digit_sequence::thue_morse();
    SUBCASE("k=1 family, p=3: v = 12") {
        const Int b = 1 + ppow(3, 2);
        const Int a = 322;  // 1 - 3 - 2*3^4 + 2*3^5
        valuation v = linear_form_valuation(a, b, tmw, 3, 4096);
        CHECK(v.exact);
        CHECK(v.value == 12);
    }
    SUBCASE("k=1 family, p=2: v = 3*2^2 + 1 = 13") {
        const Int b = 1 + ppow(2, 2);
        Int a = 0, pw = 1;
        for (int i = 0; i < 6; ++i) {
            a += (tm_digit(i) + (i >= 2 ? tm_digit(i - 2) : 0)) * pw;
            pw *= 2;
        }
        valuation v = linear_form_valuation(a, b, tmw, 2, 4096);
        CHECK(v.exact);
        CHECK(v.value == 13);
    }
    SUBCASE("first digit stripped: v(xi - c_0) = 1 when p does not divide c_1") {
        valuation v = linear_form_valuation(1, 1, tmw, 3, 1024);
        CHECK(v.exact);
        CHECK(v.value == 1);
    }
    SUBCASE("b = 0 reduces to the integer valuation") {
        valuation v = linear_form_valuation(Int(54), Int(0), tmw, 3, 64);
        CHECK(v.exact);
        CHECK(v.value == 3);
    }
    CHECK_THROWS_AS(linear_form_valuation(0, 0, tmw, 3, 64), std::invalid_argument);
}

TEST_CASE("linear_form_valuation homogeneity") {
    auto tmw = digit_sequence::thue_morse();
    const unsigned long p = 3;
    const Int a = 322, b = 10;
    const long base = linear_form_valuation(a, b, tmw, p, 4096).value;
    for (long lam : {2L, 3L, 9L, -6L, 45L}) {
        valuation v = linear_form_valuation(lam * a, lam * b, tmw, p, 4096);
        CHECK(v.exact);
        CHECK(v.value == base + int_valuation(lam, p));
    }
}

TEST_CASE("tail valuation: v(xi - C_m) = m for unit digits") {
    auto tmw = digit_sequence::thue_morse();
    for (unsigned long p : {2ul, 3ul}) {
        for (std::uint64_t m = 1; m <= 2000; m = 2 * m + 3) {
            Int Cm = truncated_integer(tmw, m, p);
            valuation v = linear_form_valuation(Cm, 1, tmw, p, 1u << 14);
            REQUIRE(v.exact);
            REQUIRE(v.value == static_cast<long>(m));
        }
    }
}

TEST_CASE("guard behaviour") {
    SUBCASE("undecided within the guard reports exact = false") {
        // digits 1,0,0,0,... represent the rational 1; xi - 1 never decides
        auto oneonly = digit_sequence::prefix_then_periodic({1}, {0});
        valuation v = linear_form_valuation(1, 1, oneonly, 3, 512);
        CHECK_FALSE(v.exact);
        CHECK(v.value == 512);
    }
    SUBCASE("finite sequence exact hit reports infinite") {
        auto fin = digit_sequence::from_values({1, 0, 0, 0});
        valuation v = linear_form_valuation(1, 1, fin, 3, 512);
        CHECK(v.infinite);
    }
}

TEST_CASE("lacunary_product examples") {
    CHECK(lacunary_product(2, 0) == Rat(1, 2));
    CHECK(lacunary_product(2, 2) == Rat(45, 128));
    auto tmw = digit_sequence::thue_morse();
    Rat z16 = prefix_rational(tmw, 16, 3);
    Rat lhs = Rat(3) * z16;
    lhs.canonicalize();
    CHECK(lhs == lacunary_product(3, 3));
}
