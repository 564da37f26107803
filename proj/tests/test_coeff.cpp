#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <map>

#include "cyclo/coeff.hpp"
#include "cyclo/numtheory.hpp"

using namespace cyclo;

namespace {

std::vector<long long> to_ll(const CoeffSeries& s) {
    std::vector<long long> out;
    for (const auto& v : s.values) out.push_back(v.get_si());
    return out;
}

}  // namespace

TEST_CASE("naive series basics") {
    CHECK(to_ll(coeff_naive(1, +1, 1)) == std::vector<long long>{1, -1});
    CHECK(to_ll(coeff_naive(1, -1, 3)) == std::vector<long long>{1, 1, 1, 1});
    CHECK(coeff_naive(105, +1, 7).values[7] == -2);
    CHECK(to_ll(coeff_naive(6, -1, 4)) == std::vector<long long>{1, 1, 0, -1, -1});
    CHECK(to_ll(coeff_naive(6, +1, 2)) == std::vector<long long>{1, -1, 1});
}

TEST_CASE("naive series matches the polynomial") {
    for (std::uint64_t n = 2; n <= 150; ++n) {
        auto phi = static_cast<unsigned>(euler_phi(n));
        IntPoly poly = cyclotomic_poly(n);
        CoeffSeries s = coeff_naive(n, +1, phi + 5);
        for (unsigned k = 0; k <= phi + 5; ++k) CHECK(s.values[k] == poly.coeff(k));
    }
}

TEST_CASE("inverse series is periodic mod n") {
    for (std::uint64_t n : {2, 3, 6, 10, 15}) {
        CoeffSeries s = coeff_naive(n, -1, static_cast<unsigned>(3 * n));
        for (unsigned k = 0; k + n <= 3 * n; ++k) CHECK(s.values[k] == s.values[k + n]);
    }
}

TEST_CASE("gt engine fixed points") {
    CHECK(coeff_gt(105, 7, +1) == -2);
    CHECK(coeff_gt(12, 2, +1) == -1);   // reduces to a_6(1)
    CHECK(coeff_gt(6, 9, -1) == -1);    // periodicity: 9 mod 6 = 3
    CHECK(coeff_gt(1, 0, +1) == 1);
    CHECK(coeff_gt(1, 1, +1) == -1);
    CHECK(coeff_gt(1, 5, -1) == 1);
    CHECK(coeff_gt(2, 1, +1) == 1);
    CHECK(coeff_gt(CoeffQuery{105, 7, 1}) == -2);
    CHECK_THROWS_AS(coeff_gt(6, 1, 0), std::invalid_argument);
}

TEST_CASE("gt agrees with naive everywhere in a dense box") {
    for (std::uint64_t n = 1; n <= 400; ++n) {
        FactoredNat fn = FactoredNat::of(n);
        for (int eps : {+1, -1}) {
            CoeffSeries s = coeff_naive(n, eps, 25);
            for (unsigned k = 0; k <= 25; ++k)
                CHECK(coeff_gt(fn, k, eps) == s.values[k].get_si());
        }
    }
}

TEST_CASE("eps = -1 boundary coefficient at k = n - phi(n) is reachable") {
    // (1 - x^2)/(1 + x) = 1 - x: the top coefficient is nonzero
    CHECK(coeff_gt(2, 1, -1) == -1);
    CHECK(coeff_gt(2, 2, -1) == 1);  // wraps to the constant term
    CHECK(coeff_gt(15, 7, -1) == coeff_naive(15, -1, 7).values[7].get_si());
}

TEST_CASE("degree cutoff for the polynomial side") {
    for (std::uint64_t n : {3, 6, 10, 105}) {
        auto phi = static_cast<unsigned>(euler_phi(n));
        CHECK(coeff_gt(n, phi, +1) == 1);      // leading coefficient
        CHECK(coeff_gt(n, phi + 1, +1) == 0);  // past the degree
    }
}

TEST_CASE("doubling identity via gt") {
    for (std::uint64_t n = 1; n <= 1000; n += 2) {
        FactoredNat fn = FactoredNat::of(n);
        FactoredNat f2n = FactoredNat::of(2 * n);
        for (unsigned k = 0; k <= 30; ++k)
            for (int eps : {+1, -1}) {
                long long a = coeff_gt(fn, k, eps);
                CHECK(coeff_gt(f2n, k, eps) == (k % 2 ? -a : a));
            }
    }
}

TEST_CASE("squarefree kernel reduction") {
    // a_n = a_rad(n) at index k*rad/n when (n/rad) | k, else 0
    for (std::uint64_t n : {4, 8, 9, 12, 18, 36, 50}) {
        std::uint64_t rad = squarefree_kernel(n);
        std::uint64_t m = n / rad;
        for (unsigned k = 0; k <= 24; ++k) {
            long long expect = (k % m == 0) ? coeff_gt(rad, k / static_cast<unsigned>(m), +1) : 0;
            CHECK(coeff_gt(n, k, +1) == expect);
        }
    }
}

TEST_CASE("log-derivative recursion") {
    std::map<unsigned, long long> none;
    auto r = log_derivative_recursion(none, 5);
    CHECK(r == std::vector<mpz_class>{1, 0, 0, 0, 0, 0});

    std::map<unsigned, long long> inv{{1, -1}};  // product = 1 - x
    r = log_derivative_recursion(inv, 4);
    CHECK(r == std::vector<mpz_class>{1, -1, 0, 0, 0});

    std::map<unsigned, long long> geo{{1, 1}};  // product = 1/(1 - x)
    r = log_derivative_recursion(geo, 4);
    CHECK(r == std::vector<mpz_class>{1, 1, 1, 1, 1});

    // euler product prod (1-x^d)^{-1}: partition generating function
    std::map<unsigned, long long> parts;
    for (unsigned d = 1; d <= 20; ++d) parts[d] = 1;
    r = log_derivative_recursion(parts, 20);
    for (unsigned j = 0; j <= 20; ++j) CHECK(r[j] == partition_count(j));
}

TEST_CASE("even/odd parts") {
    auto [a6, b6] = even_odd_parts(6, 2);
    CHECK(a6 == Rat(1, 2));
    CHECK(b6 == Rat(1, 2));
    for (std::uint64_t n = 1; n <= 200; ++n)
        for (unsigned k = 0; k <= 12; ++k) {
            auto [alpha, beta] = even_odd_parts(n, k);
            CHECK(alpha + beta == Rat(coeff_gt(n, k, +1)));
            CHECK(alpha - beta == Rat(coeff_gt(n, k, -1)));
            CHECK((alpha * Rat(2)).is_integer());
            CHECK((beta * Rat(2)).is_integer());
        }
}

TEST_CASE("closed forms for k = 1, 2, 3") {
    CHECK(closed_form_small_k(6, 1) == -1);
    CHECK(closed_form_small_k(2, 2) == 0);
    CHECK(closed_form_small_k(15, 3) == coeff_gt(15, 3, +1));
    for (std::uint64_t n = 1; n <= 500; ++n)
        for (unsigned k = 1; k <= 3; ++k)
            CHECK(closed_form_small_k(n, k) == coeff_gt(n, k, +1));
    CHECK_THROWS_AS(closed_form_small_k(6, 0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_small_k(6, 4), std::invalid_argument);
}

TEST_CASE("large k falls back to the bignum recursion") {
    // k > 200 exercises the mpz path; prime and prime-power cases are known
    CHECK(coeff_gt(257, 250, +1) == 1);   // all coefficients of a prime cyclotomic are 1
    CHECK(coeff_gt(257, 250, -1) == 0);   // past the inverse-series block
    CHECK(coeff_gt(509, 300, +1) == 1);
    CHECK(coeff_gt(512, 256, +1) == coeff_gt(2, 1, +1));  // kernel reduction
    for (unsigned k : {201u, 230u}) CHECK(coeff_gt(6, k, -1) == coeff_gt(6, k % 6, -1));
}

TEST_CASE("mask engine matches the factored engine") {
    SquarefreeCoeffEngine eng(30);
    const auto& primes = eng.primes();
    for (std::uint32_t mask = 0; mask < (1u << primes.size()); ++mask) {
        std::uint64_t f = 1;
        for (std::uint32_t bits = mask; bits; bits &= bits - 1)
            f *= primes[std::countr_zero(bits)];
        auto arg = eng.arg_for_mask(mask);
        for (unsigned k : {0u, 1u, 5u, 17u, 30u})
            for (int eps : {+1, -1}) CHECK(eng.eval(arg, k, eps) == coeff_gt(f, k, eps));
    }
}
