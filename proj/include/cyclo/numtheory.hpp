#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "cyclo/intpoly.hpp"

namespace cyclo {

/// Primes <= limit, ascending.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Shared immutable prime table (primes below one million), built once.
/// Safe for concurrent readers; enough trial divisors to factor any
/// 64-bit n whose second-largest prime factor is below 10^6.
const std::vector<std::uint32_t>& small_primes();

namespace detail {
/// Smallest-prime-factor table for n < 2^20, built once and immutable.
const std::vector<std::uint32_t>& spf_table();
}  // namespace detail

/// Mobius function. Throws std::domain_error for n = 0.
int moebius(std::uint64_t n);

/// Euler totient. Throws std::domain_error for n = 0.
std::uint64_t euler_phi(std::uint64_t n);

/// Squarefree kernel: product of the distinct primes dividing n.
std::uint64_t squarefree_kernel(std::uint64_t n);

/// Ramanujan sum r_n(m), evaluated through the multiplicative closed form
/// mu(n/g) * phi(n) / phi(n/g) with g = gcd(n, m).
long long ramanujan_sum(std::uint64_t n, std::uint64_t m);

/// Number of partitions of k, by the pentagonal-number recurrence.
mpz_class partition_count(unsigned k);

/// n-th cyclotomic polynomial, degree phi(n), via the squarefree product
/// of (1 - x^d) factors and exact polynomial division. Integer arithmetic
/// throughout; a division remainder would indicate a bug and throws.
IntPoly cyclotomic_poly(std::uint64_t n);

/// A positive integer carried together with its prime factorization.
/// Invariants: value equals the product of the prime powers and the
/// primes are strictly increasing.
struct FactoredNat {
    mpz_class value = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;  // (prime, exponent)

    /// Factor a 64-bit integer by trial division against the shared prime
    /// table. Throws std::domain_error when a cofactor cannot be resolved
    /// (two prime factors above 10^6) or n = 0.
    static FactoredNat of(std::uint64_t n);

    /// Assemble from (prime, exponent) pairs in any order; exponent-0
    /// entries are dropped and equal primes merged.
    static FactoredNat from_factors(std::vector<std::pair<std::uint64_t, unsigned>> fs);

    bool is_one() const { return factors.empty(); }
    bool squarefree() const;
    int mu() const;           // 0 when not squarefree
    mpz_class phi() const;
    FactoredNat radical() const;
    std::uint64_t divisor_count() const;
    unsigned exponent_of(std::uint64_t p) const;

    FactoredNat times(const FactoredNat& o) const;
};

/// The four finite moduli that index value-set and average computations:
/// M_k = k * prod_{p<=k} p, Q_k = prod_{p<=k} p, R_k = prod_{2<p<k} p,
/// N_k = lcm(1..k) * prod_{p<=k} p.
struct SpecialModuli {
    FactoredNat M, Q, R, N;
};
SpecialModuli special_moduli(unsigned k);

/// One divisor of a FactoredNat, exponents aligned with its factor list.
struct Divisor {
    mpz_class value;
    std::vector<unsigned> exponents;
};

/// Streams the divisors of a fixed FactoredNat in ascending order without
/// materializing the whole set. Each divisor is produced exactly once.
class DivisorStream {
public:
    explicit DivisorStream(const FactoredNat& x);

    /// Next divisor, or nullptr when exhausted. The pointer stays valid
    /// until the following call.
    const Divisor* next();

private:
    struct Entry {
        mpz_class value;
        std::vector<unsigned> exponents;
        bool operator>(const Entry& o) const { return value > o.value; }
    };
    std::vector<std::pair<std::uint64_t, unsigned>> factors_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
    Divisor current_;
};

template <class F>
void for_each_divisor(const FactoredNat& x, F&& f) {
    DivisorStream stream(x);
    while (const Divisor* d = stream.next()) f(*d);
}

}  // namespace cyclo
