#include "cyclo/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cyclo {

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<std::uint32_t> out;
        for (std::uint64_t p : sieve_primes(1'000'000)) out.push_back(static_cast<std::uint32_t>(p));
        return out;
    }();
    return table;
}

namespace detail {

const std::vector<std::uint32_t>& spf_table() {
    static const std::vector<std::uint32_t> table = [] {
        constexpr std::uint32_t size = 1u << 20;
        std::vector<std::uint32_t> spf(size, 0);
        for (std::uint32_t i = 2; i < size; ++i) {
            if (spf[i]) continue;
            for (std::uint32_t j = i; j < size; j += i)
                if (!spf[j]) spf[j] = i;
        }
        return spf;
    }();
    return table;
}

}  // namespace detail

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    auto sq = [](std::uint64_t x) { return static_cast<unsigned __int128>(x) * x; };
    while (r > 0 && sq(r) > n) --r;
    while (sq(r + 1) <= n) ++r;
    return r;
}

bool is_probable_prime(std::uint64_t n) {
    mpz_class z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factor: n must be positive");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    if (n < (1u << 20)) {
        const auto& spf = detail::spf_table();
        auto m = static_cast<std::uint32_t>(n);
        while (m > 1) {
            std::uint32_t p = spf[m];
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        return out;
    }
    for (std::uint32_t p : small_primes()) {
        std::uint64_t pp = static_cast<std::uint64_t>(p);
        if (pp * pp > n) break;
        if (n % pp) continue;
        unsigned e = 0;
        while (n % pp == 0) {
            n /= pp;
            ++e;
        }
        out.emplace_back(pp, e);
    }
    if (n > 1) {
        if (is_probable_prime(n)) {
            out.emplace_back(n, 1u);
        } else {
            std::uint64_t r = isqrt_u64(n);
            if (r * r == n && is_probable_prime(r)) {
                out.emplace_back(r, 2u);
            } else {
                throw std::domain_error("factor: cofactor exceeds trial-division range");
            }
        }
    }
    return out;
}

}  // namespace

int moebius(std::uint64_t n) {
    if (n == 0) throw std::domain_error("moebius: n must be positive");
    auto fs = factor_u64(n);
    for (const auto& [p, e] : fs)
        if (e > 1) return 0;
    return fs.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::domain_error("euler_phi: n must be positive");
    std::uint64_t phi = n;
    for (const auto& [p, e] : factor_u64(n)) phi = phi / p * (p - 1);
    return phi;
}

std::uint64_t squarefree_kernel(std::uint64_t n) {
    if (n == 0) throw std::domain_error("squarefree_kernel: n must be positive");
    std::uint64_t rad = 1;
    for (const auto& [p, e] : factor_u64(n)) rad *= p;
    return rad;
}

long long ramanujan_sum(std::uint64_t n, std::uint64_t m) {
    if (n == 0) throw std::domain_error("ramanujan_sum: n must be positive");
    std::uint64_t g = std::gcd(n, m);  // gcd(n, 0) = n, so r_n(0) = phi(n)
    std::uint64_t q = n / g;
    int mu_q = moebius(q);
    if (mu_q == 0) return 0;
    auto quot = static_cast<long long>(euler_phi(n) / euler_phi(q));
    return mu_q * quot;
}

mpz_class partition_count(unsigned k) {
    std::vector<mpz_class> p(k + 1);
    p[0] = 1;
    for (unsigned i = 1; i <= k; ++i) {
        mpz_class acc = 0;
        for (unsigned j = 1;; ++j) {
            std::uint64_t g1 = static_cast<std::uint64_t>(j) * (3 * j - 1) / 2;
            std::uint64_t g2 = static_cast<std::uint64_t>(j) * (3 * j + 1) / 2;
            if (g1 > i) break;
            if (j % 2)
                acc += p[i - g1];
            else
                acc -= p[i - g1];
            if (g2 <= i) {
                if (j % 2)
                    acc += p[i - g2];
                else
                    acc -= p[i - g2];
            }
        }
        p[i] = acc;
    }
    return p[k];
}

IntPoly cyclotomic_poly(std::uint64_t n) {
    if (n == 0) throw std::domain_error("cyclotomic_poly: n must be positive");
    if (n == 1) return IntPoly{-1, 1};  // x - 1

    std::uint64_t rad = squarefree_kernel(n);
    std::uint64_t stretch = n / rad;

    // Phi_rad as the exact quotient of the mu = +1 factors by the mu = -1
    // factors of prod_{d | rad} (1 - x^d)^{mu(rad/d)}.
    std::vector<std::uint64_t> divs;
    for (std::uint64_t d = 1; d * d <= rad; ++d) {
        if (rad % d) continue;
        divs.push_back(d);
        if (d != rad / d) divs.push_back(rad / d);
    }
    IntPoly num{1};
    std::vector<std::uint64_t> denominators;
    for (std::uint64_t d : divs) {
        int mu = moebius(rad / d);
        if (mu == 1)
            num = num * (IntPoly::monomial(1, 0) - IntPoly::monomial(1, static_cast<unsigned>(d)));
        else if (mu == -1)
            denominators.push_back(d);
    }
    IntPoly phi = num;
    for (std::uint64_t dd : denominators) {
        IntPoly factor = IntPoly::monomial(1, 0) - IntPoly::monomial(1, static_cast<unsigned>(dd));
        auto q = phi.divide_exact(factor);
        if (!q) throw std::logic_error("cyclotomic_poly: non-exact division");
        phi = std::move(*q);
    }

    if (stretch > 1) {
        std::vector<mpz_class> stretched(static_cast<size_t>(phi.degree()) * stretch + 1, mpz_class(0));
        for (int i = 0; i <= phi.degree(); ++i) stretched[static_cast<size_t>(i) * stretch] = phi.coeff(i);
        phi = IntPoly(std::move(stretched));
    }
    if (phi.degree() != static_cast<int>(euler_phi(n)))
        throw std::logic_error("cyclotomic_poly: degree mismatch");
    return phi;
}

FactoredNat FactoredNat::of(std::uint64_t n) {
    FactoredNat f;
    f.factors = factor_u64(n);
    f.value = mpz_class(static_cast<unsigned long>(n));
    return f;
}

FactoredNat FactoredNat::from_factors(std::vector<std::pair<std::uint64_t, unsigned>> fs) {
    std::sort(fs.begin(), fs.end());
    FactoredNat f;
    for (const auto& [p, e] : fs) {
        if (e == 0) continue;
        if (!f.factors.empty() && f.factors.back().first == p)
            f.factors.back().second += e;
        else
            f.factors.emplace_back(p, e);
    }
    for (const auto& [p, e] : f.factors) {
        mpz_class pp;
        mpz_ui_pow_ui(pp.get_mpz_t(), static_cast<unsigned long>(p), e);
        f.value *= pp;
    }
    return f;
}

bool FactoredNat::squarefree() const {
    for (const auto& [p, e] : factors)
        if (e > 1) return false;
    return true;
}

int FactoredNat::mu() const {
    if (!squarefree()) return 0;
    return factors.size() % 2 == 0 ? 1 : -1;
}

mpz_class FactoredNat::phi() const {
    mpz_class result = 1;
    for (const auto& [p, e] : factors) {
        mpz_class pp;
        mpz_ui_pow_ui(pp.get_mpz_t(), static_cast<unsigned long>(p), e - 1);
        result *= pp * (mpz_class(static_cast<unsigned long>(p)) - 1);
    }
    return result;
}

FactoredNat FactoredNat::radical() const {
    std::vector<std::pair<std::uint64_t, unsigned>> fs;
    for (const auto& [p, e] : factors) fs.emplace_back(p, 1u);
    return from_factors(std::move(fs));
}

std::uint64_t FactoredNat::divisor_count() const {
    std::uint64_t t = 1;
    for (const auto& [p, e] : factors) t *= e + 1;
    return t;
}

unsigned FactoredNat::exponent_of(std::uint64_t p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

FactoredNat FactoredNat::times(const FactoredNat& o) const {
    auto fs = factors;
    fs.insert(fs.end(), o.factors.begin(), o.factors.end());
    return from_factors(std::move(fs));
}

SpecialModuli special_moduli(unsigned k) {
    if (k == 0) throw std::domain_error("special_moduli: k must be positive");
    auto primes = sieve_primes(k);
    std::vector<std::pair<std::uint64_t, unsigned>> q_fs, r_fs, lcm_fs;
    for (std::uint64_t p : primes) {
        q_fs.emplace_back(p, 1u);
        if (p > 2 && p < k) r_fs.emplace_back(p, 1u);
        unsigned e = 0;
        std::uint64_t pe = 1;
        while (pe <= k / p) {
            pe *= p;
            ++e;
        }
        lcm_fs.emplace_back(p, e);  // p^e is the largest power of p that is <= k
    }
    SpecialModuli sm;
    sm.Q = FactoredNat::from_factors(q_fs);
    sm.R = FactoredNat::from_factors(r_fs);

    auto m_fs = q_fs;
    for (const auto& [p, e] : factor_u64(k)) m_fs.emplace_back(p, e);
    sm.M = FactoredNat::from_factors(std::move(m_fs));

    auto n_fs = q_fs;
    n_fs.insert(n_fs.end(), lcm_fs.begin(), lcm_fs.end());
    sm.N = FactoredNat::from_factors(std::move(n_fs));
    return sm;
}

DivisorStream::DivisorStream(const FactoredNat& x) : factors_(x.factors) {
    Entry one;
    one.value = 1;
    one.exponents.assign(factors_.size(), 0u);
    heap_.push(std::move(one));
}

const Divisor* DivisorStream::next() {
    if (heap_.empty()) return nullptr;
    Entry top = heap_.top();
    heap_.pop();
    // A divisor may only be extended at positions up to its first nonzero
    // exponent; every divisor then has exactly one generation path.
    size_t first_nonzero = top.exponents.size();
    for (size_t i = 0; i < top.exponents.size(); ++i) {
        if (top.exponents[i] > 0) {
            first_nonzero = i;
            break;
        }
    }
    for (size_t i = 0; i <= first_nonzero && i < factors_.size(); ++i) {
        if (top.exponents[i] >= factors_[i].second) continue;
        Entry child;
        child.exponents = top.exponents;
        ++child.exponents[i];
        child.value = top.value * static_cast<unsigned long>(factors_[i].first);
        heap_.push(std::move(child));
    }
    current_.value = std::move(top.value);
    current_.exponents = std::move(top.exponents);
    return &current_;
}

}  // namespace cyclo
