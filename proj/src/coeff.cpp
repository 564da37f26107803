#include "cyclo/coeff.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace cyclo {

namespace {

void check_eps(int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
}

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
    if (a >= SquarefreeCoeffEngine::kHuge || b >= SquarefreeCoeffEngine::kHuge)
        return SquarefreeCoeffEngine::kHuge;
    if (a != 0 && b > SquarefreeCoeffEngine::kHuge / a) return SquarefreeCoeffEngine::kHuge;
    return a * b;
}

// b_j = -(eps/j) * sum_{m<j} b_m T_{j-m}, divisions exact by construction.
// A non-integral step means the inputs were inconsistent, so it throws.
__int128 gt_recursion_i128(const std::vector<long long>& T, unsigned k, int eps) {
    std::vector<__int128> b(k + 1);
    b[0] = 1;
    for (unsigned j = 1; j <= k; ++j) {
        __int128 acc = 0;
        for (unsigned m = 0; m < j; ++m) acc += b[m] * T[j - m];
        if (acc % static_cast<long long>(j) != 0)
            throw std::logic_error("coeff_gt: non-exact division in recursion");
        b[j] = -(eps * acc) / static_cast<long long>(j);
    }
    return b[k];
}

mpz_class gt_recursion_mpz(const std::vector<long long>& T, unsigned k, int eps) {
    std::vector<mpz_class> b(k + 1);
    b[0] = 1;
    for (unsigned j = 1; j <= k; ++j) {
        mpz_class acc = 0;
        for (unsigned m = 0; m < j; ++m) acc += b[m] * static_cast<long>(T[j - m]);
        mpz_class q, rem;
        mpz_tdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), j);
        if (sgn(rem) != 0) throw std::logic_error("coeff_gt: non-exact division in recursion");
        b[j] = eps == 1 ? mpz_class(-q) : q;
    }
    return b[k];
}

// T_r = mu(n) * mu(gcd(r, n)) * phi(gcd(r, n)) for r = 1..k, sieve style
// over the primes of the squarefree n.
std::vector<long long> gt_weights(const FactoredNat& n, unsigned k) {
    std::vector<long long> phi_g(k + 1, 1);
    std::vector<unsigned char> parity(k + 1, 0);
    for (const auto& [p, e] : n.factors) {
        if (p > k) break;
        for (std::uint64_t r = p; r <= k; r += p) {
            phi_g[r] *= static_cast<long long>(p - 1);
            parity[r] ^= 1;
        }
    }
    int mu_n = n.factors.size() % 2 == 0 ? 1 : -1;
    std::vector<long long> T(k + 1, 0);
    for (unsigned r = 1; r <= k; ++r) T[r] = mu_n * (parity[r] ? -phi_g[r] : phi_g[r]);
    return T;
}

long long gt_squarefree(const FactoredNat& n, unsigned k, int eps) {
    if (k == 0) return 1;
    auto T = gt_weights(n, k);
    if (k <= 200) {
        __int128 v = gt_recursion_i128(T, k, eps);
        if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
            throw std::overflow_error("coeff_gt: coefficient exceeds 64 bits");
        return static_cast<long long>(v);
    }
    mpz_class v = gt_recursion_mpz(T, k, eps);
    if (!v.fits_slong_p()) throw std::overflow_error("coeff_gt: coefficient exceeds 64 bits");
    return v.get_si();
}

}  // namespace

long long coeff_gt(const FactoredNat& n, unsigned k, int eps) {
    check_eps(eps);
    if (k == 0) return 1;
    if (n.is_one()) {
        // the product degenerates to (1 - x)^eps
        if (eps == 1) return k == 1 ? -1 : 0;
        return 1;
    }
    if (!n.squarefree()) {
        // reduce to the squarefree kernel; nonzero only when (n/rad) | k
        std::uint64_t m = 1;
        for (const auto& [p, e] : n.factors)
            for (unsigned i = 1; i < e; ++i) {
                m *= p;
                if (m > k) return 0;
            }
        if (k % m != 0) return 0;
        return coeff_gt(n.radical(), k / m, eps);
    }
    mpz_class phi = n.phi();
    if (eps == 1) {
        if (phi < static_cast<unsigned long>(k)) return 0;
        return gt_squarefree(n, k, eps);
    }
    // eps = -1: the series is periodic in k modulo n, and vanishes past
    // degree n - phi(n) within one period.
    unsigned k1 = k;
    if (n.value <= static_cast<unsigned long>(k)) {
        mpz_class r = mpz_class(static_cast<unsigned long>(k)) % n.value;
        k1 = static_cast<unsigned>(r.get_ui());
    }
    mpz_class codegree = n.value - phi;
    if (codegree < static_cast<unsigned long>(k1)) return 0;
    return gt_squarefree(n, k1, eps);
}

long long coeff_gt(std::uint64_t n, unsigned k, int eps) {
    return coeff_gt(FactoredNat::of(n), k, eps);
}

long long coeff_gt(const CoeffQuery& q) {
    return coeff_gt(q.n, q.k, q.eps);
}

CoeffSeries coeff_naive(std::uint64_t n, int eps, unsigned order) {
    check_eps(eps);
    if (n == 0) throw std::domain_error("coeff_naive: n must be positive");
    CoeffSeries s;
    s.n = n;
    s.eps = eps;
    s.values.assign(order + 1, mpz_class(0));
    s.values[0] = 1;

    // Only divisors d with mu(n/d) != 0 contribute: d = (n/rad) * d' for
    // the divisors d' of the squarefree kernel.
    std::uint64_t rad = squarefree_kernel(n);
    std::uint64_t base = n / rad;
    std::vector<std::uint64_t> kernel_divs;
    for (std::uint64_t d = 1; d * d <= rad; ++d) {
        if (rad % d) continue;
        kernel_divs.push_back(d);
        if (d != rad / d) kernel_divs.push_back(rad / d);
    }
    for (std::uint64_t dk : kernel_divs) {
        std::uint64_t d = base * dk;
        if (d > order) continue;  // both factor kinds act as identity past the truncation
        int e = eps * moebius(rad / dk);
        if (e == 1) {
            // multiply by (1 - x^d), truncated
            for (std::uint64_t i = order; i >= d; --i) s.values[i] -= s.values[i - d];
        } else {
            // divide by (1 - x^d): multiply by the geometric series in x^d
            for (std::uint64_t i = d; i <= order; ++i) s.values[i] += s.values[i - d];
        }
    }
    return s;
}

std::vector<mpz_class> log_derivative_recursion(const std::map<unsigned, long long>& exponents,
                                                unsigned order) {
    // c_j = sum_{t|j} t * a_t, assembled sieve style from the sparse map
    std::vector<mpz_class> c(order + 1, mpz_class(0));
    for (const auto& [d, a] : exponents) {
        if (d == 0) throw std::invalid_argument("log_derivative_recursion: index 0");
        if (a == 0) continue;
        mpz_class da = mpz_class(static_cast<long>(a)) * static_cast<unsigned long>(d);
        for (std::uint64_t j = d; j <= order; j += d) c[j] += da;
    }
    std::vector<mpz_class> r(order + 1, mpz_class(0));
    r[0] = 1;
    for (unsigned d = 1; d <= order; ++d) {
        mpz_class acc = 0;
        for (unsigned j = 1; j <= d; ++j) acc += r[d - j] * c[j];
        mpz_class q, rem;
        mpz_tdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), d);
        if (sgn(rem) != 0) throw std::logic_error("log_derivative_recursion: non-exact division");
        r[d] = q;
    }
    return r;
}

std::pair<Rat, Rat> even_odd_parts(std::uint64_t n, unsigned k) {
    long long plus = coeff_gt(n, k, +1);
    long long minus = coeff_gt(n, k, -1);
    return {Rat(plus + minus, 2), Rat(plus - minus, 2)};
}

long long closed_form_small_k(std::uint64_t n, unsigned k) {
    if (k < 1 || k > 3) throw std::invalid_argument("closed_form_small_k: k must be 1, 2 or 3");
    long long mu_n = moebius(n);
    long long mu_half = n % 2 == 0 ? moebius(n / 2) : 0;
    long long mu_third = n % 3 == 0 ? moebius(n / 3) : 0;
    switch (k) {
        case 1:
            return -mu_n;
        case 2:
            return (mu_n * mu_n - mu_n) / 2 - mu_half;
        default:
            return (mu_n * mu_n - mu_n) / 2 + mu_half * mu_n - mu_third;
    }
}

SquarefreeCoeffEngine::SquarefreeCoeffEngine(unsigned kmax) : kmax_(kmax) {
    for (std::uint64_t p : sieve_primes(kmax)) primes_.push_back(static_cast<unsigned>(p));
    if (primes_.size() > 32)
        throw std::invalid_argument("SquarefreeCoeffEngine: prime basis exceeds 32 bits");
    rmask_.assign(kmax + 1, 0);
    for (size_t i = 0; i < primes_.size(); ++i)
        for (unsigned r = primes_[i]; r <= kmax; r += primes_[i])
            rmask_[r] |= std::uint32_t(1) << i;
}

SquarefreeCoeffEngine::SquarefreeArg SquarefreeCoeffEngine::arg_for_mask(std::uint32_t mask) const {
    SquarefreeArg a;
    a.mask = mask;
    a.mu = std::popcount(mask) % 2 == 0 ? 1 : -1;
    for (std::uint32_t bits = mask; bits; bits &= bits - 1) {
        unsigned p = primes_[std::countr_zero(bits)];
        a.value = mul_sat(a.value, p);
        a.phi = mul_sat(a.phi, p - 1);
    }
    return a;
}

long long SquarefreeCoeffEngine::eval(const SquarefreeArg& arg, unsigned k, int eps) const {
    if (k > kmax_) throw std::invalid_argument("SquarefreeCoeffEngine: k beyond basis");
    if (arg.value == 1) return eps == 1 ? (k == 0 ? 1 : (k == 1 ? -1 : 0)) : 1;

    unsigned kk = k;
    if (eps == 1) {
        if (arg.phi < k) return 0;
    } else {
        if (arg.value <= k) kk = k % static_cast<unsigned>(arg.value);
        if (arg.value < kHuge && arg.value - arg.phi < kk) return 0;
    }
    if (kk == 0) return 1;

    std::array<long long, 136> T;
    for (unsigned r = 1; r <= kk; ++r) {
        long long phi_g = 1;
        int sign = arg.mu;
        for (std::uint32_t bits = rmask_[r] & arg.mask; bits; bits &= bits - 1) {
            phi_g *= primes_[std::countr_zero(bits)] - 1;
            sign = -sign;
        }
        T[r] = sign * phi_g;
    }
    std::array<long long, 136> b;
    b[0] = 1;
    for (unsigned j = 1; j <= kk; ++j) {
        __int128 acc = 0;
        for (unsigned m = 0; m < j; ++m) acc += static_cast<__int128>(b[m]) * T[j - m];
        if (acc % static_cast<long long>(j) != 0)
            throw std::logic_error("SquarefreeCoeffEngine: non-exact division");
        b[j] = static_cast<long long>(-(eps * acc) / static_cast<long long>(j));
    }
    return b[kk];
}

}  // namespace cyclo
