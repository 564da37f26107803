#include "cyclo/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cyclo {

namespace detail {

PartitionSig sig_from_sorted_desc(const std::vector<unsigned>& desc_values) {
    PartitionSig sig;
    for (unsigned v : desc_values) {
        if (!sig.parts.empty() && sig.parts.back().value == v)
            ++sig.parts.back().mult;
        else
            sig.parts.push_back({v, 1});
        sig.total += v;
    }
    std::stable_sort(sig.parts.begin(), sig.parts.end(),
                     [](const PartitionSig::Part& a, const PartitionSig::Part& b) {
                         return a.mult > b.mult;
                     });
    std::uint64_t g = 0;
    for (const auto& part : sig.parts) {
        if (part.mult >= 2) ++sig.t;
        sig.L = std::lcm<std::uint64_t>(sig.L, part.value);
        g = std::gcd<std::uint64_t>(g, part.value);
    }
    if (g != 0) sig.G = g;
    return sig;
}

}  // namespace detail

std::string PartitionSig::str() const {
    if (parts.empty()) return "()";
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += std::to_string(p.value) + "^" + std::to_string(p.mult);
    }
    return out;
}

PartitionSig PartitionSig::from_values(const std::vector<unsigned>& values) {
    std::vector<unsigned> sorted = values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return detail::sig_from_sorted_desc(sorted);
}

std::vector<PartitionSig> enumerate_partitions(unsigned k, bool odd_only) {
    std::vector<PartitionSig> out;
    for_each_partition(k, odd_only, [&](const PartitionSig& sig) { out.push_back(sig); });
    return out;
}

Rat eps2(const PartitionSig& sig) {
    if (sig.parts.empty()) return Rat(1);
    std::uint64_t lg = sig.L / sig.G;
    if (moebius(lg) == 0) return Rat(0);

    unsigned s = sig.s();
    unsigned t = sig.t;
    Rat eps1;
    if (t == 0) {
        if (s % 2 != 0) return Rat(0);
        eps1 = Rat(1);
    } else {
        int m1 = moebius(sig.L / sig.parts[0].value);
        if (m1 == 0) return Rat(0);
        for (unsigned i = 1; i < t; ++i)
            if (moebius(sig.L / sig.parts[i].value) != m1) return Rat(0);
        eps1 = Rat((s - t) % 2 != 0 ? m1 : 1, 2);
    }
    int tail = 1;
    for (unsigned i = t; i < s; ++i) tail *= moebius(sig.L / sig.parts[i].value);
    return eps1 * Rat(tail);
}

int partition_term(const PartitionSig& sig, const int* mu_q, int eps) {
    int prod = 1;
    for (const auto& part : sig.parts) {
        int a = eps * mu_q[part.value];
        // (-1)^j C(a, j) for a in {-1,0,1}: -a at j = 1, a(a-1)/2 beyond
        int factor = part.mult == 1 ? -a : (a == -1 ? 1 : 0);
        if (factor == 0) return 0;
        prod *= factor;
    }
    return prod;
}

std::vector<int> mu_quotient_table(std::uint64_t n, unsigned k) {
    std::vector<int> mu_q(k + 1, 0);
    for (unsigned c = 1; c <= k; ++c)
        if (n % c == 0) mu_q[c] = moebius(n / c);
    return mu_q;
}

long long coeff_via_partitions(std::uint64_t n, unsigned k, int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    if (n == 0) throw std::domain_error("coeff_via_partitions: n must be positive");
    if (k == 0) return 1;
    auto mu_q = mu_quotient_table(n, k);
    long long sum = 0;
    for_each_partition(k, false, [&](const PartitionSig& sig) {
        sum += partition_term(sig, mu_q.data(), eps);
    });
    return sum;
}

namespace {

// prod over the primes p | r/L with p not dividing L/G of (1 + sign/p)
Rat corrected_prime_product(const PartitionSig& sig, const FactoredNat& r, int sign) {
    std::uint64_t lg = sig.L / sig.G;
    Rat prod(1);
    for (const auto& [p, e] : r.factors) {
        unsigned vL = 0;
        for (std::uint64_t x = sig.L; x % p == 0; x /= p) ++vL;
        if (e <= vL) continue;      // p does not divide r/L
        if (lg % p == 0) continue;  // p divides L/G
        prod *= Rat(static_cast<long long>(p) + sign, static_cast<long long>(p));
    }
    return prod;
}

bool divides(std::uint64_t d, const mpz_class& n) {
    return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d)) != 0;
}

}  // namespace

Rat partition_divisor_sum(const PartitionSig& sig, const FactoredNat& r, int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    if (sig.parts.empty()) throw std::invalid_argument("partition_divisor_sum: empty partition");
    if (!divides(sig.L, r.value)) return Rat(0);

    unsigned s = sig.s();
    unsigned t = sig.t;
    if (t == 0) {
        if (moebius(sig.L / sig.G) == 0) return Rat(0);
        int tail = 1;
        for (const auto& part : sig.parts) tail *= moebius(sig.L / part.value);
        int lead = s % 2 == 0 ? 1 : -eps;  // (-eps)^s
        int sign = s % 2 == 0 ? 1 : -1;    // (-1)^s inside the prime product
        return Rat(lead * tail, static_cast<long long>(sig.L)) *
               corrected_prime_product(sig, r, sign);
    }
    int m1 = moebius(sig.L / sig.parts[0].value);
    if (m1 == 0) return Rat(0);
    for (unsigned i = 1; i < t; ++i)
        if (moebius(sig.L / sig.parts[i].value) != m1) return Rat(0);
    int tail = 1;
    for (unsigned i = t; i < s; ++i) tail *= moebius(sig.L / sig.parts[i].value);
    if (tail == 0) return Rat(0);
    int m1_pow = (s - t) % 2 != 0 ? m1 : 1;
    Rat bracket = corrected_prime_product(sig, r, +1) -
                  Rat(eps * m1) * corrected_prime_product(sig, r, -1);
    return Rat(m1_pow * tail, 2 * static_cast<long long>(sig.L)) * bracket;
}

Rat symmetrized_divisor_sum(const PartitionSig& sig, const FactoredNat& r) {
    if (sig.parts.empty()) throw std::invalid_argument("symmetrized_divisor_sum: empty partition");
    if (!divides(sig.L, r.value)) return Rat(0);
    return eps2(sig) * Rat(1, static_cast<long long>(sig.L)) *
           corrected_prime_product(sig, r, +1);
}

}  // namespace cyclo
