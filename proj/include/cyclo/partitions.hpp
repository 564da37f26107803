#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclo/numtheory.hpp"
#include "cyclo/rat.hpp"

namespace cyclo {

/// A partition of `total` in the normalized form (k_1^{n_1} ... k_s^{n_s}):
/// distinct part values, multiplicities weakly decreasing, ties broken by
/// descending value. Derived quantities: t = number of repeated parts
/// (they occupy the leading positions under this ordering), L = lcm of the
/// part values, G = their gcd.
struct PartitionSig {
    struct Part {
        unsigned value;
        unsigned mult;
    };
    std::vector<Part> parts;
    unsigned total = 0;
    unsigned t = 0;
    std::uint64_t L = 1;
    std::uint64_t G = 1;

    unsigned s() const { return static_cast<unsigned>(parts.size()); }
    std::string str() const;  // e.g. "1^2 2^1"

    /// Normalize a multiset of part values into a PartitionSig.
    static PartitionSig from_values(const std::vector<unsigned>& values);
};

namespace detail {
PartitionSig sig_from_sorted_desc(const std::vector<unsigned>& desc_values);

template <class F>
void partition_rec(std::vector<unsigned>& stack, unsigned remaining, unsigned max_part,
                   bool odd_only, F& f) {
    if (remaining == 0) {
        f(sig_from_sorted_desc(stack));
        return;
    }
    for (unsigned v = std::min(max_part, remaining); v >= 1; --v) {
        if (odd_only && v % 2 == 0) continue;
        stack.push_back(v);
        partition_rec(stack, remaining - v, v, odd_only, f);
        stack.pop_back();
    }
}
}  // namespace detail

/// Every partition of k exactly once, parts generated in descending
/// lexicographic order (k first, 1^k last). odd_only restricts to
/// partitions into odd parts.
template <class F>
void for_each_partition(unsigned k, bool odd_only, F&& f) {
    std::vector<unsigned> stack;
    if (k == 0) {
        f(PartitionSig{});
        return;
    }
    detail::partition_rec(stack, k, k, odd_only, f);
}

std::vector<PartitionSig> enumerate_partitions(unsigned k, bool odd_only = false);

/// The sign weight eps_2(lambda) in {0, +-1/2, +-1}: eps_1 from the
/// three-case rule on the repeated parts, times the Mobius values of
/// L over the simple parts.
Rat eps2(const PartitionSig& sig);

/// One summand of the partition formula: the product over the parts of
/// (-1)^{n_j} C(eps * mu_q[k_j], n_j), evaluated through the three-case
/// binomial table. mu_q[c] must hold mu(n/c), with 0 when c does not
/// divide n. Always in {-1, 0, 1}.
int partition_term(const PartitionSig& sig, const int* mu_q, int eps);

/// a_n^eps(k) as the sum of partition_term over all partitions of k.
long long coeff_via_partitions(std::uint64_t n, unsigned k, int eps);

/// mu(n/c) for c = 1..k, with the convention mu(x) = 0 for non-integer x.
std::vector<int> mu_quotient_table(std::uint64_t n, unsigned k);

/// Closed form of sum_{d|r} (1/d) * prod_j (-1)^{n_j} C(eps*mu(d/k_j), n_j),
/// per the partition's repeated/simple split. Zero unless L(lambda) | r and
/// the Mobius conditions hold.
Rat partition_divisor_sum(const PartitionSig& sig, const FactoredNat& r, int eps);

/// The eps-symmetrized half-sum of partition_divisor_sum: equals
/// eps2(lambda)/L * prod_{p | r/L, p exc. L/G}(1 + 1/p) when L | r, else 0.
Rat symmetrized_divisor_sum(const PartitionSig& sig, const FactoredNat& r);

}  // namespace cyclo
