#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclo/coeff.hpp"
#include "cyclo/numtheory.hpp"
#include "cyclo/rat.hpp"

namespace cyclo {

/// The value set A(k) = {a_n(k) : n >= 1} together with its parity split
/// and summary statistics. values always contains {-1, 0, 1}; for odd k
/// the set is symmetric. parity_even/parity_odd are the values attained
/// over even and odd n respectively; diff = values minus parity_even.
struct ValueSetReport {
    unsigned k = 0;
    std::vector<long long> values;
    long long A = 0;
    long long A_plus = 0;
    long long A_minus = 0;
    bool convex = false;
    bool symmetric = false;
    std::vector<long long> parity_even;
    std::vector<long long> parity_odd;
    std::vector<long long> diff;
};

/// Compute A(k) from the finite divisor characterization over M_k,
/// folded onto odd squarefree kernels. threads = 0 picks the hardware
/// concurrency.
ValueSetReport value_set(unsigned k, unsigned threads = 0);

/// Reference computation of {0} u {a_d^{+-1}(k) : d | modulus}: the plain
/// divisor sweep, no folding. Slow for large moduli; used to cross-check
/// value_set and to build parity sets in tests.
std::vector<long long> value_sweep_literal(unsigned k, const FactoredNat& modulus);

enum class AverageRoute { divisor, partition, odd_partition, halved, prime };

/// e_k = zeta(2) * M(a_n(k)) as an exact rational; identical across all
/// admissible routes. halved (the sweep over M_k/2) requires odd k >= 3;
/// odd_partition and prime require an odd prime k.
Rat average_e(unsigned k, AverageRoute route = AverageRoute::partition);

/// Exact zeta(2)-scaled densities of the nonzero coefficient values.
/// delta(a_n(k) = 0) is the symbolic complement 1 - (6/pi^2) * q.
struct DensityTable {
    unsigned k = 0;
    std::vector<std::pair<long long, Rat>> scaled;  // ascending in v, nonzero v only
    Rat q;                                          // sum of all scaled entries
    const Rat* find(long long v) const;
};

/// Default route: the halved sweep over M_k/2 for odd k >= 3, the full
/// M_k sweep otherwise.
DensityTable density(unsigned k);

/// The full M_k sweep regardless of parity (cross-check route).
DensityTable density_route_full(unsigned k);

/// f_k = zeta(2) M(mu(n) a_n(k)) and g_k = zeta(2) M(mu(n)^2 a_n(k)),
/// swept over the squarefree modulus Q_k; e_k comes along for free.
struct AveragesReport {
    unsigned k = 0;
    Rat e, f, g;
};
AveragesReport twisted_averages(unsigned k);

/// g_k through the partition formula (independent route).
Rat twisted_g_partition_route(unsigned k);

struct KminResult {
    long long v = 0;
    bool found = false;
    unsigned k = 0;        // valid when found
    mpz_class witness_n;   // some n with a_n(k) = v, valid when found
};

/// Smallest k with v in A(k), by ascending scan of value_set. Returns
/// found = false if the scan ceiling is exceeded.
KminResult kmin(long long v, unsigned ceiling = 120, unsigned threads = 0);

/// Shared ascending scan for several target values at once.
std::vector<KminResult> kmin_batch(const std::vector<long long>& values, unsigned ceiling = 120,
                                   unsigned threads = 0);

/// Consecutive odd primes p1 < p2 < p3 with p3 <= k < p1 + p2 (they exist
/// for every k >= 13), plus the verified witness a_{p1 p2 p3}(k) = -2.
struct MinusTwoWitness {
    std::uint64_t p1 = 0, p2 = 0, p3 = 0;
    long long value = 0;
};
MinusTwoWitness minus_two_construction(unsigned k);

/// Finite-x empirical average (1/x) sum_{n<=x} a_n(k) and, when v is
/// given, the empirical frequency of a_n(k) = v. Direct sweep with a
/// smallest-prime-factor sieve.
struct EmpiricalStats {
    Rat average;
    std::optional<Rat> frequency;
};
EmpiricalStats empirical_stats(unsigned k, std::uint64_t x, std::optional<long long> v = {});

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass() const;
};

/// Ranges for the identity suite; the defaults match the documented
/// verification envelope of the library.
struct IdentityBounds {
    unsigned seesaw_kmax = 50;
    unsigned moller_kmax = 60;
    unsigned integrality_kmax = 60;
    unsigned g_kmax = 50;
    std::vector<unsigned> g2q_primes = {3, 5, 7, 11, 13};
    unsigned factor_two_kmax = 40;  // odd k only
    unsigned eps2_remark_kmax = 25;
    unsigned divisor_sum_kmax = 12;
    unsigned nicol_nmax = 200;
    unsigned route_kmax = 30;
    unsigned valueset_kmax = 40;
    unsigned literal_sweep_kmax = 24;
    unsigned doubling_nmax = 1000;
    unsigned doubling_kmax = 30;
    unsigned symmetry_nmax = 300;
    unsigned prime_toggle_nmax = 100;
    unsigned prime_toggle_qmax = 50;
    unsigned threads = 0;

    void cap(unsigned kmax);  // clamp every k-style bound to kmax
};

/// Run every proved identity and recorded observation over the given
/// ranges; each check reports pass/fail plus counterexample payloads.
IdentityReport verify_identities(const IdentityBounds& bounds = {});

/// One (n, k, eps) where the three coefficient engines disagree.
struct EngineDisagreement {
    std::uint64_t n = 0;
    unsigned k = 0;
    int eps = 1;
    long long naive = 0, gt = 0, partition = 0;
};

/// Exhaustive comparison of coeff_naive, coeff_gt and the partition-sum
/// engine over n <= n_max, k <= k_max, eps = +-1. Empty result means full
/// agreement.
std::vector<EngineDisagreement> engine_agreement_sweep(std::uint64_t n_max, unsigned k_max,
                                                       unsigned threads = 0);

}  // namespace cyclo
