#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cyclo/numtheory.hpp"
#include "cyclo/rat.hpp"

namespace cyclo {

/// Addresses one coefficient a_n^eps(k): the k-th Taylor coefficient of
/// prod_{d|n} (1 - x^d)^{eps * mu(n/d)}. For n > 1 this is the cyclotomic
/// coefficient a_n(k) when eps = +1 and the inverse-series coefficient
/// c_n(k) when eps = -1; for n = 1 both carry a sign flip.
struct CoeffQuery {
    std::uint64_t n = 1;
    unsigned k = 0;
    int eps = 1;
};

struct CoeffSeries {
    std::uint64_t n = 1;
    int eps = 1;
    std::vector<mpz_class> values;  // values[j] = a_n^eps(j), j = 0..order
};

/// Taylor expansion to the given order by multiplying the truncated series
/// (1 - x^d)^{+-1} of every divisor factor. The reference engine: slow but
/// transparently close to the defining product.
CoeffSeries coeff_naive(std::uint64_t n, int eps, unsigned order);

/// Fast single-coefficient engine. Reduces n to its squarefree kernel,
/// applies the degree and periodicity cutoffs, then runs the recursion
/// b_j = -(eps/j) * sum_{m<j} b_m T_{j-m} with T_r built from Ramanujan
/// sums of the kernel. Throws std::overflow_error if the value does not
/// fit a long long (possible only for k in the hundreds).
long long coeff_gt(const FactoredNat& n, unsigned k, int eps);
long long coeff_gt(std::uint64_t n, unsigned k, int eps);
long long coeff_gt(const CoeffQuery& q);

/// Coefficients r(0..order) of prod_d (1 - x^d)^{-a_d} for finitely many
/// nonzero integer exponents a_d, via the logarithmic-derivative recursion
/// d*r(d) = sum_{j=1}^{d} r(d-j) * sum_{t|j} t*a_t.
std::vector<mpz_class> log_derivative_recursion(const std::map<unsigned, long long>& exponents,
                                                unsigned order);

/// Even and odd parts (alpha_n(k), beta_n(k)) of a_n^eps(k) under the sign
/// flip eps -> -eps, so a_n^eps(k) = alpha + eps*beta. Both doubles to an
/// integer.
std::pair<Rat, Rat> even_odd_parts(std::uint64_t n, unsigned k);

/// Explicit closed forms for a_n^1(k), k = 1, 2, 3, in terms of Mobius
/// values at n, n/2, n/3.
long long closed_form_small_k(std::uint64_t n, unsigned k);

/// Batch evaluator for a_f^eps(k) where f is squarefree and described by a
/// bitmask over a fixed basis of primes. This is the inner engine of the
/// divisor and value-set sweeps: no allocation and no bignum work per call.
class SquarefreeCoeffEngine {
public:
    /// Basis: all primes <= kmax. kmax is also the largest admissible k.
    explicit SquarefreeCoeffEngine(unsigned kmax);

    static constexpr std::uint64_t kHuge = std::uint64_t(1) << 62;  // saturation cap

    /// A squarefree integer n, possibly too large to represent: mask holds
    /// the basis primes dividing n, mu the Mobius value of the whole n,
    /// value and phi saturate to kHuge. Primes of n outside the basis can
    /// never divide an index r <= kmax, so the mask alone drives the gcds.
    struct SquarefreeArg {
        std::uint32_t mask = 0;
        int mu = 1;
        std::uint64_t value = 1;
        std::uint64_t phi = 1;
    };

    unsigned kmax() const { return kmax_; }
    const std::vector<unsigned>& primes() const { return primes_; }
    std::uint32_t prime_mask(unsigned r) const { return rmask_[r]; }

    /// Argument for the product of the basis primes selected by mask.
    SquarefreeArg arg_for_mask(std::uint32_t mask) const;

    /// a_n^eps(k) for the squarefree n described by arg; k <= kmax().
    long long eval(const SquarefreeArg& arg, unsigned k, int eps) const;

private:
    unsigned kmax_;
    std::vector<unsigned> primes_;
    std::vector<std::uint32_t> rmask_;  // rmask_[r]: basis primes dividing r
};

}  // namespace cyclo
