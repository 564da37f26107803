#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cyclo/stats.hpp"

using namespace cyclo;

TEST_CASE("value sets of the first few k") {
    ValueSetReport v1 = value_set(1);
    CHECK(v1.values == std::vector<long long>{-1, 0, 1});
    CHECK(v1.A == 1);
    CHECK(v1.symmetric);

    CHECK(value_set(2).A == 1);
    CHECK(value_set(6).A == 1);
    ValueSetReport v7 = value_set(7);
    CHECK(v7.A == 2);
    CHECK(v7.values == std::vector<long long>{-2, -1, 0, 1, 2});
    CHECK(v7.diff == std::vector<long long>{-2});
    CHECK(v7.convex);
    CHECK(value_set(30).A == 5);
}

TEST_CASE("value set matches the literal divisor sweep") {
    for (unsigned k = 1; k <= 20; ++k) {
        ValueSetReport vs = value_set(k);
        CHECK(vs.values == value_sweep_literal(k, special_moduli(k).M));
        auto odd_modulus = [&] {
            auto fs = special_moduli(k).M.factors;
            for (auto& [p, e] : fs)
                if (p == 2) e = 0;
            return FactoredNat::from_factors(fs);
        }();
        CHECK(vs.parity_odd == value_sweep_literal(k, odd_modulus));
    }
}

TEST_CASE("parity split structure") {
    for (unsigned k = 1; k <= 24; ++k) {
        ValueSetReport vs = value_set(k);
        CHECK(std::binary_search(vs.parity_odd.begin(), vs.parity_odd.end(), 0LL));
        CHECK(std::binary_search(vs.parity_even.begin(), vs.parity_even.end(), 0LL));
        if (k % 2 == 0) {
            CHECK(vs.parity_even == vs.values);
            CHECK(std::includes(vs.parity_even.begin(), vs.parity_even.end(),
                                vs.parity_odd.begin(), vs.parity_odd.end()));
            CHECK(vs.diff.empty());
        } else {
            // v attained over odd n iff -v attained over even n
            auto negated = vs.parity_odd;
            std::reverse(negated.begin(), negated.end());
            for (auto& x : negated) x = -x;
            CHECK(vs.parity_even == negated);
        }
    }
}

TEST_CASE("parity sets agree with direct coefficient sweeps") {
    // ground truth: a_n(k) over n <= x split by the parity of n
    constexpr std::uint64_t x = 300000;
    std::vector<unsigned> ks{2, 4, 7, 8, 9, 10};
    std::vector<std::set<long long>> seen_even(ks.size()), seen_odd(ks.size());
    for (std::uint64_t n = 1; n <= x; ++n) {
        FactoredNat fn = FactoredNat::of(n);
        for (size_t i = 0; i < ks.size(); ++i) {
            long long a = n == 1 ? (ks[i] == 1 ? 1 : 0) : coeff_gt(fn, ks[i], +1);
            (n % 2 ? seen_odd : seen_even)[i].insert(a);
        }
    }
    for (size_t i = 0; i < ks.size(); ++i) {
        ValueSetReport vs = value_set(ks[i]);
        std::vector<long long> odd(seen_odd[i].begin(), seen_odd[i].end());
        std::vector<long long> even(seen_even[i].begin(), seen_even[i].end());
        // every value this far out is already attained, in the right class
        CHECK(odd == vs.parity_odd);
        CHECK(even == vs.parity_even);
    }
}

TEST_CASE("averages against pinned values") {
    CHECK(average_e(1, AverageRoute::divisor) == Rat(0));
    CHECK(average_e(2, AverageRoute::divisor) == Rat(1, 2));
    CHECK(average_e(4, AverageRoute::divisor) == Rat(1, 3));
    CHECK(average_e(4, AverageRoute::partition) == Rat(1, 3));
    CHECK(average_e(10, AverageRoute::partition) == Rat(31, 160));
    CHECK(average_e(16, AverageRoute::partition) == Rat(733, 4032));
}

TEST_CASE("all average routes agree") {
    for (unsigned k = 1; k <= 26; ++k) {
        Rat ref = average_e(k, AverageRoute::partition);
        CHECK(average_e(k, AverageRoute::divisor) == ref);
        if (k >= 3 && k % 2 == 1) CHECK(average_e(k, AverageRoute::halved) == ref);
        bool odd_prime = k % 2 == 1 && k >= 3 && FactoredNat::of(k).factors.size() == 1 &&
                         FactoredNat::of(k).factors[0].second == 1;
        if (odd_prime) {
            CHECK(average_e(k, AverageRoute::prime) == ref);
            CHECK(average_e(k, AverageRoute::odd_partition) == ref);
        }
    }
    CHECK_THROWS_AS(average_e(4, AverageRoute::halved), std::invalid_argument);
    CHECK_THROWS_AS(average_e(9, AverageRoute::prime), std::invalid_argument);
    CHECK_THROWS_AS(average_e(2, AverageRoute::odd_partition), std::invalid_argument);
}

TEST_CASE("densities against pinned values") {
    DensityTable d7 = density(7);
    REQUIRE(d7.find(-2));
    CHECK(*d7.find(-2) == Rat(1, 576));
    CHECK(*d7.find(2) == Rat(1, 1152));
    CHECK(*d7.find(-1) == Rat(577, 2688));
    CHECK(*d7.find(1) == Rat(731, 2688));

    DensityTable d2 = density(2);
    CHECK(*d2.find(1) == Rat(7, 12));
    CHECK(*d2.find(-1) == Rat(1, 12));
    CHECK(d2.find(2) == nullptr);

    CHECK(*density(16).find(2) == Rat(5, 2688));
    CHECK(*density(13).find(-2) == Rat(43, 48384));
}

TEST_CASE("density route equivalence and mass bound") {
    for (unsigned k = 1; k <= 40; ++k) {
        DensityTable a = density(k);
        CHECK(a.q.sign() > 0);
        // 6 q / pi^2 <= 1, i.e. q < zeta(2); compare against 1.6449...
        CHECK(a.q.to_double() < 1.6449340668482264);
        if (k <= 21) {
            DensityTable b = density_route_full(k);
            CHECK(a.scaled == b.scaled);
        }
        // every charged value lies in the value set
        ValueSetReport vs = value_set(k);
        for (const auto& [v, r] : a.scaled) {
            CHECK(std::binary_search(vs.values.begin(), vs.values.end(), v));
            CHECK(r.sign() > 0);
        }
    }
}

TEST_CASE("twisted averages against pinned values") {
    CHECK(twisted_averages(1).f == Rat(-1));
    CHECK(twisted_averages(1).g == Rat(0));
    CHECK(twisted_averages(10).g == Rat(23, 96));
    AveragesReport a20 = twisted_averages(20);
    CHECK(a20.f == Rat(-173, 4032));
    CHECK(a20.g == Rat(101, 480));
    for (unsigned k = 1; k <= 22; ++k)
        CHECK(twisted_averages(k).g == twisted_g_partition_route(k));
}

TEST_CASE("kmin small values") {
    KminResult r = kmin(-2);
    CHECK(r.found);
    CHECK(r.k == 7);
    KminResult r1 = kmin(1);
    CHECK(r1.k == 1);
    KminResult r0 = kmin(0);
    CHECK(r0.k == 1);
    KminResult r2 = kmin(2);
    CHECK(r2.k == 7);

    KminResult unreachable = kmin(4, 10);  // ceiling too low on purpose
    CHECK(!unreachable.found);

    auto batch = kmin_batch({-2, -1, 0, 1, 2});
    CHECK(batch[0].k == 7);
    CHECK(batch[1].k == 1);
    CHECK(batch[2].k == 1);
    CHECK(batch[3].k == 1);
    CHECK(batch[4].k == 7);
}

TEST_CASE("kmin witnesses verify") {
    for (long long v = -6; v <= 6; ++v) {
        KminResult r = kmin(v);
        REQUIRE(r.found);
        CHECK(r.witness_n > 0);
        // witness already re-verified inside; cross-check the set membership
        ValueSetReport vs = value_set(r.k);
        CHECK(std::binary_search(vs.values.begin(), vs.values.end(), v));
        if (r.k > 1) {
            ValueSetReport prev = value_set(r.k - 1);
            CHECK(!std::binary_search(prev.values.begin(), prev.values.end(), v));
        }
    }
}

TEST_CASE("minus-two construction") {
    for (unsigned k : {13u, 14u, 20u, 37u, 100u}) {
        MinusTwoWitness w = minus_two_construction(k);
        CHECK(w.value == -2);
        CHECK(w.p3 <= k);
        CHECK(w.p1 + w.p2 > k);
        CHECK(w.p1 < w.p2);
        CHECK(w.p2 < w.p3);
    }
    CHECK_THROWS_AS(minus_two_construction(12), std::invalid_argument);
}

TEST_CASE("empirical sweep converges roughly") {
    EmpiricalStats s = empirical_stats(1, 100000);
    CHECK(std::abs(s.average.to_double()) < 0.01);

    EmpiricalStats s2 = empirical_stats(2, 100000);
    double target = 6.0 * 0.5 / (3.14159265358979323846 * 3.14159265358979323846);
    CHECK(std::abs(s2.average.to_double() - target) < 0.02);

    EmpiricalStats s7 = empirical_stats(7, 200000, -2);
    REQUIRE(s7.frequency.has_value());
    double dens = 6.0 / (3.14159265358979323846 * 3.14159265358979323846) / 576.0;
    CHECK(s7.frequency->to_double() > 0.5 * dens);
    CHECK(s7.frequency->to_double() < 2.0 * dens);
}

TEST_CASE("empirical beta average vanishes") {
    // M(beta_n(k)) = 0: the finite averages are already small at x = 1e5.
    // 2*beta = a_n^1(k) - a_n^{-1}(k), summed directly.
    constexpr long long x = 100000;
    constexpr unsigned kmax = 10;
    std::vector<long long> twice_beta_sum(kmax + 1, 0);
    for (long long n = 1; n <= x; ++n) {
        FactoredNat fn = FactoredNat::of(static_cast<std::uint64_t>(n));
        for (unsigned k = 1; k <= kmax; ++k)
            twice_beta_sum[k] += coeff_gt(fn, k, +1) - coeff_gt(fn, k, -1);
    }
    for (unsigned k = 1; k <= kmax; ++k)
        CHECK(std::abs(Rat(twice_beta_sum[k], 2 * x).to_double()) <= 0.02);
}

TEST_CASE("identity report smoke") {
    IdentityBounds b;
    b.cap(14);
    b.nicol_nmax = 40;
    b.symmetry_nmax = 60;
    b.prime_toggle_nmax = 30;
    b.prime_toggle_qmax = 20;
    b.doubling_nmax = 100;
    IdentityReport rep = verify_identities(b);
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() >= 15);
}

TEST_CASE("engine agreement on a small box") {
    auto disagreements = engine_agreement_sweep(200, 18);
    CHECK(disagreements.empty());
}
