// Acceptance suite: regenerates every published table and re-proves the
// library's identities end to end, one pass/fail line per criterion.
// Usage: acceptance [--slow] [--only N] [--skip N]
//   --slow widens criterion 10 to the full |v| <= 70 scan with the
//   A(k) <= k sweep up to k = 105; the default run covers |v| <= 10.
//   Criterion 7 is a documented red (see its comment); ctest runs it
//   separately under WILL_FAIL.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cyclo/stats.hpp"
#include "cyclo/tables.hpp"

using namespace cyclo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& description, bool enabled, Outcome (*fn)()) {
    if (!enabled) return;
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (out.pass ? "PASS" : "FAIL") << "  [" << id << "] " << description << " ("
         << std::fixed;
    line.precision(1);
    line << secs << "s)";
    if (!out.detail.empty()) line << " -- " << out.detail;
    std::cout << line.str() << std::endl;
    if (!out.pass) ++failures;
}

Outcome table_criterion(int table_id) {
    auto mismatches = compare_tables(table_id);
    Outcome out;
    out.pass = mismatches.empty();
    if (!out.pass) out.detail = mismatches.front() + " (+" + std::to_string(mismatches.size() - 1) +
                                " more)";
    return out;
}

Outcome criterion_1() { return table_criterion(1); }
Outcome criterion_2() { return table_criterion(2); }
Outcome criterion_3() { return table_criterion(3); }
Outcome criterion_4() { return table_criterion(4); }
Outcome criterion_5() { return table_criterion(5); }
Outcome criterion_6() { return table_criterion(6); }

// Expected to stay red: the pinned reference list {34, 35, 45} disagrees
// with exact arithmetic. Recomputation gives violations at {33, 34, 45}
// below 50 (and again at 94): the dip at e_34 breaks both neighboring
// inequalities, 33 and 34. All e_k here are confirmed by three exact
// routes (partition, divisor, halved divisor) plus empirical sweeps, and
// the printed exact difference e_34 - e_35 matches the reference. The
// ctest registration marks this single criterion WILL_FAIL.
Outcome criterion_7() {
    Outcome out;
    std::vector<Rat> e(52);
    for (unsigned k = 1; k <= 51; ++k) e[k] = average_e(k, AverageRoute::partition);
    Rat seesaw34 = e[34] - e[35];  // (-1)^34 (e_34 - e_35)
    if (seesaw34 != Rat(-18059, 4626720)) {
        out.detail = "e_34 - e_35 = " + seesaw34.str();
        return out;
    }
    std::vector<unsigned> violations;
    for (unsigned k = 1; k <= 50; ++k) {
        Rat diff = e[k] - e[k + 1];
        bool positive = k % 2 == 0 ? diff.sign() > 0 : diff.sign() < 0;
        if (!positive) violations.push_back(k);
    }
    out.pass = violations == std::vector<unsigned>{34, 35, 45};
    std::ostringstream os;
    os << "e_34 - e_35 = -18059/4626720 exact; computed violations:";
    for (unsigned k : violations) os << ' ' << k;
    os << " (expected 34 35 45)";
    if (!out.pass)
        os << "; e_33 = " << e[33].str() << " > e_34 = " << e[34].str()
           << " and e_36 = " << e[36].str() << " > e_35 = " << e[35].str()
           << ", so 33 violates and 35 does not";
    out.detail = os.str();
    return out;
}

Outcome criterion_8() {
    auto disagreements = engine_agreement_sweep(3000, 30);
    Outcome out;
    out.pass = disagreements.empty();
    if (!out.pass) {
        const auto& d = disagreements.front();
        std::ostringstream os;
        os << disagreements.size() << " disagreements, first at n=" << d.n << " k=" << d.k
           << " eps=" << d.eps;
        out.detail = os.str();
    } else {
        out.detail = "186000 coefficient triples agree";
    }
    return out;
}

Outcome criterion_9() {
    IdentityReport rep = verify_identities(IdentityBounds{});
    Outcome out;
    out.pass = rep.all_pass();
    std::ostringstream os;
    unsigned passed = 0;
    for (const auto& c : rep.checks) {
        if (c.pass) ++passed;
        else os << (os.str().empty() ? "failed: " : ", ") << c.name;
    }
    out.detail = std::to_string(passed) + "/" + std::to_string(rep.checks.size()) + " checks";
    if (!out.pass) out.detail += "; " + os.str();
    return out;
}

bool slow_mode = false;

Outcome criterion_10() {
    Outcome out;
    long long vmax = slow_mode ? 70 : 10;
    unsigned kmax = 105;
    std::map<long long, unsigned> first_k;
    bool a_bound_ok = true;
    unsigned pending = static_cast<unsigned>(2 * vmax + 1);
    for (unsigned k = 1; k <= kmax; ++k) {
        ValueSetReport vs = value_set(k);
        if (slow_mode && vs.A > static_cast<long long>(k)) a_bound_ok = false;
        for (long long v = -vmax; v <= vmax; ++v) {
            if (first_k.count(v)) continue;
            if (std::binary_search(vs.values.begin(), vs.values.end(), v)) {
                first_k[v] = k;
                --pending;
            }
        }
        if (!slow_mode && pending == 0) break;
    }
    unsigned worst = 0;
    for (auto [v, k] : first_k) worst = std::max(worst, k);
    out.pass = pending == 0 && a_bound_ok && first_k[-2] == 7 && worst <= 105;
    std::ostringstream os;
    os << "|v| <= " << vmax << ", max k_min = " << worst << ", k_min(-2) = " << first_k[-2];
    if (slow_mode) os << (a_bound_ok ? ", A(k) <= k up to 105" : ", A(k) <= k FAILED");
    out.detail = os.str();
    return out;
}

Outcome criterion_11() {
    Outcome out;
    constexpr double pi2 = 3.14159265358979323846 * 3.14159265358979323846;
    EmpiricalStats avg2 = empirical_stats(2, 1'000'000);
    double target_avg = 6.0 * 0.5 / pi2;
    double rel_avg = std::abs(avg2.average.to_double() - target_avg) / target_avg;

    EmpiricalStats freq7 = empirical_stats(7, 1'000'000, -2);
    double target_freq = (6.0 / pi2) / 576.0;
    double rel_freq = std::abs(freq7.frequency->to_double() - target_freq) / target_freq;

    out.pass = rel_avg <= 0.01 && rel_freq <= 0.25;
    std::ostringstream os;
    os.precision(4);
    os << "avg k=2 rel err " << rel_avg << " (<= 0.01), freq k=7 v=-2 rel err " << rel_freq
       << " (<= 0.25)";
    out.detail = os.str();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0, skip = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--slow") == 0) slow_mode = true;
        else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--skip") == 0 && i + 1 < argc) skip = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--slow] [--only N] [--skip N]\n";
            return 2;
        }
    }
    auto enabled = [&](int id) { return (only == 0 || only == id) && id != skip; };

    run(1, "Table 1: A(k) for k = 1..30", enabled(1), criterion_1);
    run(2, "Table 2: e_k for k = 1..20 (with the corrected entries)", enabled(2), criterion_2);
    run(3, "Table 3: per-partition breakdown of e_4", enabled(3), criterion_3);
    run(4, "Table 4: scaled densities for k = 1..16", enabled(4), criterion_4);
    run(5, "Table 5: parity differences for odd k <= 53", enabled(5), criterion_5);
    run(6, "Table 6: f_k, g_k for k = 1..20", enabled(6), criterion_6);
    run(7, "see-saw counterexamples at exactly {34, 35, 45} below 50", enabled(7), criterion_7);
    run(8, "engine equivalence for n <= 3000, k <= 30, eps = +-1", enabled(8), criterion_8);
    run(9, "identity suite over the documented ranges", enabled(9), criterion_9);
    run(10, slow_mode ? "k_min for |v| <= 70 and A(k) <= k up to k = 105"
                      : "k_min subset |v| <= 10 (slow batch extends to 70)",
        enabled(10), criterion_10);
    run(11, "empirical convergence at x = 10^6", enabled(11), criterion_11);

    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
