// Command-line front end: regenerate the published tables, query single
// coefficients, run the verification suites, search k_min, and benchmark
// the computation routes.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cyclo/coeff.hpp"
#include "cyclo/partitions.hpp"
#include "cyclo/stats.hpp"
#include "cyclo/tables.hpp"

using json = nlohmann::ordered_json;
using namespace cyclo;

namespace {

void emit(const json& doc, const std::string& format) {
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        // flat csv: one header row from the first object's keys
        const json& rows = doc.contains("rows") ? doc.at("rows") : doc;
        if (!rows.is_array() || rows.empty()) {
            std::cout << "\n";
            return;
        }
        std::string header;
        for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
            header += (header.empty() ? "" : ",") + it.key();
        std::cout << header << "\n";
        for (const auto& row : rows) {
            std::string line;
            for (auto it = row.begin(); it != row.end(); ++it) {
                std::string cell = it.value().is_string() ? it.value().get<std::string>()
                                                          : it.value().dump();
                if (cell.find(',') != std::string::npos) cell = "\"" + cell + "\"";
                line += (line.empty() ? "" : ",") + cell;
            }
            std::cout << line << "\n";
        }
    }
}

std::string set_literal(const std::vector<long long>& xs) {
    std::string out = "{";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out + "}";
}

long long run_engine(const std::string& engine, std::uint64_t n, unsigned k, int eps) {
    if (engine == "naive") return coeff_naive(n, eps, k).values[k].get_si();
    if (engine == "gt") return coeff_gt(n, k, eps);
    if (engine == "partition") return coeff_via_partitions(n, k, eps);
    throw CLI::ValidationError("--engine", "unknown engine " + engine);
}

double time_ms(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cyclotomic-coefficient statistics"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

    // coeff
    auto* coeff_cmd = app.add_subcommand("coeff", "evaluate a_n(k) or the inverse-series c_n(k)");
    coeff_cmd->fallthrough();
    std::uint64_t n = 1;
    unsigned k = 0;
    int eps = 1;
    std::string engine = "gt";
    unsigned series = 0;
    bool want_series = false;
    coeff_cmd->add_option("--n", n, "index n")->required()->check(CLI::PositiveNumber);
    coeff_cmd->add_option("--k", k, "coefficient index k")->required();
    coeff_cmd->add_option("--eps", eps, "+1 for a_n(k), -1 for c_n(k)")
        ->check(CLI::IsMember({1, -1}));
    coeff_cmd->add_option("--engine", engine, "naive, gt, partition, or all")
        ->check(CLI::IsMember({"naive", "gt", "partition", "all"}));
    coeff_cmd->add_option("--series", series, "print the whole series up to this order")
        ->each([&](const std::string&) { want_series = true; });

    // table
    auto* table_cmd = app.add_subcommand("table", "regenerate a published table");
    table_cmd->fallthrough();
    int table_id = 0;
    unsigned kmax = 0;
    table_cmd->add_option("--id", table_id, "table number 1..6")
        ->required()
        ->check(CLI::Range(1, 6));
    table_cmd->add_option("--kmax", kmax, "override the published range");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->fallthrough();
    std::string suite = "all";
    unsigned verify_kmax = 0;
    std::uint64_t verify_nmax = 600;
    unsigned verify_engines_kmax = 20;
    verify_cmd->add_option("--suite", suite, "all, identities, engines, or tables")
        ->check(CLI::IsMember({"all", "identities", "engines", "tables"}));
    verify_cmd->add_option("--kmax", verify_kmax, "cap the identity ranges");
    verify_cmd->add_option("--nmax", verify_nmax, "engine sweep: largest n");

    // kmin
    auto* kmin_cmd = app.add_subcommand("kmin", "smallest k with v among the coefficients");
    kmin_cmd->fallthrough();
    long long kmin_v = 0;
    bool kmin_v_set = false;
    std::vector<long long> kmin_range;
    unsigned ceiling = 120;
    kmin_cmd->add_option("--v", kmin_v, "single value")
        ->each([&](const std::string&) { kmin_v_set = true; });
    kmin_cmd->add_option("--range", kmin_range, "inclusive value range a b")->expected(2);
    kmin_cmd->add_option("--ceiling", ceiling, "scan ceiling (default 120)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "time the average routes and engines");
    bench_cmd->fallthrough();
    unsigned bench_k = 20;
    unsigned repeat = 3;
    std::uint64_t bench_n = 255255;
    bool bench_engines = false;
    bench_cmd->add_option("--k", bench_k, "index k")->required();
    bench_cmd->add_option("--repeat", repeat, "repetitions per route");
    bench_cmd->add_flag("--engine", bench_engines, "also time the coefficient engines");
    bench_cmd->add_option("--n", bench_n, "n used for the engine timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*coeff_cmd) {
            json doc;
            if (want_series) {
                doc["schema"] = "coeff_series";
                doc["n"] = n;
                doc["eps"] = eps;
                doc["order"] = series;
                std::vector<std::string> values;
                for (const auto& v : coeff_naive(n, eps, series).values)
                    values.push_back(v.get_str());
                doc["values"] = values;
            } else if (engine == "all") {
                doc["schema"] = "coeff";
                doc["n"] = n;
                doc["k"] = k;
                doc["eps"] = eps;
                long long a = run_engine("naive", n, k, eps);
                long long b = run_engine("gt", n, k, eps);
                long long c = run_engine("partition", n, k, eps);
                doc["values"] = {{"naive", a}, {"gt", b}, {"partition", c}};
                doc["agree"] = a == b && b == c;
                doc["value"] = a;
                emit(doc, format);
                return a == b && b == c ? 0 : 1;
            } else {
                doc["schema"] = "coeff";
                doc["n"] = n;
                doc["k"] = k;
                doc["eps"] = eps;
                doc["engine"] = engine;
                doc["value"] = run_engine(engine, n, k, eps);
            }
            emit(doc, format);
        } else if (*table_cmd) {
            auto rows = generate_table(table_id, kmax);
            if (format == "csv") {
                std::cout << to_csv(rows);
            } else {
                json doc;
                doc["schema"] = "table";
                doc["id"] = table_id;
                json jrows = json::array();
                for (const auto& row : rows)
                    jrows.push_back({{"row", row.row_key}, {"col", row.col_key},
                                     {"value", row.value}});
                doc["rows"] = jrows;
                if (table_id == 4) {
                    // the density at 0 is the complement of the tabulated mass,
                    // kept symbolic with a float rendering alongside
                    json zero = json::array();
                    for (unsigned k = 1; k <= (kmax ? kmax : 16); ++k) {
                        DensityTable dt = density(k);
                        constexpr double zeta2 = 1.6449340668482264;
                        std::ostringstream approx;
                        approx.precision(15);
                        approx << std::fixed << 1.0 - dt.q.to_double() / zeta2;
                        zero.push_back({{"k", k},
                                        {"symbolic", "1 - (6/pi^2) * " + dt.q.str()},
                                        {"approx", approx.str()}});
                    }
                    doc["zero_density"] = zero;
                }
                emit(doc, format);
            }
        } else if (*verify_cmd) {
            json doc;
            doc["schema"] = "verify";
            doc["suite"] = suite;
            json checks = json::array();
            bool pass = true;
            // a crashing suite becomes a failed check rather than a dead process
            auto guarded = [&](const char* name, auto&& fn) {
                try {
                    fn();
                } catch (const std::exception& e) {
                    checks.push_back({{"name", std::string(name) + "_crashed"},
                                      {"pass", false},
                                      {"detail", e.what()}});
                    pass = false;
                }
            };
            if (suite == "all" || suite == "tables") guarded("tables", [&] {
                auto mismatches = compare_tables();
                checks.push_back({{"name", "tables_match_fixtures"},
                                  {"pass", mismatches.empty()},
                                  {"detail", mismatches.empty() ? json(nullptr)
                                                                : json(mismatches)}});
                pass = pass && mismatches.empty();
            });
            if (suite == "all" || suite == "engines") guarded("engines", [&] {
                unsigned ek = verify_kmax ? std::min(verify_kmax, verify_engines_kmax)
                                          : verify_engines_kmax;
                auto disagreements = engine_agreement_sweep(verify_nmax, ek);
                json payload = json::array();
                for (const auto& d : disagreements)
                    payload.push_back({{"n", d.n}, {"k", d.k}, {"eps", d.eps}});
                checks.push_back({{"name", "engine_agreement"},
                                  {"pass", disagreements.empty()},
                                  {"detail", disagreements.empty() ? json(nullptr) : payload}});
                pass = pass && disagreements.empty();
            });
            if (suite == "all" || suite == "identities") guarded("identities", [&] {
                IdentityBounds bounds;
                if (verify_kmax) bounds.cap(verify_kmax);
                IdentityReport rep = verify_identities(bounds);
                for (const auto& c : rep.checks) {
                    checks.push_back({{"name", c.name},
                                      {"pass", c.pass},
                                      {"detail", c.detail.empty() ? json(nullptr) : json(c.detail)}});
                    pass = pass && c.pass;
                }
            });
            doc["checks"] = checks;
            doc["pass"] = pass;
            emit(doc, format);
            return pass ? 0 : 1;
        } else if (*kmin_cmd) {
            std::vector<long long> targets;
            if (kmin_v_set) targets.push_back(kmin_v);
            if (kmin_range.size() == 2)
                for (long long v = kmin_range[0]; v <= kmin_range[1]; ++v) targets.push_back(v);
            if (targets.empty())
                throw CLI::ValidationError("kmin", "provide --v or --range");
            auto results = kmin_batch(targets, ceiling);
            json doc;
            doc["schema"] = "kmin";
            json rows = json::array();
            for (const auto& r : results) {
                json row;
                row["v"] = r.v;
                row["found"] = r.found;
                if (r.found) {
                    row["k"] = r.k;
                    row["witness_n"] = r.witness_n.get_str();
                } else {
                    row["note"] = "not found below ceiling " + std::to_string(ceiling);
                }
                rows.push_back(row);
            }
            doc["rows"] = rows;
            emit(doc, format);
        } else if (*bench_cmd) {
            json doc;
            doc["schema"] = "bench";
            doc["k"] = bench_k;
            doc["repeat"] = repeat;
            json timings;
            auto time_route = [&](const char* name, AverageRoute route) {
                std::vector<double> ms;
                Rat result;
                for (unsigned i = 0; i < repeat; ++i)
                    ms.push_back(time_ms([&] { result = average_e(bench_k, route); }));
                timings[name] = {{"best_ms", *std::min_element(ms.begin(), ms.end())},
                                 {"result", result.str()}};
            };
            time_route("divisor", AverageRoute::divisor);
            time_route("partition", AverageRoute::partition);
            if (bench_k >= 3 && bench_k % 2 == 1) time_route("halved", AverageRoute::halved);
            bool odd_prime = bench_k >= 3 && bench_k % 2 == 1 &&
                             FactoredNat::of(bench_k).factors.size() == 1 &&
                             FactoredNat::of(bench_k).factors[0].second == 1;
            if (odd_prime) {
                time_route("prime", AverageRoute::prime);
                time_route("odd_partition", AverageRoute::odd_partition);
            }
            if (bench_engines) {
                for (const char* name : {"naive", "gt", "partition"}) {
                    std::vector<double> ms;
                    long long value = 0;
                    for (unsigned i = 0; i < repeat; ++i)
                        ms.push_back(
                            time_ms([&] { value = run_engine(name, bench_n, bench_k, 1); }));
                    timings[std::string("engine_") + name] = {
                        {"best_ms", *std::min_element(ms.begin(), ms.end())}, {"result", value}};
                }
            }
            doc["timings"] = timings;
            emit(doc, format);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
