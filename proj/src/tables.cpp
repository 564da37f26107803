#include "cyclo/tables.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "cyclo/fixtures_data.hpp"
#include "cyclo/partitions.hpp"
#include "cyclo/stats.hpp"

namespace cyclo {

namespace {

std::string set_literal(const std::vector<long long>& xs) {
    std::string out = "{";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out + "}";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

unsigned default_kmax(int id) {
    switch (id) {
        case 1: return 30;
        case 2: return 20;
        case 3: return 4;
        case 4: return 16;
        case 5: return 53;
        case 6: return 20;
        default: throw std::invalid_argument("table id must be 1..6");
    }
}

}  // namespace

std::vector<TableRow> generate_table(int id, unsigned kmax) {
    if (id < 1 || id > 6) throw std::invalid_argument("table id must be 1..6");
    if (kmax == 0) kmax = default_kmax(id);
    std::vector<TableRow> rows;
    switch (id) {
        case 1:
            for (unsigned k = 1; k <= kmax; ++k)
                rows.push_back({1, std::to_string(k), "A",
                                std::to_string(value_set(k).A), ""});
            break;
        case 2:
            for (unsigned k = 1; k <= kmax; ++k)
                rows.push_back({2, std::to_string(k), "e",
                                average_e(k, AverageRoute::partition).str(), ""});
            break;
        case 3: {
            Rat total;
            for_each_partition(4, false, [&](const PartitionSig& sig) {
                Rat e2 = eps2(sig);
                mpz_class denom(static_cast<unsigned long>(sig.G));
                for (const auto& [p, e] : FactoredNat::of(sig.L / sig.G).factors)
                    denom *= static_cast<unsigned long>(p + 1);
                Rat contribution = e2 * Rat(mpz_class(1), denom);
                total += contribution;
                rows.push_back({3, sig.str(), "eps2", e2.str(), ""});
                rows.push_back({3, sig.str(), "contribution", contribution.str(), ""});
            });
            rows.push_back({3, "total", "e", total.str(), ""});
            break;
        }
        case 4:
            for (unsigned k = 1; k <= kmax; ++k) {
                DensityTable dt = density(k);
                // the published grid always shows the -2..2 columns
                std::map<long long, std::string> cells{{-2, "0"}, {-1, "0"}, {1, "0"}, {2, "0"}};
                for (const auto& [v, r] : dt.scaled) cells[v] = r.str();
                for (const auto& [v, s] : cells)
                    rows.push_back({4, std::to_string(k), std::to_string(v), s, ""});
            }
            break;
        case 5:
            for (unsigned k = 7; k <= kmax; k += 2) {
                ValueSetReport vs = value_set(k);
                if (vs.diff.empty()) continue;
                rows.push_back({5, std::to_string(k), "diff", set_literal(vs.diff), ""});
            }
            break;
        case 6:
            for (unsigned k = 1; k <= kmax; ++k) {
                AveragesReport ar = twisted_averages(k);
                rows.push_back({6, std::to_string(k), "f", ar.f.str(), ""});
                rows.push_back({6, std::to_string(k), "g", ar.g.str(), ""});
            }
            break;
    }
    return rows;
}

std::vector<TableRow> fixture_rows(int id) {
    static const std::vector<TableRow> all = parse_table_csv(detail::kTableFixturesCsv);
    if (id == 0) return all;
    std::vector<TableRow> out;
    for (const auto& row : all)
        if (row.table == id) out.push_back(row);
    return out;
}

std::vector<std::string> compare_tables(int id) {
    std::vector<std::string> mismatches;
    for (int t = 1; t <= 6; ++t) {
        if (id != 0 && id != t) continue;
        std::map<std::pair<std::string, std::string>, std::string> expected, actual;
        for (const auto& row : fixture_rows(t)) expected[{row.row_key, row.col_key}] = row.value;
        for (const auto& row : generate_table(t)) actual[{row.row_key, row.col_key}] = row.value;
        for (const auto& [key, value] : expected) {
            auto it = actual.find(key);
            if (it == actual.end())
                mismatches.push_back("table " + std::to_string(t) + " [" + key.first + "," +
                                     key.second + "]: expected " + value + ", missing");
            else if (it->second != value)
                mismatches.push_back("table " + std::to_string(t) + " [" + key.first + "," +
                                     key.second + "]: expected " + value + ", got " + it->second);
        }
        for (const auto& [key, value] : actual)
            if (!expected.count(key))
                mismatches.push_back("table " + std::to_string(t) + " [" + key.first + "," +
                                     key.second + "]: unexpected entry " + value);
    }
    return mismatches;
}

std::string to_csv(const std::vector<TableRow>& rows) {
    std::string out = "table,row,col,value,note\n";
    for (const auto& row : rows) {
        out += std::to_string(row.table) + "," + csv_field(row.row_key) + "," +
               csv_field(row.col_key) + "," + csv_field(row.value) + "," + csv_field(row.note) +
               "\n";
    }
    return out;
}

std::vector<TableRow> parse_table_csv(std::string_view csv) {
    std::vector<TableRow> rows;
    std::istringstream in{std::string(csv)};
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() < 4)
            throw std::invalid_argument("table csv: expected at least 4 columns");
        TableRow row;
        row.table = std::stoi(fields[0]);
        row.row_key = fields[1];
        row.col_key = fields[2];
        row.value = fields[3];
        if (fields.size() > 4) row.note = fields[4];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cyclo
