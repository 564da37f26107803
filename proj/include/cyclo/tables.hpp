#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cyclo {

/// One cell of a published table, addressed by (table, row, col). Values
/// are canonical strings: bare integers, "num/den" rationals, or sorted
/// set literals "{a,b,c}".
struct TableRow {
    int table = 0;
    std::string row_key;
    std::string col_key;
    std::string value;
    std::string note;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Recompute table `id` (1..6) from scratch. kmax = 0 selects the
/// published range: A(k) to 30, e_k to 20, the k = 4 partition breakdown,
/// densities to 16, parity differences for odd k to 53, f_k/g_k to 20.
std::vector<TableRow> generate_table(int id, unsigned kmax = 0);

/// The transcribed reference values bundled with the library; id = 0
/// returns all six tables.
std::vector<TableRow> fixture_rows(int id = 0);

/// Regenerate and diff against the fixtures. Returns human-readable
/// mismatch descriptions; empty means exact agreement.
std::vector<std::string> compare_tables(int id = 0);

std::string to_csv(const std::vector<TableRow>& rows);
std::vector<TableRow> parse_table_csv(std::string_view csv);

}  // namespace cyclo
