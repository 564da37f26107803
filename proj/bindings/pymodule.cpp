#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclo/coeff.hpp"
#include "cyclo/numtheory.hpp"
#include "cyclo/partitions.hpp"
#include "cyclo/stats.hpp"
#include "cyclo/tables.hpp"

namespace py = pybind11;
using namespace cyclo;

namespace {

py::object big_int(const mpz_class& z) {
    std::string s = z.get_str();
    PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(obj);
}

py::object fraction(const Rat& r) {
    static py::object ctor = py::module_::import("fractions").attr("Fraction");
    return ctor(r.str());
}

AverageRoute parse_route(const std::string& route) {
    if (route == "divisor") return AverageRoute::divisor;
    if (route == "partition") return AverageRoute::partition;
    if (route == "odd_partition") return AverageRoute::odd_partition;
    if (route == "halved") return AverageRoute::halved;
    if (route == "prime") return AverageRoute::prime;
    throw py::value_error("unknown route: " + route);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact cyclotomic-coefficient statistics";

    m.def("moebius", &moebius, py::arg("n"));
    m.def("euler_phi", &euler_phi, py::arg("n"));
    m.def("squarefree_kernel", &squarefree_kernel, py::arg("n"));
    m.def("ramanujan_sum", &ramanujan_sum, py::arg("n"), py::arg("m"));
    m.def("partition_count", [](unsigned k) { return big_int(partition_count(k)); }, py::arg("k"));

    m.def("cyclotomic", [](std::uint64_t n) {
        py::list coeffs;
        IntPoly p = cyclotomic_poly(n);
        for (int i = 0; i <= p.degree(); ++i) coeffs.append(big_int(p.coeff(static_cast<unsigned>(i))));
        return coeffs;
    }, py::arg("n"), "coefficient list of the n-th cyclotomic polynomial, ascending");

    m.def("coeff", [](std::uint64_t n, unsigned k, int eps, const std::string& engine) -> long long {
        if (engine == "gt") return coeff_gt(n, k, eps);
        if (engine == "naive") return coeff_naive(n, eps, k).values[k].get_si();
        if (engine == "partition") return coeff_via_partitions(n, k, eps);
        throw py::value_error("unknown engine: " + engine);
    }, py::arg("n"), py::arg("k"), py::arg("eps") = 1, py::arg("engine") = "gt",
       "a_n(k) for eps=+1, the inverse-series coefficient c_n(k) for eps=-1");

    m.def("coeff_series", [](std::uint64_t n, int eps, unsigned order) {
        py::list out;
        for (const auto& v : coeff_naive(n, eps, order).values) out.append(big_int(v));
        return out;
    }, py::arg("n"), py::arg("eps"), py::arg("order"));

    m.def("value_set", [](unsigned k) {
        ValueSetReport rep = value_set(k);
        py::dict d;
        d["k"] = rep.k;
        d["values"] = rep.values;
        d["A"] = rep.A;
        d["A_plus"] = rep.A_plus;
        d["A_minus"] = rep.A_minus;
        d["convex"] = rep.convex;
        d["symmetric"] = rep.symmetric;
        d["parity_even"] = rep.parity_even;
        d["parity_odd"] = rep.parity_odd;
        d["diff"] = rep.diff;
        return d;
    }, py::arg("k"));

    m.def("average_e", [](unsigned k, const std::string& route) {
        return fraction(average_e(k, parse_route(route)));
    }, py::arg("k"), py::arg("route") = "partition",
       "e_k = zeta(2) * M(a_n(k)) as a Fraction");

    m.def("density", [](unsigned k) {
        DensityTable dt = density(k);
        py::dict scaled;
        for (const auto& [v, r] : dt.scaled) scaled[py::int_(v)] = fraction(r);
        py::dict d;
        d["k"] = dt.k;
        d["scaled"] = scaled;
        d["q"] = fraction(dt.q);
        return d;
    }, py::arg("k"), "zeta(2)-scaled densities of the nonzero values of a_n(k)");

    m.def("twisted_averages", [](unsigned k) {
        AveragesReport rep = twisted_averages(k);
        py::dict d;
        d["k"] = rep.k;
        d["e"] = fraction(rep.e);
        d["f"] = fraction(rep.f);
        d["g"] = fraction(rep.g);
        return d;
    }, py::arg("k"));

    m.def("kmin", [](long long v, unsigned ceiling) {
        KminResult r = kmin(v, ceiling);
        py::dict d;
        d["v"] = r.v;
        d["found"] = r.found;
        if (r.found) {
            d["k"] = r.k;
            d["witness_n"] = big_int(r.witness_n);
        }
        return d;
    }, py::arg("v"), py::arg("ceiling") = 120);

    m.def("minus_two_construction", [](unsigned k) {
        MinusTwoWitness w = minus_two_construction(k);
        return py::make_tuple(w.p1, w.p2, w.p3, w.value);
    }, py::arg("k"));

    m.def("empirical_stats", [](unsigned k, std::uint64_t x, py::object v) {
        std::optional<long long> target;
        if (!v.is_none()) target = v.cast<long long>();
        EmpiricalStats s = empirical_stats(k, x, target);
        py::dict d;
        d["average"] = fraction(s.average);
        d["frequency"] = s.frequency ? fraction(*s.frequency) : py::object(py::none());
        return d;
    }, py::arg("k"), py::arg("x"), py::arg("v") = py::none());

    m.def("table", [](int id, unsigned kmax) {
        py::list rows;
        for (const auto& row : generate_table(id, kmax))
            rows.append(py::make_tuple(row.row_key, row.col_key, row.value));
        return rows;
    }, py::arg("id"), py::arg("kmax") = 0);

    m.def("verify_tables", [] { return compare_tables(); },
          "mismatches against the bundled reference tables; empty means exact agreement");
}
