#include "ramseyforge/completion.hpp"
#include "ramseyforge/errors.hpp"
#include "ramseyforge/metric.hpp"
#include "ramseyforge/ramsey.hpp"
#include "ramseyforge/rsf.hpp"
#include "ramseyforge/structures.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace rf;

namespace {

DistanceSet distance_set(const std::vector<std::string>& values)
{
    std::vector<Rational> r;
    for (const auto& v : values)
        r.push_back(parse_rational(v));
    return DistanceSet(r);
}

std::vector<std::string> formatted(const std::vector<Rational>& values)
{
    std::vector<std::string> out;
    for (const auto& v : values)
        out.push_back(format_rational(v));
    return out;
}

std::map<std::string, std::string> named_map(const Structure& a, const Structure& b, const std::vector<int>& map)
{
    std::map<std::string, std::string> out;
    for (std::size_t v = 0; v < map.size(); ++v)
        out[a.name(static_cast<int>(v))] = b.name(map[v]);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    auto base = py::register_exception<Error>(m, "RamseyforgeError");
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<LanguageMismatch>(m, "LanguageMismatch", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());

    py::class_<Structure>(m, "Structure")
        .def_static("from_rsf", [](const std::string& text) { return parse_rsf(text); }, py::arg("text"))
        .def("to_rsf", [](const Structure& s) { return dump_rsf(s); })
        .def("__len__", &Structure::size)
        .def_property_readonly("vertices", &Structure::vertices)
        .def("tuples",
            [](const Structure& s, const std::string& symbol) {
                std::vector<std::vector<std::string>> out;
                for (const auto& t : s.tuples(symbol)) {
                    std::vector<std::string> names;
                    for (int v : t)
                        names.push_back(s.name(v));
                    out.push_back(names);
                }
                return out;
            },
            py::arg("symbol"))
        .def("__eq__", [](const Structure& a, const Structure& b) { return a == b; });

    m.def(
        "find_morphism",
        [](const Structure& a, const Structure& b, const std::string& kind) -> std::optional<std::map<std::string, std::string>> {
            auto f = find_morphism(a, b, parse_morphism_kind(kind));
            if (! f)
                return std::nullopt;
            return named_map(a, b, f->map);
        },
        py::arg("a"), py::arg("b"), py::arg("kind") = "hom-emb");
    m.def("count_copies", [](const Structure& a, const Structure& b) { return copies_of(a, b).size(); }, py::arg("a"),
        py::arg("b"));

    m.def(
        "four_values",
        [](const std::vector<std::string>& s) {
            auto r = four_values(distance_set(s));
            std::optional<std::vector<std::string>> witness;
            if (r.witness)
                witness = formatted({r.witness->begin(), r.witness->end()});
            return py::make_tuple(r.holds, witness);
        },
        py::arg("s"));
    m.def("is_associative", [](const std::vector<std::string>& s) { return is_associative(distance_set(s)).holds; },
        py::arg("s"));
    m.def("is_jump_free", [](const std::vector<std::string>& s) { return is_jump_free(distance_set(s)); }, py::arg("s"));
    m.def(
        "complete_metric",
        [](int n, const std::vector<std::tuple<int, int, std::string>>& edges,
            const std::vector<std::string>& s) -> std::optional<std::vector<std::vector<std::string>>> {
            std::vector<std::string> names;
            for (int i = 0; i < n; ++i)
                names.push_back(std::to_string(i));
            SGraph g(names);
            for (const auto& [u, v, d] : edges)
                g.set(g.index_of(std::to_string(u)), g.index_of(std::to_string(v)), parse_rational(d));
            auto r = complete_metric_graph(g, distance_set(s));
            if (! r.completed)
                return std::nullopt;
            std::vector<std::vector<std::string>> out(static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(n), "0"));
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (u != v) {
                        const int x = r.result.index_of(std::to_string(u)), y = r.result.index_of(std::to_string(v));
                        out[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = format_rational(*r.result.at(x, y));
                    }
            return out;
        },
        py::arg("n"), py::arg("edges"), py::arg("s"));
    m.def(
        "obstacles",
        [](const std::string& plugin, int n) { return obstacles_up_to(*make_plugin(plugin), n); }, py::arg("plugin"),
        py::arg("n"));

    m.def(
        "hales_jewett",
        [](int t, int k, std::uint64_t cap) {
            auto r = hales_jewett_N(t, k, cap);
            py::dict d;
            d["n"] = r.n ? py::cast(*r.n) : py::none();
            d["lower_bound"] = r.lower_bound;
            d["inconclusive"] = r.inconclusive;
            return d;
        },
        py::arg("t"), py::arg("k"), py::arg("cap") = exhaustive_cap);
    m.def("ramsey_number", &ramsey_number, py::arg("a"), py::arg("b"));
    m.def(
        "verify_arrow",
        [](const Structure& c, const Structure& a, const Structure& b, int k, const std::string& mode, std::uint64_t seed) {
            return to_json(verify_arrow(c, a, b, k, parse_arrow_mode(mode, seed)), c).dump();
        },
        py::arg("c"), py::arg("a"), py::arg("b"), py::arg("k") = 2, py::arg("mode") = "exhaustive", py::arg("seed") = 0);
    m.def(
        "partite_construction",
        [](const Structure& a, const Structure& b, const Structure& c0) {
            return partite_construction(a, b, c0, ClosureDescription{}).c.carrier;
        },
        py::arg("a"), py::arg("b"), py::arg("c0"));
}
