#pragma once

#include "ramseyforge/closures.hpp"
#include "ramseyforge/ramsey.hpp"
#include "ramseyforge/structures.hpp"

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fx {

inline rf::Language graph_language() { return rf::Language({{"E", 2}}); }

inline rf::Language ordered_graph_language() { return rf::Language({{"<=", 2}, {"E", 2}}, "<="); }

inline std::vector<std::string> names(int n, const std::string& stem = "v")
{
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back(stem + std::to_string(i));
    return out;
}

// Symmetric graph on the given vertex names.
inline rf::Structure graph(const std::vector<std::string>& vertices,
    const std::vector<std::pair<std::string, std::string>>& edges)
{
    rf::StructureBuilder b(graph_language());
    for (const auto& v : vertices)
        b.vertex(v);
    for (const auto& [u, v] : edges) {
        b.tuple(0, {b.vertex(u), b.vertex(v)});
        b.tuple(0, {b.vertex(v), b.vertex(u)});
    }
    return b.build();
}

inline rf::Structure graph_n(int n, const std::vector<std::pair<int, int>>& edges)
{
    auto vs = names(n);
    std::vector<std::pair<std::string, std::string>> es;
    for (auto [u, v] : edges)
        es.emplace_back(vs[static_cast<std::size_t>(u)], vs[static_cast<std::size_t>(v)]);
    return graph(vs, es);
}

inline rf::Structure complete_graph(int n)
{
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            es.emplace_back(i, j);
    return graph_n(n, es);
}

inline rf::Structure cycle_graph(int n)
{
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        es.emplace_back(i, (i + 1) % n);
    return graph_n(n, es);
}

inline rf::Structure path_graph(int vertices)
{
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < vertices; ++i)
        es.emplace_back(i, i + 1);
    return graph_n(vertices, es);
}

// Ordered graph: order follows the given vertex sequence, stored reflexively.
inline rf::Structure ordered_graph(const std::vector<std::string>& order,
    const std::vector<std::pair<std::string, std::string>>& edges)
{
    rf::StructureBuilder b(ordered_graph_language());
    for (const auto& v : order)
        b.vertex(v);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i; j < order.size(); ++j)
            b.tuple(0, {b.vertex(order[i]), b.vertex(order[j])});
    for (const auto& [u, v] : edges) {
        b.tuple(1, {b.vertex(u), b.vertex(v)});
        b.tuple(1, {b.vertex(v), b.vertex(u)});
    }
    return b.build();
}

inline rf::Structure ordered_complete(int n)
{
    auto vs = names(n);
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            es.emplace_back(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)]);
    return ordered_graph(vs, es);
}

inline rf::Language mixed_language() { return rf::Language({{"P", 1}, {"R", 2}, {"T", 3}}); }

// Random structure over {P/1, R/2, T/3} with the given tuple densities.
inline rf::Structure random_structure(std::mt19937_64& rng, int n, double unary, double binary, double ternary)
{
    std::bernoulli_distribution pu(unary), pb(binary), pt(ternary);
    rf::StructureBuilder b(mixed_language());
    for (const auto& v : names(n))
        b.vertex(v);
    for (int x = 0; x < n; ++x) {
        if (pu(rng))
            b.tuple(0, {x});
        for (int y = 0; y < n; ++y) {
            if (pb(rng))
                b.tuple(1, {x, y});
            for (int z = 0; z < n; ++z)
                if (pt(rng))
                    b.tuple(2, {x, y, z});
        }
    }
    return b.build();
}

// Pointed equivalences: S marks the special vertex of each class, U sends
// every non-special vertex to its class's special vertex.
inline rf::Language pointed_language() { return rf::Language({{"S", 1}, {"U", 2}}); }

inline rf::ClosureDescription pointed_description()
{
    rf::Structure root(rf::Language({{"S", 1}}), {"1"}, {});
    return rf::ClosureDescription({{"U", root}});
}

// Classes given as (special, members...).
inline rf::Structure pointed(const std::vector<std::vector<std::string>>& classes)
{
    rf::StructureBuilder b(pointed_language());
    for (const auto& c : classes) {
        int sp = b.vertex(c[0]);
        b.tuple(0, {sp});
        for (std::size_t i = 1; i < c.size(); ++i)
            b.tuple(1, {b.vertex(c[i]), sp});
    }
    return b.build();
}

// A unary function on every vertex, encoded by F/2 of out-degree one.
inline rf::ClosureDescription function_description()
{
    return rf::ClosureDescription({{"F", rf::Structure(rf::Language(), {"1"}, {})}});
}

inline rf::Structure random_function(std::mt19937_64& rng, int n)
{
    rf::StructureBuilder b(rf::Language({{"F", 2}}));
    for (const auto& v : names(n))
        b.vertex(v);
    for (int x = 0; x < n; ++x)
        b.tuple(0, {x, static_cast<int>(rng() % static_cast<unsigned>(n))});
    return b.build();
}

inline std::vector<int> map_by_names(const rf::Structure& a, const rf::Structure& b,
    const std::vector<std::pair<std::string, std::string>>& pairs)
{
    std::vector<int> m(a.size(), -1);
    for (const auto& [x, y] : pairs)
        m[static_cast<std::size_t>(a.index_of(x))] = b.index_of(y);
    return m;
}

// Carrier vertex -> base vertex, by names.
inline rf::PartiteSystem partite_by_names(const rf::Structure& a, const rf::Structure& carrier, const std::map<std::string, std::string>& parts)
{
    rf::PartiteSystem s{a, carrier, std::vector<int>(carrier.size())};
    for (const auto& [v, p] : parts)
        s.part[static_cast<std::size_t>(carrier.index_of(v))] = a.index_of(p);
    return s;
}

// One special vertex s with members m0, m1, ...
inline rf::Structure pointed_base(int members)
{
    std::vector<std::string> cls{"s"};
    for (int i = 0; i < members; ++i)
        cls.push_back("m" + std::to_string(i));
    return pointed({cls});
}

// U-closed pointed system over pointed_base: one or two specials, one or two
// vertices per member part, each sent to a random special. The first vertex
// of each part goes to s0 so that a transversal copy exists.
inline rf::PartiteSystem random_pointed_system(std::mt19937_64& rng, int members)
{
    auto a = pointed_base(members);
    const int specials = 1 + static_cast<int>(rng() % 2);
    rf::StructureBuilder b(pointed_language());
    std::vector<std::pair<std::string, std::string>> parts;
    for (int i = 0; i < specials; ++i) {
        int v = b.vertex("s" + std::to_string(i));
        b.tuple(0, {v});
        parts.emplace_back("s" + std::to_string(i), "s");
    }
    for (int m = 0; m < members; ++m) {
        const int count = 1 + static_cast<int>(rng() % 2);
        for (int j = 0; j < count; ++j) {
            std::string name = "x" + std::to_string(m) + "_" + std::to_string(j);
            const unsigned target = j == 0 ? 0U : static_cast<unsigned>(rng() % static_cast<unsigned>(specials));
            b.tuple(1, {b.vertex(name), b.vertex("s" + std::to_string(target))});
            parts.emplace_back(name, "m" + std::to_string(m));
        }
    }
    auto carrier = b.build();
    return partite_by_names(a, carrier, {parts.begin(), parts.end()});
}

} // namespace fx
