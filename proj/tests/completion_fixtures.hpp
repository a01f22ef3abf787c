#pragma once

#include "fixtures.hpp"
#include "ramseyforge/completion.hpp"
#include "ramseyforge/metric.hpp"

#include <algorithm>
#include <vector>

namespace cfx {

using rf::DistanceSet;
using rf::Rational;
using rf::Structure;
using rf::ClassPlugin;
using rf::SGraph;

struct Edge {
    int u, v;
    long long d;
};

inline Structure metric_graph(const DistanceSet& s, int n, const std::vector<Edge>& edges)
{
    SGraph g(fx::names(n));
    for (const auto& e : edges)
        g.set(e.u, e.v, Rational(e.d));
    return to_structure(g, s);
}

inline DistanceSet ints(std::vector<long long> v)
{
    std::vector<Rational> r(v.begin(), v.end());
    return DistanceSet(r);
}

// Cycle v0..vn with v0-vn at distance 3 and all other edges 1.
inline Structure one_three_cycle(int ones)
{
    std::vector<Edge> es;
    for (int i = 0; i < ones; ++i)
        es.push_back({i, i + 1, 1});
    es.push_back({0, ones, 3});
    return metric_graph(ints({1, 3}), ones + 1, es);
}

inline bool all_proper_subsets_complete(const Structure& a, const ClassPlugin& plugin)
{
    for (unsigned mask = 0; mask + 1 < (1U << a.size()); ++mask) {
        std::vector<int> sub;
        for (std::size_t v = 0; v < a.size(); ++v)
            if (mask & (1U << v))
                sub.push_back(static_cast<int>(v));
        if (! plugin.try_strong_completion(induced_substructure(a, sub)).completed)
            return false;
    }
    return true;
}

inline std::vector<long long> sorted_distances(const Structure& a, const DistanceSet& s)
{
    auto g = sgraph_from_structure(a, s);
    std::vector<long long> out;
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (g.dist[u][v])
                out.push_back(g.dist[u][v]->numerator());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cfx
