#pragma once

#include "fixtures.hpp"
#include "ramseyforge/structures.hpp"

#include <random>
#include <vector>

namespace go {

using rf::Structure;

using Matrix = std::vector<std::vector<long long>>;

inline Matrix adjacency_matrix(const Structure& g)
{
    Matrix m(g.size(), std::vector<long long>(g.size(), 0));
    for (int s = 0; s < static_cast<int>(g.language().size()); ++s)
        for (const auto& t : g.tuples(s))
            if (t.size() == 2 && t[0] != t[1]) {
                m[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = 1;
                m[static_cast<std::size_t>(t[1])][static_cast<std::size_t>(t[0])] = 1;
            }
    return m;
}

// Entry (x, y) is nonzero iff a walk of length k joins x and y.
inline Matrix walks(const Matrix& a, int k)
{
    const std::size_t n = a.size();
    Matrix r(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        r[i][i] = 1;
    for (int step = 0; step < k; ++step) {
        Matrix next(n, std::vector<long long>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][j])
                    for (std::size_t l = 0; l < n; ++l)
                        if (a[j][l])
                            next[i][l] = 1;
        r = std::move(next);
    }
    return r;
}

// A loopless graph contains a homomorphic image of C_l (l odd) iff it has a
// closed walk of odd length at most l.
inline bool has_short_odd_closed_walk(const Structure& g, int l)
{
    auto a = adjacency_matrix(g);
    for (int k = 3; k <= l; k += 2) {
        auto w = walks(a, k);
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i][i])
                return true;
    }
    return false;
}

inline std::vector<std::vector<int>> distances(const Structure& g)
{
    auto a = adjacency_matrix(g);
    const std::size_t n = a.size();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> q{s};
        d[s][s] = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t w = 0; w < n; ++w)
                if (a[q[i]][w] && d[s][w] < 0) {
                    d[s][w] = d[s][q[i]] + 1;
                    q.push_back(w);
                }
    }
    return d;
}

inline Structure random_graph(std::mt19937_64& rng, int n, double p)
{
    std::bernoulli_distribution edge(p);
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng))
                es.emplace_back(i, j);
    return fx::graph_n(n, es);
}

inline Structure random_connected_graph(std::mt19937_64& rng, int n, double p)
{
    for (;;) {
        auto g = random_graph(rng, n, p);
        if (is_connected(g))
            return g;
    }
}

// Random graph with no closed odd walk of length <= 5.
inline Structure random_c5_free(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> density(0.1, 0.5);
    for (;;) {
        auto g = random_graph(rng, n, density(rng));
        if (! has_short_odd_closed_walk(g, 5))
            return g;
    }
}

} // namespace go
