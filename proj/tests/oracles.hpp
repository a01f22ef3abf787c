#pragma once

// Definition-level reference implementations used to cross-check the library.

#include "ramseyforge/structures.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

inline bool tuple_in(const rf::Structure& s, int sym, const rf::Tuple& t)
{
    const auto& ts = s.tuples(sym);
    return std::find(ts.begin(), ts.end(), t) != ts.end();
}

inline bool is_hom(const rf::Structure& a, const rf::Structure& b, const std::vector<int>& f)
{
    for (std::size_t s = 0; s < a.language().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s))) {
            rf::Tuple u;
            for (int v : t)
                u.push_back(f[static_cast<std::size_t>(v)]);
            if (! tuple_in(b, static_cast<int>(s), u))
                return false;
        }
    return true;
}

inline bool injective_on(const std::vector<int>& f, const std::vector<int>& subset)
{
    std::set<int> seen;
    for (int v : subset)
        if (! seen.insert(f[static_cast<std::size_t>(v)]).second)
            return false;
    return true;
}

// f restricted to `subset` is an embedding of the induced substructures.
inline bool embeds_on(const rf::Structure& a, const rf::Structure& b, const std::vector<int>& f,
    const std::vector<int>& subset)
{
    if (! injective_on(f, subset))
        return false;
    std::size_t k = subset.size();
    for (std::size_t s = 0; s < a.language().size(); ++s) {
        int ar = a.language().arity(static_cast<int>(s));
        std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
        if (k == 0)
            continue;
        while (true) {
            rf::Tuple t, u;
            for (auto i : idx) {
                t.push_back(subset[i]);
                u.push_back(f[static_cast<std::size_t>(subset[i])]);
            }
            if (tuple_in(a, static_cast<int>(s), t) != tuple_in(b, static_cast<int>(s), u))
                return false;
            std::size_t p = 0;
            while (p < idx.size() && ++idx[p] == k)
                idx[p++] = 0;
            if (p == idx.size())
                break;
        }
    }
    return true;
}

inline std::vector<int> all_vertices(const rf::Structure& a)
{
    std::vector<int> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = static_cast<int>(i);
    return v;
}

// Irreducible vertex subsets by definition: every pair shares a tuple.
inline std::vector<std::vector<int>> irreducible_subsets(const rf::Structure& a)
{
    std::size_t n = a.size();
    std::vector<std::vector<char>> share(n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < a.language().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s)))
            for (int x : t)
                for (int y : t)
                    share[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = 1;
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
        std::vector<int> sub;
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (1U << v))
                sub.push_back(static_cast<int>(v));
        bool ok = true;
        for (std::size_t i = 0; i < sub.size() && ok; ++i)
            for (std::size_t j = i + 1; j < sub.size() && ok; ++j)
                ok = share[static_cast<std::size_t>(sub[i])][static_cast<std::size_t>(sub[j])];
        if (ok)
            out.push_back(sub);
    }
    return out;
}

inline bool satisfies(const rf::Structure& a, const rf::Structure& b, const std::vector<int>& f, rf::MorphismKind kind)
{
    using K = rf::MorphismKind;
    if (! is_hom(a, b, f))
        return false;
    switch (kind) {
    case K::homomorphism: return true;
    case K::monomorphism: return injective_on(f, all_vertices(a));
    case K::embedding: return embeds_on(a, b, f, all_vertices(a));
    case K::homomorphism_embedding:
        for (const auto& sub : irreducible_subsets(a))
            if (! embeds_on(a, b, f, sub))
                return false;
        return true;
    }
    return false;
}

inline std::vector<std::vector<int>> brute_force(const rf::Structure& a, const rf::Structure& b, rf::MorphismKind kind)
{
    std::vector<std::vector<int>> out;
    std::size_t n = a.size(), m = b.size();
    std::vector<int> f(n, 0);
    if (n > 0 && m == 0)
        return out;
    while (true) {
        if (satisfies(a, b, f, kind))
            out.push_back(f);
        std::size_t p = 0;
        while (p < n && ++f[p] == static_cast<int>(m))
            f[p++] = 0;
        if (p == n)
            break;
    }
    return out;
}

} // namespace oracle
