#include "ramseyforge/closures.hpp"

#include "ramseyforge/errors.hpp"
#include "ramseyforge/rsf.hpp"

#include <algorithm>

namespace rf {

using nlohmann::json;

std::vector<std::string> root_names(int m)
{
    std::vector<std::string> out;
    for (int i = 1; i <= m; ++i)
        out.push_back(std::to_string(i));
    return out;
}

namespace {

// Index of root vertex "i+1" for each position i.
std::vector<int> root_positions(const Structure& root)
{
    std::vector<int> pos;
    for (const auto& n : root_names(static_cast<int>(root.size())))
        pos.push_back(root.index_of(n));
    return pos;
}

int relation_index(const Structure& a, const ClosureEntry& e)
{
    int s = a.language().find(e.relation);
    if (s < 0)
        throw LanguageMismatch("closure relation '" + e.relation + "' is not in the language");
    if (a.language().arity(s) < static_cast<int>(e.root.size()))
        throw PreconditionError("closure relation '" + e.relation + "' has arity below its root size");
    return s;
}

// Whether t agrees with `prefix` on its first |prefix| coordinates.
bool has_prefix(const Tuple& t, const Tuple& prefix)
{
    return std::equal(prefix.begin(), prefix.end(), t.begin());
}

} // namespace

ClosureDescription::ClosureDescription(std::vector<ClosureEntry> entries) : entries_(std::move(entries))
{
    for (const auto& e : entries_) {
        if (e.root.empty())
            throw PreconditionError("closure root for '" + e.relation + "' is empty");
        auto expected = root_names(static_cast<int>(e.root.size()));
        std::sort(expected.begin(), expected.end());
        if (e.root.vertices() != expected)
            throw PreconditionError("closure root for '" + e.relation + "' must be on vertices 1..m");
        if (! is_irreducible(e.root))
            throw PreconditionError("closure root for '" + e.relation + "' is not irreducible");
        if (e.root.language().find(e.relation) >= 0)
            throw PreconditionError("closure root for '" + e.relation + "' uses its own closure relation");
    }
}

std::vector<std::string> ClosureDescription::relations() const
{
    std::vector<std::string> out;
    for (const auto& e : entries_)
        if (std::find(out.begin(), out.end(), e.relation) == out.end())
            out.push_back(e.relation);
    return out;
}

bool ClosureDescription::unary() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const ClosureEntry& e) { return e.root.size() == 1; });
}

ClosureDescription closure_description_from_json(const json& j, const std::string& where)
{
    if (! j.is_array())
        throw FormatError(where + ": expected an array of closure entries");
    std::vector<ClosureEntry> entries;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string at = where + "[" + std::to_string(i) + "]";
        const json& e = j[i];
        if (! e.is_object())
            throw FormatError(at + ": expected an object");
        for (auto it = e.begin(); it != e.end(); ++it)
            if (it.key() != "relation" && it.key() != "root")
                throw FormatError(at + ": unknown key \"" + it.key() + "\"");
        if (! e.contains("relation") || ! e["relation"].is_string())
            throw FormatError(at + ".relation: expected a string");
        if (! e.contains("root"))
            throw FormatError(at + ": missing key \"root\"");
        entries.push_back({e["relation"].get<std::string>(), structure_from_json(e["root"], at + ".root")});
    }
    try {
        return ClosureDescription(std::move(entries));
    }
    catch (const PreconditionError& e) {
        throw FormatError(where + ": " + e.what());
    }
}

ClosureDescription read_closure_description(const std::string& path)
{
    json j = read_json_file(path);
    try {
        return closure_description_from_json(j);
    }
    catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what(), e.line, e.column);
    }
}

json to_json(const ClosureDescription& u)
{
    json out = json::array();
    for (const auto& e : u.entries())
        out.push_back({{"relation", e.relation}, {"root", to_rsf_json(e.root)}});
    return out;
}

std::size_t out_degree(const Structure& a, int symbol, const Tuple& prefix)
{
    const auto& ts = a.tuples(symbol);
    // Tuples are sorted, so those with a given prefix are contiguous.
    auto lo = std::lower_bound(ts.begin(), ts.end(), prefix);
    std::size_t n = 0;
    for (auto it = lo; it != ts.end() && has_prefix(*it, prefix); ++it)
        ++n;
    return n;
}

std::size_t out_degree(const Structure& a, std::string_view symbol, const Tuple& prefix)
{
    return out_degree(a, a.language().index_of(symbol), prefix);
}

std::vector<std::vector<Tuple>> root_embeddings(const Structure& a, const ClosureDescription& u)
{
    Structure reduct = drop_symbols(a, u.relations());
    std::vector<std::vector<Tuple>> out;
    for (const auto& e : u.entries()) {
        relation_index(a, e);
        Structure root = with_language(e.root, reduct.language());
        auto pos = root_positions(root);
        std::vector<Tuple> found;
        search_morphisms(root, reduct, MorphismKind::embedding, {}, [&](const std::vector<int>& f) {
            Tuple t;
            for (int p : pos)
                t.push_back(f[static_cast<std::size_t>(p)]);
            found.push_back(std::move(t));
            return true;
        });
        std::sort(found.begin(), found.end());
        out.push_back(std::move(found));
    }
    return out;
}

namespace {

std::optional<ClosureViolation> violation(const Structure& a, const ClosureDescription& u, bool semi)
{
    auto roots = root_embeddings(a, u);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto& e = u.entries()[k];
        int s = relation_index(a, e);
        std::size_t m = e.root.size();
        for (const auto& r : roots[k]) {
            std::size_t d = out_degree(a, s, r);
            if (semi ? d > 1 : d != 1)
                return ClosureViolation{k, r, d, true,
                    "root embedding of '" + e.relation + "' has out-degree " + std::to_string(d)};
        }
        // Every closure tuple must start at a root embedding of some entry
        // for the same relation.
        for (const auto& t : a.tuples(s)) {
            bool rooted = false;
            for (std::size_t k2 = 0; k2 < u.size() && ! rooted; ++k2) {
                const auto& e2 = u.entries()[k2];
                if (e2.relation != e.relation)
                    continue;
                Tuple p(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(e2.root.size()));
                rooted = std::binary_search(roots[k2].begin(), roots[k2].end(), p);
            }
            Tuple prefix(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(m));
            if (! rooted)
                return ClosureViolation{k, prefix, out_degree(a, s, prefix), false,
                    "tuple of '" + e.relation + "' does not start at a root embedding"};
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<ClosureViolation> closed_violation(const Structure& a, const ClosureDescription& u)
{
    return violation(a, u, false);
}

std::optional<ClosureViolation> semi_closed_violation(const Structure& a, const ClosureDescription& u)
{
    return violation(a, u, true);
}

bool is_u_closed(const Structure& a, const ClosureDescription& u) { return ! closed_violation(a, u); }

bool is_u_semi_closed(const Structure& a, const ClosureDescription& u) { return ! semi_closed_violation(a, u); }

bool is_u_substructure(const Structure& b, const std::vector<int>& sub, const ClosureDescription& u)
{
    std::vector<char> in(b.size(), 0);
    for (int v : sub) {
        if (v < 0 || static_cast<std::size_t>(v) >= b.size())
            throw PreconditionError("vertex index out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    for (const auto& e : u.entries()) {
        int s = relation_index(b, e);
        std::size_t m = e.root.size();
        for (const auto& t : b.tuples(s)) {
            bool root_inside = std::all_of(
                t.begin(), t.begin() + static_cast<std::ptrdiff_t>(m), [&](int v) { return in[static_cast<std::size_t>(v)]; });
            if (root_inside && ! std::all_of(t.begin(), t.end(), [&](int v) { return in[static_cast<std::size_t>(v)]; }))
                return false;
        }
    }
    return true;
}

namespace {

// Least superset of `in` closed under "root inside ⇒ whole tuple inside".
void close_in_place(const Structure& a, const std::vector<std::pair<int, std::size_t>>& rels, std::vector<char>& in)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [s, m] : rels)
            for (const auto& t : a.tuples(s)) {
                bool root_inside = true;
                for (std::size_t i = 0; i < m && root_inside; ++i)
                    root_inside = in[static_cast<std::size_t>(t[i])];
                if (! root_inside)
                    continue;
                for (int v : t)
                    if (! in[static_cast<std::size_t>(v)]) {
                        in[static_cast<std::size_t>(v)] = 1;
                        changed = true;
                    }
            }
    }
}

std::vector<std::pair<int, std::size_t>> closure_relations(const Structure& a, const ClosureDescription& u)
{
    std::vector<std::pair<int, std::size_t>> rels;
    for (const auto& e : u.entries())
        rels.emplace_back(relation_index(a, e), e.root.size());
    return rels;
}

} // namespace

std::vector<int> u_closure_vertices(const Structure& a, const ClosureDescription& u, const std::vector<int>& seed)
{
    if (auto v = closed_violation(a, u))
        throw PreconditionError("structure is not U-closed: " + v->message);
    std::vector<char> in(a.size(), 0);
    for (int v : seed) {
        if (v < 0 || static_cast<std::size_t>(v) >= a.size())
            throw PreconditionError("vertex index out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    close_in_place(a, closure_relations(a, u), in);
    std::vector<int> out;
    for (std::size_t v = 0; v < a.size(); ++v)
        if (in[v])
            out.push_back(static_cast<int>(v));
    return out;
}

Structure u_closure(const Structure& a, const ClosureDescription& u, const std::vector<int>& seed)
{
    return induced_substructure(a, u_closure_vertices(a, u, seed));
}

namespace {

// Smallest generating subset of `sub` whose closure in A covers `sub`.
std::size_t min_generator(const Structure& a, const ClosureDescription& u, const std::vector<int>& sub,
    std::size_t candidate_cap)
{
    if (auto v = closed_violation(a, u))
        throw PreconditionError("structure is not U-closed: " + v->message);
    auto rels = closure_relations(a, u);
    // Vertices never added by a closure tuple belong to every generating set.
    std::vector<char> produced(a.size(), 0);
    for (auto [s, m] : rels)
        for (const auto& t : a.tuples(s))
            for (std::size_t i = m; i < t.size(); ++i)
                produced[static_cast<std::size_t>(t[i])] = 1;
    std::vector<int> forced, free;
    for (int v : sub)
        (produced[static_cast<std::size_t>(v)] ? free : forced).push_back(v);
    if (free.size() > candidate_cap)
        throw CapExceeded("u_size: " + std::to_string(free.size()) + " generator candidates exceed the cap of "
            + std::to_string(candidate_cap));

    auto generates = [&](const std::vector<int>& extra) {
        std::vector<char> in(a.size(), 0);
        for (int v : forced)
            in[static_cast<std::size_t>(v)] = 1;
        for (int v : extra)
            in[static_cast<std::size_t>(v)] = 1;
        close_in_place(a, rels, in);
        return std::all_of(sub.begin(), sub.end(), [&](int v) { return in[static_cast<std::size_t>(v)] != 0; });
    };

    std::size_t n = free.size();
    for (std::size_t k = 0; k <= n; ++k) {
        // Lexicographic k-subsets of the free candidates.
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        while (true) {
            std::vector<int> pick;
            for (auto i : idx)
                pick.push_back(free[i]);
            if (generates(pick))
                return forced.size() + k;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return sub.size();
}

} // namespace

std::size_t u_size(const Structure& a, const ClosureDescription& u, std::size_t candidate_cap)
{
    std::vector<int> all(a.size());
    for (std::size_t v = 0; v < a.size(); ++v)
        all[v] = static_cast<int>(v);
    return min_generator(a, u, all, candidate_cap);
}

std::size_t u_size_within(
    const Structure& b, const std::vector<int>& sub, const ClosureDescription& u, std::size_t candidate_cap)
{
    for (int v : sub)
        if (v < 0 || static_cast<std::size_t>(v) >= b.size())
            throw PreconditionError("vertex index out of range");
    std::vector<int> s(sub);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return min_generator(b, u, s, candidate_cap);
}

ClosedAmalgamReport free_amalgam_preserves_closed(const Structure& b1, const Structure& b2, const Structure& a,
    const std::vector<int>& alpha1, const std::vector<int>& alpha2, const ClosureDescription& u)
{
    ClosedAmalgamReport r;
    r.amalgam = free_amalgamation(b1, b2, a, alpha1, alpha2).result;
    r.violation = closed_violation(r.amalgam, u);
    r.closed = ! r.violation;
    return r;
}

} // namespace rf
