#include "ramseyforge/structures.hpp"

#include "ramseyforge/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rf {

Language::Language(std::vector<Symbol> symbols, std::optional<std::string> order_symbol)
    : symbols_(std::move(symbols)), order_(std::move(order_symbol))
{
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.arity <= 0)
            throw PreconditionError("symbol '" + s.name + "' must have positive arity");
        if (! seen.insert(s.name).second)
            throw PreconditionError("duplicate symbol '" + s.name + "'");
    }
    if (order_) {
        order_index_ = find(*order_);
        if (order_index_ < 0)
            throw PreconditionError("order symbol '" + *order_ + "' is not declared");
        if (symbols_[static_cast<std::size_t>(order_index_)].arity != 2)
            throw PreconditionError("order symbol '" + *order_ + "' must be binary");
    }
}

int Language::max_arity() const
{
    int m = 0;
    for (const auto& s : symbols_)
        m = std::max(m, s.arity);
    return m;
}

int Language::find(std::string_view name) const
{
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name)
            return static_cast<int>(i);
    return -1;
}

int Language::index_of(std::string_view name) const
{
    int i = find(name);
    if (i < 0)
        throw PreconditionError("unknown symbol '" + std::string(name) + "'");
    return i;
}

Structure::Structure(Language language) : language_(std::move(language)), relations_(language_.size()) {}

Structure::Structure(Language language, std::vector<std::string> vertices,
    const std::map<std::string, std::vector<std::vector<std::string>>>& relations)
{
    StructureBuilder b(std::move(language));
    for (const auto& v : vertices) {
        if (b.has_vertex(v))
            throw PreconditionError("duplicate vertex '" + v + "'");
        b.vertex(v);
    }
    for (const auto& [sym, tuples] : relations) {
        int s = b.language().index_of(sym);
        for (const auto& t : tuples) {
            Tuple ids;
            for (const auto& v : t) {
                if (! b.has_vertex(v))
                    throw PreconditionError("tuple of '" + sym + "' uses undeclared vertex '" + v + "'");
                ids.push_back(b.vertex(v));
            }
            b.tuple(s, std::move(ids));
        }
    }
    *this = b.build();
}

int Structure::find(std::string_view name) const
{
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name)
        return -1;
    return static_cast<int>(it - names_.begin());
}

int Structure::index_of(std::string_view name) const
{
    int i = find(name);
    if (i < 0)
        throw PreconditionError("unknown vertex '" + std::string(name) + "'");
    return i;
}

const std::vector<Tuple>& Structure::tuples(std::string_view symbol) const
{
    return relations_[static_cast<std::size_t>(language_.index_of(symbol))];
}

bool Structure::has(int symbol, const Tuple& t) const
{
    const auto& r = relations_[static_cast<std::size_t>(symbol)];
    return std::binary_search(r.begin(), r.end(), t);
}

std::size_t Structure::tuple_count() const
{
    std::size_t n = 0;
    for (const auto& r : relations_)
        n += r.size();
    return n;
}

StructureBuilder::StructureBuilder(Language language) : language_(std::move(language)), relations_(language_.size())
{}

StructureBuilder::StructureBuilder(const Structure& base)
    : language_(base.language()), names_(base.vertices()), relations_(base.relations_)
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        ids_.emplace(names_[i], static_cast<int>(i));
}

int StructureBuilder::vertex(const std::string& name)
{
    auto [it, inserted] = ids_.emplace(name, static_cast<int>(names_.size()));
    if (inserted)
        names_.push_back(name);
    return it->second;
}

bool StructureBuilder::has_vertex(const std::string& name) const { return ids_.count(name) != 0; }

void StructureBuilder::tuple(int symbol, Tuple ids)
{
    if (symbol < 0 || static_cast<std::size_t>(symbol) >= language_.size())
        throw PreconditionError("symbol index out of range");
    if (static_cast<int>(ids.size()) != language_.arity(symbol))
        throw PreconditionError("tuple of '" + language_.symbol(symbol).name + "' has wrong arity");
    for (int v : ids)
        if (v < 0 || static_cast<std::size_t>(v) >= names_.size())
            throw PreconditionError("tuple uses an unknown vertex id");
    relations_[static_cast<std::size_t>(symbol)].push_back(std::move(ids));
}

void StructureBuilder::tuple(std::string_view symbol, Tuple ids) { tuple(language_.index_of(symbol), std::move(ids)); }

Structure StructureBuilder::build(std::vector<int>* index_of_id) const
{
    std::vector<int> order(names_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return names_[x] < names_[y]; });
    std::vector<int> position(names_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    Structure s(language_);
    s.names_.reserve(names_.size());
    for (int id : order)
        s.names_.push_back(names_[static_cast<std::size_t>(id)]);
    for (std::size_t r = 0; r < relations_.size(); ++r) {
        auto& out = s.relations_[r];
        out.reserve(relations_[r].size());
        for (const auto& t : relations_[r]) {
            Tuple u(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                u[i] = position[static_cast<std::size_t>(t[i])];
            out.push_back(std::move(u));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    if (index_of_id)
        *index_of_id = position;
    return s;
}

std::string fresh_name(const std::string& stem, const std::function<bool(const std::string&)>& taken)
{
    std::string candidate = stem;
    while (taken(candidate))
        candidate += "'";
    return candidate;
}

Structure induced_substructure(const Structure& a, const std::vector<int>& subset)
{
    std::vector<int> local(a.size(), -1);
    StructureBuilder b(a.language());
    for (int v : subset) {
        if (v < 0 || static_cast<std::size_t>(v) >= a.size())
            throw PreconditionError("unknown vertex index in subset");
        local[static_cast<std::size_t>(v)] = b.vertex(a.name(v));
    }
    for (std::size_t s = 0; s < a.language().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s))) {
            Tuple u;
            bool inside = true;
            for (int v : t) {
                if (local[static_cast<std::size_t>(v)] < 0) {
                    inside = false;
                    break;
                }
                u.push_back(local[static_cast<std::size_t>(v)]);
            }
            if (inside)
                b.tuple(static_cast<int>(s), std::move(u));
        }
    return b.build();
}

Structure induced_substructure(const Structure& a, const std::vector<std::string>& subset)
{
    std::vector<int> ids;
    for (const auto& name : subset)
        ids.push_back(a.index_of(name));
    return induced_substructure(a, ids);
}

Structure drop_symbols(const Structure& a, const std::vector<std::string>& symbols)
{
    std::vector<Symbol> kept;
    std::vector<int> source;
    for (std::size_t s = 0; s < a.language().size(); ++s) {
        const auto& sym = a.language().symbol(static_cast<int>(s));
        if (std::find(symbols.begin(), symbols.end(), sym.name) == symbols.end()) {
            kept.push_back(sym);
            source.push_back(static_cast<int>(s));
        }
    }
    std::optional<std::string> order = a.language().order_symbol();
    if (order && std::find(symbols.begin(), symbols.end(), *order) != symbols.end())
        order.reset();
    StructureBuilder b(Language(kept, order));
    for (const auto& v : a.vertices())
        b.vertex(v);
    for (std::size_t k = 0; k < source.size(); ++k)
        for (const auto& t : a.tuples(source[k]))
            b.tuple(static_cast<int>(k), t);
    return b.build();
}

Structure relabel(const Structure& a, const std::function<std::string(const std::string&)>& rename)
{
    StructureBuilder b(a.language());
    std::vector<int> id(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) {
        std::string n = rename(a.name(static_cast<int>(v)));
        if (b.has_vertex(n))
            throw PreconditionError("relabelling is not injective at '" + n + "'");
        id[v] = b.vertex(n);
    }
    for (std::size_t s = 0; s < a.language().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s))) {
            Tuple u;
            for (int v : t)
                u.push_back(id[static_cast<std::size_t>(v)]);
            b.tuple(static_cast<int>(s), std::move(u));
        }
    return b.build();
}

Structure with_language(const Structure& a, const Language& language)
{
    StructureBuilder b(language);
    for (const auto& v : a.vertices())
        b.vertex(v);
    for (std::size_t s = 0; s < a.language().size(); ++s) {
        const auto& sym = a.language().symbol(static_cast<int>(s));
        if (a.tuples(static_cast<int>(s)).empty())
            continue;
        int target = language.find(sym.name);
        if (target < 0 || language.arity(target) != sym.arity)
            throw LanguageMismatch("symbol '" + sym.name + "' is not in the target language");
        for (const auto& t : a.tuples(static_cast<int>(s)))
            b.tuple(target, t);
    }
    return b.build();
}

std::vector<std::vector<int>> gaifman_adjacency(const Structure& a, bool ignore_order)
{
    std::vector<std::vector<int>> adj(a.size());
    for (std::size_t s = 0; s < a.language().size(); ++s) {
        if (ignore_order && static_cast<int>(s) == a.language().order_index())
            continue;
        for (const auto& t : a.tuples(static_cast<int>(s)))
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = 0; j < t.size(); ++j)
                    if (t[i] != t[j])
                        adj[static_cast<std::size_t>(t[i])].push_back(t[j]);
    }
    for (auto& n : adj) {
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
    }
    return adj;
}

Structure gaifman_graph(const Structure& a, bool ignore_order)
{
    auto adj = gaifman_adjacency(a, ignore_order);
    StructureBuilder b(Language({{"E", 2}}));
    for (const auto& v : a.vertices())
        b.vertex(v);
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (int w : adj[v])
            b.tuple(0, {static_cast<int>(v), w});
    return b.build();
}

bool is_clique(const std::vector<std::vector<int>>& adjacency, const std::vector<int>& vertices)
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (vertices[i] == vertices[j])
                continue;
            const auto& n = adjacency[static_cast<std::size_t>(vertices[i])];
            if (! std::binary_search(n.begin(), n.end(), vertices[j]))
                return false;
        }
    return true;
}

bool is_irreducible(const Structure& a, bool ignore_order)
{
    auto adj = gaifman_adjacency(a, ignore_order);
    for (const auto& n : adj)
        if (n.size() + 1 != a.size())
            return false;
    return true;
}

std::vector<std::vector<int>> connected_components(const Structure& a)
{
    auto adj = gaifman_adjacency(a);
    std::vector<int> comp(a.size(), -1);
    std::vector<std::vector<int>> result;
    for (std::size_t start = 0; start < a.size(); ++start) {
        if (comp[start] >= 0)
            continue;
        std::vector<int> members{static_cast<int>(start)};
        comp[start] = static_cast<int>(result.size());
        for (std::size_t k = 0; k < members.size(); ++k)
            for (int w : adj[static_cast<std::size_t>(members[k])])
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = static_cast<int>(result.size());
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        result.push_back(std::move(members));
    }
    return result;
}

bool is_connected(const Structure& a) { return connected_components(a).size() <= 1; }

std::vector<std::pair<int, int>> holes(const Structure& a)
{
    auto adj = gaifman_adjacency(a);
    std::vector<std::pair<int, int>> result;
    for (int u = 0; u < static_cast<int>(a.size()); ++u)
        for (int v = u + 1; v < static_cast<int>(a.size()); ++v)
            if (! std::binary_search(adj[static_cast<std::size_t>(u)].begin(), adj[static_cast<std::size_t>(u)].end(), v))
                result.emplace_back(u, v);
    return result;
}

bool order_is_linear(const Structure& a)
{
    int o = a.language().order_index();
    if (o < 0)
        return false;
    std::size_t n = a.size();
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (const auto& t : a.tuples(o))
        le[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = 1;
    for (std::size_t u = 0; u < n; ++u) {
        if (! le[u][u])
            return false;
        for (std::size_t v = 0; v < n; ++v) {
            if (u != v && le[u][v] == le[v][u])
                return false;
            for (std::size_t w = 0; w < n; ++w)
                if (le[u][v] && le[v][w] && ! le[u][w])
                    return false;
        }
    }
    return true;
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second)
{
    std::vector<int> r(first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        r[i] = second[static_cast<std::size_t>(first[i])];
    return r;
}

Amalgam free_amalgamation(const Structure& b1, const Structure& b2, const Structure& a, const std::vector<int>& alpha1,
    const std::vector<int>& alpha2)
{
    if (! (b1.language() == b2.language()) || ! (a.language() == b1.language()))
        throw LanguageMismatch("free amalgamation needs a common language");
    if (alpha1.size() != a.size() || alpha2.size() != a.size())
        throw MalformedMorphism("amalgamation maps must be total on A");
    if (! verify_morphism(a, b1, alpha1, MorphismKind::embedding))
        throw PreconditionError("alpha1 is not an embedding");
    if (! verify_morphism(a, b2, alpha2, MorphismKind::embedding))
        throw PreconditionError("alpha2 is not an embedding");

    StructureBuilder b(b1.language());
    std::vector<int> id1(b1.size()), id2(b2.size(), -1);
    for (std::size_t v = 0; v < b1.size(); ++v)
        id1[v] = b.vertex(b1.name(static_cast<int>(v)));
    for (std::size_t x = 0; x < a.size(); ++x)
        id2[static_cast<std::size_t>(alpha2[x])] = id1[static_cast<std::size_t>(alpha1[x])];
    for (std::size_t v = 0; v < b2.size(); ++v) {
        if (id2[v] >= 0)
            continue;
        std::string n = fresh_name(b2.name(static_cast<int>(v)), [&](const std::string& c) {
            return b.has_vertex(c) || (b1.find(c) >= 0);
        });
        id2[v] = b.vertex(n);
    }
    for (std::size_t s = 0; s < b1.language().size(); ++s) {
        for (const auto& t : b1.tuples(static_cast<int>(s)))
            b.tuple(static_cast<int>(s), compose(t, id1));
        for (const auto& t : b2.tuples(static_cast<int>(s)))
            b.tuple(static_cast<int>(s), compose(t, id2));
    }
    std::vector<int> final_index;
    Amalgam out;
    out.result = b.build(&final_index);
    out.beta1 = compose(id1, final_index);
    out.beta2 = compose(id2, final_index);
    return out;
}

Amalgam free_amalgamation_over_common(const Structure& b1, const Structure& b2)
{
    std::vector<std::string> shared;
    for (const auto& v : b1.vertices())
        if (b2.find(v) >= 0)
            shared.push_back(v);
    Structure a1 = induced_substructure(b1, shared);
    Structure a2 = induced_substructure(b2, shared);
    if (! (a1 == a2))
        throw PreconditionError("the shared vertices induce different structures in B1 and B2");
    std::vector<int> alpha1, alpha2;
    for (const auto& v : a1.vertices()) {
        alpha1.push_back(b1.index_of(v));
        alpha2.push_back(b2.index_of(v));
    }
    return free_amalgamation(b1, b2, a1, alpha1, alpha2);
}

namespace {

bool strong_overlap(const Structure& c, const Structure& b1, const Structure& b2, const Structure& a,
    const std::vector<int>& alpha1, const std::vector<int>& alpha2, const std::vector<int>& beta1,
    const std::vector<int>& beta2)
{
    if (alpha1.size() != a.size() || alpha2.size() != a.size() || beta1.size() != b1.size()
        || beta2.size() != b2.size())
        return false;
    if (! verify_morphism(a, b1, alpha1, MorphismKind::embedding)
        || ! verify_morphism(a, b2, alpha2, MorphismKind::embedding)
        || ! verify_morphism(b1, c, beta1, MorphismKind::embedding)
        || ! verify_morphism(b2, c, beta2, MorphismKind::embedding))
        return false;
    std::vector<int> pre1(b1.size(), -1), pre2(b2.size(), -1);
    for (std::size_t x = 0; x < a.size(); ++x) {
        pre1[static_cast<std::size_t>(alpha1[x])] = static_cast<int>(x);
        pre2[static_cast<std::size_t>(alpha2[x])] = static_cast<int>(x);
        if (beta1[static_cast<std::size_t>(alpha1[x])] != beta2[static_cast<std::size_t>(alpha2[x])])
            return false;
    }
    for (std::size_t x1 = 0; x1 < b1.size(); ++x1)
        for (std::size_t x2 = 0; x2 < b2.size(); ++x2) {
            bool same = beta1[x1] == beta2[x2];
            bool expected = pre1[x1] >= 0 && pre1[x1] == pre2[x2];
            if (same != expected)
                return false;
        }
    return true;
}

} // namespace

bool is_strong_amalgamation(const Structure& c, const Structure& b1, const Structure& b2, const Structure& a,
    const std::vector<int>& alpha1, const std::vector<int>& alpha2, const std::vector<int>& beta1,
    const std::vector<int>& beta2)
{
    return strong_overlap(c, b1, b2, a, alpha1, alpha2, beta1, beta2);
}

bool is_free_amalgamation(const Structure& c, const Structure& b1, const Structure& b2, const Structure& a,
    const std::vector<int>& alpha1, const std::vector<int>& alpha2, const std::vector<int>& beta1,
    const std::vector<int>& beta2)
{
    if (! strong_overlap(c, b1, b2, a, alpha1, alpha2, beta1, beta2))
        return false;
    std::vector<char> in1(c.size(), 0), in2(c.size(), 0);
    for (int v : beta1)
        in1[static_cast<std::size_t>(v)] = 1;
    for (int v : beta2)
        in2[static_cast<std::size_t>(v)] = 1;
    for (std::size_t v = 0; v < c.size(); ++v)
        if (! in1[v] && ! in2[v])
            return false;
    for (std::size_t s = 0; s < c.language().size(); ++s)
        for (const auto& t : c.tuples(static_cast<int>(s))) {
            bool all1 = true, all2 = true;
            for (int v : t) {
                all1 = all1 && in1[static_cast<std::size_t>(v)];
                all2 = all2 && in2[static_cast<std::size_t>(v)];
            }
            if (! all1 && ! all2)
                return false;
        }
    return true;
}

} // namespace rf
