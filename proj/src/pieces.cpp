#include "ramseyforge/pieces.hpp"

#include "ramseyforge/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

namespace rf {

namespace {

using Adjacency = std::vector<std::vector<int>>;

std::vector<int> neighbourhood_in(const Adjacency& adj, const std::vector<int>& set)
{
    std::vector<char> inside(adj.size(), 0), seen(adj.size(), 0);
    for (int v : set)
        inside[static_cast<std::size_t>(v)] = 1;
    std::vector<int> out;
    for (int v : set)
        for (int w : adj[static_cast<std::size_t>(v)])
            if (! inside[static_cast<std::size_t>(w)] && ! seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

// Components of the graph with `removed` deleted, each sorted, ordered by
// smallest vertex.
std::vector<std::vector<int>> components_without(const Adjacency& adj, const std::vector<char>& removed)
{
    std::vector<int> comp(adj.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (removed[s] || comp[s] >= 0)
            continue;
        std::vector<int> members{static_cast<int>(s)};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (int w : adj[static_cast<std::size_t>(members[i])])
                if (! removed[static_cast<std::size_t>(w)] && comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = comp[s];
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

std::vector<char> mask_of(std::size_t n, const std::vector<int>& set)
{
    std::vector<char> m(n, 0);
    for (int v : set)
        m[static_cast<std::size_t>(v)] = 1;
    return m;
}

std::vector<int> component_containing(const Adjacency& adj, const std::vector<int>& removed, int v)
{
    for (auto& c : components_without(adj, mask_of(adj.size(), removed)))
        if (std::binary_search(c.begin(), c.end(), v))
            return c;
    throw PreconditionError("vertex lies in the cut");
}

std::vector<int> sorted_copy(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_family(const std::vector<Structure>& family)
{
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (! (family[i].language() == family[0].language()))
            throw PreconditionError("family members use different languages");
        if (family[i].empty() || ! is_connected(family[i]))
            throw PreconditionError("family member " + std::to_string(i) + " is not connected");
    }
}

// Every tuple inside p's root maps to a tuple of q under root order, and back.
bool roots_agree(const RootedStructure& p, const RootedStructure& q)
{
    if (p.root.size() != q.root.size())
        return false;
    auto covered = [](const RootedStructure& from, const RootedStructure& to) {
        std::vector<int> pos(from.body.size(), -1);
        for (std::size_t i = 0; i < from.root.size(); ++i)
            pos[static_cast<std::size_t>(from.root[i])] = static_cast<int>(i);
        for (std::size_t s = 0; s < from.body.language().size(); ++s)
            for (const auto& t : from.body.tuples(static_cast<int>(s))) {
                Tuple image;
                for (int v : t) {
                    if (pos[static_cast<std::size_t>(v)] < 0)
                        break;
                    image.push_back(to.root[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])]);
                }
                if (image.size() == t.size() && ! to.body.has(static_cast<int>(s), image))
                    return false;
            }
        return true;
    };
    return covered(p, q) && covered(q, p);
}

void for_each_injective_tuple(
    const std::vector<int>& pool, int width, const std::function<void(const Tuple&)>& visit)
{
    if (width == 0 || static_cast<std::size_t>(width) > pool.size())
        return;
    Tuple t(static_cast<std::size_t>(width));
    std::vector<char> used(pool.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == t.size()) {
            visit(t);
            return;
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i])
                continue;
            used[i] = 1;
            t[k] = pool[i];
            rec(k + 1);
            used[i] = 0;
        }
    };
    rec(0);
}

bool piece_reaches(const Piece& p, const Structure& a, const Tuple& image)
{
    SearchOptions opt;
    opt.fixed.assign(p.body.size(), -1);
    for (std::size_t i = 0; i < p.root.size(); ++i)
        opt.fixed[static_cast<std::size_t>(p.root[i])] = image[i];
    opt.injective_on = p.root;
    return find_morphism(p.body, a, MorphismKind::homomorphism_embedding, opt).has_value();
}

struct Glued {
    Structure structure;
    std::vector<int> map;
};

// Attaches the non-root vertices of p to w with p's root sent to `image`.
Glued attach_piece(const Structure& w, const Piece& p, const Tuple& image)
{
    StructureBuilder b(w);
    std::vector<int> id(p.body.size(), -1);
    std::vector<char> is_root(p.body.size(), 0);
    for (std::size_t i = 0; i < p.root.size(); ++i) {
        id[static_cast<std::size_t>(p.root[i])] = image[i];
        is_root[static_cast<std::size_t>(p.root[i])] = 1;
    }
    for (std::size_t v = 0; v < p.body.size(); ++v)
        if (id[v] < 0)
            id[v] = b.vertex(fresh_name("x" + std::to_string(w.size()), [&](const std::string& c) {
                return b.has_vertex(c);
            }));
    for (std::size_t s = 0; s < p.body.language().size(); ++s)
        for (const auto& t : p.body.tuples(static_cast<int>(s))) {
            bool inner = std::all_of(t.begin(), t.end(), [&](int v) { return is_root[static_cast<std::size_t>(v)]; });
            if (! inner)
                b.tuple(static_cast<int>(s), compose(t, id));
        }
    std::vector<int> final_index;
    Glued out;
    out.structure = b.build(&final_index);
    out.map = compose(id, final_index);
    return out;
}

std::vector<int> indices_of(const Structure& w, const Structure& part)
{
    std::vector<int> out;
    for (const auto& name : part.vertices())
        out.push_back(w.index_of(name));
    return out;
}

} // namespace

std::vector<int> neighbourhood(const Structure& a, const std::vector<int>& set)
{
    return neighbourhood_in(gaifman_adjacency(a), set);
}

std::vector<SeparatingCut> minimal_separating_cuts(const Structure& a)
{
    const Adjacency adj = gaifman_adjacency(a);
    const std::size_t n = adj.size();
    std::map<std::vector<int>, std::vector<std::vector<int>>> found;
    std::deque<std::vector<int>> queue;

    // Every neighbourhood of a component of A - X is examined; it is kept
    // when at least two components of A - N(C) are full.
    auto collect = [&](const std::vector<int>& removed) {
        for (const auto& c : components_without(adj, mask_of(n, removed))) {
            auto s = neighbourhood_in(adj, c);
            if (s.empty() || found.count(s))
                continue;
            std::vector<std::vector<int>> full;
            for (auto& d : components_without(adj, mask_of(n, s)))
                if (neighbourhood_in(adj, d) == s)
                    full.push_back(std::move(d));
            if (full.size() < 2)
                continue;
            found.emplace(s, std::move(full));
            queue.push_back(s);
        }
    };

    for (std::size_t v = 0; v < n; ++v) {
        auto closed = adj[v];
        closed.push_back(static_cast<int>(v));
        collect(closed);
    }
    while (! queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (int x : s) {
            auto removed = s;
            removed.insert(removed.end(), adj[static_cast<std::size_t>(x)].begin(), adj[static_cast<std::size_t>(x)].end());
            collect(sorted_copy(removed));
        }
    }

    std::vector<SeparatingCut> out;
    for (auto& [cut, comps] : found)
        out.push_back({cut, comps});
    return out;
}

ShrunkCut shrink_separating_cut(
    const Structure& a, const std::vector<int>& cut, const std::vector<int>& first, const std::vector<int>& second)
{
    if (first.empty() || second.empty())
        throw PreconditionError("separated sets must be nonempty");
    const Adjacency adj = gaifman_adjacency(a);
    auto r = sorted_copy(cut);
    auto a1 = component_containing(adj, r, first.front());
    for (int v : first)
        if (! std::binary_search(a1.begin(), a1.end(), v))
            throw PreconditionError("first set is not inside one component of A - cut");
    for (int v : second)
        if (std::binary_search(a1.begin(), a1.end(), v))
            throw PreconditionError("the cut does not separate the two sets");

    auto n1 = neighbourhood_in(adj, a1);
    auto a2 = component_containing(adj, n1, second.front());
    ShrunkCut out;
    out.cut = neighbourhood_in(adj, a2);
    out.first = component_containing(adj, out.cut, first.front());
    out.second = a2;
    return out;
}

std::vector<Piece> pieces(const Structure& a, std::size_t origin)
{
    if (a.empty())
        return {};
    if (! is_connected(a))
        throw PreconditionError("pieces are defined for connected structures");
    IsoCatalogue seen;
    std::vector<Piece> out;
    for (const auto& sc : minimal_separating_cuts(a)) {
        for (const auto& comp : sc.full_components) {
            std::vector<int> vertices = comp;
            vertices.insert(vertices.end(), sc.cut.begin(), sc.cut.end());
            std::sort(vertices.begin(), vertices.end());
            Structure body = induced_substructure(a, vertices);
            std::vector<int> order = sc.cut;
            do {
                std::vector<int> root;
                for (int v : order)
                    root.push_back(static_cast<int>(
                        std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin()));
                if (seen.insert(body, root).second)
                    out.push_back({body, root, origin, vertices});
            } while (std::next_permutation(order.begin(), order.end()));
        }
    }
    return out;
}

RootedStructure piece_complement(const Piece& p, const Structure& member)
{
    std::vector<char> drop(member.size(), 0);
    for (int v : p.origin_vertices)
        drop[static_cast<std::size_t>(v)] = 1;
    for (int r : p.root)
        drop[static_cast<std::size_t>(p.origin_vertices[static_cast<std::size_t>(r)])] = 0;
    std::vector<int> keep;
    for (std::size_t v = 0; v < member.size(); ++v)
        if (! drop[v])
            keep.push_back(static_cast<int>(v));
    RootedStructure out{induced_substructure(member, keep), {}};
    for (int r : p.root) {
        int v = p.origin_vertices[static_cast<std::size_t>(r)];
        out.root.push_back(static_cast<int>(std::lower_bound(keep.begin(), keep.end(), v) - keep.begin()));
    }
    return out;
}

std::optional<Structure> piece_glue(const RootedStructure& p, const RootedStructure& q)
{
    if (! (p.body.language() == q.body.language()))
        throw LanguageMismatch("glued structures need a common language");
    if (! roots_agree(p, q))
        return std::nullopt;
    std::vector<int> sorted_root = p.root;
    std::sort(sorted_root.begin(), sorted_root.end());
    Structure shared = induced_substructure(p.body, sorted_root);
    std::vector<int> alpha2;
    for (int v : sorted_root) {
        auto at = std::find(p.root.begin(), p.root.end(), v) - p.root.begin();
        alpha2.push_back(q.root[static_cast<std::size_t>(at)]);
    }
    return free_amalgamation(p.body, q.body, shared, sorted_root, alpha2).result;
}

namespace {

struct Decomposition {
    IsoCatalogue members;
    IsoCatalogue pieces;
    std::vector<Piece> piece_list;
    IsoCatalogue complements;
    std::vector<int> complement_width;
};

Decomposition decompose(const std::vector<Structure>& family)
{
    require_family(family);
    Decomposition d;
    for (std::size_t i = 0; i < family.size(); ++i) {
        d.members.insert(family[i]);
        for (auto& p : pieces(family[i], i)) {
            auto c = piece_complement(p, family[i]);
            if (d.complements.insert(c.body, c.root).second)
                d.complement_width.push_back(static_cast<int>(c.root.size()));
            if (d.pieces.insert(p.body, p.root).second)
                d.piece_list.push_back(std::move(p));
        }
    }
    return d;
}

std::vector<std::size_t> incompatible_indices(const RootedStructure& p, const Decomposition& d)
{
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < d.complements.size(); ++c) {
        if (d.complement_width[c] != static_cast<int>(p.root.size()))
            continue;
        auto glued = piece_glue(p, {d.complements.structure(c), d.complements.root(c)});
        if (glued && d.members.find(*glued))
            out.push_back(c);
    }
    return out;
}

} // namespace

std::vector<RootedStructure> incompatibility_set(const RootedStructure& p, const std::vector<Structure>& family)
{
    auto d = decompose(family);
    std::vector<RootedStructure> out;
    for (std::size_t c : incompatible_indices(p, d))
        out.push_back({d.complements.structure(c), d.complements.root(c)});
    return out;
}

PieceClasses piece_equivalence_classes(const std::vector<Structure>& family)
{
    auto d = decompose(family);
    PieceClasses out;
    out.family = family;
    out.pieces = d.piece_list;
    for (std::size_t c = 0; c < d.complements.size(); ++c)
        out.complements.push_back({d.complements.structure(c), d.complements.root(c)});

    std::map<std::pair<int, std::vector<std::size_t>>, std::size_t> key_to_class;
    std::vector<PieceClass> found;
    for (std::size_t i = 0; i < out.pieces.size(); ++i) {
        auto incompatible = incompatible_indices(out.pieces[i].rooted(), d);
        std::pair key{static_cast<int>(out.pieces[i].root.size()), incompatible};
        auto [it, fresh] = key_to_class.emplace(key, found.size());
        if (fresh)
            found.push_back({key.first, {}, incompatible});
        found[it->second].members.push_back(i);
    }

    std::vector<std::size_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        auto key = [&](std::size_t c) {
            return std::tuple(found[c].width, out.pieces[found[c].members.front()].body.size(), found[c].members.front());
        };
        return key(x) < key(y);
    });
    out.class_of.assign(out.pieces.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (std::size_t m : found[order[k]].members)
            out.class_of[m] = k;
        out.classes.push_back(std::move(found[order[k]]));
    }
    return out;
}

LiftedStructure canonical_lift_on(const Structure& a, const PieceClasses& classes, const std::vector<int>& subset)
{
    auto vertices = sorted_copy(subset);
    LiftedStructure out;
    out.base = induced_substructure(a, vertices);
    for (const auto& cls : classes.classes) {
        out.widths.push_back(cls.width);
        std::set<Tuple> tuples;
        for_each_injective_tuple(vertices, cls.width, [&](const Tuple& t) {
            for (std::size_t m : cls.members)
                if (piece_reaches(classes.pieces[m], a, t)) {
                    Tuple local;
                    for (int v : t)
                        local.push_back(
                            static_cast<int>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin()));
                    tuples.insert(local);
                    break;
                }
        });
        out.ext.push_back(std::move(tuples));
    }
    return out;
}

LiftedStructure canonical_lift(const Structure& a, const PieceClasses& classes)
{
    std::vector<int> all(a.size());
    std::iota(all.begin(), all.end(), 0);
    return canonical_lift_on(a, classes, all);
}

LiftedStructure restrict_lift(const LiftedStructure& x, const std::vector<int>& subset)
{
    auto vertices = sorted_copy(subset);
    std::vector<int> local(x.base.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    LiftedStructure out;
    out.base = induced_substructure(x.base, vertices);
    out.widths = x.widths;
    for (const auto& tuples : x.ext) {
        std::set<Tuple> kept;
        for (const auto& t : tuples)
            if (std::all_of(t.begin(), t.end(), [&](int v) { return local[static_cast<std::size_t>(v)] >= 0; }))
                kept.insert(compose(t, local));
        out.ext.push_back(std::move(kept));
    }
    return out;
}

LiftedStructure pull_back(const LiftedStructure& y, const Structure& base, const std::vector<int>& map)
{
    if (map.size() != base.size())
        throw MalformedMorphism("pull-back map must be total");
    std::vector<int> inverse(y.base.size(), -1);
    for (std::size_t v = 0; v < map.size(); ++v)
        inverse[static_cast<std::size_t>(map[v])] = static_cast<int>(v);
    LiftedStructure out;
    out.base = base;
    out.widths = y.widths;
    for (const auto& tuples : y.ext) {
        std::set<Tuple> kept;
        for (const auto& t : tuples)
            if (std::all_of(t.begin(), t.end(), [&](int v) { return inverse[static_cast<std::size_t>(v)] >= 0; }))
                kept.insert(compose(t, inverse));
        out.ext.push_back(std::move(kept));
    }
    return out;
}

std::string ext_symbol(std::size_t index, int width)
{
    return "ext:" + std::to_string(index) + ":" + std::to_string(width);
}

Structure lifted_to_structure(const LiftedStructure& x)
{
    auto symbols = x.base.language().symbols();
    for (std::size_t i = 0; i < x.widths.size(); ++i)
        symbols.push_back({ext_symbol(i, x.widths[i]), x.widths[i]});
    Language lang(symbols, x.base.language().order_symbol());
    StructureBuilder b(lang);
    for (const auto& v : x.base.vertices())
        b.vertex(v);
    const int base_symbols = static_cast<int>(x.base.language().size());
    for (int s = 0; s < base_symbols; ++s)
        for (const auto& t : x.base.tuples(s))
            b.tuple(s, t);
    for (std::size_t i = 0; i < x.ext.size(); ++i)
        for (const auto& t : x.ext[i])
            b.tuple(base_symbols + static_cast<int>(i), t);
    return b.build();
}

LiftedStructure lifted_from_structure(const Structure& s)
{
    std::map<std::size_t, std::pair<int, int>> ext;
    std::vector<std::string> ext_names;
    const auto& lang = s.language();
    for (std::size_t k = 0; k < lang.size(); ++k) {
        const auto& name = lang.symbol(static_cast<int>(k)).name;
        if (name.rfind("ext:", 0) != 0)
            continue;
        auto colon = name.find(':', 4);
        std::size_t index = 0;
        int width = -1;
        try {
            if (colon == std::string::npos)
                throw std::invalid_argument(name);
            index = std::stoul(name.substr(4, colon - 4));
            width = std::stoi(name.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw FormatError("malformed lift symbol '" + name + "'");
        }
        if (width != lang.arity(static_cast<int>(k)))
            throw FormatError("lift symbol '" + name + "' has arity " + std::to_string(lang.arity(static_cast<int>(k))));
        if (! ext.emplace(index, std::pair{width, static_cast<int>(k)}).second)
            throw FormatError("lift class " + std::to_string(index) + " appears twice");
        ext_names.push_back(name);
    }
    LiftedStructure out;
    out.base = drop_symbols(s, ext_names);
    for (std::size_t i = 0; i < ext.size(); ++i) {
        auto it = ext.find(i);
        if (it == ext.end())
            throw FormatError("lift classes must be numbered 0.." + std::to_string(ext.size() - 1));
        out.widths.push_back(it->second.first);
        const auto& tuples = s.tuples(it->second.second);
        out.ext.emplace_back(tuples.begin(), tuples.end());
    }
    return out;
}

nlohmann::json classes_sidecar(const PieceClasses& classes)
{
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < classes.classes.size(); ++i) {
        const auto& cls = classes.classes[i];
        const auto& rep = classes.pieces[cls.members.front()];
        list.push_back({{"index", i}, {"width", cls.width}, {"symbol", ext_symbol(i, cls.width)},
            {"pieces", cls.members.size()}, {"representative", to_rsf_json(rep.rooted())}});
    }
    return {{"classes", list}};
}

ForbReport forb_membership(const Structure& a, const std::vector<Structure>& family, MorphismKind kind)
{
    ForbReport out;
    for (std::size_t i = 0; i < family.size(); ++i)
        if (auto m = find_morphism(family[i], a, kind)) {
            out.member = false;
            out.forbidden = i;
            out.witness = std::move(m);
            return out;
        }
    return out;
}

MaximalLift maximal_lift(const Structure& a, const PieceClasses& classes, std::optional<std::size_t> growth_cap)
{
    if (! forb_membership(a, classes.family).member)
        throw PreconditionError("the structure is not in Forb(F)");
    std::size_t cap = 0;
    for (const auto& f : classes.family)
        cap = std::max(cap, f.size());
    cap = growth_cap.value_or(cap);

    MaximalLift out;
    out.witness = a;
    std::vector<int> own(a.size());
    std::iota(own.begin(), own.end(), 0);
    out.lift = canonical_lift_on(a, classes, own);

    for (;;) {
        bool grown = false;
        bool blocked = false;
        const auto where = indices_of(out.witness, a);
        for (std::size_t i = 0; i < classes.classes.size() && ! grown; ++i) {
            const auto& cls = classes.classes[i];
            for (std::size_t m : cls.members) {
                const Piece& p = classes.pieces[m];
                const std::size_t extra = p.body.size() - p.root.size();
                for_each_injective_tuple(own, cls.width, [&](const Tuple& t) {
                    if (grown || out.lift.ext[i].count(t))
                        return;
                    auto glued = attach_piece(out.witness, p, compose(t, where));
                    if (! verify_morphism(p.body, glued.structure, glued.map, MorphismKind::homomorphism_embedding))
                        return;
                    if (! forb_membership(glued.structure, classes.family).member)
                        return;
                    if (out.added_vertices + extra > cap) {
                        blocked = true;
                        return;
                    }
                    out.witness = std::move(glued.structure);
                    out.added_vertices += extra;
                    grown = true;
                });
                if (grown)
                    break;
            }
        }
        if (! grown) {
            out.inconclusive = blocked;
            return out;
        }
        out.lift = canonical_lift_on(out.witness, classes, indices_of(out.witness, a));
    }
}

WitnessAmalgamReport witness_amalgam(const LiftedStructure& x, const LiftedStructure& y, const LiftedStructure& z,
    const Structure& w_x, const Structure& w_y, const PieceClasses& classes)
{
    auto sits_on = [](const LiftedStructure& l, const Structure& w, const char* what) {
        for (const auto& v : l.base.vertices())
            if (w.find(v) < 0)
                throw PreconditionError(std::string(what) + " has a vertex outside its witness: " + v);
        if (! (induced_substructure(w, l.base.vertices()) == l.base))
            throw PreconditionError(std::string(what) + " is not induced by its witness");
    };
    sits_on(x, w_x, "X");
    sits_on(y, w_y, "Y");
    for (const auto* l : {&x, &y}) {
        std::vector<int> at;
        for (const auto& v : z.base.vertices()) {
            int k = l->base.find(v);
            if (k < 0)
                throw PreconditionError("Z has a vertex outside X or Y: " + v);
            at.push_back(k);
        }
        if (! (restrict_lift(*l, at) == z))
            throw PreconditionError("X and Y do not both induce Z");
    }

    auto am = free_amalgamation(w_x, w_y, z.base, indices_of(w_x, z.base), indices_of(w_y, z.base));
    WitnessAmalgamReport out;
    out.amalgam = am.result;
    out.beta_x = am.beta1;
    out.beta_y = am.beta2;
    out.membership = forb_membership(out.amalgam, classes.family);

    auto agrees = [&](const LiftedStructure& l, const Structure& w, const std::vector<int>& beta) {
        std::vector<int> image;
        for (const auto& v : l.base.vertices())
            image.push_back(beta[static_cast<std::size_t>(w.index_of(v))]);
        auto lifted = canonical_lift_on(out.amalgam, classes, image);
        std::vector<int> sorted = sorted_copy(image);
        std::vector<int> local;
        for (int v : image)
            local.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
        return pull_back(lifted, l.base, local) == l;
    };
    out.restricts_to_x = agrees(x, w_x, out.beta_x);
    out.restricts_to_y = agrees(y, w_y, out.beta_y);
    return out;
}

} // namespace rf
