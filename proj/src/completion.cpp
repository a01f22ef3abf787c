#include "ramseyforge/completion.hpp"

#include "ramseyforge/errors.hpp"
#include "ramseyforge/rsf.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <queue>
#include <set>

namespace rf {

using json = nlohmann::json;

namespace {

// Tuple seen through local positions: position p of the tuple holds local
// vertex pos[p] (0 or 1).
using LocalTuple = std::pair<int, std::vector<int>>;
using Pattern = std::vector<LocalTuple>;

} // namespace

struct ClassPlugin::LocalTypes {
    std::vector<Pattern> vertex_types;
    // (type of first, type of second) -> cross patterns, first vertex at 0.
    std::map<std::pair<int, int>, std::vector<Pattern>> cross;

    int vertex_type(const Pattern& p) const
    {
        auto it = std::find(vertex_types.begin(), vertex_types.end(), p);
        return it == vertex_types.end() ? -1 : static_cast<int>(it - vertex_types.begin());
    }
};

namespace {

using LocalTypes = ClassPlugin::LocalTypes;

// Tuples of A split by their vertex sets: single vertices and pairs.
struct LocalView {
    std::vector<Pattern> loops;
    std::map<std::pair<int, int>, Pattern> pairs;
};

LocalView local_view(const Structure& a)
{
    LocalView view;
    view.loops.assign(a.size(), {});
    for (std::size_t s = 0; s < a.language().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s))) {
            int lo = *std::min_element(t.begin(), t.end());
            int hi = *std::max_element(t.begin(), t.end());
            bool two = std::all_of(t.begin(), t.end(), [&](int v) { return v == lo || v == hi; });
            if (lo == hi) {
                view.loops[static_cast<std::size_t>(lo)].emplace_back(static_cast<int>(s), std::vector<int>(t.size(), 0));
            } else if (two) {
                std::vector<int> pos;
                for (int v : t)
                    pos.push_back(v == lo ? 0 : 1);
                view.pairs[{lo, hi}].emplace_back(static_cast<int>(s), pos);
            }
        }
    for (auto& l : view.loops)
        std::sort(l.begin(), l.end());
    for (auto& [k, p] : view.pairs)
        std::sort(p.begin(), p.end());
    return view;
}

Pattern flipped(Pattern p)
{
    for (auto& [s, pos] : p)
        for (int& x : pos)
            x = 1 - x;
    std::sort(p.begin(), p.end());
    return p;
}

LocalTypes build_local_types(const ClassPlugin& plugin)
{
    LocalTypes lt;
    for (const auto& m : plugin.members(1)) {
        auto view = local_view(m);
        if (lt.vertex_type(view.loops[0]) < 0)
            lt.vertex_types.push_back(view.loops[0]);
    }
    for (const auto& m : plugin.members(2)) {
        auto view = local_view(m);
        int t0 = lt.vertex_type(view.loops[0]);
        int t1 = lt.vertex_type(view.loops[1]);
        auto it = view.pairs.find({0, 1});
        if (t0 < 0 || t1 < 0 || it == view.pairs.end())
            continue;
        auto add = [&](int x, int y, const Pattern& p) {
            auto& list = lt.cross[{x, y}];
            if (std::find(list.begin(), list.end(), p) == list.end())
                list.push_back(p);
        };
        add(t0, t1, it->second);
        add(t1, t0, flipped(it->second));
    }
    return lt;
}

void require_language(const Structure& a, const ClassPlugin& plugin)
{
    if (! (a.language() == plugin.language()))
        throw LanguageMismatch("structure language does not match class '" + plugin.name() + "'");
}

// "v01", "v02", ...: names that sort like their indices.
std::vector<std::string> padded_names(int k)
{
    std::vector<std::string> out;
    for (int i = 1; i <= k; ++i)
        out.push_back((i < 10 ? "v0" : "v") + std::to_string(i));
    return out;
}

std::vector<int> identity_map(std::size_t n)
{
    std::vector<int> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = static_cast<int>(i);
    return m;
}

// Structure on `verts` with the tuples of A inside single vertices and
// inside the listed pairs; map is the inclusion.
Obstacle pair_structure(const Structure& a, std::vector<int> verts, const std::vector<std::pair<int, int>>& pairs,
    const std::string& kind, const std::string& message)
{
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::set<std::pair<int, int>> allowed;
    for (auto [u, v] : pairs)
        allowed.insert({std::min(u, v), std::max(u, v)});
    StructureBuilder b(a.language());
    for (int v : verts)
        b.vertex(a.name(v));
    std::set<int> inside(verts.begin(), verts.end());
    for (std::size_t s = 0; s < a.language().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s))) {
            std::set<int> vs(t.begin(), t.end());
            if (! std::all_of(vs.begin(), vs.end(), [&](int v) { return inside.count(v) > 0; }))
                continue;
            bool ok = vs.size() == 1 || (vs.size() == 2 && allowed.count({*vs.begin(), *vs.rbegin()}));
            if (! ok)
                continue;
            Tuple ids;
            for (int v : t)
                ids.push_back(b.vertex(a.name(v)));
            b.tuple(static_cast<int>(s), ids);
        }
    Obstacle o;
    o.kind = kind;
    o.message = message;
    o.structure = b.build();
    for (const auto& name : o.structure.vertices())
        o.map.push_back(a.index_of(name));
    return o;
}

Obstacle induced_obstacle(const Structure& a, std::vector<int> verts, const std::string& kind, const std::string& message)
{
    std::sort(verts.begin(), verts.end());
    Obstacle o;
    o.kind = kind;
    o.message = message;
    o.structure = induced_substructure(a, verts);
    o.map = verts;
    return o;
}

CompletionResult failure(Obstacle o)
{
    CompletionResult r;
    r.certificate = std::move(o);
    return r;
}

CompletionResult success(const Structure& a, Structure c)
{
    CompletionResult r;
    r.completed = true;
    for (const auto& name : a.vertices())
        r.map.push_back(c.index_of(name));
    r.completion = std::move(c);
    return r;
}

using Matrix = std::vector<std::vector<char>>;

Matrix relation_matrix(const Structure& a, int symbol)
{
    Matrix m(a.size(), std::vector<char>(a.size(), 0));
    for (const auto& t : a.tuples(symbol))
        m[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = 1;
    return m;
}

void transitive_close(Matrix& m)
{
    std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (m[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (m[k][j])
                        m[i][j] = 1;
}

// A directed cycle of length >= 2 in m (ignoring loops), as its vertex sequence.
std::optional<std::vector<int>> find_cycle(const Matrix& m)
{
    std::size_t n = m.size();
    std::vector<int> colour(n, 0), parent(n, -1);
    for (std::size_t root = 0; root < n; ++root) {
        if (colour[root])
            continue;
        std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
        colour[root] = 1;
        while (! stack.empty()) {
            auto& [u, next] = stack.back();
            auto uu = static_cast<std::size_t>(u);
            if (next == n) {
                colour[uu] = 2;
                stack.pop_back();
                continue;
            }
            std::size_t w = next++;
            if (w == uu || ! m[uu][w])
                continue;
            if (colour[w] == 1) {
                std::vector<int> cyc{static_cast<int>(w)};
                for (int x = u; x != static_cast<int>(w); x = parent[static_cast<std::size_t>(x)])
                    cyc.push_back(x);
                std::reverse(cyc.begin() + 1, cyc.end());
                return cyc;
            }
            if (colour[w] == 0) {
                colour[w] = 1;
                parent[w] = u;
                stack.emplace_back(static_cast<int>(w), 0);
            }
        }
    }
    return std::nullopt;
}

std::vector<std::pair<int, int>> cyclic_pairs(const std::vector<int>& cyc)
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < cyc.size(); ++i)
        out.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
    return out;
}

// Quasi-cycle vertices given the <= and po matrices.
std::optional<std::vector<int>> quasi_cycle_in(const Matrix& le, const Matrix& po)
{
    std::size_t n = le.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v || ! le[u][v] || po[u][v])
                continue;
            std::vector<int> parent(n, -1);
            std::vector<char> seen(n, 0);
            std::deque<std::size_t> queue{u};
            seen[u] = 1;
            while (! queue.empty() && ! seen[v]) {
                auto x = queue.front();
                queue.pop_front();
                for (std::size_t y = 0; y < n; ++y)
                    if (! seen[y] && y != x && le[x][y] && po[x][y]) {
                        seen[y] = 1;
                        parent[y] = static_cast<int>(x);
                        queue.push_back(y);
                    }
            }
            if (! seen[v])
                continue;
            std::vector<int> path;
            for (int x = static_cast<int>(v); x != -1; x = parent[static_cast<std::size_t>(x)])
                path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
    return std::nullopt;
}

std::vector<std::pair<int, int>> path_pairs(const std::vector<int>& path, bool close)
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        out.emplace_back(path[i], path[i + 1]);
    if (close && path.size() > 1)
        out.emplace_back(path.front(), path.back());
    return out;
}

// Linear extension of a strict order given as a DAG: smallest available
// vertex index first.
std::vector<int> stable_topological_order(const Matrix& m)
{
    std::size_t n = m.size();
    std::vector<int> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && m[i][j])
                ++indeg[j];
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0)
            ready.push(static_cast<int>(i));
    std::vector<int> out;
    while (! ready.empty()) {
        int u = ready.top();
        ready.pop();
        out.push_back(u);
        for (std::size_t j = 0; j < n; ++j)
            if (j != static_cast<std::size_t>(u) && m[static_cast<std::size_t>(u)][j] && --indeg[j] == 0)
                ready.push(static_cast<int>(j));
    }
    return out;
}

void add_order(StructureBuilder& b, int symbol, const std::vector<int>& order, const Structure& a)
{
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i; j < order.size(); ++j)
            b.tuple(symbol, {b.vertex(a.name(order[i])), b.vertex(a.name(order[j]))});
}

std::optional<Obstacle> order_obstacle(const Structure& a, const Matrix& le)
{
    auto cyc = find_cycle(le);
    if (! cyc)
        return std::nullopt;
    return pair_structure(a, *cyc, cyclic_pairs(*cyc), "order-cycle", "the order relations contain a cycle");
}

bool is_partial_order(const Matrix& m)
{
    std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (! m[i][i])
            return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && m[i][j] && m[j][i])
                return false;
            if (m[i][j])
                for (std::size_t k = 0; k < n; ++k)
                    if (m[j][k] && ! m[i][k])
                        return false;
        }
    }
    return true;
}

class PosetPlugin final : public ClassPlugin {
public:
    PosetPlugin() : lang_(poset_language()), le_(lang_.index_of("<=")), po_(lang_.index_of("po")) {}

    std::string name() const override { return "posets"; }
    const Language& language() const override { return lang_; }

    bool membership(const Structure& a) const override
    {
        if (! (a.language() == lang_) || ! order_is_linear(a))
            return false;
        auto po = relation_matrix(a, po_);
        auto le = relation_matrix(a, le_);
        if (! is_partial_order(po))
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j)
                if (po[i][j] && ! le[i][j])
                    return false;
        return true;
    }

    std::vector<Structure> members(int k) const override
    {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                pairs.emplace_back(i, j);
        auto names = root_names(k);
        std::vector<Structure> out;
        for (unsigned mask = 0; mask < (1U << pairs.size()); ++mask) {
            Matrix po(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(k), 0));
            for (int i = 0; i < k; ++i)
                po[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (mask & (1U << p))
                    po[static_cast<std::size_t>(pairs[p].first)][static_cast<std::size_t>(pairs[p].second)] = 1;
            if (! is_partial_order(po))
                continue;
            StructureBuilder b(lang_);
            for (const auto& nm : names)
                b.vertex(nm);
            for (int i = 0; i < k; ++i)
                for (int j = i; j < k; ++j) {
                    b.tuple(le_, {i, j});
                    if (po[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                        b.tuple(po_, {i, j});
                }
            out.push_back(b.build());
        }
        return out;
    }

    CompletionResult try_strong_completion(const Structure& a) const override
    {
        require_language(a, *this);
        if (auto o = local_obstacle(a, *this))
            return failure(*o);
        auto po = relation_matrix(a, po_);
        auto le = relation_matrix(a, le_);
        Matrix both = le;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j)
                both[i][j] = both[i][j] || po[i][j];
        if (auto o = order_obstacle(a, both))
            return failure(*o);
        if (auto q = quasi_cycle_in(le, po))
            return failure(pair_structure(a, *q, path_pairs(*q, true), "quasi-cycle",
                "a chain in both relations closes against a <= pair outside po"));
        transitive_close(po);
        transitive_close(both);
        StructureBuilder b(lang_);
        for (const auto& nm : a.vertices())
            b.vertex(nm);
        add_order(b, le_, stable_topological_order(both), a);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j)
                if (po[i][j])
                    b.tuple(po_, {b.vertex(a.name(static_cast<int>(i))), b.vertex(a.name(static_cast<int>(j)))});
        return success(a, b.build());
    }

private:
    Language lang_;
    int le_;
    int po_;
};

class MetricPlugin final : public ClassPlugin {
public:
    explicit MetricPlugin(DistanceSet s) : s_(std::move(s)), lang_(metric_language(s_))
    {
        auto fv = four_values(s_);
        if (! fv.holds)
            throw PreconditionError("S = " + to_string(s_) + " fails the 4-values condition");
    }

    std::string name() const override { return "metric:" + to_string(s_); }
    const Language& language() const override { return lang_; }

    bool membership(const Structure& a) const override
    {
        if (! (a.language() == lang_))
            return false;
        try {
            auto g = sgraph_from_structure(a, s_);
            return g.total() && is_metric_space(g);
        } catch (const FormatError&) {
            return false;
        }
    }

    std::vector<Structure> members(int k) const override
    {
        std::size_t pairs = static_cast<std::size_t>(k * (k - 1) / 2);
        double total = 1;
        for (std::size_t p = 0; p < pairs; ++p)
            total *= static_cast<double>(s_.size());
        if (total > 1e6)
            throw CapExceeded("too many distance assignments to enumerate metric spaces on " + std::to_string(k) +
                " vertices");
        IsoCatalogue cat;
        std::vector<Structure> out;
        std::vector<std::size_t> digit(pairs, 0);
        while (true) {
            SGraph g(root_names(k));
            std::size_t p = 0;
            for (int u = 0; u < k; ++u)
                for (int v = u + 1; v < k; ++v)
                    g.set(u, v, s_.values()[digit[p++]]);
            if (is_metric_space(g)) {
                auto st = to_structure(g, s_);
                if (cat.insert(st).second)
                    out.push_back(st);
            }
            std::size_t i = 0;
            while (i < pairs && ++digit[i] == s_.size())
                digit[i++] = 0;
            if (i == pairs)
                break;
        }
        return out;
    }

    CompletionResult try_strong_completion(const Structure& a) const override
    {
        require_language(a, *this);
        if (auto o = local_obstacle(a, *this))
            return failure(*o);
        auto g = sgraph_from_structure(a, s_);
        auto c = complete_metric_graph(g, s_);
        if (c.completed)
            return success(a, to_structure(c.result, s_));
        return failure(pair_structure(a, c.path, path_pairs(c.path, true), "non-metric-cycle",
            "the distance " + format_rational(*g.at(c.violated->first, c.violated->second)) +
                " exceeds the S-length " + format_rational(c.path_length) + " of a path"));
    }

private:
    DistanceSet s_;
    Language lang_;
};

class ForbiddenPlugin final : public ClassPlugin {
public:
    ForbiddenPlugin(std::vector<Structure> family, std::size_t extension_cap)
        : family_(std::move(family)), lang_(Language({{"<=", 2}, {"E", 2}}, "<=")), le_(0), edge_(1),
          cap_(extension_cap)
    {
        for (const auto& f : family_) {
            if (! (f.language() == lang_))
                throw LanguageMismatch("forbidden structures must be ordered graphs over {<=, E}");
            if (! is_irreducible(f))
                throw PreconditionError("forbidden structures must be irreducible");
        }
    }

    std::string name() const override { return "forbidden:" + std::to_string(family_.size()); }
    const Language& language() const override { return lang_; }

    bool membership(const Structure& a) const override
    {
        if (! (a.language() == lang_) || ! order_is_linear(a) || ! graph_ok(a))
            return false;
        return ! forbidden_copy(a);
    }

    std::vector<Structure> members(int k) const override
    {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                pairs.emplace_back(i, j);
        std::vector<Structure> out;
        for (unsigned mask = 0; mask < (1U << pairs.size()); ++mask) {
            StructureBuilder b(lang_);
            for (const auto& nm : root_names(k))
                b.vertex(nm);
            for (int i = 0; i < k; ++i)
                for (int j = i; j < k; ++j)
                    b.tuple(le_, {i, j});
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (mask & (1U << p)) {
                    b.tuple(edge_, {pairs[p].first, pairs[p].second});
                    b.tuple(edge_, {pairs[p].second, pairs[p].first});
                }
            auto s = b.build();
            if (! forbidden_copy(s))
                out.push_back(s);
        }
        return out;
    }

    CompletionResult try_strong_completion(const Structure& a) const override
    {
        require_language(a, *this);
        if (auto o = local_obstacle(a, *this))
            return failure(*o);
        auto le = relation_matrix(a, le_);
        if (auto o = order_obstacle(a, le))
            return failure(*o);
        transitive_close(le);
        std::optional<std::pair<std::size_t, std::vector<int>>> first_copy;
        std::size_t tried = 0;
        std::optional<Structure> found;
        std::vector<int> order;
        std::vector<char> used(a.size(), 0);
        // Linear extensions in lexicographic order of vertex indices.
        std::function<bool()> extend = [&]() -> bool {
            if (order.size() == a.size()) {
                ++tried;
                auto c = build(a, order);
                auto copy = forbidden_copy(c);
                if (! copy) {
                    found = std::move(c);
                    return true;
                }
                if (! first_copy)
                    first_copy = copy;
                return tried >= cap_;
            }
            for (std::size_t v = 0; v < a.size(); ++v) {
                if (used[v])
                    continue;
                bool minimal = true;
                for (std::size_t u = 0; u < a.size() && minimal; ++u)
                    if (! used[u] && u != v && le[u][v])
                        minimal = false;
                if (! minimal)
                    continue;
                used[v] = 1;
                order.push_back(static_cast<int>(v));
                if (extend())
                    return true;
                order.pop_back();
                used[v] = 0;
            }
            return false;
        };
        extend();
        if (found)
            return success(a, *found);
        const auto& [index, copy] = *first_copy;
        std::string note = tried >= cap_ ? " (extension cap reached)" : "";
        auto sub = induced_obstacle(a, copy, "forbidden-copy",
            "every tried linear extension contains forbidden structure #" + std::to_string(index) + note);
        if (copy.size() < a.size() && ! try_strong_completion(sub.structure).completed)
            return failure(sub);
        return failure(induced_obstacle(a, identity_map(a.size()), "forbidden-copy", sub.message));
    }

private:
    bool graph_ok(const Structure& a) const
    {
        for (const auto& t : a.tuples(edge_))
            if (t[0] == t[1] || ! a.has(edge_, {t[1], t[0]}))
                return false;
        return true;
    }

    Structure build(const Structure& a, const std::vector<int>& order) const
    {
        StructureBuilder b(lang_);
        for (const auto& nm : a.vertices())
            b.vertex(nm);
        add_order(b, le_, order, a);
        for (const auto& t : a.tuples(edge_))
            b.tuple(edge_, {b.vertex(a.name(t[0])), b.vertex(a.name(t[1]))});
        return b.build();
    }

    // (family index, sorted image) of the first embedded forbidden structure.
    std::optional<std::pair<std::size_t, std::vector<int>>> forbidden_copy(const Structure& c) const
    {
        for (std::size_t i = 0; i < family_.size(); ++i)
            if (auto m = find_morphism(family_[i], c, MorphismKind::embedding)) {
                auto img = m->map;
                std::sort(img.begin(), img.end());
                return std::make_pair(i, img);
            }
        return std::nullopt;
    }

    std::vector<Structure> family_;
    Language lang_;
    int le_;
    int edge_;
    std::size_t cap_;
};

} // namespace

const ClassPlugin::LocalTypes& ClassPlugin::local_types() const
{
    std::call_once(local_once_, [this] { local_ = std::make_shared<const LocalTypes>(build_local_types(*this)); });
    return *local_;
}

Language poset_language() { return Language({{"<=", 2}, {"po", 2}}, "<="); }

std::unique_ptr<ClassPlugin> poset_plugin() { return std::make_unique<PosetPlugin>(); }

std::unique_ptr<ClassPlugin> metric_plugin(const DistanceSet& s) { return std::make_unique<MetricPlugin>(s); }

std::unique_ptr<ClassPlugin> forbidden_plugin(std::vector<Structure> family, std::size_t extension_cap)
{
    return std::make_unique<ForbiddenPlugin>(std::move(family), extension_cap);
}

std::unique_ptr<ClassPlugin> make_plugin(const std::string& spec)
{
    if (spec == "posets")
        return poset_plugin();
    if (spec.rfind("metric:", 0) == 0)
        return metric_plugin(read_distance_set(spec.substr(7)));
    if (spec.rfind("forbidden:", 0) == 0) {
        auto path = spec.substr(10);
        return forbidden_plugin(family_from_json(read_json_file(path), path));
    }
    throw PreconditionError("unknown class '" + spec + "' (expected posets, metric:<S> or forbidden:<file>)");
}

bool is_completion(const Structure& c, const Structure& c_prime, bool strong)
{
    if (! (c.language() == c_prime.language()))
        throw LanguageMismatch("completion languages differ");
    if (! is_irreducible(c_prime))
        return false;
    SearchOptions opt;
    if (strong)
        opt.injective_on = identity_map(c.size());
    return find_morphism(c, c_prime, MorphismKind::homomorphism_embedding, opt).has_value();
}

namespace {

bool completes_onto_smaller(const Structure& a, const ClassPlugin& plugin)
{
    if (! plugin.hereditary())
        throw PreconditionError("class '" + plugin.name() + "' is not hereditary");
    for (int k = 1; k < static_cast<int>(a.size()); ++k)
        for (const auto& m : plugin.members(k))
            if (find_morphism(a, m, MorphismKind::homomorphism_embedding))
                return true;
    return false;
}

} // namespace

bool has_completion(const Structure& a, const ClassPlugin& plugin)
{
    return plugin.try_strong_completion(a).completed || completes_onto_smaller(a, plugin);
}

CompletionResult complete_with(const Structure& a, const ClassPlugin& plugin)
{
    require_language(a, plugin);
    return plugin.try_strong_completion(a);
}

bool verify_result(const Structure& a, const ClassPlugin& plugin, const CompletionResult& r)
{
    if (r.completed) {
        if (! r.completion || r.certificate || ! plugin.membership(*r.completion))
            return false;
        std::set<int> image(r.map.begin(), r.map.end());
        return image.size() == a.size() &&
            verify_morphism(a, *r.completion, r.map, MorphismKind::homomorphism_embedding) &&
            is_irreducible(*r.completion);
    }
    if (! r.certificate || r.completion)
        return false;
    const auto& o = *r.certificate;
    return verify_morphism(o.structure, a, o.map, MorphismKind::homomorphism_embedding) &&
        ! plugin.try_strong_completion(o.structure).completed;
}

std::optional<Obstacle> local_obstacle(const Structure& a, const ClassPlugin& plugin)
{
    const auto& lt = plugin.local_types();
    auto view = local_view(a);
    std::vector<int> type(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) {
        type[v] = lt.vertex_type(view.loops[v]);
        if (type[v] < 0)
            return induced_obstacle(a, {static_cast<int>(v)}, "local", "vertex '" + a.name(static_cast<int>(v)) +
                "' is not a one-vertex member");
    }
    for (const auto& [uv, pattern] : view.pairs) {
        auto [u, v] = uv;
        auto it = lt.cross.find({type[static_cast<std::size_t>(u)], type[static_cast<std::size_t>(v)]});
        bool ok = it != lt.cross.end() && std::find(it->second.begin(), it->second.end(), pattern) != it->second.end();
        if (! ok)
            return induced_obstacle(a, {u, v}, "local",
                "pair ('" + a.name(u) + "', '" + a.name(v) + "') is not a two-vertex member");
    }
    return std::nullopt;
}

std::optional<QuasiCycle> quasi_cycle_scan(const Structure& a)
{
    int le_sym = a.language().find("<=");
    int po_sym = a.language().find("po");
    if (le_sym < 0 || po_sym < 0)
        throw LanguageMismatch("quasi-cycles need the symbols <= and po");
    auto q = quasi_cycle_in(relation_matrix(a, le_sym), relation_matrix(a, po_sym));
    if (! q)
        return std::nullopt;
    auto o = pair_structure(a, *q, path_pairs(*q, true), "quasi-cycle", "");
    return QuasiCycle{*q, o.structure};
}

void for_each_candidate(const ClassPlugin& plugin, int k, const std::function<void(const Structure&)>& visit)
{
    const auto& lt = plugin.local_types();
    if (k <= 0 || lt.vertex_types.empty())
        return;
    auto names = padded_names(k);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            pairs.emplace_back(i, j);
    std::vector<int> type(static_cast<std::size_t>(k), 0);
    static const std::vector<Pattern> none;
    while (true) {
        std::vector<const std::vector<Pattern>*> options;
        for (auto [i, j] : pairs) {
            auto it = lt.cross.find({type[static_cast<std::size_t>(i)], type[static_cast<std::size_t>(j)]});
            options.push_back(it == lt.cross.end() ? &none : &it->second);
        }
        // choice 0 is a hole; choice c > 0 is options[c - 1].
        std::vector<std::size_t> choice(pairs.size(), 0);
        while (true) {
            StructureBuilder b(plugin.language());
            for (const auto& nm : names)
                b.vertex(nm);
            for (int v = 0; v < k; ++v)
                for (const auto& [s, pos] : lt.vertex_types[static_cast<std::size_t>(type[static_cast<std::size_t>(v)])])
                    b.tuple(s, Tuple(pos.size(), v));
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                if (choice[p] == 0)
                    continue;
                for (const auto& [s, pos] : (*options[p])[choice[p] - 1]) {
                    Tuple t;
                    for (int x : pos)
                        t.push_back(x == 0 ? pairs[p].first : pairs[p].second);
                    b.tuple(s, t);
                }
            }
            visit(b.build());
            std::size_t p = 0;
            while (p < pairs.size() && ++choice[p] > options[p]->size())
                choice[p++] = 0;
            if (p == pairs.size())
                break;
        }
        std::size_t v = 0;
        while (v < type.size() && ++type[v] == static_cast<int>(lt.vertex_types.size()))
            type[v++] = 0;
        if (v == type.size())
            break;
    }
}

std::vector<Structure> obstacles_up_to(const ClassPlugin& plugin, int n, bool connected_only)
{
    IsoCatalogue cat;
    std::vector<Structure> out;
    for (int k = 1; k <= n; ++k)
        for_each_candidate(plugin, k, [&](const Structure& c) {
            if (connected_only && ! is_connected(c))
                return;
            if (plugin.try_strong_completion(c).completed)
                return;
            for (int v = 0; v < k; ++v) {
                std::vector<int> rest;
                for (int w = 0; w < k; ++w)
                    if (w != v)
                        rest.push_back(w);
                if (! plugin.try_strong_completion(induced_substructure(c, rest)).completed)
                    return;
            }
            if (cat.insert(c).second)
                out.push_back(c);
        });
    return out;
}

namespace {

struct ProbeNode {
    Structure structure;
    std::vector<int> labels;
};

// Adds one unary "label" symbol per C0 vertex so isomorphism respects labels.
Structure labelled(const Structure& s, const std::vector<int>& labels, std::size_t c0_size)
{
    auto symbols = s.language().symbols();
    for (std::size_t c = 0; c < c0_size; ++c)
        symbols.push_back({"label:" + std::to_string(c), 1});
    StructureBuilder b(Language(symbols, s.language().order_symbol()));
    for (const auto& nm : s.vertices())
        b.vertex(nm);
    for (std::size_t sym = 0; sym < s.language().size(); ++sym)
        for (const auto& t : s.tuples(static_cast<int>(sym)))
            b.tuple(static_cast<int>(sym), t);
    for (std::size_t v = 0; v < labels.size(); ++v)
        b.tuple(static_cast<int>(s.language().size()) + labels[v], {static_cast<int>(v)});
    return b.build();
}

bool subsets_with_complete(const ClassPlugin& plugin, const Structure& s, int v, int n)
{
    int k = static_cast<int>(s.size());
    std::vector<int> others;
    for (int w = 0; w < k; ++w)
        if (w != v)
            others.push_back(w);
    int limit = std::min(n - 1, static_cast<int>(others.size()));
    // Subsets of the other vertices of size < n, always together with v.
    std::vector<int> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
        std::vector<int> sub = chosen;
        sub.push_back(v);
        std::sort(sub.begin(), sub.end());
        if (! plugin.try_strong_completion(induced_substructure(s, sub)).completed)
            return false;
        if (static_cast<int>(chosen.size()) == limit)
            return true;
        for (std::size_t i = from; i < others.size(); ++i) {
            chosen.push_back(others[i]);
            bool ok = rec(i + 1);
            chosen.pop_back();
            if (! ok)
                return false;
        }
        return true;
    };
    return rec(0);
}

} // namespace

ProbeReport probe_local_finiteness(
    const ClassPlugin& plugin, const Structure& c0, int n, std::size_t size_cap, std::size_t node_budget)
{
    require_language(c0, plugin);
    if (c0.language().max_arity() > 2)
        throw PreconditionError("the prober supports languages of arity at most 2");
    if (n < 1)
        throw PreconditionError("n must be positive");
    ProbeReport report;
    report.n = n;
    report.size_cap = size_cap;
    auto c0_view = local_view(c0);
    std::size_t m = c0.size();
    const auto& lang = c0.language();

    auto vertex_tuples = [&](StructureBuilder& b, int id, int label) {
        for (const auto& [s, pos] : c0_view.loops[static_cast<std::size_t>(label)])
            b.tuple(s, Tuple(pos.size(), id));
    };
    // Pull-back of C0's tuples on the pair (x, y) onto (u, v).
    auto pair_tuples = [&](StructureBuilder& b, int u, int v, int x, int y) {
        int lo = std::min(x, y), hi = std::max(x, y);
        auto it = c0_view.pairs.find({lo, hi});
        if (it == c0_view.pairs.end())
            return;
        for (const auto& [s, pos] : it->second) {
            Tuple t;
            for (int p : pos)
                t.push_back((p == 0) == (lo == x) ? u : v);
            b.tuple(s, t);
        }
    };
    auto joinable = [&](int x, int y) { return x != y && c0_view.pairs.count({std::min(x, y), std::max(x, y)}) > 0; };

    std::vector<ProbeNode> level;
    IsoCatalogue cat1;
    for (std::size_t c = 0; c < m; ++c) {
        StructureBuilder b(lang);
        vertex_tuples(b, b.vertex(padded_names(1)[0]), static_cast<int>(c));
        ProbeNode node{b.build(), {static_cast<int>(c)}};
        if (! plugin.try_strong_completion(node.structure).completed)
            continue;
        if (cat1.insert(labelled(node.structure, node.labels, m)).second)
            level.push_back(node);
    }
    report.per_size.push_back(level.size());
    std::size_t budget_used = level.size();
    for (std::size_t k = 1; k < size_cap && ! level.empty(); ++k) {
        IsoCatalogue cat;
        std::vector<ProbeNode> next;
        auto names = padded_names(static_cast<int>(k + 1));
        for (const auto& node : level) {
            for (std::size_t c = 0; c < m; ++c) {
                std::vector<int> allowed;
                for (std::size_t w = 0; w < k; ++w)
                    if (joinable(node.labels[w], static_cast<int>(c)))
                        allowed.push_back(static_cast<int>(w));
                for (unsigned mask = 1; mask < (1U << allowed.size()); ++mask) {
                    if (budget_used >= node_budget) {
                        report.inconclusive = true;
                        report.per_size.push_back(next.size());
                        return report;
                    }
                    StructureBuilder b(lang);
                    for (const auto& nm : names)
                        b.vertex(nm);
                    for (std::size_t sym = 0; sym < lang.size(); ++sym)
                        for (const auto& t : node.structure.tuples(static_cast<int>(sym)))
                            b.tuple(static_cast<int>(sym), t);
                    int v = static_cast<int>(k);
                    vertex_tuples(b, v, static_cast<int>(c));
                    for (std::size_t i = 0; i < allowed.size(); ++i)
                        if (mask & (1U << i))
                            pair_tuples(b, allowed[i], v, node.labels[static_cast<std::size_t>(allowed[i])],
                                static_cast<int>(c));
                    ProbeNode child{b.build(), node.labels};
                    child.labels.push_back(static_cast<int>(c));
                    if (! cat.insert(labelled(child.structure, child.labels, m)).second)
                        continue;
                    ++budget_used;
                    if (! subsets_with_complete(plugin, child.structure, v, n))
                        continue;
                    if (static_cast<int>(k + 1) > n) {
                        auto r = plugin.try_strong_completion(child.structure);
                        if (! r.completed) {
                            report.counterexamples.push_back({child.structure, child.labels, r.certificate});
                            continue;
                        }
                    }
                    next.push_back(std::move(child));
                }
            }
        }
        report.per_size.push_back(next.size());
        level = std::move(next);
    }
    return report;
}

IffReport completion_iff_strong(const ClassPlugin& plugin, int size_cap)
{
    IffReport report;
    // Members with fewer vertices than the structure, indexed by size.
    std::vector<std::vector<Structure>> smaller(static_cast<std::size_t>(std::max(size_cap, 1)));
    for (int k = 1; k < size_cap; ++k)
        smaller[static_cast<std::size_t>(k)] = plugin.members(k);
    for (int k = 1; k <= size_cap; ++k)
        for_each_candidate(plugin, k, [&](const Structure& c) {
            ++report.checked;
            bool strong = plugin.try_strong_completion(c).completed;
            bool any = strong;
            for (int j = 1; j < k && ! any; ++j)
                for (const auto& m : smaller[static_cast<std::size_t>(j)])
                    if (find_morphism(c, m, MorphismKind::homomorphism_embedding)) {
                        any = true;
                        break;
                    }
            if (any != strong)
                report.violations.push_back({c, any, strong});
        });
    return report;
}

json to_json(const Obstacle& o, const Structure& a)
{
    return {{"kind", o.kind}, {"message", o.message}, {"structure", to_rsf_json(o.structure)},
        {"map", map_to_json(o.structure, a, o.map)}};
}

json to_json(const CompletionResult& r, const Structure& a)
{
    json j;
    j["status"] = r.completed ? "completed" : "no-completion";
    if (r.completion) {
        j["completion"] = to_rsf_json(*r.completion);
        j["map"] = map_to_json(a, *r.completion, r.map);
    }
    if (r.certificate)
        j["certificate"] = to_json(*r.certificate, a);
    return j;
}

json to_json(const ProbeReport& r, const Structure& c0)
{
    json j;
    j["n"] = r.n;
    j["size_cap"] = r.size_cap;
    j["per_size"] = r.per_size;
    j["inconclusive"] = r.inconclusive;
    j["counterexamples"] = json::array();
    for (const auto& ce : r.counterexamples) {
        json e;
        e["structure"] = to_rsf_json(ce.structure);
        json labels = json::object();
        for (std::size_t v = 0; v < ce.labels.size(); ++v)
            labels[ce.structure.name(static_cast<int>(v))] = c0.name(ce.labels[v]);
        e["labels"] = labels;
        if (ce.certificate)
            e["certificate"] = to_json(*ce.certificate, ce.structure);
        j["counterexamples"].push_back(e);
    }
    return j;
}

} // namespace rf
