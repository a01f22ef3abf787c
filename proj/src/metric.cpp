#include "ramseyforge/metric.hpp"

#include "ramseyforge/closures.hpp"
#include "ramseyforge/errors.hpp"
#include "ramseyforge/rsf.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <stdexcept>

namespace rf {

using nlohmann::json;

std::string format_rational(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

long long parse_int(std::string_view text, std::string_view whole)
{
    long long v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || p != text.data() + text.size())
        throw FormatError("malformed rational \"" + std::string(whole) + "\"");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text));
    long long num = parse_int(text.substr(0, slash), text);
    long long den = parse_int(text.substr(slash + 1), text);
    if (den <= 0)
        throw FormatError("malformed rational \"" + std::string(text) + "\"");
    return Rational(num, den);
}

DistanceSet::DistanceSet(std::vector<Rational> values) : values_(std::move(values))
{
    if (values_.empty())
        throw PreconditionError("distance set is empty");
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    if (values_.front() <= 0)
        throw PreconditionError("distances must be positive");
}

bool DistanceSet::contains(const Rational& x) const { return std::binary_search(values_.begin(), values_.end(), x); }

int DistanceSet::index_of(const Rational& x) const
{
    auto it = std::lower_bound(values_.begin(), values_.end(), x);
    if (it == values_.end() || *it != x)
        return -1;
    return static_cast<int>(it - values_.begin());
}

std::string to_string(const DistanceSet& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + format_rational(s.values()[i]);
    return out + "}";
}

DistanceSet distance_set_from_json(const json& j)
{
    if (! j.is_object() || ! j.contains("distances") || ! j["distances"].is_array())
        throw FormatError("distance set: expected {\"distances\": [...]}");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "distances")
            throw FormatError("distance set: unknown key \"" + it.key() + "\"");
    std::vector<Rational> values;
    for (const auto& v : j["distances"]) {
        if (v.is_string())
            values.push_back(parse_rational(v.get<std::string>()));
        else if (v.is_number_integer())
            values.push_back(Rational(v.get<long long>()));
        else
            throw FormatError("distance set: distances must be strings \"p/q\" or integers");
    }
    try {
        return DistanceSet(values);
    }
    catch (const PreconditionError& e) {
        throw FormatError(std::string("distance set: ") + e.what());
    }
}

json to_json(const DistanceSet& s)
{
    json d = json::array();
    for (const auto& v : s.values())
        d.push_back(format_rational(v));
    return {{"distances", d}};
}

DistanceSet read_distance_set(const std::string& path_or_list)
{
    if (std::filesystem::exists(path_or_list)) {
        json j = read_json_file(path_or_list);
        try {
            return distance_set_from_json(j);
        }
        catch (const FormatError& e) {
            throw FormatError(path_or_list + ": " + e.what());
        }
    }
    std::vector<Rational> values;
    std::string_view rest(path_or_list);
    while (true) {
        auto comma = rest.find(',');
        values.push_back(parse_rational(rest.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        rest = rest.substr(comma + 1);
    }
    try {
        return DistanceSet(values);
    }
    catch (const PreconditionError& e) {
        throw FormatError(std::string("distance set: ") + e.what());
    }
}

Rational oplus(const DistanceSet& s, const Rational& a, const Rational& b)
{
    Rational sum = a + b;
    auto it = std::upper_bound(s.values().begin(), s.values().end(), sum);
    if (it == s.values().begin())
        throw PreconditionError("a + b is below min(S)");
    return *(it - 1);
}

Rational s_length(const DistanceSet& s, const std::vector<Rational>& walk)
{
    if (walk.empty())
        throw PreconditionError("empty walk");
    Rational acc = walk.front();
    for (std::size_t i = 1; i < walk.size(); ++i)
        acc = oplus(s, acc, walk[i]);
    return acc;
}

namespace {

bool triangle(const Rational& a, const Rational& b, const Rational& c)
{
    return a <= b + c && b <= a + c && c <= a + b;
}

} // namespace

FourValuesReport four_values(const DistanceSet& s)
{
    const auto& v = s.values();
    std::size_t n = v.size();
    // third[a][b]: indices x with a triangle a-b-x.
    std::vector<std::vector<std::vector<char>>> third(n, std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t x = 0; x < n; ++x)
                third[a][b][x] = triangle(v[a], v[b], v[x]);
    auto first_common = [&](const std::vector<char>& p, const std::vector<char>& q) -> std::ptrdiff_t {
        for (std::size_t x = 0; x < n; ++x)
            if (p[x] && q[x])
                return static_cast<std::ptrdiff_t>(x);
        return -1;
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    auto x = first_common(third[a][b], third[c][d]);
                    if (x < 0 || first_common(third[a][c], third[b][d]) >= 0)
                        continue;
                    return {false, std::array<Rational, 5>{v[a], v[b], v[c], v[d], v[static_cast<std::size_t>(x)]}};
                }
    return {};
}

AssociativityReport is_associative(const DistanceSet& s)
{
    const auto& v = s.values();
    for (const auto& a : v)
        for (const auto& b : v)
            for (const auto& c : v)
                if (oplus(s, oplus(s, a, b), c) != oplus(s, a, oplus(s, b, c)))
                    return {false, std::array<Rational, 3>{a, b, c}};
    return {};
}

std::vector<Rational> jump_numbers(const DistanceSet& s)
{
    std::vector<Rational> out;
    for (const auto& a : s.values())
        if (a != s.max() && oplus(s, a, a) == a)
            out.push_back(a);
    return out;
}

bool is_jump_free(const DistanceSet& s) { return jump_numbers(s).empty(); }

std::vector<DistanceSet> blocks(const DistanceSet& s)
{
    auto jumps = jump_numbers(s);
    std::vector<DistanceSet> out;
    std::vector<Rational> current;
    for (const auto& a : s.values()) {
        current.push_back(a);
        if (a == s.max() || std::binary_search(jumps.begin(), jumps.end(), a)) {
            out.emplace_back(current);
            current.clear();
        }
    }
    for (const auto& b : out)
        if (! is_jump_free(b) || ! four_values(b).holds)
            throw std::logic_error("block " + to_string(b) + " of " + to_string(s) + " is not a jump-free 4-values set");
    return out;
}

SGraph::SGraph(std::vector<std::string> names) : vertices(std::move(names))
{
    dist.assign(vertices.size(), std::vector<std::optional<Rational>>(vertices.size()));
}

void SGraph::set(int u, int v, const Rational& d)
{
    if (u == v)
        throw PreconditionError("self-distance on vertex " + vertices[static_cast<std::size_t>(u)]);
    dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = d;
    dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = d;
}

int SGraph::index_of(const std::string& name) const
{
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end())
        throw PreconditionError("unknown vertex \"" + name + "\"");
    return static_cast<int>(it - vertices.begin());
}

bool SGraph::total() const
{
    for (std::size_t u = 0; u < size(); ++u)
        for (std::size_t v = 0; v < size(); ++v)
            if (u != v && ! dist[u][v])
                return false;
    return true;
}

std::string distance_symbol(const Rational& d) { return "d:" + format_rational(d); }

Language metric_language(const DistanceSet& s, bool with_order)
{
    std::vector<Symbol> syms;
    if (with_order)
        syms.push_back({"<=", 2});
    for (const auto& d : s.values())
        syms.push_back({distance_symbol(d), 2});
    return with_order ? Language(syms, "<=") : Language(syms);
}

Structure to_structure(const SGraph& g, const DistanceSet& s)
{
    Language lang = metric_language(s);
    StructureBuilder b(lang);
    for (const auto& v : g.vertices)
        b.vertex(v);
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = 0; v < g.size(); ++v)
            if (const auto& d = g.dist[u][v]) {
                int sym = s.index_of(*d);
                if (sym < 0)
                    throw PreconditionError("distance " + format_rational(*d) + " is not in " + to_string(s));
                b.tuple(sym, {static_cast<int>(u), static_cast<int>(v)});
            }
    return b.build();
}

SGraph sgraph_from_structure(const Structure& a, const DistanceSet& s)
{
    SGraph g(a.vertices());
    for (std::size_t k = 0; k < a.language().size(); ++k) {
        const auto& sym = a.language().symbol(static_cast<int>(k));
        if (sym.name.rfind("d:", 0) != 0)
            continue;
        if (sym.arity != 2)
            throw FormatError("distance symbol '" + sym.name + "' must be binary");
        Rational d = parse_rational(std::string_view(sym.name).substr(2));
        if (! s.contains(d) && ! a.tuples(static_cast<int>(k)).empty())
            throw FormatError("distance " + format_rational(d) + " is not in " + to_string(s));
        for (const auto& t : a.tuples(static_cast<int>(k))) {
            const std::string& u = a.name(t[0]);
            const std::string& v = a.name(t[1]);
            if (t[0] == t[1])
                throw FormatError("self-distance on vertex \"" + u + "\"");
            auto& cell = g.dist[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])];
            if (cell && *cell != d)
                throw FormatError("pair (" + u + ", " + v + ") has two distances");
            cell = d;
        }
    }
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g.dist[u][v] != g.dist[v][u])
                throw FormatError("distances between \"" + g.vertices[u] + "\" and \"" + g.vertices[v]
                    + "\" are not symmetric");
    return g;
}

namespace {

void require_four_values(const DistanceSet& s)
{
    auto r = four_values(s);
    if (! r.holds)
        throw PreconditionError(to_string(s) + " fails the 4-values condition");
}

void require_distances_in(const SGraph& g, const DistanceSet& s)
{
    for (const auto& row : g.dist)
        for (const auto& d : row)
            if (d && ! s.contains(*d))
                throw PreconditionError("distance " + format_rational(*d) + " is not in " + to_string(s));
}

// Minimal S-lengths from `src` by a Dijkstra sweep; valid because x ⊕ w ≥ x.
void shortest_from(const SGraph& g, const DistanceSet& s, int src, std::vector<std::optional<Rational>>& best,
    std::vector<int>& parent)
{
    std::size_t n = g.size();
    best.assign(n, std::nullopt);
    parent.assign(n, -1);
    std::vector<char> done(n, 0);
    done[static_cast<std::size_t>(src)] = 1;
    for (std::size_t w = 0; w < n; ++w)
        if (g.dist[static_cast<std::size_t>(src)][w]) {
            best[w] = g.dist[static_cast<std::size_t>(src)][w];
            parent[w] = src;
        }
    while (true) {
        int pick = -1;
        for (std::size_t w = 0; w < n; ++w)
            if (! done[w] && best[w] && (pick < 0 || *best[w] < *best[static_cast<std::size_t>(pick)]))
                pick = static_cast<int>(w);
        if (pick < 0)
            break;
        auto p = static_cast<std::size_t>(pick);
        done[p] = 1;
        for (std::size_t x = 0; x < n; ++x) {
            if (done[x] || ! g.dist[p][x])
                continue;
            Rational cand = oplus(s, *best[p], *g.dist[p][x]);
            if (! best[x] || cand < *best[x]) {
                best[x] = cand;
                parent[x] = pick;
            }
        }
    }
}

} // namespace

MetricCompletion complete_metric_graph(const SGraph& g, const DistanceSet& s)
{
    require_four_values(s);
    require_distances_in(g, s);
    std::size_t n = g.size();
    MetricCompletion out;
    out.result = SGraph(g.vertices);
    std::vector<std::optional<Rational>> best;
    std::vector<int> parent;
    for (std::size_t u = 0; u < n; ++u) {
        shortest_from(g, s, static_cast<int>(u), best, parent);
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u)
                continue;
            Rational d = best[v] ? *best[v] : s.max();
            out.result.dist[u][v] = d;
            if (! out.violated && g.dist[u][v] && d < *g.dist[u][v]) {
                out.violated = std::make_pair(static_cast<int>(u), static_cast<int>(v));
                std::vector<int> path;
                for (int x = static_cast<int>(v); x != -1; x = parent[static_cast<std::size_t>(x)]) {
                    path.push_back(x);
                    if (x == static_cast<int>(u))
                        break;
                }
                std::reverse(path.begin(), path.end());
                out.path = path;
                out.path_length = d;
            }
        }
    }
    out.completed = ! out.violated;
    if (! out.completed)
        out.result = g;
    return out;
}

bool is_metric_space(const SGraph& g)
{
    if (! g.total())
        return false;
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = 0; v < g.size(); ++v)
            for (std::size_t w = 0; w < g.size(); ++w)
                if (u != v && v != w && u != w && *g.dist[u][v] > *g.dist[u][w] + *g.dist[w][v])
                    return false;
    return true;
}

UnimportantReduction unimportant_paths(const std::vector<Rational>& path, const Rational& closing, const DistanceSet& s)
{
    std::size_t n = path.size() + 1;
    if (path.empty())
        throw PreconditionError("a cycle needs a path of at least one edge");
    if (s_length(s, path) >= closing)
        throw PreconditionError("the closing edge is not longer than the S-length of the path");
    // l[i]: S-length of the prefix ending at vertex position i (i ≥ 1).
    std::vector<Rational> l(n);
    l[1] = path[0];
    for (std::size_t i = 2; i < n; ++i)
        l[i] = oplus(s, l[i - 1], path[i - 1]);
    UnimportantReduction r;
    r.closing = closing;
    for (std::size_t i = 1; i < n;) {
        std::size_t k = i;
        while (k + 1 < n && l[k + 1] == l[i])
            ++k;
        if (k > i)
            r.paths.emplace_back(static_cast<int>(i), static_cast<int>(k));
        i = k + 1;
    }
    // Collapsing everything after v1 would leave two vertices; stop the run
    // one vertex early so a triangle remains.
    if (r.paths.size() == 1 && r.paths[0].first == 1 && r.paths[0].second == static_cast<int>(n) - 1) {
        r.paths[0].second -= 1;
        if (r.paths[0].second == r.paths[0].first)
            r.paths.clear();
    }
    std::vector<int> run_of(n, -1);
    for (std::size_t p = 0; p < r.paths.size(); ++p)
        for (int i = r.paths[p].first; i <= r.paths[p].second; ++i)
            run_of[static_cast<std::size_t>(i)] = static_cast<int>(p);
    std::size_t removed = 0;
    for (const auto& [j, k] : r.paths)
        removed += static_cast<std::size_t>(k - j);
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (run_of[i] < 0 || run_of[i] != run_of[i + 1])
            r.reduced_path.push_back(path[i]);
    r.reduced_vertices = n - removed;
    return r;
}

namespace {

// Simple paths from u to target with at most `limit` edges and S-length
// below `bound`.
bool bounded_search(const SGraph& g, const DistanceSet& s, int target, const Rational& bound, std::size_t limit,
    std::vector<int>& path, std::vector<char>& on_path, const std::optional<Rational>& acc)
{
    int u = path.back();
    if (path.size() - 1 >= limit)
        return false;
    for (std::size_t w = 0; w < g.size(); ++w) {
        const auto& d = g.dist[static_cast<std::size_t>(u)][w];
        if (! d || on_path[w])
            continue;
        if (static_cast<int>(w) == target && path.size() == 1)
            continue;
        Rational next = acc ? oplus(s, *acc, *d) : *d;
        if (next >= bound)
            continue;
        if (static_cast<int>(w) == target) {
            path.push_back(target);
            return true;
        }
        path.push_back(static_cast<int>(w));
        on_path[w] = 1;
        if (bounded_search(g, s, target, bound, limit, path, on_path, next))
            return true;
        on_path[w] = 0;
        path.pop_back();
    }
    return false;
}

NonMetricCycle cycle_from_path(const SGraph& g, const std::vector<int>& path)
{
    NonMetricCycle c;
    c.vertices = path;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        c.path.push_back(*g.at(path[i], path[i + 1]));
    c.closing = *g.at(path.back(), path.front());
    return c;
}

} // namespace

std::optional<CycleScan> non_metric_cycle_scan(const SGraph& g, const DistanceSet& s)
{
    require_four_values(s);
    require_distances_in(g, s);
    if (is_jump_free(s)) {
        for (std::size_t limit = 2; limit <= s.size(); ++limit)
            for (std::size_t u = 0; u < g.size(); ++u)
                for (std::size_t v = u + 1; v < g.size(); ++v) {
                    if (! g.dist[u][v])
                        continue;
                    std::vector<int> path{static_cast<int>(u)};
                    std::vector<char> on_path(g.size(), 0);
                    on_path[u] = 1;
                    if (bounded_search(g, s, static_cast<int>(v), *g.dist[u][v], limit, path, on_path, std::nullopt))
                        return CycleScan{cycle_from_path(g, path), std::nullopt};
                }
        return std::nullopt;
    }
    auto c = complete_metric_graph(g, s);
    if (c.completed)
        return std::nullopt;
    CycleScan scan{cycle_from_path(g, c.path), std::nullopt};
    scan.reduction = unimportant_paths(scan.cycle.path, scan.cycle.closing, s);
    return scan;
}

SGraph strong_amalgam_metric(const SGraph& b1, const SGraph& b2, const DistanceSet& s)
{
    std::vector<std::string> names = b1.vertices;
    for (const auto& v : b2.vertices)
        if (std::find(names.begin(), names.end(), v) == names.end())
            names.push_back(v);
    SGraph g(names);
    auto copy_in = [&](const SGraph& b) {
        std::vector<int> idx;
        for (const auto& v : b.vertices)
            idx.push_back(g.index_of(v));
        for (std::size_t u = 0; u < b.size(); ++u)
            for (std::size_t v = 0; v < b.size(); ++v) {
                const auto& d = b.dist[u][v];
                if (! d)
                    continue;
                auto& cell = g.dist[static_cast<std::size_t>(idx[u])][static_cast<std::size_t>(idx[v])];
                if (cell && *cell != *d)
                    throw PreconditionError("the inputs disagree on the distance between \"" + b.vertices[u]
                        + "\" and \"" + b.vertices[v] + "\"");
                cell = d;
            }
    };
    copy_in(b1);
    copy_in(b2);
    auto c = complete_metric_graph(g, s);
    if (! c.completed)
        throw PreconditionError("the inputs are not S-metric");
    return c.result;
}

std::vector<std::vector<int>> block_equivalence(const SGraph& g, const DistanceSet& s, const Rational& j)
{
    if (! s.contains(j))
        throw PreconditionError(format_rational(j) + " is not in " + to_string(s));
    Rational bound;
    for (const auto& b : blocks(s))
        if (b.contains(j))
            bound = b.max();
    std::vector<int> comp(g.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (comp[start] >= 0)
            continue;
        int id = static_cast<int>(out.size());
        out.push_back({});
        std::vector<std::size_t> stack{start};
        comp[start] = id;
        while (! stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            out.back().push_back(static_cast<int>(u));
            for (std::size_t w = 0; w < g.size(); ++w)
                if (comp[w] < 0 && g.dist[u][w] && *g.dist[u][w] <= bound) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

Language convex_lift_language(const DistanceSet& s)
{
    std::vector<Symbol> syms{{"<=", 2}};
    for (const auto& d : s.values())
        syms.push_back({distance_symbol(d), 2});
    auto jumps = jump_numbers(s);
    for (const auto& j : jumps)
        syms.push_back({"E:" + format_rational(j), 1});
    for (const auto& j : jumps)
        syms.push_back({"U:" + format_rational(j), 2});
    return Language(syms, "<=");
}

ClosureDescription convex_lift_closures(const DistanceSet& s)
{
    std::vector<ClosureEntry> entries;
    Structure root(Language({{"<=", 2}}, "<="), {"1"}, {{"<=", {{"1", "1"}}}});
    for (const auto& j : jump_numbers(s))
        entries.push_back({"U:" + format_rational(j), root});
    return ClosureDescription(entries);
}

ConvexLift convex_lift(const SGraph& space, const DistanceSet& s, const std::vector<int>& order)
{
    if (! is_metric_space(space))
        throw PreconditionError("convex lift needs a metric space");
    require_distances_in(space, s);
    std::size_t n = space.size();
    std::vector<int> pos(n, -1);
    if (order.size() != n)
        throw PreconditionError("the order must list every vertex once");
    for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::size_t>(order[i]);
        if (v >= n || pos[v] >= 0)
            throw PreconditionError("the order must list every vertex once");
        pos[v] = static_cast<int>(i);
    }

    Language lang = convex_lift_language(s);
    StructureBuilder b(lang);
    int le = lang.index_of("<=");
    std::vector<int> ids;
    for (const auto& v : space.vertices)
        ids.push_back(b.vertex(v));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v)
                b.tuple(distance_symbol(*space.dist[u][v]), {ids[u], ids[v]});

    std::vector<int> chain;
    for (int v : order)
        chain.push_back(ids[static_cast<std::size_t>(v)]);
    ConvexLift lift;
    for (const auto& j : jump_numbers(s)) {
        auto classes = block_equivalence(space, s, j);
        std::sort(classes.begin(), classes.end(), [&](const auto& x, const auto& y) {
            return pos[static_cast<std::size_t>(x.front())] < pos[static_cast<std::size_t>(y.front())];
        });
        for (auto& cls : classes) {
            std::sort(cls.begin(), cls.end(), [&](int x, int y) {
                return pos[static_cast<std::size_t>(x)] < pos[static_cast<std::size_t>(y)];
            });
            int lo = pos[static_cast<std::size_t>(cls.front())];
            int hi = pos[static_cast<std::size_t>(cls.back())];
            if (hi - lo + 1 != static_cast<int>(cls.size())) {
                std::string names;
                for (int v : cls)
                    names += (names.empty() ? "" : ",") + space.vertices[static_cast<std::size_t>(v)];
                throw PreconditionError("order is not convex: class {" + names + "} of the block of "
                    + format_rational(j) + " is not an interval");
            }
        }
        std::string js = format_rational(j);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            std::string name = "c:" + js + ":" + std::to_string(i + 1);
            if (b.has_vertex(name))
                throw PreconditionError("vertex name \"" + name + "\" is reserved for closure vertices");
            int c = b.vertex(name);
            names.push_back(name);
            b.tuple("E:" + js, {c});
            for (int v : classes[i])
                b.tuple("U:" + js, {ids[static_cast<std::size_t>(v)], c});
            chain.push_back(c);
        }
        lift.closure_vertices.push_back(names);
    }
    for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t k = i; k < chain.size(); ++k)
            b.tuple(le, {chain[i], chain[k]});
    lift.lifted = b.build();
    return lift;
}

} // namespace rf
