#include "ramseyforge/ramsey.hpp"

#include "ramseyforge/errors.hpp"
#include "ramseyforge/rsf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace rf {

namespace {

// base^exp, or nullopt once it passes `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            return std::nullopt;
        r *= base;
        if (r > limit)
            return std::nullopt;
    }
    return r;
}

std::vector<std::vector<int>> part_members(const PartiteSystem& s)
{
    std::vector<std::vector<int>> out(s.base.size());
    for (std::size_t v = 0; v < s.part.size(); ++v)
        out[static_cast<std::size_t>(s.part[v])].push_back(static_cast<int>(v));
    return out;
}

std::string padded(std::size_t i, std::size_t total)
{
    std::string digits = std::to_string(i);
    std::size_t width = std::to_string(total == 0 ? 0 : total - 1).size();
    return std::string(width - std::min(width, digits.size()), '0') + digits;
}

std::vector<int> order_ranks(const Structure& s)
{
    int o = s.language().order_index();
    std::vector<int> rank(s.size(), 0);
    for (const auto& t : s.tuples(o))
        if (t[0] != t[1])
            ++rank[static_cast<std::size_t>(t[1])];
    return rank;
}

void require_ordered(const Structure& s, const char* what)
{
    if (s.language().order_index() < 0 || ! order_is_linear(s))
        throw PreconditionError(std::string(what) + " must be linearly ordered");
}

struct CopyIncidence {
    std::vector<std::vector<int>> a_copies;
    // Per copy of B, the copies of A inside it.
    std::vector<std::vector<int>> inside;
};

CopyIncidence incidence(const Structure& c, const Structure& a, const Structure& b)
{
    CopyIncidence out;
    for (auto& cp : copies_of(a, c))
        out.a_copies.push_back(cp.vertices);
    for (const auto& cp : copies_of(b, c)) {
        std::vector<int> in;
        for (std::size_t i = 0; i < out.a_copies.size(); ++i)
            if (std::includes(cp.vertices.begin(), cp.vertices.end(), out.a_copies[i].begin(), out.a_copies[i].end()))
                in.push_back(static_cast<int>(i));
        out.inside.push_back(std::move(in));
    }
    return out;
}

bool leaves_no_monochromatic(const CopyIncidence& inc, const std::vector<int>& colouring)
{
    for (const auto& in : inc.inside) {
        bool mono = true;
        for (int i : in)
            mono = mono && colouring[static_cast<std::size_t>(i)] == colouring[static_cast<std::size_t>(in.front())];
        if (mono)
            return false;
    }
    return true;
}

std::vector<int> bfs_distances(const Structure& g, int from)
{
    const auto adj = gaifman_adjacency(g);
    std::vector<int> d(g.size(), -1);
    std::vector<int> q{from};
    d[static_cast<std::size_t>(from)] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int w : adj[static_cast<std::size_t>(q[i])])
            if (d[static_cast<std::size_t>(w)] < 0) {
                d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(q[i])] + 1;
                q.push_back(w);
            }
    return d;
}

Structure cycle_on_e(int l)
{
    StructureBuilder b(Language({{"E", 2}}));
    for (int i = 0; i < l; ++i)
        b.vertex("c" + padded(static_cast<std::size_t>(i), static_cast<std::size_t>(l)));
    for (int i = 0; i < l; ++i) {
        b.tuple(0, {i, (i + 1) % l});
        b.tuple(0, {(i + 1) % l, i});
    }
    return b.build();
}

Structure lift_distances(const Structure& g, int l, const std::vector<int>& order)
{
    int e = g.language().find("E");
    if (e < 0 || g.language().arity(e) != 2 || g.language().size() != 1)
        throw LanguageMismatch("distance lifts take graphs over {E/2}");
    std::vector<int> rank(g.size());
    if (order.empty()) {
        std::iota(rank.begin(), rank.end(), 0);
    } else {
        if (order.size() != g.size())
            throw PreconditionError("the order must list every vertex once");
        std::vector<char> seen(g.size(), 0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            auto v = static_cast<std::size_t>(order[i]);
            if (v >= g.size() || seen[v])
                throw PreconditionError("the order must list every vertex once");
            seen[v] = 1;
            rank[v] = static_cast<int>(i);
        }
    }
    StructureBuilder b(distance_lift_language(l));
    for (const auto& v : g.vertices())
        b.vertex(v);
    const int n = static_cast<int>(g.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (rank[static_cast<std::size_t>(x)] <= rank[static_cast<std::size_t>(y)])
                b.tuple(0, {x, y});
    for (const auto& t : g.tuples(e))
        b.tuple(1, t);
    for (int x = 0; x < n; ++x) {
        auto d = bfs_distances(g, x);
        for (int y = 0; y < n; ++y) {
            int dist = d[static_cast<std::size_t>(y)];
            if (dist >= 2 && dist <= (l - 1) / 2)
                b.tuple(dist, {x, y});
        }
    }
    return b.build();
}

} // namespace

std::optional<std::string> partite_violation(const PartiteSystem& s)
{
    if (s.part.size() != s.carrier.size())
        return "part assignment does not cover the carrier";
    for (int p : s.part)
        if (p < 0 || static_cast<std::size_t>(p) >= s.base.size())
            return "part index outside the base";
    if (! (s.base.language() == s.carrier.language()))
        return "base and carrier languages differ";
    for (std::size_t sym = 0; sym < s.carrier.language().size(); ++sym)
        for (const auto& t : s.carrier.tuples(static_cast<int>(sym)))
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j] && s.part[static_cast<std::size_t>(t[i])] == s.part[static_cast<std::size_t>(t[j])])
                        return "tuple of " + s.carrier.language().symbol(static_cast<int>(sym)).name
                            + " meets a part twice";
    if (! verify_morphism(s.carrier, s.base, s.part, MorphismKind::homomorphism_embedding))
        return "projection is not a homomorphism-embedding";
    return std::nullopt;
}

bool is_partite_system(const PartiteSystem& s) { return ! partite_violation(s).has_value(); }

std::vector<std::vector<int>> transversal_copies(const PartiteSystem& s)
{
    SearchOptions opt;
    opt.source_colour.resize(s.base.size());
    std::iota(opt.source_colour.begin(), opt.source_colour.end(), 0);
    opt.target_colour = s.part;
    std::vector<std::vector<int>> out;
    search_morphisms(s.base, s.carrier, MorphismKind::embedding, opt, [&](const std::vector<int>& m) {
        out.push_back(m);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> CombinatorialLine::moving() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (word[i] < 0)
            out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> CombinatorialLine::point(int letter) const
{
    std::vector<int> out = word;
    for (int& x : out)
        if (x < 0)
            x = letter;
    return out;
}

std::vector<CombinatorialLine> combinatorial_lines(int t, int n)
{
    if (t < 1 || n < 1)
        throw PreconditionError("lines need t >= 1 and N >= 1");
    std::vector<CombinatorialLine> out;
    std::vector<int> word(static_cast<std::size_t>(n), -1);
    for (;;) {
        if (std::find(word.begin(), word.end(), -1) != word.end())
            out.push_back({word});
        int i = n - 1;
        while (i >= 0 && word[static_cast<std::size_t>(i)] == t - 1)
            word[static_cast<std::size_t>(i--)] = -1;
        if (i < 0)
            return out;
        ++word[static_cast<std::size_t>(i)];
    }
}

std::size_t point_index(const std::vector<int>& point, int t)
{
    std::size_t r = 0;
    for (int x : point)
        r = r * static_cast<std::size_t>(t) + static_cast<std::size_t>(x);
    return r;
}

HalesJewettResult hales_jewett_N(int t, int k, std::uint64_t cap)
{
    if (t < 1 || k < 1)
        throw PreconditionError("Hales-Jewett needs t >= 1 and k >= 1");
    HalesJewettResult out;
    for (int n = 1;; ++n) {
        auto points = bounded_power(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(n), cap);
        auto colourings = points ? bounded_power(static_cast<std::uint64_t>(k), *points, cap) : std::nullopt;
        if (! colourings) {
            out.lower_bound = n;
            out.inconclusive = true;
            return out;
        }
        const std::size_t size = static_cast<std::size_t>(*points);
        // Lines grouped by their last point in index order.
        std::vector<std::vector<std::vector<std::size_t>>> closing(size);
        for (const auto& line : combinatorial_lines(t, n)) {
            std::vector<std::size_t> pts;
            for (int x = 0; x < t; ++x)
                pts.push_back(point_index(line.point(x), t));
            std::size_t last = *std::max_element(pts.begin(), pts.end());
            closing[last].push_back(std::move(pts));
        }
        std::vector<int> colour(size, -1);
        std::function<bool(std::size_t)> avoid = [&](std::size_t p) {
            if (p == size)
                return true;
            int limit = p == 0 ? 1 : k;
            for (int c = 0; c < limit; ++c) {
                colour[p] = c;
                bool ok = true;
                for (const auto& pts : closing[p]) {
                    bool mono = true;
                    for (std::size_t q : pts)
                        mono = mono && colour[q] == c;
                    if (mono) {
                        ok = false;
                        break;
                    }
                }
                if (ok && avoid(p + 1))
                    return true;
            }
            colour[p] = -1;
            return false;
        };
        if (! avoid(0)) {
            out.n = n;
            out.lower_bound = n;
            return out;
        }
        out.lower_bound = n + 1;
    }
}

PartiteLemmaResult partite_lemma(
    const Structure& a, const PartiteSystem& b, const ClosureDescription& u, int n, std::size_t size_guard)
{
    if (! (b.base == a))
        throw PreconditionError("B must be partite over A");
    if (auto why = partite_violation(b))
        throw PreconditionError("B is not an A-partite system: " + *why);
    if (auto v = semi_closed_violation(b.carrier, u))
        throw PreconditionError("B is not U-semi-closed: " + v->message);
    if (n < 1)
        throw PreconditionError("N must be positive");

    PartiteLemmaResult out;
    out.copies = transversal_copies(b);
    if (out.copies.empty())
        throw PreconditionError("B contains no copy of A");

    const auto parts = part_members(b);
    std::vector<std::size_t> offset(parts.size() + 1, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto count = bounded_power(parts[i].size(), static_cast<std::uint64_t>(n), size_guard);
        if (! count || offset[i] + *count > size_guard)
            throw CapExceeded("partite lemma with N=" + std::to_string(n) + " passes the size guard of "
                + std::to_string(size_guard) + " vertices");
        offset[i + 1] = offset[i] + static_cast<std::size_t>(*count);
    }
    std::vector<int> position(b.carrier.size(), 0);
    for (const auto& members : parts)
        for (std::size_t j = 0; j < members.size(); ++j)
            position[static_cast<std::size_t>(members[j])] = static_cast<int>(j);

    // Carrier vertex of a function [N] -> X^p given by its values.
    auto id_of = [&](int p, const std::vector<int>& values) {
        std::size_t r = 0;
        for (int v : values)
            r = r * parts[static_cast<std::size_t>(p)].size() + static_cast<std::size_t>(position[static_cast<std::size_t>(v)]);
        return static_cast<int>(offset[static_cast<std::size_t>(p)] + r);
    };

    StructureBuilder sb(b.carrier.language());
    std::vector<int> part_of;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
        const std::size_t count = offset[p + 1] - offset[p];
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::string name;
            for (std::size_t j = 0; j < digit.size(); ++j)
                name += (j ? "|" : "") + b.carrier.name(parts[p][digit[j]]);
            sb.vertex(name);
            part_of.push_back(static_cast<int>(p));
            for (std::size_t j = digit.size(); j-- > 0;) {
                if (++digit[j] < parts[p].size())
                    break;
                digit[j] = 0;
            }
        }
    }

    for (std::size_t s = 0; s < b.carrier.language().size(); ++s) {
        std::map<std::vector<int>, std::vector<Tuple>> by_projection;
        for (const auto& t : b.carrier.tuples(static_cast<int>(s)))
            by_projection[compose(t, b.part)].push_back(t);
        for (const auto& [proj, group] : by_projection) {
            std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
            for (;;) {
                Tuple image;
                for (std::size_t k = 0; k < proj.size(); ++k) {
                    std::vector<int> values;
                    for (std::size_t j = 0; j < choice.size(); ++j)
                        values.push_back(group[choice[j]][k]);
                    image.push_back(id_of(proj[k], values));
                }
                sb.tuple(static_cast<int>(s), image);
                std::size_t j = choice.size();
                while (j > 0 && ++choice[j - 1] == group.size())
                    choice[--j] = 0;
                if (j == 0)
                    break;
            }
        }
    }

    std::vector<int> final_index;
    out.c.base = a;
    out.c.carrier = sb.build(&final_index);
    out.c.part.assign(out.c.carrier.size(), 0);
    for (std::size_t id = 0; id < part_of.size(); ++id)
        out.c.part[static_cast<std::size_t>(final_index[id])] = part_of[id];

    out.lines = combinatorial_lines(static_cast<int>(out.copies.size()), n);
    for (const auto& line : out.lines) {
        std::vector<int> e(b.carrier.size());
        for (std::size_t v = 0; v < b.carrier.size(); ++v) {
            const int p = b.part[v];
            std::vector<int> values;
            for (int letter : line.word)
                values.push_back(letter < 0 ? static_cast<int>(v)
                                            : out.copies[static_cast<std::size_t>(letter)][static_cast<std::size_t>(p)]);
            e[v] = final_index[static_cast<std::size_t>(id_of(p, values))];
        }
        out.embeddings.push_back(std::move(e));
    }

    out.semi_closed = is_u_semi_closed(out.c.carrier, u);
    out.closed = is_u_closed(out.c.carrier, u);
    out.lines_embed = true;
    out.lines_are_u_substructures = true;
    for (const auto& e : out.embeddings) {
        bool parts_kept = true;
        for (std::size_t v = 0; v < e.size(); ++v)
            parts_kept = parts_kept && out.c.part[static_cast<std::size_t>(e[v])] == b.part[v];
        out.lines_embed = out.lines_embed && parts_kept
            && verify_morphism(b.carrier, out.c.carrier, e, MorphismKind::embedding);
        std::vector<int> image = e;
        std::sort(image.begin(), image.end());
        out.lines_are_u_substructures = out.lines_are_u_substructures && is_u_substructure(out.c.carrier, image, u);
    }
    return out;
}

PartiteSystem picture_zero(const Structure& b, const Structure& c0)
{
    if (! (b.language() == c0.language()))
        throw LanguageMismatch("B and C0 need a common language");
    auto copies = copies_of(b, c0);
    StructureBuilder sb(b.language());
    std::vector<int> part_of;
    for (std::size_t j = 0; j < copies.size(); ++j) {
        std::vector<int> id(b.size());
        for (std::size_t v = 0; v < b.size(); ++v) {
            id[v] = sb.vertex(padded(j, copies.size()) + "/" + b.name(static_cast<int>(v)));
            part_of.push_back(copies[j].witness.map[v]);
        }
        for (std::size_t s = 0; s < b.language().size(); ++s)
            for (const auto& t : b.tuples(static_cast<int>(s)))
                sb.tuple(static_cast<int>(s), compose(t, id));
    }
    std::vector<int> final_index;
    PartiteSystem out;
    out.base = c0;
    out.carrier = sb.build(&final_index);
    out.part.assign(out.carrier.size(), 0);
    for (std::size_t id = 0; id < part_of.size(); ++id)
        out.part[static_cast<std::size_t>(final_index[id])] = part_of[id];
    return out;
}

PartiteConstructionResult partite_construction(const Structure& a, const Structure& b, const Structure& c0,
    const ClosureDescription& u, std::size_t size_guard)
{
    auto a_copies = copies_of(a, c0);
    for (const auto& cp : a_copies)
        if (! is_u_substructure(c0, cp.vertices, u))
            throw PreconditionError("a copy of A in C0 is not a U-substructure");

    PartiteConstructionResult out;
    PartiteSystem p = picture_zero(b, c0);
    if (p.carrier.size() > size_guard)
        throw CapExceeded("picture 0 has " + std::to_string(p.carrier.size()) + " vertices, guard " + std::to_string(size_guard));
    out.picture_sizes.push_back(p.carrier.size());

    for (std::size_t k = 0; k < a_copies.size(); ++k) {
        const auto& into = a_copies[k].witness.map;
        std::vector<int> a_vertex(c0.size(), -1);
        for (std::size_t i = 0; i < into.size(); ++i)
            a_vertex[static_cast<std::size_t>(into[i])] = static_cast<int>(i);
        std::vector<int> sub;
        for (std::size_t v = 0; v < p.carrier.size(); ++v)
            if (a_vertex[static_cast<std::size_t>(p.part[v])] >= 0)
                sub.push_back(static_cast<int>(v));
        PartiteSystem bk{a, induced_substructure(p.carrier, sub), {}};
        for (int v : sub)
            bk.part.push_back(a_vertex[static_cast<std::size_t>(p.part[static_cast<std::size_t>(v)])]);

        const std::size_t t = transversal_copies(bk).size();
        const std::string step = "step " + std::to_string(k + 1) + " of " + std::to_string(a_copies.size());
        if (t == 0) {
            out.hales_jewett.push_back(0);
            out.picture_sizes.push_back(p.carrier.size());
            continue;
        }
        auto hj = hales_jewett_N(static_cast<int>(t), 2);
        if (! hj.n)
            throw CapExceeded(step + ": the Hales-Jewett number for " + std::to_string(t)
                + " letters and 2 colours is beyond the exhaustive cap (it is at least "
                + std::to_string(hj.lower_bound) + ")");
        const int n = *hj.n;
        out.hales_jewett.push_back(n);

        double product = 0;
        for (const auto& members : part_members(bk))
            product += std::pow(static_cast<double>(members.size()), n);
        const double lines = std::pow(static_cast<double>(t + 1), n) - std::pow(static_cast<double>(t), n);
        const double projected = product + lines * static_cast<double>(p.carrier.size() - sub.size());
        if (projected > static_cast<double>(size_guard))
            throw CapExceeded(step + ": picture would have " + std::to_string(static_cast<long long>(projected))
                + " vertices, guard " + std::to_string(size_guard));

        auto d = partite_lemma(a, bk, u, n, size_guard);

        StructureBuilder sb(p.carrier.language());
        std::vector<int> part_of;
        std::size_t counter = 0;
        const std::size_t total = static_cast<std::size_t>(projected);
        auto fresh = [&](int part) {
            part_of.push_back(part);
            return sb.vertex("p" + padded(counter++, total));
        };
        std::vector<int> d_id(d.c.carrier.size());
        for (std::size_t v = 0; v < d.c.carrier.size(); ++v)
            d_id[v] = fresh(into[static_cast<std::size_t>(d.c.part[v])]);
        for (std::size_t s = 0; s < d.c.carrier.language().size(); ++s)
            for (const auto& tup : d.c.carrier.tuples(static_cast<int>(s)))
                sb.tuple(static_cast<int>(s), compose(tup, d_id));

        std::vector<int> local(p.carrier.size(), -1);
        for (std::size_t i = 0; i < sub.size(); ++i)
            local[static_cast<std::size_t>(sub[i])] = static_cast<int>(i);
        for (const auto& e : d.embeddings) {
            std::vector<int> phi(p.carrier.size());
            for (std::size_t v = 0; v < p.carrier.size(); ++v)
                phi[v] = local[v] >= 0 ? d_id[static_cast<std::size_t>(e[static_cast<std::size_t>(local[v])])]
                                       : fresh(p.part[v]);
            for (std::size_t s = 0; s < p.carrier.language().size(); ++s)
                for (const auto& tup : p.carrier.tuples(static_cast<int>(s)))
                    sb.tuple(static_cast<int>(s), compose(tup, phi));
        }
        std::vector<int> final_index;
        PartiteSystem next;
        next.base = c0;
        next.carrier = sb.build(&final_index);
        next.part.assign(next.carrier.size(), 0);
        for (std::size_t id = 0; id < part_of.size(); ++id)
            next.part[static_cast<std::size_t>(final_index[id])] = part_of[id];
        p = std::move(next);
        out.picture_sizes.push_back(p.carrier.size());
    }
    out.c = std::move(p);
    return out;
}

std::optional<int> ramsey_number(int a, int b)
{
    if (a < 1 || b < 0)
        return std::nullopt;
    if (b <= a)
        return b;
    if (a == 1)
        return 2 * (b - 1) + 1;
    if (a == 2 && b == 3)
        return 6;
    return std::nullopt;
}

UnaryRamseyResult unary_ramsey(const Structure& a, const Structure& b, std::optional<int> n, std::size_t size_guard)
{
    if (! (a.language() == b.language()))
        throw LanguageMismatch("A and B need a common language");
    require_ordered(a, "A");
    require_ordered(b, "B");
    const Language& lang = b.language();
    const int order = lang.order_index();
    std::vector<int> functions;
    for (int s = 0; s < static_cast<int>(lang.size()); ++s) {
        if (s == order)
            continue;
        if (lang.arity(s) != 2)
            throw PreconditionError("symbol " + lang.symbol(s).name + " is not a unary function");
        functions.push_back(s);
    }
    auto targets = [&](const Structure& s, int f) {
        std::vector<int> out(s.size(), -1);
        for (const auto& t : s.tuples(f)) {
            if (out[static_cast<std::size_t>(t[0])] >= 0)
                throw PreconditionError(lang.symbol(f).name + " has out-degree above one");
            out[static_cast<std::size_t>(t[0])] = t[1];
        }
        for (int x : out)
            if (x < 0)
                throw PreconditionError(lang.symbol(f).name + " is not total");
        return out;
    };
    std::vector<std::vector<int>> fb;
    for (int f : functions) {
        targets(a, f);
        fb.push_back(targets(b, f));
    }

    const int big_a = static_cast<int>(a.size());
    const int big_b = static_cast<int>(b.size());
    auto known = n ? n : ramsey_number(big_a, big_b);
    if (! known)
        throw PreconditionError("no built-in Ramsey number N -> (" + std::to_string(big_b) + ")^"
            + std::to_string(big_a) + "_2; pass N explicitly");
    const int big_n = *known;
    if (big_n < big_b)
        throw PreconditionError("N must be at least |B|");

    // B vertices in order.
    auto rank = order_ranks(b);
    std::vector<int> by_rank(b.size());
    for (std::size_t v = 0; v < b.size(); ++v)
        by_rank[static_cast<std::size_t>(rank[v])] = static_cast<int>(v);

    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> pick(static_cast<std::size_t>(big_b));
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            tuples.push_back(pick);
            if (tuples.size() * b.size() > size_guard)
                throw CapExceeded("the indexed copies pass the size guard of " + std::to_string(size_guard));
            int i = big_b - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == big_n - big_b + i)
                --i;
            if (i < 0)
                break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < big_b; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    // Closure code of a vertex of a marked copy: breadth-first numbering of its
    // orbit, each entry its mark and the numbers of its function values.
    auto closure_code = [&](const std::vector<int>& marks, int root) {
        std::vector<int> seen(b.size(), -1), order_seen{root};
        seen[static_cast<std::size_t>(root)] = 0;
        for (std::size_t i = 0; i < order_seen.size(); ++i)
            for (const auto& f : fb) {
                int w = f[static_cast<std::size_t>(order_seen[i])];
                if (seen[static_cast<std::size_t>(w)] < 0) {
                    seen[static_cast<std::size_t>(w)] = static_cast<int>(order_seen.size());
                    order_seen.push_back(w);
                }
            }
        std::vector<int> code;
        for (int v : order_seen) {
            code.push_back(marks[static_cast<std::size_t>(rank[static_cast<std::size_t>(v)])]);
            for (const auto& f : fb)
                code.push_back(seen[static_cast<std::size_t>(f[static_cast<std::size_t>(v)])]);
        }
        return code;
    };

    std::map<std::vector<int>, int> class_of;
    std::vector<std::pair<int, int>> class_key;
    std::vector<std::vector<int>> copies;
    for (const auto& marks : tuples) {
        std::vector<int> map(b.size());
        for (std::size_t v = 0; v < b.size(); ++v) {
            auto code = closure_code(marks, static_cast<int>(v));
            auto [it, fresh] = class_of.emplace(code, static_cast<int>(class_key.size()));
            if (fresh)
                class_key.emplace_back(marks[static_cast<std::size_t>(rank[v])], static_cast<int>(class_key.size()));
            map[v] = it->second;
        }
        copies.push_back(std::move(map));
    }

    // Classes ordered by mark, then first appearance.
    std::vector<int> by_position(class_key.size());
    std::iota(by_position.begin(), by_position.end(), 0);
    std::sort(by_position.begin(), by_position.end(),
        [&](int x, int y) { return class_key[static_cast<std::size_t>(x)] < class_key[static_cast<std::size_t>(y)]; });
    std::vector<int> position(class_key.size());
    for (std::size_t i = 0; i < by_position.size(); ++i)
        position[static_cast<std::size_t>(by_position[i])] = static_cast<int>(i);

    StructureBuilder sb(lang);
    for (std::size_t i = 0; i < class_key.size(); ++i)
        sb.vertex("c" + padded(i, class_key.size()));
    for (std::size_t x = 0; x < class_key.size(); ++x)
        for (std::size_t y = x; y < class_key.size(); ++y)
            sb.tuple(order, {static_cast<int>(x), static_cast<int>(y)});
    for (auto& map : copies) {
        for (int& v : map)
            v = position[static_cast<std::size_t>(v)];
        for (std::size_t k = 0; k < functions.size(); ++k)
            for (std::size_t v = 0; v < b.size(); ++v)
                sb.tuple(functions[k], {map[v], map[static_cast<std::size_t>(fb[k][v])]});
    }

    UnaryRamseyResult out;
    out.c = sb.build();
    out.n = big_n;
    out.copies = std::move(copies);
    for (const auto& map : out.copies)
        if (! verify_morphism(b, out.c, map, MorphismKind::embedding))
            throw std::logic_error("an indexed copy of B does not embed into the quotient");
    return out;
}

std::string to_string(ArrowVerdict v)
{
    switch (v) {
    case ArrowVerdict::proved: return "proved";
    case ArrowVerdict::refuted: return "refuted";
    case ArrowVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ArrowMode parse_arrow_mode(const std::string& text, std::uint64_t seed)
{
    ArrowMode m;
    m.seed = seed;
    if (text == "exhaustive")
        return m;
    const std::string prefix = "sampled:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string count = text.substr(prefix.size());
        if (! count.empty() && std::all_of(count.begin(), count.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            m.exhaustive = false;
            m.samples = std::stoull(count);
            return m;
        }
    }
    throw PreconditionError("mode must be 'exhaustive' or 'sampled:<n>', got '" + text + "'");
}

ArrowReport verify_arrow(const Structure& c, const Structure& a, const Structure& b, int k, const ArrowMode& mode)
{
    if (k < 1)
        throw PreconditionError("k must be positive");
    auto inc = incidence(c, a, b);
    ArrowReport out;
    out.a_copies = inc.a_copies;
    out.b_copies = inc.inside.size();
    const std::size_t m = inc.a_copies.size();

    if (inc.inside.empty()) {
        out.verdict = ArrowVerdict::refuted;
        out.colouring = std::vector<int>(m, 0);
        out.exhaustive = true;
        return out;
    }
    if (std::any_of(inc.inside.begin(), inc.inside.end(), [](const auto& in) { return in.empty(); })) {
        out.verdict = ArrowVerdict::proved;
        out.exhaustive = true;
        return out;
    }

    const bool small = bounded_power(static_cast<std::uint64_t>(k), m, exhaustive_cap).has_value();
    if (mode.exhaustive && small) {
        out.exhaustive = true;
        std::vector<std::vector<std::size_t>> closing(m);
        for (std::size_t j = 0; j < inc.inside.size(); ++j)
            closing[static_cast<std::size_t>(inc.inside[j].back())].push_back(j);
        std::vector<int> colour(m, -1);
        std::function<bool(std::size_t)> avoid = [&](std::size_t i) {
            if (i == m)
                return true;
            int limit = i == 0 ? 1 : k;
            for (int col = 0; col < limit; ++col) {
                ++out.colourings_examined;
                colour[i] = col;
                bool ok = true;
                for (std::size_t j : closing[i]) {
                    bool mono = true;
                    for (int x : inc.inside[j])
                        mono = mono && colour[static_cast<std::size_t>(x)] == col;
                    if (mono) {
                        ok = false;
                        break;
                    }
                }
                if (ok && avoid(i + 1))
                    return true;
            }
            colour[i] = -1;
            return false;
        };
        if (avoid(0)) {
            out.verdict = ArrowVerdict::refuted;
            out.colouring = colour;
        } else {
            out.verdict = ArrowVerdict::proved;
        }
        return out;
    }

    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<int> pick(0, k - 1);
    const std::size_t samples = mode.samples ? mode.samples : 10000;
    std::vector<int> colour(m);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& x : colour)
            x = pick(rng);
        ++out.colourings_examined;
        if (leaves_no_monochromatic(inc, colour)) {
            out.verdict = ArrowVerdict::refuted;
            out.colouring = colour;
            return out;
        }
    }
    out.verdict = ArrowVerdict::inconclusive;
    return out;
}

bool refutes_arrow(const Structure& c, const Structure& a, const Structure& b, int k, const std::vector<int>& colouring)
{
    auto inc = incidence(c, a, b);
    if (colouring.size() != inc.a_copies.size())
        return false;
    for (int x : colouring)
        if (x < 0 || x >= k)
            return false;
    return leaves_no_monochromatic(inc, colouring);
}

std::string vertex_type(const Structure& s, int v)
{
    std::string out;
    for (int sym = 0; sym < static_cast<int>(s.language().size()); ++sym) {
        if (sym == s.language().order_index())
            continue;
        if (s.has(sym, Tuple(static_cast<std::size_t>(s.language().arity(sym)), v))) {
            if (! out.empty())
                out += ",";
            out += s.language().symbol(sym).name;
        }
    }
    return out;
}

Structure admissible_reorder(const Structure& c, const Structure& b, const std::vector<std::string>& order_spec)
{
    if (! (c.language() == b.language()))
        throw LanguageMismatch("C and B need a common language");
    require_ordered(c, "C");
    require_ordered(b, "B");
    auto type_rank = [&](const Structure& s, int v) {
        auto at = std::find(order_spec.begin(), order_spec.end(), vertex_type(s, v));
        return static_cast<int>(at - order_spec.begin());
    };

    auto b_rank = order_ranks(b);
    std::vector<int> b_order(b.size());
    for (std::size_t v = 0; v < b.size(); ++v)
        b_order[static_cast<std::size_t>(b_rank[v])] = static_cast<int>(v);
    for (std::size_t i = 1; i < b_order.size(); ++i)
        if (type_rank(b, b_order[i - 1]) > type_rank(b, b_order[i]))
            throw PreconditionError("the order spec conflicts with the order inside B");

    auto tracked = copies_of(b, c);
    auto c_rank = order_ranks(c);
    std::vector<int> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::pair(type_rank(c, x), c_rank[static_cast<std::size_t>(x)])
            < std::pair(type_rank(c, y), c_rank[static_cast<std::size_t>(y)]);
    });
    std::vector<int> position(c.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    const int o = c.language().order_index();
    StructureBuilder sb(c.language());
    for (const auto& v : c.vertices())
        sb.vertex(v);
    for (int s = 0; s < static_cast<int>(c.language().size()); ++s)
        if (s != o)
            for (const auto& t : c.tuples(s))
                sb.tuple(s, t);
    for (int x = 0; x < static_cast<int>(c.size()); ++x)
        for (int y = 0; y < static_cast<int>(c.size()); ++y)
            if (position[static_cast<std::size_t>(x)] <= position[static_cast<std::size_t>(y)])
                sb.tuple(o, {x, y});
    Structure out = sb.build();

    for (const auto& cp : tracked)
        if (! verify_morphism(b, out, cp.witness.map, MorphismKind::embedding))
            throw PreconditionError("a copy of B stops embedding after the reorder");
    if (copies_of(b, out).size() < tracked.size())
        throw PreconditionError("the reorder lost copies of B");
    return out;
}

Language distance_lift_language(int l)
{
    std::vector<Symbol> symbols{{"<=", 2}, {"E", 2}};
    for (int i = 2; i <= (l - 1) / 2; ++i)
        symbols.push_back({"dist:" + std::to_string(i), 2});
    return Language(symbols, "<=");
}

Structure distance_lift_fixture(const Structure& g, int l, const std::vector<int>& order)
{
    if (l < 3 || l % 2 == 0)
        throw PreconditionError("distance lifts need an odd l >= 3");
    if (find_morphism(cycle_on_e(l), g, MorphismKind::homomorphism_embedding))
        throw PreconditionError("the graph contains a homomorphic image of C_" + std::to_string(l));
    return lift_distances(g, l, order);
}

DistanceAmalgam distance_lift_amalgam(const Structure& b1, const Structure& b2, int l)
{
    const Language lang = distance_lift_language(l);
    if (! (b1.language() == lang) || ! (b2.language() == lang))
        throw LanguageMismatch("inputs must be distance lifts for l=" + std::to_string(l));
    std::vector<std::string> lifted_symbols{"<="};
    for (int i = 2; i <= (l - 1) / 2; ++i)
        lifted_symbols.push_back("dist:" + std::to_string(i));
    std::vector<std::string> shared;
    for (const auto& v : b1.vertices())
        if (b2.find(v) >= 0)
            shared.push_back(v);
    if (! (induced_substructure(b1, shared) == induced_substructure(b2, shared)))
        throw PreconditionError("the lifts differ on their shared vertices");

    auto g = free_amalgamation_over_common(drop_symbols(b1, lifted_symbols), drop_symbols(b2, lifted_symbols)).result;

    // Kahn's algorithm on the union of both orders, smallest index first.
    std::vector<std::set<int>> after(g.size());
    std::vector<int> indegree(g.size(), 0);
    for (const auto* s : {&b1, &b2})
        for (const auto& t : s->tuples(0))
            if (t[0] != t[1]) {
                int x = g.index_of(s->name(t[0])), y = g.index_of(s->name(t[1]));
                if (after[static_cast<std::size_t>(x)].insert(y).second)
                    ++indegree[static_cast<std::size_t>(y)];
            }
    std::set<int> ready;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (indegree[v] == 0)
            ready.insert(static_cast<int>(v));
    std::vector<int> order;
    while (! ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int w : after[static_cast<std::size_t>(v)])
            if (--indegree[static_cast<std::size_t>(w)] == 0)
                ready.insert(w);
    }

    DistanceAmalgam out;
    out.c = lift_distances(g, l, order);
    bool in_class = ! find_morphism(cycle_on_e(l), g, MorphismKind::homomorphism_embedding);
    auto embeds = [&](const Structure& s) {
        std::vector<int> map;
        for (const auto& v : s.vertices())
            map.push_back(out.c.index_of(v));
        return verify_morphism(s, out.c, map, MorphismKind::embedding);
    };
    out.strong = order.size() == g.size() && in_class && embeds(b1) && embeds(b2);
    return out;
}

nlohmann::json to_json(const ArrowReport& r, const Structure& c)
{
    nlohmann::json j;
    j["verdict"] = to_string(r.verdict);
    j["exhaustive"] = r.exhaustive;
    j["copies_of_a"] = r.a_copies.size();
    j["copies_of_b"] = r.b_copies;
    j["colourings_examined"] = r.colourings_examined;
    if (r.colouring) {
        nlohmann::json copies = nlohmann::json::array();
        for (const auto& cp : r.a_copies) {
            nlohmann::json names = nlohmann::json::array();
            for (int v : cp)
                names.push_back(c.name(v));
            copies.push_back(names);
        }
        j["certificate"] = {{"copies", copies}, {"colouring", *r.colouring}};
    }
    return j;
}

nlohmann::json to_json(const PartiteSystem& s)
{
    nlohmann::json parts = nlohmann::json::object();
    for (std::size_t v = 0; v < s.part.size(); ++v)
        parts[s.carrier.name(static_cast<int>(v))] = s.base.name(s.part[v]);
    return {{"base", to_rsf_json(s.base)}, {"carrier", to_rsf_json(s.carrier)}, {"parts", parts}};
}

} // namespace rf
