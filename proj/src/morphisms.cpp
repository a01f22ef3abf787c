#include "ramseyforge/errors.hpp"
#include "ramseyforge/structures.hpp"

#include <algorithm>
#include <numeric>

namespace rf {

std::string to_string(MorphismKind kind)
{
    switch (kind) {
    case MorphismKind::homomorphism: return "homomorphism";
    case MorphismKind::monomorphism: return "monomorphism";
    case MorphismKind::embedding: return "embedding";
    case MorphismKind::homomorphism_embedding: return "homomorphism-embedding";
    }
    return "homomorphism";
}

MorphismKind parse_morphism_kind(std::string_view text)
{
    if (text == "homomorphism" || text == "hom")
        return MorphismKind::homomorphism;
    if (text == "monomorphism" || text == "mono")
        return MorphismKind::monomorphism;
    if (text == "embedding" || text == "emb")
        return MorphismKind::embedding;
    if (text == "homomorphism-embedding" || text == "hom-embedding" || text == "hom-emb")
        return MorphismKind::homomorphism_embedding;
    throw PreconditionError("unknown morphism kind '" + std::string(text) + "'");
}

namespace {

bool adjacent(const std::vector<std::vector<int>>& adj, int u, int v)
{
    const auto& n = adj[static_cast<std::size_t>(u)];
    return std::binary_search(n.begin(), n.end(), v);
}

// Enumerates coordinate-wise preimage tuples of a target tuple whose support is
// a Gaifman clique of the source, calling check on each; false aborts.
bool for_each_clique_preimage(const std::vector<std::vector<int>>& candidates, const std::vector<std::vector<int>>& adj,
    const std::function<bool(const Tuple&)>& check)
{
    Tuple current(candidates.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == candidates.size())
            return check(current);
        for (int v : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                if (current[j] != v && ! adjacent(adj, current[j], v))
                    ok = false;
            if (! ok)
                continue;
            current[i] = v;
            if (! rec(i + 1))
                return false;
        }
        return true;
    };
    return rec(0);
}

class Searcher {
public:
    Searcher(const Structure& a, const Structure& b, MorphismKind kind, const SearchOptions& options,
        const std::function<bool(const std::vector<int>&)>& visit)
        : a_(a), b_(b), kind_(kind), opt_(options), visit_(visit)
    {
        if (! (a.language() == b.language()))
            throw LanguageMismatch("source and target languages differ");
        n_ = a.size();
        m_ = b.size();
        if (! opt_.fixed.empty() && opt_.fixed.size() != n_)
            throw PreconditionError("fixed assignment must cover every source vertex");
        if (! opt_.source_colour.empty() && (opt_.source_colour.size() != n_ || opt_.target_colour.size() != m_))
            throw PreconditionError("colour vectors must cover both structures");
        injective_ = kind == MorphismKind::monomorphism || kind == MorphismKind::embedding;
        adj_a_ = gaifman_adjacency(a);
        adj_b_ = gaifman_adjacency(b);
        inj_mark_.assign(n_, 0);
        for (int v : opt_.injective_on)
            inj_mark_[static_cast<std::size_t>(v)] = 1;
        inj_used_.assign(m_, 0);
        used_.assign(m_, 0);
        pre_.assign(m_, {});
        f_.assign(n_, -1);
        stamp_.assign(n_, 0);
        build_order();
        build_checks();
        if (kind == MorphismKind::embedding || kind == MorphismKind::homomorphism_embedding) {
            incidence_.assign(m_, {});
            for (std::size_t s = 0; s < b.language().size(); ++s) {
                const auto& ts = b.tuples(static_cast<int>(s));
                for (std::size_t i = 0; i < ts.size(); ++i) {
                    Tuple vs = ts[i];
                    std::sort(vs.begin(), vs.end());
                    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
                    for (int v : vs)
                        incidence_[static_cast<std::size_t>(v)].emplace_back(static_cast<int>(s), static_cast<int>(i));
                }
            }
        }
    }

    std::size_t run()
    {
        if (! opt_.fixed.empty())
            for (int t : opt_.fixed)
                if (t >= static_cast<int>(m_))
                    throw PreconditionError("fixed image out of range");
        stop_ = false;
        count_ = 0;
        recurse(0);
        return count_;
    }

private:
    void build_order()
    {
        std::vector<char> placed(n_, 0);
        std::vector<int> placed_nbrs(n_, 0);
        auto place = [&](int v) {
            placed[static_cast<std::size_t>(v)] = 1;
            order_.push_back(v);
            for (int w : adj_a_[static_cast<std::size_t>(v)])
                ++placed_nbrs[static_cast<std::size_t>(w)];
        };
        if (! opt_.fixed.empty())
            for (std::size_t v = 0; v < n_; ++v)
                if (opt_.fixed[v] >= 0)
                    place(static_cast<int>(v));
        while (order_.size() < n_) {
            int best = -1;
            for (std::size_t v = 0; v < n_; ++v) {
                if (placed[v])
                    continue;
                if (best < 0 || placed_nbrs[v] > placed_nbrs[static_cast<std::size_t>(best)]
                    || (placed_nbrs[v] == placed_nbrs[static_cast<std::size_t>(best)]
                        && adj_a_[v].size() > adj_a_[static_cast<std::size_t>(best)].size()))
                    best = static_cast<int>(v);
            }
            place(best);
        }
        pos_.assign(n_, 0);
        for (std::size_t p = 0; p < n_; ++p)
            pos_[static_cast<std::size_t>(order_[p])] = static_cast<int>(p);
        anchor_.assign(n_, -1);
        for (std::size_t p = 0; p < n_; ++p) {
            int v = order_[p];
            for (int w : adj_a_[static_cast<std::size_t>(v)])
                if (pos_[static_cast<std::size_t>(w)] < static_cast<int>(p)) {
                    anchor_[p] = w;
                    break;
                }
        }
    }

    void build_checks()
    {
        checks_.assign(n_, {});
        for (std::size_t s = 0; s < a_.language().size(); ++s) {
            const auto& ts = a_.tuples(static_cast<int>(s));
            for (std::size_t i = 0; i < ts.size(); ++i) {
                int last = 0;
                for (int v : ts[i])
                    last = std::max(last, pos_[static_cast<std::size_t>(v)]);
                checks_[static_cast<std::size_t>(last)].emplace_back(static_cast<int>(s), static_cast<int>(i));
            }
        }
    }

    bool consistent(std::size_t p, int x, int img)
    {
        if (! opt_.fixed.empty() && opt_.fixed[static_cast<std::size_t>(x)] >= 0
            && opt_.fixed[static_cast<std::size_t>(x)] != img)
            return false;
        if (! opt_.source_colour.empty()
            && opt_.source_colour[static_cast<std::size_t>(x)] != opt_.target_colour[static_cast<std::size_t>(img)])
            return false;
        if (injective_ && used_[static_cast<std::size_t>(img)])
            return false;
        if (inj_mark_[static_cast<std::size_t>(x)] && inj_used_[static_cast<std::size_t>(img)])
            return false;
        if (kind_ != MorphismKind::homomorphism)
            for (int y : adj_a_[static_cast<std::size_t>(x)])
                if (f_[static_cast<std::size_t>(y)] == img)
                    return false;
        for (const auto& [s, i] : checks_[p]) {
            const Tuple& t = a_.tuples(s)[static_cast<std::size_t>(i)];
            Tuple image(t.size());
            for (std::size_t k = 0; k < t.size(); ++k)
                image[k] = t[k] == x ? img : f_[static_cast<std::size_t>(t[k])];
            if (! b_.has(s, image))
                return false;
        }
        return true;
    }

    // Reflection checks, run with x provisionally assigned to img.
    bool reflects(int x, int img)
    {
        if (kind_ == MorphismKind::embedding) {
            for (const auto& [s, i] : incidence_[static_cast<std::size_t>(img)]) {
                const Tuple& t = b_.tuples(s)[static_cast<std::size_t>(i)];
                Tuple preimage(t.size());
                bool all = true;
                for (std::size_t k = 0; k < t.size() && all; ++k) {
                    const auto& pv = pre_[static_cast<std::size_t>(t[k])];
                    if (pv.empty())
                        all = false;
                    else
                        preimage[k] = pv.front();
                }
                if (all && ! a_.has(s, preimage))
                    return false;
            }
            return true;
        }
        if (kind_ == MorphismKind::homomorphism_embedding) {
            ++epoch_;
            stamp_[static_cast<std::size_t>(x)] = epoch_;
            for (int y : adj_a_[static_cast<std::size_t>(x)])
                stamp_[static_cast<std::size_t>(y)] = epoch_;
            for (const auto& [s, i] : incidence_[static_cast<std::size_t>(img)]) {
                const Tuple& t = b_.tuples(s)[static_cast<std::size_t>(i)];
                std::vector<std::vector<int>> candidates(t.size());
                bool viable = true;
                for (std::size_t k = 0; k < t.size() && viable; ++k) {
                    for (int y : pre_[static_cast<std::size_t>(t[k])])
                        if (stamp_[static_cast<std::size_t>(y)] == epoch_)
                            candidates[k].push_back(y);
                    viable = ! candidates[k].empty();
                }
                if (! viable)
                    continue;
                bool ok = for_each_clique_preimage(candidates, adj_a_, [&](const Tuple& pre) {
                    if (std::find(pre.begin(), pre.end(), x) == pre.end())
                        return true;
                    return a_.has(s, pre);
                });
                if (! ok)
                    return false;
            }
        }
        return true;
    }

    void recurse(std::size_t p)
    {
        if (stop_)
            return;
        if (p == n_) {
            ++count_;
            if (! visit_(f_))
                stop_ = true;
            return;
        }
        int x = order_[p];
        auto attempt = [&](int img) {
            if (stop_ || ! consistent(p, x, img))
                return;
            f_[static_cast<std::size_t>(x)] = img;
            ++used_[static_cast<std::size_t>(img)];
            if (inj_mark_[static_cast<std::size_t>(x)])
                ++inj_used_[static_cast<std::size_t>(img)];
            pre_[static_cast<std::size_t>(img)].push_back(x);
            if (reflects(x, img))
                recurse(p + 1);
            pre_[static_cast<std::size_t>(img)].pop_back();
            if (inj_mark_[static_cast<std::size_t>(x)])
                --inj_used_[static_cast<std::size_t>(img)];
            --used_[static_cast<std::size_t>(img)];
            f_[static_cast<std::size_t>(x)] = -1;
        };
        if (! opt_.fixed.empty() && opt_.fixed[static_cast<std::size_t>(x)] >= 0) {
            attempt(opt_.fixed[static_cast<std::size_t>(x)]);
            return;
        }
        int anchor = anchor_[p];
        if (anchor >= 0) {
            int fa = f_[static_cast<std::size_t>(anchor)];
            const auto& nb = adj_b_[static_cast<std::size_t>(fa)];
            bool self_done = kind_ != MorphismKind::homomorphism;
            for (int w : nb) {
                if (! self_done && fa < w) {
                    attempt(fa);
                    self_done = true;
                }
                attempt(w);
            }
            if (! self_done)
                attempt(fa);
            return;
        }
        for (std::size_t w = 0; w < m_; ++w)
            attempt(static_cast<int>(w));
    }

    const Structure& a_;
    const Structure& b_;
    MorphismKind kind_;
    const SearchOptions& opt_;
    const std::function<bool(const std::vector<int>&)>& visit_;
    std::size_t n_ = 0, m_ = 0;
    bool injective_ = false;
    std::vector<std::vector<int>> adj_a_, adj_b_;
    std::vector<int> order_, pos_, anchor_;
    std::vector<std::vector<std::pair<int, int>>> checks_;
    std::vector<std::vector<std::pair<int, int>>> incidence_;
    std::vector<int> f_, used_, inj_used_;
    std::vector<char> inj_mark_;
    std::vector<std::vector<int>> pre_;
    std::vector<unsigned> stamp_;
    unsigned epoch_ = 0;
    bool stop_ = false;
    std::size_t count_ = 0;
};

} // namespace

std::size_t search_morphisms(const Structure& a, const Structure& b, MorphismKind kind, const SearchOptions& options,
    const std::function<bool(const std::vector<int>&)>& visit)
{
    Searcher s(a, b, kind, options, visit);
    return s.run();
}

std::vector<Morphism> enumerate_morphisms(
    const Structure& a, const Structure& b, MorphismKind kind, const SearchOptions& options)
{
    std::vector<Morphism> out;
    search_morphisms(a, b, kind, options, [&](const std::vector<int>& f) {
        out.push_back({f, kind});
        return true;
    });
    std::sort(out.begin(), out.end(), [](const Morphism& x, const Morphism& y) { return x.map < y.map; });
    return out;
}

std::optional<Morphism> find_morphism(
    const Structure& a, const Structure& b, MorphismKind kind, const SearchOptions& options)
{
    std::optional<Morphism> out;
    search_morphisms(a, b, kind, options, [&](const std::vector<int>& f) {
        out = Morphism{f, kind};
        return false;
    });
    return out;
}

bool verify_morphism(const Structure& a, const Structure& b, const std::vector<int>& map, MorphismKind kind)
{
    if (! (a.language() == b.language()))
        throw LanguageMismatch("source and target languages differ");
    if (map.size() != a.size())
        throw MalformedMorphism("map is not total on the source");
    for (int v : map)
        if (v < 0 || static_cast<std::size_t>(v) >= b.size())
            throw MalformedMorphism("map sends a vertex outside the target");

    for (std::size_t s = 0; s < a.language().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s)))
            if (! b.has(static_cast<int>(s), compose(t, map)))
                return false;
    if (kind == MorphismKind::homomorphism)
        return true;

    std::vector<std::vector<int>> preimages(b.size());
    for (std::size_t v = 0; v < a.size(); ++v)
        preimages[static_cast<std::size_t>(map[v])].push_back(static_cast<int>(v));

    if (kind == MorphismKind::monomorphism || kind == MorphismKind::embedding) {
        for (const auto& p : preimages)
            if (p.size() > 1)
                return false;
        if (kind == MorphismKind::monomorphism)
            return true;
        for (std::size_t s = 0; s < b.language().size(); ++s)
            for (const auto& t : b.tuples(static_cast<int>(s))) {
                Tuple pre(t.size());
                bool inside = true;
                for (std::size_t k = 0; k < t.size() && inside; ++k) {
                    const auto& pv = preimages[static_cast<std::size_t>(t[k])];
                    inside = ! pv.empty();
                    if (inside)
                        pre[k] = pv.front();
                }
                if (inside && ! a.has(static_cast<int>(s), pre))
                    return false;
            }
        return true;
    }

    auto adj = gaifman_adjacency(a);
    for (std::size_t u = 0; u < a.size(); ++u)
        for (int w : adj[u])
            if (map[u] == map[static_cast<std::size_t>(w)])
                return false;
    for (std::size_t s = 0; s < b.language().size(); ++s)
        for (const auto& t : b.tuples(static_cast<int>(s))) {
            std::vector<std::vector<int>> candidates(t.size());
            bool inside = true;
            for (std::size_t k = 0; k < t.size() && inside; ++k) {
                candidates[k] = preimages[static_cast<std::size_t>(t[k])];
                inside = ! candidates[k].empty();
            }
            if (! inside)
                continue;
            bool ok = for_each_clique_preimage(
                candidates, adj, [&](const Tuple& pre) { return a.has(static_cast<int>(s), pre); });
            if (! ok)
                return false;
        }
    return true;
}

bool verify_morphism(const Structure& a, const Structure& b, const std::map<std::string, std::string>& map,
    MorphismKind kind)
{
    std::vector<int> m(a.size(), -1);
    for (const auto& [from, to] : map) {
        int x = a.find(from);
        if (x < 0)
            throw MalformedMorphism("map mentions undeclared source vertex '" + from + "'");
        int y = b.find(to);
        if (y < 0)
            throw MalformedMorphism("map mentions undeclared target vertex '" + to + "'");
        m[static_cast<std::size_t>(x)] = y;
    }
    for (std::size_t v = 0; v < a.size(); ++v)
        if (m[v] < 0)
            throw MalformedMorphism("map is undefined on '" + a.name(static_cast<int>(v)) + "'");
    return verify_morphism(a, b, m, kind);
}

std::vector<Copy> copies_of(const Structure& a, const Structure& b)
{
    std::map<std::vector<int>, Morphism> grouped;
    for (auto& m : enumerate_morphisms(a, b, MorphismKind::embedding)) {
        std::vector<int> image = m.map;
        std::sort(image.begin(), image.end());
        grouped.emplace(std::move(image), std::move(m));
    }
    std::vector<Copy> out;
    for (auto& [image, m] : grouped)
        out.push_back({image, m});
    return out;
}

namespace {

// Colour refinement shared by two structures so that colours are comparable.
struct JointColours {
    std::vector<int> a, b;
};

std::vector<std::vector<int>> base_signatures(const Structure& s, const std::vector<int>& root)
{
    std::size_t width = 1;
    for (const auto& sym : s.language().symbols())
        width += static_cast<std::size_t>(sym.arity) + 1;
    std::vector<std::vector<int>> sig(s.size(), std::vector<int>(width, 0));
    std::size_t offset = 1;
    for (std::size_t r = 0; r < s.language().size(); ++r) {
        int ar = s.language().arity(static_cast<int>(r));
        for (const auto& t : s.tuples(static_cast<int>(r))) {
            bool constant = std::all_of(t.begin(), t.end(), [&](int v) { return v == t[0]; });
            for (int k = 0; k < ar; ++k)
                ++sig[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])][offset + static_cast<std::size_t>(k)];
            if (constant)
                ++sig[static_cast<std::size_t>(t[0])][offset + static_cast<std::size_t>(ar)];
        }
        offset += static_cast<std::size_t>(ar) + 1;
    }
    for (std::size_t i = 0; i < root.size(); ++i)
        sig[static_cast<std::size_t>(root[i])][0] = static_cast<int>(i) + 1;
    return sig;
}

JointColours joint_colours(const Structure& a, const std::vector<int>& ra, const Structure& b, const std::vector<int>& rb)
{
    auto sa = base_signatures(a, ra);
    auto sb = base_signatures(b, rb);
    std::map<std::vector<int>, int> ids;
    JointColours c;
    for (auto& s : sa)
        c.a.push_back(ids.emplace(s, static_cast<int>(ids.size())).first->second);
    for (auto& s : sb)
        c.b.push_back(ids.emplace(s, static_cast<int>(ids.size())).first->second);
    auto adj_a = gaifman_adjacency(a);
    auto adj_b = gaifman_adjacency(b);
    auto refine = [](const std::vector<int>& col, const std::vector<std::vector<int>>& adj) {
        std::vector<std::vector<int>> out(col.size());
        for (std::size_t v = 0; v < col.size(); ++v) {
            out[v].push_back(col[v]);
            std::vector<int> nb;
            for (int w : adj[v])
                nb.push_back(col[static_cast<std::size_t>(w)]);
            std::sort(nb.begin(), nb.end());
            out[v].insert(out[v].end(), nb.begin(), nb.end());
        }
        return out;
    };
    auto ra2 = refine(c.a, adj_a);
    auto rb2 = refine(c.b, adj_b);
    std::map<std::vector<int>, int> ids2;
    JointColours d;
    for (auto& s : ra2)
        d.a.push_back(ids2.emplace(s, static_cast<int>(ids2.size())).first->second);
    for (auto& s : rb2)
        d.b.push_back(ids2.emplace(s, static_cast<int>(ids2.size())).first->second);
    return d;
}

bool same_counts(const Structure& a, const Structure& b)
{
    if (a.size() != b.size() || ! (a.language() == b.language()))
        return false;
    for (std::size_t s = 0; s < a.language().size(); ++s)
        if (a.tuples(static_cast<int>(s)).size() != b.tuples(static_cast<int>(s)).size())
            return false;
    return true;
}

} // namespace

std::optional<Morphism> are_isomorphic_rooted(
    const Structure& a, const std::vector<int>& root_a, const Structure& b, const std::vector<int>& root_b)
{
    if (root_a.size() != root_b.size() || ! same_counts(a, b))
        return std::nullopt;
    auto colours = joint_colours(a, root_a, b, root_b);
    std::vector<int> ca = colours.a, cb = colours.b;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb)
        return std::nullopt;
    SearchOptions opt;
    opt.source_colour = colours.a;
    opt.target_colour = colours.b;
    if (! root_a.empty()) {
        opt.fixed.assign(a.size(), -1);
        for (std::size_t i = 0; i < root_a.size(); ++i)
            opt.fixed[static_cast<std::size_t>(root_a[i])] = root_b[i];
    }
    auto m = find_morphism(a, b, MorphismKind::embedding, opt);
    if (m)
        m->kind = MorphismKind::embedding;
    return m;
}

std::optional<Morphism> are_isomorphic(const Structure& a, const Structure& b)
{
    return are_isomorphic_rooted(a, {}, b, {});
}

std::vector<long long> isomorphism_invariant(const Structure& s, const std::vector<int>& root)
{
    std::vector<long long> key;
    key.push_back(static_cast<long long>(s.size()));
    for (std::size_t r = 0; r < s.language().size(); ++r)
        key.push_back(static_cast<long long>(s.tuples(static_cast<int>(r)).size()));
    auto sig = base_signatures(s, root);
    auto adj = gaifman_adjacency(s);
    auto hash = [](const std::vector<int>& v) {
        unsigned long long h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<unsigned long long>(x) + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return static_cast<long long>(h >> 1);
    };
    std::vector<long long> base(s.size());
    for (std::size_t v = 0; v < s.size(); ++v)
        base[v] = hash(sig[v]);
    std::vector<long long> refined(s.size());
    for (std::size_t v = 0; v < s.size(); ++v) {
        std::vector<long long> nb;
        for (int w : adj[v])
            nb.push_back(base[static_cast<std::size_t>(w)]);
        std::sort(nb.begin(), nb.end());
        std::vector<int> flat{static_cast<int>(base[v] & 0x7fffffff), static_cast<int>(base[v] >> 31)};
        for (long long x : nb) {
            flat.push_back(static_cast<int>(x & 0x7fffffff));
            flat.push_back(static_cast<int>(x >> 31));
        }
        refined[v] = hash(flat);
    }
    std::vector<long long> sorted = refined;
    std::sort(sorted.begin(), sorted.end());
    key.insert(key.end(), sorted.begin(), sorted.end());
    for (int r : root)
        key.push_back(refined[static_cast<std::size_t>(r)]);
    return key;
}

std::pair<std::size_t, bool> IsoCatalogue::insert(const Structure& s, const std::vector<int>& root)
{
    auto key = isomorphism_invariant(s, root);
    auto& bucket = buckets_[key];
    for (std::size_t i : bucket)
        if (are_isomorphic_rooted(entries_[i].first, entries_[i].second, s, root))
            return {i, false};
    bucket.push_back(entries_.size());
    entries_.emplace_back(s, root);
    return {entries_.size() - 1, true};
}

std::optional<std::size_t> IsoCatalogue::find(const Structure& s, const std::vector<int>& root) const
{
    auto key = isomorphism_invariant(s, root);
    auto it = buckets_.find(key);
    if (it == buckets_.end())
        return std::nullopt;
    for (std::size_t i : it->second)
        if (are_isomorphic_rooted(entries_[i].first, entries_[i].second, s, root))
            return i;
    return std::nullopt;
}

} // namespace rf
