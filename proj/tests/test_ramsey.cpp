#include "fixtures.hpp"
#include "graph_oracles.hpp"
#include "oracles.hpp"
#include "ramseyforge/errors.hpp"
#include "ramseyforge/pieces.hpp"
#include "ramseyforge/ramsey.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace rf;

namespace {

// Lines of [t]^N as point sets, by counting words over t+1 letters where the
// letter t is the moving one.
std::vector<std::vector<std::size_t>> lines_by_words(int t, int n)
{
    std::vector<std::vector<std::size_t>> out;
    const auto words = static_cast<std::size_t>(std::pow(t + 1, n));
    for (std::size_t w = 0; w < words; ++w) {
        std::vector<int> digit(static_cast<std::size_t>(n));
        std::size_t x = w;
        for (int i = n - 1; i >= 0; --i) {
            digit[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::size_t>(t + 1));
            x /= static_cast<std::size_t>(t + 1);
        }
        if (std::find(digit.begin(), digit.end(), t) == digit.end())
            continue;
        std::vector<std::size_t> pts;
        for (int letter = 0; letter < t; ++letter) {
            std::size_t p = 0;
            for (int d : digit)
                p = p * static_cast<std::size_t>(t) + static_cast<std::size_t>(d == t ? letter : d);
            pts.push_back(p);
        }
        out.push_back(pts);
    }
    return out;
}

// Every k-colouring of [t]^N has a monochromatic line, by listing colourings.
bool every_colouring_has_mono_line(int t, int k, int n)
{
    const auto points = static_cast<std::size_t>(std::pow(t, n));
    const auto lines = lines_by_words(t, n);
    const auto total = static_cast<std::size_t>(std::pow(k, static_cast<double>(points)));
    for (std::size_t c = 0; c < total; ++c) {
        std::vector<int> colour(points);
        std::size_t x = c;
        for (auto& v : colour) {
            v = static_cast<int>(x % static_cast<std::size_t>(k));
            x /= static_cast<std::size_t>(k);
        }
        bool mono = false;
        for (const auto& l : lines) {
            bool same = true;
            for (auto p : l)
                same = same && colour[p] == colour[l.front()];
            mono = mono || same;
        }
        if (! mono)
            return false;
    }
    return true;
}

std::set<std::vector<int>> images(const Structure& a, const Structure& c)
{
    std::set<std::vector<int>> out;
    for (auto f : oracle::brute_force(a, c, MorphismKind::embedding)) {
        std::sort(f.begin(), f.end());
        out.insert(f);
    }
    return out;
}

// True when some k-colouring of copies of A leaves no copy of B monochromatic.
bool arrow_fails_by_listing(const Structure& c, const Structure& a, const Structure& b, int k)
{
    auto as = images(a, c);
    std::vector<std::vector<int>> a_list(as.begin(), as.end());
    std::vector<std::vector<std::size_t>> inside;
    for (const auto& bi : images(b, c)) {
        std::vector<std::size_t> in;
        for (std::size_t i = 0; i < a_list.size(); ++i)
            if (std::includes(bi.begin(), bi.end(), a_list[i].begin(), a_list[i].end()))
                in.push_back(i);
        inside.push_back(in);
    }
    const auto total = static_cast<std::size_t>(std::pow(k, static_cast<double>(a_list.size())));
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<int> colour(a_list.size());
        std::size_t x = code;
        for (auto& v : colour) {
            v = static_cast<int>(x % static_cast<std::size_t>(k));
            x /= static_cast<std::size_t>(k);
        }
        bool some_mono = false;
        for (const auto& in : inside) {
            bool same = true;
            for (auto i : in)
                same = same && colour[i] == colour[in.front()];
            some_mono = some_mono || same;
        }
        if (! some_mono)
            return true;
    }
    return false;
}

bool projection_checks(const PartiteSystem& s)
{
    for (std::size_t sym = 0; sym < s.carrier.language().size(); ++sym)
        for (const auto& t : s.carrier.tuples(static_cast<int>(sym))) {
            std::set<int> parts;
            std::set<int> distinct(t.begin(), t.end());
            for (int v : distinct)
                parts.insert(s.part[static_cast<std::size_t>(v)]);
            if (parts.size() != distinct.size())
                return false;
        }
    return oracle::satisfies(s.carrier, s.base, s.part, MorphismKind::homomorphism_embedding);
}

Language unary_language() { return Language({{"<=", 2}, {"f", 2}}, "<="); }

// Ordered by the given sequence; f sends the i-th vertex to the target-th.
Structure unary(const std::vector<std::string>& order, const std::vector<int>& target)
{
    StructureBuilder b(unary_language());
    for (const auto& v : order)
        b.vertex(v);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i; j < order.size(); ++j)
            b.tuple(0, {b.vertex(order[i]), b.vertex(order[j])});
        b.tuple(1, {b.vertex(order[i]), b.vertex(order[static_cast<std::size_t>(target[i])])});
    }
    return b.build();
}

Structure with_loops_only(const std::vector<std::string>& vs)
{
    StructureBuilder b(fx::ordered_graph_language());
    for (const auto& v : vs)
        b.tuple(0, {b.vertex(v), b.vertex(v)});
    return b.build();
}

} // namespace

TEST_SUITE("ramsey")
{
    TEST_CASE("combinatorial lines match the word count")
    {
        for (int t = 1; t <= 3; ++t)
            for (int n = 1; n <= 3; ++n) {
                auto lines = combinatorial_lines(t, n);
                auto expected = lines_by_words(t, n);
                REQUIRE(lines.size() == expected.size());
                std::set<std::vector<std::size_t>> got, want;
                for (const auto& l : lines) {
                    CHECK(! l.moving().empty());
                    std::vector<std::size_t> pts;
                    for (int x = 0; x < t; ++x)
                        pts.push_back(point_index(l.point(x), t));
                    got.insert(pts);
                }
                for (const auto& l : expected)
                    want.insert(l);
                CHECK(got == want);
                CHECK(lines.size() == static_cast<std::size_t>(std::pow(t + 1, n) - std::pow(t, n)));
            }
        CHECK_THROWS_AS(combinatorial_lines(0, 2), PreconditionError);
    }

    TEST_CASE("Hales-Jewett numbers agree with listing every colouring")
    {
        for (auto [t, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 1}, {2, 2}, {2, 3}}) {
            int least = 1;
            while (! every_colouring_has_mono_line(t, k, least))
                ++least;
            auto r = hales_jewett_N(t, k);
            REQUIRE(r.n.has_value());
            CHECK(*r.n == least);
            CHECK_FALSE(r.inconclusive);
        }
        CHECK(*hales_jewett_N(2, 2).n == 2);
        CHECK(*hales_jewett_N(1, 5).n == 1);
    }

    TEST_CASE("Hales-Jewett beyond the cap is inconclusive with a lower bound")
    {
        auto r = hales_jewett_N(3, 2);
        CHECK(r.inconclusive);
        CHECK_FALSE(r.n.has_value());
        // [3]^2 still has a colouring without monochromatic lines; [3]^3 is past 2^24.
        CHECK_FALSE(every_colouring_has_mono_line(3, 2, 2));
        CHECK(r.lower_bound == 3);
        auto small = hales_jewett_N(2, 2, 8);
        CHECK(small.inconclusive);
        CHECK(small.lower_bound == 2);
    }

    TEST_CASE("partite systems")
    {
        auto a = fx::complete_graph(2);
        auto carrier = fx::graph({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
        auto ok = fx::partite_by_names(a, carrier, {{"a", "v0"}, {"b", "v1"}, {"c", "v1"}});
        CHECK(is_partite_system(ok));
        CHECK(projection_checks(ok));
        CHECK(transversal_copies(ok).size() == 2);
        auto bad = fx::partite_by_names(a, carrier, {{"a", "v0"}, {"b", "v0"}, {"c", "v1"}});
        CHECK(partite_violation(bad).has_value());
        CHECK_FALSE(projection_checks(bad));
        bad.part.pop_back();
        CHECK(partite_violation(bad).has_value());
    }

    TEST_CASE("partite lemma on two vertices in one part")
    {
        auto a = with_loops_only({"p"});
        auto carrier = with_loops_only({"x", "y"});
        auto b = fx::partite_by_names(a, carrier, {{"x", "p"}, {"y", "p"}});
        auto r = partite_lemma(a, b, ClosureDescription{}, 2);
        CHECK(r.c.carrier.size() == 4);
        CHECK(r.copies.size() == 2);
        CHECK(r.lines.size() == 5);
        CHECK(r.semi_closed);
        CHECK(r.closed);
        CHECK(r.lines_embed);
        CHECK(r.lines_are_u_substructures);
        CHECK(projection_checks(r.c));
        // Copies of A in C are its vertices; every 2-colouring leaves a line image monochromatic.
        for (int code = 0; code < 16; ++code) {
            bool mono = false;
            for (const auto& e : r.embeddings) {
                int c0 = (code >> e[0]) & 1, c1 = (code >> e[1]) & 1;
                mono = mono || c0 == c1;
            }
            CHECK(mono);
        }
    }

    TEST_CASE("partite lemma on matched edges colours edges")
    {
        auto a = fx::complete_graph(2);
        auto carrier = fx::graph({"a1", "a2", "b1", "b2"}, {{"a1", "b1"}, {"a2", "b2"}});
        auto b = fx::partite_by_names(a, carrier, {{"a1", "v0"}, {"a2", "v0"}, {"b1", "v1"}, {"b2", "v1"}});
        auto r = partite_lemma(a, b, ClosureDescription{}, 2);
        CHECK(r.c.carrier.size() == 8);
        // Edges coordinatewise: one per pair of matched-edge choices, both directions.
        CHECK(r.c.carrier.tuples(0).size() == 8);
        CHECK(r.lines_embed);
        CHECK(projection_checks(r.c));
        auto edges = transversal_copies(r.c);
        REQUIRE(edges.size() == 4);
        std::vector<std::vector<std::size_t>> line_edges;
        for (const auto& e : r.embeddings) {
            std::vector<std::size_t> in;
            for (std::size_t i = 0; i < edges.size(); ++i) {
                std::set<int> image(e.begin(), e.end());
                if (image.count(edges[i][0]) && image.count(edges[i][1]))
                    in.push_back(i);
            }
            CHECK(in.size() == 2);
            line_edges.push_back(in);
        }
        for (int code = 0; code < 16; ++code) {
            bool mono = false;
            for (const auto& in : line_edges)
                mono = mono || ((code >> in[0]) & 1) == ((code >> in[1]) & 1);
            CHECK(mono);
        }
    }

    TEST_CASE("partite lemma with one letter is the input")
    {
        auto a = fx::complete_graph(2);
        auto b = fx::partite_by_names(a, a, {{"v0", "v0"}, {"v1", "v1"}});
        auto r = partite_lemma(a, b, ClosureDescription{}, 1);
        CHECK(r.c.carrier.size() == 2);
        CHECK(r.lines.size() == 1);
        CHECK(are_isomorphic(r.c.carrier, a).has_value());
    }

    TEST_CASE("partite lemma errors")
    {
        auto a = fx::complete_graph(2);
        auto empty = fx::graph({"a", "b"}, {});
        CHECK_THROWS_AS(partite_lemma(a, fx::partite_by_names(a, empty, {{"a", "v0"}, {"b", "v1"}}), ClosureDescription{}, 2),
            PreconditionError);
        auto pa = fx::pointed_base(1);
        StructureBuilder sb(fx::pointed_language());
        sb.tuple(0, {sb.vertex("s1")});
        sb.tuple(0, {sb.vertex("s2")});
        sb.tuple(1, {sb.vertex("x"), sb.vertex("s1")});
        sb.tuple(1, {sb.vertex("x"), sb.vertex("s2")});
        auto twice = fx::partite_by_names(pa, sb.build(), {{"s1", "s"}, {"s2", "s"}, {"x", "m0"}});
        CHECK(is_partite_system(twice));
        CHECK_THROWS_AS(partite_lemma(pa, twice, fx::pointed_description(), 2), PreconditionError);
        auto big = fx::partite_by_names(a, a, {{"v0", "v0"}, {"v1", "v1"}});
        auto two = fx::graph({"a1", "a2", "b"}, {{"a1", "b"}, {"a2", "b"}});
        auto wide = fx::partite_by_names(a, two, {{"a1", "v0"}, {"a2", "v0"}, {"b", "v1"}});
        CHECK_THROWS_AS(partite_lemma(a, wide, ClosureDescription{}, 4, 10), CapExceeded);
        CHECK_THROWS_AS(partite_lemma(a, big, ClosureDescription{}, 0), PreconditionError);
    }

    TEST_CASE("partite lemma keeps pointed classes closed")
    {
        std::mt19937_64 rng(11);
        for (int round = 0; round < 40; ++round) {
            auto b = fx::random_pointed_system(rng, 1 + static_cast<int>(rng() % 2));
            REQUIRE(is_u_closed(b.carrier, fx::pointed_description()));
            for (int n = 1; n <= 2; ++n) {
                auto r = partite_lemma(b.base, b, fx::pointed_description(), n);
                CHECK(r.closed);
                CHECK(is_u_closed(r.c.carrier, fx::pointed_description()));
                CHECK(r.lines_are_u_substructures);
                CHECK(r.lines_embed);
                CHECK(projection_checks(r.c));
            }
        }
    }

    TEST_CASE("picture zero")
    {
        auto p = picture_zero(fx::ordered_complete(2), fx::ordered_complete(3));
        CHECK(p.carrier.size() == 6);
        CHECK(connected_components(p.carrier).size() == 3);
        CHECK(projection_checks(p));
        std::set<std::set<int>> part_pairs;
        for (const auto& comp : connected_components(p.carrier)) {
            std::set<int> ps;
            for (int v : comp)
                ps.insert(p.part[static_cast<std::size_t>(v)]);
            part_pairs.insert(ps);
        }
        CHECK(part_pairs.size() == 3);
        CHECK(picture_zero(fx::complete_graph(3), fx::complete_graph(3)).carrier.size() == 3);
        CHECK(picture_zero(fx::complete_graph(3), fx::complete_graph(2)).carrier.empty());
        auto j = to_json(p);
        CHECK(j["parts"].size() == 6);
    }

    TEST_CASE("partite construction on a path makes colours follow parts")
    {
        auto c0 = fx::graph({"a", "b", "z"}, {{"a", "z"}, {"b", "z"}});
        auto a = fx::complete_graph(1);
        auto b = fx::complete_graph(2);
        auto r = partite_construction(a, b, c0, ClosureDescription{});
        CHECK(r.picture_sizes == std::vector<std::size_t>{4, 4, 4, 14});
        CHECK(r.hales_jewett == std::vector<int>{1, 1, 2});
        CHECK(projection_checks(r.c));
        CHECK(find_morphism(r.c.carrier, c0, MorphismKind::homomorphism_embedding).has_value());

        // Part-preserving embeddings of picture zero into the final picture.
        auto p0 = picture_zero(b, c0);
        std::vector<std::vector<int>> copies;
        for (const auto& f : oracle::brute_force(p0.carrier, r.c.carrier, MorphismKind::embedding)) {
            bool parts = true;
            for (std::size_t v = 0; v < f.size(); ++v)
                parts = parts && r.c.part[static_cast<std::size_t>(f[v])] == p0.part[v];
            if (parts)
                copies.push_back(f);
        }
        REQUIRE(! copies.empty());
        const int n = static_cast<int>(r.c.carrier.size());
        for (int code = 0; code < (1 << n); ++code) {
            bool found = false;
            for (const auto& f : copies) {
                std::map<int, int> by_part;
                bool follows = true;
                for (std::size_t v = 0; v < f.size() && follows; ++v) {
                    int colour = (code >> f[v]) & 1;
                    auto [it, fresh] = by_part.emplace(p0.part[v], colour);
                    follows = fresh || it->second == colour;
                }
                if (follows) {
                    found = true;
                    break;
                }
            }
            REQUIRE(found);
        }
    }

    TEST_CASE("partite construction edge cases")
    {
        auto k2 = fx::complete_graph(2);
        auto k3 = fx::complete_graph(3);
        auto same = partite_construction(k2, k2, k3, ClosureDescription{});
        CHECK(same.c.carrier.size() == 6);
        CHECK(same.hales_jewett == std::vector<int>{1, 1, 1});
        auto none = partite_construction(k3, k3, k2, ClosureDescription{});
        CHECK(none.c.carrier.empty());
        CHECK(none.picture_sizes == std::vector<std::size_t>{0});

        auto run = [&] {
            partite_construction(fx::ordered_complete(1), fx::ordered_complete(2), fx::ordered_complete(3),
                ClosureDescription{});
        };
        CHECK_THROWS_AS(run(), CapExceeded);
        try {
            run();
        } catch (const CapExceeded& e) {
            CHECK(std::string(e.what()).find("step 2") != std::string::npos);
        }
        CHECK_THROWS_AS(partite_construction(fx::complete_graph(1), k2, fx::path_graph(3), ClosureDescription{}, 10),
            CapExceeded);
    }

    TEST_CASE("partite construction with pointed classes")
    {
        auto c0 = fx::pointed({{"s", "x", "y"}});
        auto a = fx::pointed({{"s"}});
        auto b = fx::pointed({{"s", "x"}});
        auto u = fx::pointed_description();
        auto r = partite_construction(a, b, c0, u);
        CHECK(r.picture_sizes == std::vector<std::size_t>{4, 14});
        CHECK(is_u_closed(r.c.carrier, u));
        CHECK(projection_checks(r.c));
        auto bad = fx::pointed({{"s", "x"}});
        // The member alone is not a U-substructure of C0.
        StructureBuilder lone(fx::pointed_language());
        lone.vertex("x");
        CHECK_THROWS_AS(partite_construction(lone.build(), bad, c0, u), PreconditionError);
    }

    TEST_CASE("Ramsey numbers")
    {
        CHECK(ramsey_number(1, 1) == 1);
        CHECK(ramsey_number(1, 3) == 5);
        CHECK(ramsey_number(2, 3) == 6);
        CHECK(ramsey_number(3, 3) == 3);
        CHECK_FALSE(ramsey_number(2, 4).has_value());
        CHECK_FALSE(ramsey_number(3, 4).has_value());
    }

    TEST_CASE("unary construction on fixed points is pigeonhole")
    {
        auto a = unary({"p"}, {0});
        auto b = unary({"x", "y"}, {0, 1});
        auto r = unary_ramsey(a, b);
        CHECK(r.n == 3);
        CHECK(r.c.size() == 3);
        CHECK(r.copies.size() == 3);
        CHECK(order_is_linear(r.c));
        for (const auto& m : r.copies)
            CHECK(oracle::satisfies(b, r.c, m, MorphismKind::embedding));
        CHECK(verify_arrow(r.c, a, b, 2, {}).verdict == ArrowVerdict::proved);
        CHECK_FALSE(arrow_fails_by_listing(r.c, a, b, 2));
        auto self = unary_ramsey(a, a);
        CHECK(are_isomorphic(self.c, a).has_value());
    }

    TEST_CASE("unary construction on an orbit with a fixed point")
    {
        auto a = unary({"u", "v"}, {1, 1});
        auto b = unary({"u", "v", "w"}, {1, 1, 2});
        auto r = unary_ramsey(a, b);
        CHECK(r.n == 6);
        for (const auto& m : r.copies)
            CHECK(oracle::satisfies(b, r.c, m, MorphismKind::embedding));
        auto report = verify_arrow(r.c, a, b, 2, {});
        CHECK(report.exhaustive);
        CHECK(report.verdict == ArrowVerdict::proved);
        CHECK_FALSE(arrow_fails_by_listing(r.c, a, b, 2));
        auto sampled = verify_arrow(r.c, a, b, 2, parse_arrow_mode("sampled:1000", 7));
        CHECK(sampled.verdict == ArrowVerdict::inconclusive);
        CHECK(sampled.colourings_examined == 1000);
    }

    TEST_CASE("unary construction on random closed pairs")
    {
        std::mt19937_64 rng(5);
        int built = 0;
        for (int round = 0; round < 60 && built < 12; ++round) {
            std::vector<int> f(3);
            for (auto& x : f)
                x = static_cast<int>(rng() % 3);
            auto b = unary({"x0", "x1", "x2"}, f);
            int root = static_cast<int>(rng() % 3);
            std::set<int> orbit{root};
            for (int v = root; orbit.insert(f[static_cast<std::size_t>(v)]).second;)
                v = f[static_cast<std::size_t>(v)];
            if (orbit.size() > 2)
                continue;
            std::vector<std::string> keep;
            for (int v : orbit)
                keep.push_back("x" + std::to_string(v));
            auto a = induced_substructure(b, keep);
            auto r = unary_ramsey(a, b);
            ++built;
            for (const auto& m : r.copies)
                CHECK(oracle::satisfies(b, r.c, m, MorphismKind::embedding));
            auto report = verify_arrow(r.c, a, b, 2, {});
            CHECK(report.verdict == ArrowVerdict::proved);
            if (report.a_copies.size() <= 14)
                CHECK_FALSE(arrow_fails_by_listing(r.c, a, b, 2));
        }
        CHECK(built >= 6);
    }

    TEST_CASE("unary construction preconditions")
    {
        auto a = unary({"p"}, {0});
        auto b = unary({"x", "y"}, {0, 1});
        StructureBuilder partial(unary_language());
        partial.tuple(0, {partial.vertex("p"), partial.vertex("p")});
        CHECK_THROWS_AS(unary_ramsey(partial.build(), b), PreconditionError);
        auto four = unary({"a", "b", "c", "d"}, {1, 1, 3, 3});
        auto pair = unary({"a", "b"}, {1, 1});
        CHECK_THROWS_AS(unary_ramsey(pair, four), PreconditionError);
        CHECK_THROWS_AS(unary_ramsey(fx::complete_graph(1), fx::complete_graph(2)), PreconditionError);
        CHECK_THROWS_AS(unary_ramsey(a, fx::ordered_complete(2)), LanguageMismatch);
        CHECK_THROWS_AS(unary_ramsey(a, b, 3, 5), CapExceeded);
        CHECK_NOTHROW(unary_ramsey(pair, four, 8));
    }

    TEST_CASE("arrow on a triangle and a path")
    {
        auto k1 = fx::complete_graph(1);
        auto k2 = fx::complete_graph(2);
        auto proved = verify_arrow(fx::complete_graph(3), k1, k2, 2, {});
        CHECK(proved.verdict == ArrowVerdict::proved);
        CHECK(proved.exhaustive);
        CHECK(proved.a_copies.size() == 3);
        CHECK(proved.b_copies == 3);
        CHECK(verify_arrow(fx::ordered_complete(3), fx::ordered_complete(1), fx::ordered_complete(2), 2, {}).verdict
            == ArrowVerdict::proved);

        auto p3 = fx::path_graph(3);
        auto refuted = verify_arrow(p3, k1, k2, 2, {});
        REQUIRE(refuted.verdict == ArrowVerdict::refuted);
        REQUIRE(refuted.colouring.has_value());
        const auto& col = *refuted.colouring;
        CHECK(col[1] != col[0]);
        CHECK(col[1] != col[2]);
        CHECK(refutes_arrow(p3, k1, k2, 2, col));
        CHECK_FALSE(refutes_arrow(p3, k1, k2, 2, {0, 0, 1}));
        CHECK_FALSE(refutes_arrow(p3, k1, k2, 2, {0, 1}));
        CHECK_FALSE(refutes_arrow(p3, k1, k2, 2, {0, 2, 0}));
        auto j = to_json(refuted, p3);
        CHECK(j["verdict"] == "refuted");
        CHECK(j["certificate"]["colouring"].size() == 3);
    }

    TEST_CASE("arrow verdicts agree with listing colourings")
    {
        std::mt19937_64 rng(3);
        for (int round = 0; round < 40; ++round) {
            auto c = go::random_graph(rng, 4 + static_cast<int>(rng() % 3), 0.6);
            const bool edges = rng() % 2;
            auto a = fx::complete_graph(edges ? 2 : 1);
            auto b = fx::complete_graph(edges ? 3 : 2);
            auto report = verify_arrow(c, a, b, 2, {});
            CHECK(report.exhaustive);
            const bool fails = arrow_fails_by_listing(c, a, b, 2);
            CHECK((report.verdict == ArrowVerdict::refuted) == fails);
            CHECK((report.verdict == ArrowVerdict::proved) == ! fails);
            if (report.colouring)
                CHECK(refutes_arrow(c, a, b, 2, *report.colouring));
        }
    }

    TEST_CASE("sampled arrows only refute and repeat under a seed")
    {
        auto k1 = fx::complete_graph(1);
        auto k2 = fx::complete_graph(2);
        auto mode = parse_arrow_mode("sampled:200", 42);
        CHECK_FALSE(mode.exhaustive);
        CHECK(mode.samples == 200);
        CHECK(verify_arrow(fx::complete_graph(3), k1, k2, 2, mode).verdict == ArrowVerdict::inconclusive);
        auto first = verify_arrow(fx::cycle_graph(6), k1, k2, 2, mode);
        auto second = verify_arrow(fx::cycle_graph(6), k1, k2, 2, mode);
        CHECK(first.verdict == ArrowVerdict::refuted);
        CHECK(first.colouring == second.colouring);
        CHECK(first.colourings_examined == second.colourings_examined);
        CHECK_THROWS_AS(parse_arrow_mode("sampled:", 0), PreconditionError);
        CHECK_THROWS_AS(parse_arrow_mode("all", 0), PreconditionError);
        CHECK(verify_arrow(k1, k1, k2, 2, {}).verdict == ArrowVerdict::refuted);
        CHECK(verify_arrow(k2, k2, k2, 3, {}).verdict == ArrowVerdict::proved);
    }

    TEST_CASE("admissible reorder puts loops first")
    {
        Language lang({{"<=", 2}, {"E", 2}}, "<=");
        auto digraph = [&](const std::vector<std::string>& order, const std::vector<std::pair<std::string, std::string>>& arcs) {
            StructureBuilder b(lang);
            for (std::size_t i = 0; i < order.size(); ++i)
                for (std::size_t j = i; j < order.size(); ++j)
                    b.tuple(0, {b.vertex(order[i]), b.vertex(order[j])});
            for (const auto& [x, y] : arcs)
                b.tuple(1, {b.vertex(x), b.vertex(y)});
            return b.build();
        };
        auto c = digraph({"a", "b", "c", "d"}, {{"b", "b"}, {"d", "d"}, {"a", "b"}, {"c", "d"}});
        auto b = digraph({"x", "y"}, {{"y", "y"}});
        CHECK(vertex_type(c, c.index_of("b")) == "E");
        CHECK(vertex_type(c, c.index_of("a")).empty());
        CHECK_THROWS_AS(admissible_reorder(c, b, {"E", ""}), PreconditionError);
        CHECK(admissible_reorder(c, b, {}) == c);
        auto loops_first = digraph({"y", "x"}, {{"y", "y"}});
        auto r = admissible_reorder(c, loops_first, {"E", ""});
        CHECK(order_is_linear(r));
        auto rank = [&](const std::string& v) {
            int below = 0;
            for (const auto& t : r.tuples(0))
                below += t[1] == r.index_of(v) && t[0] != t[1];
            return below;
        };
        CHECK(rank("b") == 0);
        CHECK(rank("d") == 1);
        CHECK(rank("a") == 2);
        CHECK(rank("c") == 3);
        CHECK(copies_of(loops_first, r).size() >= copies_of(loops_first, c).size());
        CHECK(r.tuples(1) == c.tuples(1));
    }

    TEST_CASE("distance lifts")
    {
        auto p4 = distance_lift_fixture(fx::path_graph(4), 5);
        std::set<std::pair<std::string, std::string>> dist2;
        for (const auto& t : p4.tuples("dist:2"))
            dist2.emplace(p4.name(t[0]), p4.name(t[1]));
        CHECK(dist2 == std::set<std::pair<std::string, std::string>>{
                  {"v0", "v2"}, {"v2", "v0"}, {"v1", "v3"}, {"v3", "v1"}});
        CHECK(distance_lift_fixture(fx::complete_graph(2), 5).tuples("dist:2").empty());
        CHECK(order_is_linear(p4));
        CHECK_THROWS_AS(distance_lift_fixture(fx::cycle_graph(5), 5), PreconditionError);
        CHECK_THROWS_AS(distance_lift_fixture(fx::complete_graph(3), 7), PreconditionError);
        CHECK_THROWS_AS(distance_lift_fixture(fx::path_graph(3), 4), PreconditionError);
        CHECK(distance_lift_language(9).size() == 5);
        auto reversed = distance_lift_fixture(fx::path_graph(3), 5, {2, 1, 0});
        CHECK(reversed.has(0, {2, 0}));
        CHECK_FALSE(reversed.has(0, {0, 2}));
    }

    TEST_CASE("distance lifts match graph distances and the canonical lift")
    {
        auto classes = piece_equivalence_classes({fx::cycle_graph(5)});
        REQUIRE(classes.classes.size() == 2);
        std::mt19937_64 rng(9);
        for (int round = 0; round < 30; ++round) {
            const int l = round % 2 ? 7 : 5;
            auto g = go::random_graph(rng, 2 + static_cast<int>(rng() % 7), 0.3);
            if (go::has_short_odd_closed_walk(g, l))
                continue;
            auto lift = distance_lift_fixture(g, l);
            auto d = go::distances(g);
            for (int i = 2; i <= (l - 1) / 2; ++i) {
                std::set<Tuple> want;
                for (std::size_t x = 0; x < g.size(); ++x)
                    for (std::size_t y = 0; y < g.size(); ++y)
                        if (d[x][y] == i)
                            want.insert({static_cast<int>(x), static_cast<int>(y)});
                const auto& got = lift.tuples("dist:" + std::to_string(i));
                CHECK(std::set<Tuple>(got.begin(), got.end()) == want);
                if (l == 5)
                    CHECK(canonical_lift(g, classes).ext[0] == want);
            }
        }
    }

    TEST_CASE("amalgams of distance lifts over an edge are strong")
    {
        std::mt19937_64 rng(21);
        int done = 0;
        while (done < 20) {
            auto g1 = go::random_c5_free(rng, 3 + static_cast<int>(rng() % 4));
            auto g2 = go::random_c5_free(rng, 3 + static_cast<int>(rng() % 4));
            if (g1.tuples(0).empty() || g2.tuples(0).empty())
                continue;
            auto on_edge = [](const Structure& g, const std::string& prefix) {
                const auto& e = g.tuples(0).front();
                return relabel(g, [&](const std::string& v) {
                    if (v == g.name(e[0]))
                        return std::string("s0");
                    if (v == g.name(e[1]))
                        return std::string("s1");
                    return prefix + v;
                });
            };
            auto b1 = distance_lift_fixture(on_edge(g1, "a"), 5);
            auto b2 = distance_lift_fixture(on_edge(g2, "b"), 5);
            auto am = distance_lift_amalgam(b1, b2, 5);
            CHECK(am.strong);
            CHECK(am.c.size() == b1.size() + b2.size() - 2);
            auto shadow = drop_symbols(am.c, {"<=", "dist:2"});
            CHECK_FALSE(go::has_short_odd_closed_walk(shadow, 5));
            CHECK(order_is_linear(am.c));
            ++done;
        }
        auto x = distance_lift_fixture(fx::graph({"s0", "s1", "t"}, {{"s0", "t"}, {"t", "s1"}}), 5);
        auto y = distance_lift_fixture(fx::graph({"s0", "s1"}, {}), 5);
        CHECK_THROWS_AS(distance_lift_amalgam(x, y, 5), PreconditionError);
    }
}
