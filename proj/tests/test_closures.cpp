#include "fixtures.hpp"
#include "ramseyforge/closures.hpp"
#include "ramseyforge/errors.hpp"
#include "ramseyforge/rsf.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace rf;

namespace {

std::vector<int> subset_of(unsigned mask, std::size_t n)
{
    std::vector<int> out;
    for (std::size_t v = 0; v < n; ++v)
        if (mask & (1U << v))
            out.push_back(static_cast<int>(v));
    return out;
}

// Closure by definition: the unique least vertex set containing the seed
// whose induced substructure is U-closed.
std::vector<int> closure_oracle(const Structure& a, const ClosureDescription& u, const std::vector<int>& seed)
{
    unsigned seed_mask = 0;
    for (int v : seed)
        seed_mask |= 1U << v;
    unsigned best = (1U << a.size()) - 1;
    for (unsigned mask = 0; mask < (1U << a.size()); ++mask) {
        if ((mask & seed_mask) != seed_mask)
            continue;
        if (is_u_closed(induced_substructure(a, subset_of(mask, a.size())), u))
            best &= mask;
    }
    return subset_of(best, a.size());
}

// U-size by definition: smallest G with closure(G) = A.
std::size_t size_oracle(const Structure& a, const ClosureDescription& u)
{
    std::size_t best = a.size();
    for (unsigned mask = 0; mask < (1U << a.size()); ++mask) {
        auto g = subset_of(mask, a.size());
        if (g.size() < best && closure_oracle(a, u, g).size() == a.size())
            best = g.size();
    }
    return best;
}

} // namespace

TEST_SUITE("closures")
{
    TEST_CASE("out-degree")
    {
        auto a = fx::pointed({{"v", "u"}});
        CHECK(out_degree(a, "U", {a.index_of("u")}) == 1);
        CHECK(out_degree(a, "U", {a.index_of("v")}) == 0);
        Structure two(fx::pointed_language(), {"u", "v", "w"}, {{"U", {{"u", "v"}, {"u", "w"}}}});
        CHECK(out_degree(two, "U", {two.index_of("u")}) == 2);
    }

    TEST_CASE("U-closed")
    {
        auto u = fx::pointed_description();
        CHECK(is_u_closed(fx::pointed({{"v", "u"}}), u));
        Structure stripped(fx::pointed_language(), {"u", "v"}, {{"S", {{"v"}}}});
        CHECK_FALSE(is_u_closed(stripped, u));
        CHECK(is_u_closed(Structure(fx::pointed_language()), u));
        // A U-tuple leaving a special vertex does not start at a root.
        Structure bad(fx::pointed_language(), {"v", "w"}, {{"S", {{"v"}, {"w"}}}, {"U", {{"v", "w"}}}});
        auto viol = closed_violation(bad, u);
        REQUIRE(viol);
        CHECK_FALSE(viol->is_root);
    }

    TEST_CASE("U-semi-closed")
    {
        auto u = fx::pointed_description();
        CHECK(is_u_semi_closed(fx::pointed({{"v", "u", "w"}}), u));
        Structure stripped(fx::pointed_language(), {"u", "v"}, {{"S", {{"v"}}}});
        CHECK(is_u_semi_closed(stripped, u));
        Structure two(fx::pointed_language(), {"u", "v", "w"}, {{"S", {{"v"}, {"w"}}}, {"U", {{"u", "v"}, {"u", "w"}}}});
        CHECK_FALSE(is_u_semi_closed(two, u));
    }

    TEST_CASE("U-substructure")
    {
        auto u = fx::pointed_description();
        auto a = fx::pointed({{"v", "u"}});
        CHECK(is_u_substructure(a, {a.index_of("v")}, u));
        CHECK_FALSE(is_u_substructure(a, {a.index_of("u")}, u));
        CHECK(is_u_substructure(a, {0, 1}, u));
    }

    TEST_CASE("closure")
    {
        auto u = fx::pointed_description();
        auto a = fx::pointed({{"v", "u"}});
        CHECK(u_closure_vertices(a, u, {a.index_of("u")}) == std::vector<int>{0, 1});
        CHECK(u_closure_vertices(a, u, {a.index_of("v")}) == std::vector<int>{a.index_of("v")});
        CHECK(u_closure(a, u, {}).empty());
        Structure stripped(fx::pointed_language(), {"u", "v"}, {{"S", {{"v"}}}});
        CHECK_THROWS_AS(u_closure(stripped, u, {0}), PreconditionError);
    }

    TEST_CASE("U-size")
    {
        auto u = fx::pointed_description();
        CHECK(u_size(fx::pointed({{"v", "a", "b", "c"}}), u) == 3);
        CHECK(u_size(fx::pointed({{"v"}}), u) == 1);
        CHECK(u_size(Structure(fx::pointed_language()), u) == 0);
        StructureBuilder big(Language({{"F", 2}}));
        for (int i = 0; i < 25; ++i)
            big.tuple(0, {big.vertex("x" + std::to_string(i)), big.vertex("x" + std::to_string(i))});
        CHECK_THROWS_AS(u_size(big.build(), fx::function_description()), CapExceeded);
    }

    TEST_CASE("free amalgamation of U-closed structures")
    {
        auto u = fx::pointed_description();
        auto b1 = fx::pointed({{"v", "u"}});
        auto b2 = fx::pointed({{"w", "x"}});
        Structure empty(fx::pointed_language());
        CHECK(free_amalgam_preserves_closed(b1, b2, empty, {}, {}, u).closed);

        auto c1 = fx::pointed({{"v", "u"}});
        auto c2 = fx::pointed({{"v", "x"}});
        auto sp = fx::pointed({{"v"}});
        CHECK(free_amalgam_preserves_closed(c1, c2, sp, {c1.index_of("v")}, {c2.index_of("v")}, u).closed);

        // Over the non-special vertex alone: it acquires two U-successors.
        auto d1 = fx::pointed({{"v", "u"}});
        auto d2 = fx::pointed({{"w", "u"}});
        Structure lone(fx::pointed_language(), {"u"}, {});
        auto r = free_amalgam_preserves_closed(d1, d2, lone, {d1.index_of("u")}, {d2.index_of("u")}, u);
        CHECK_FALSE(r.closed);
        REQUIRE(r.violation);
        CHECK(r.violation->entry == 0);
        CHECK(r.violation->out_degree == 2);
    }

    TEST_CASE("description validation and JSON")
    {
        CHECK_THROWS_AS(ClosureDescription({{"U", Structure(Language())}}), PreconditionError);
        CHECK_THROWS_AS(ClosureDescription({{"U", Structure(Language(), {"1", "2"}, {})}}), PreconditionError);
        CHECK_THROWS_AS(ClosureDescription({{"U", Structure(Language(), {"a"}, {})}}), PreconditionError);
        auto u = fx::pointed_description();
        auto back = closure_description_from_json(parse_json_text(to_json(u).dump()));
        REQUIRE(back.size() == 1);
        CHECK(back.entries()[0].relation == "U");
        CHECK(back.entries()[0].root == u.entries()[0].root);
        CHECK_THROWS_AS(closure_description_from_json(parse_json_text(R"([{"relation":"U"}])")), FormatError);
    }

    TEST_CASE("closure agrees with the definition on random functions")
    {
        std::mt19937_64 rng(17);
        auto u = fx::function_description();
        for (int round = 0; round < 40; ++round) {
            int n = 1 + static_cast<int>(rng() % 8);
            auto a = fx::random_function(rng, n);
            REQUIRE(is_u_closed(a, u));
            for (int trial = 0; trial < 6; ++trial) {
                auto seed = subset_of(static_cast<unsigned>(rng() % (1U << n)), a.size());
                CHECK(u_closure_vertices(a, u, seed) == closure_oracle(a, u, seed));
            }
            if (n <= 6)
                CHECK(u_size(a, u) == size_oracle(a, u));
        }
    }

    TEST_CASE("closure operator laws")
    {
        std::mt19937_64 rng(23);
        auto u = fx::function_description();
        for (int round = 0; round < 60; ++round) {
            int n = 1 + static_cast<int>(rng() % 8);
            auto a = fx::random_function(rng, n);
            unsigned m1 = static_cast<unsigned>(rng() % (1U << n));
            unsigned m2 = m1 | static_cast<unsigned>(rng() % (1U << n));
            auto s1 = subset_of(m1, a.size());
            auto s2 = subset_of(m2, a.size());
            auto c1 = u_closure_vertices(a, u, s1);
            auto c2 = u_closure_vertices(a, u, s2);
            CHECK(std::includes(c1.begin(), c1.end(), s1.begin(), s1.end()));
            CHECK(std::includes(c2.begin(), c2.end(), c1.begin(), c1.end()));
            CHECK(u_closure_vertices(a, u, c1) == c1);

            // Unary roots: closure of a set is the union of singleton closures.
            std::vector<int> uni;
            for (int v : s2) {
                auto cv = u_closure_vertices(a, u, {v});
                uni.insert(uni.end(), cv.begin(), cv.end());
            }
            std::sort(uni.begin(), uni.end());
            uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
            CHECK(uni == c2);

            // U-substructures of a U-closed structure are exactly the closed ones.
            CHECK(is_u_substructure(a, s1, u) == is_u_closed(induced_substructure(a, s1), u));
            CHECK(is_u_closed(induced_substructure(a, c1), u));

            CHECK(u_size_within(a, s1, u) == u_size(induced_substructure(a, c1), u));
        }
    }

    TEST_CASE("pointed classes: closed substructures and amalgams")
    {
        std::mt19937_64 rng(29);
        auto u = fx::pointed_description();
        for (int round = 0; round < 40; ++round) {
            std::vector<std::vector<std::string>> classes;
            int k = 1 + static_cast<int>(rng() % 3);
            int next = 0;
            for (int c = 0; c < k; ++c) {
                std::vector<std::string> cls{"s" + std::to_string(c)};
                int members = static_cast<int>(rng() % 3);
                for (int i = 0; i < members; ++i)
                    cls.push_back("m" + std::to_string(next++));
                classes.push_back(cls);
            }
            auto a = fx::pointed(classes);
            REQUIRE(is_u_closed(a, u));
            // Each member generates its class; a lone special vertex generates itself.
            auto lone = std::count_if(classes.begin(), classes.end(), [](const auto& c) { return c.size() == 1; });
            CHECK(u_size(a, u) == static_cast<std::size_t>(next + lone));
            unsigned mask = static_cast<unsigned>(rng() % (1U << a.size()));
            auto sub = subset_of(mask, a.size());
            CHECK(is_u_substructure(a, sub, u) == is_u_closed(induced_substructure(a, sub), u));

            // Amalgamate a copy with a relabelled copy over a U-closed part.
            auto cl = u_closure_vertices(a, u, sub);
            auto base = induced_substructure(a, cl);
            auto b2 = relabel(a, [&](const std::string& s) {
                for (int v : cl)
                    if (a.name(v) == s)
                        return s;
                return "z" + s;
            });
            std::vector<int> alpha1, alpha2;
            for (const auto& name : base.vertices()) {
                alpha1.push_back(a.index_of(name));
                alpha2.push_back(b2.index_of(name));
            }
            CHECK(free_amalgam_preserves_closed(a, b2, base, alpha1, alpha2, u).closed);
        }
    }
}
