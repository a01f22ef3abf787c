#include "ramseyforge/closures.hpp"
#include "ramseyforge/completion.hpp"
#include "ramseyforge/errors.hpp"
#include "ramseyforge/metric.hpp"
#include "ramseyforge/pieces.hpp"
#include "ramseyforge/ramsey.hpp"
#include "ramseyforge/rsf.hpp"
#include "ramseyforge/structures.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rf;
using nlohmann::json;

namespace {

enum Exit { ok = 0, negative = 1, inconclusive = 2, usage = 3 };

struct Options {
    bool pretty = false;
    std::string out;
    std::optional<std::size_t> cap;
    std::uint64_t seed = 0;
    std::string klass;
    std::string mode = "exhaustive";
};

Options opt;

std::size_t cap_or(std::size_t fallback)
{
    if (opt.cap)
        return *opt.cap;
    if (const char* env = std::getenv("RAMSEYFORGE_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw PreconditionError(std::string("RAMSEYFORGE_CAP is not a number: '") + env + "'");
        }
    }
    return fallback;
}

std::string scalar_text(const json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

// Top-level keys as an aligned two-column table.
std::string table(const json& j)
{
    if (! j.is_object())
        return j.dump(2) + "\n";
    std::size_t width = 0;
    for (const auto& [k, v] : j.items())
        width = std::max(width, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : j.items())
        os << k << std::string(width - k.size() + 2, ' ') << scalar_text(v) << "\n";
    return os.str();
}

int emit(const json& j, int code)
{
    const std::string text = opt.pretty ? table(j) : j.dump() + "\n";
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(opt.out, text);
    }
    return code;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    if (! s.empty() && s.back() == ',')
        out.emplace_back();
    return out;
}

std::vector<int> indices(const Structure& s, const std::vector<std::string>& names)
{
    std::vector<int> out;
    for (const auto& n : names)
        out.push_back(s.index_of(n));
    std::sort(out.begin(), out.end());
    return out;
}

json names_of(const Structure& s, const std::vector<int>& vs)
{
    json out = json::array();
    for (int v : vs)
        out.push_back(s.name(v));
    return out;
}

json violation_json(const std::optional<ClosureViolation>& v, const Structure& a)
{
    if (! v)
        return nullptr;
    return {{"entry", v->entry}, {"prefix", names_of(a, v->prefix)}, {"out_degree", v->out_degree},
        {"root", v->is_root}, {"message", v->message}};
}

template <std::size_t N>
json rationals(const std::array<Rational, N>& xs)
{
    json out = json::array();
    for (const auto& x : xs)
        out.push_back(format_rational(x));
    return out;
}

json rationals(const std::vector<Rational>& xs)
{
    json out = json::array();
    for (const auto& x : xs)
        out.push_back(format_rational(x));
    return out;
}

json sgraph_json(const SGraph& g)
{
    json d = json::array();
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (auto x = g.at(static_cast<int>(u), static_cast<int>(v)))
                d.push_back({g.vertices[u], g.vertices[v], format_rational(*x)});
    return {{"vertices", g.vertices}, {"distances", d}};
}

json lift_json(const LiftedStructure& x, const PieceClasses& classes)
{
    return {{"structure", to_rsf_json(lifted_to_structure(x))}, {"classes", classes_sidecar(classes)}};
}

PieceClasses classes_from(const std::string& family_path)
{
    return piece_equivalence_classes(family_from_json(read_json_file(family_path)));
}

struct Cli {
    CLI::App app{"ramseyforge: structural Ramsey toolkit"};
    std::function<int()> action;

    CLI::App* command(CLI::App* parent, const std::string& name, const std::string& help)
    {
        auto* c = parent->add_subcommand(name, help);
        c->fallthrough();
        return c;
    }

    void on(CLI::App* c, std::function<int()> f)
    {
        c->callback([this, f] { action = f; });
    }
};

// Inputs and flags are captured by reference; they live in main's stack frame
// through the callbacks below.
struct Args {
    std::string a, b, c, d, e, f;
    std::string kind = "embedding";
    std::string vertices;
    int k = 2, t = 2, n = 0, l = 5, size = 3;
    std::string spec;
};

void add_morph(Cli& cli, Args& x)
{
    auto* morph = cli.command(&cli.app, "morph", "homomorphism search");
    morph->require_subcommand(1);

    auto* en = cli.command(morph, "enumerate", "list every morphism A -> B");
    en->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    en->add_option("B", x.b)->required()->check(CLI::ExistingFile);
    en->add_option("--kind", x.kind, "homomorphism, monomorphism, embedding or homomorphism-embedding");
    cli.on(en, [&x] {
        auto a = read_rsf_file(x.a);
        auto b = read_rsf_file(x.b);
        const std::size_t cap = cap_or(100000);
        json maps = json::array();
        bool truncated = false;
        search_morphisms(a, b, parse_morphism_kind(x.kind), {}, [&](const std::vector<int>& m) {
            if (maps.size() == cap) {
                truncated = true;
                return false;
            }
            maps.push_back(map_to_json(a, b, m));
            return true;
        });
        return emit({{"kind", x.kind}, {"count", maps.size()}, {"truncated", truncated}, {"morphisms", maps}},
            truncated ? inconclusive : ok);
    });

    auto* fd = cli.command(morph, "find", "find one morphism A -> B");
    fd->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    fd->add_option("B", x.b)->required()->check(CLI::ExistingFile);
    fd->add_option("--kind", x.kind, "homomorphism, monomorphism, embedding or homomorphism-embedding");
    cli.on(fd, [&x] {
        auto a = read_rsf_file(x.a);
        auto b = read_rsf_file(x.b);
        auto m = find_morphism(a, b, parse_morphism_kind(x.kind));
        return emit({{"kind", x.kind}, {"found", m.has_value()}, {"map", m ? map_to_json(a, b, m->map) : json()}},
            m ? ok : negative);
    });

    auto* vf = cli.command(morph, "verify", "check a vertex map given as a JSON object");
    vf->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    vf->add_option("B", x.b)->required()->check(CLI::ExistingFile);
    vf->add_option("MAP", x.c)->required()->check(CLI::ExistingFile);
    vf->add_option("--kind", x.kind, "homomorphism, monomorphism, embedding or homomorphism-embedding");
    cli.on(vf, [&x] {
        auto a = read_rsf_file(x.a);
        auto b = read_rsf_file(x.b);
        auto j = read_json_file(x.c);
        if (j.contains("map"))
            j = j["map"];
        if (! j.is_object())
            throw FormatError(x.c + ": expected an object of vertex names");
        std::map<std::string, std::string> m;
        for (const auto& [k, v] : j.items()) {
            if (! v.is_string())
                throw FormatError(x.c + ": image of " + k + " is not a vertex name");
            m[k] = v.get<std::string>();
        }
        bool valid = verify_morphism(a, b, m, parse_morphism_kind(x.kind));
        return emit({{"kind", x.kind}, {"valid", valid}}, valid ? ok : negative);
    });
}

void add_amalg(Cli& cli, Args& x)
{
    auto* am = cli.command(&cli.app, "amalg", "free amalgamation over the shared vertex names");
    am->add_option("B1", x.a)->required()->check(CLI::ExistingFile);
    am->add_option("B2", x.b)->required()->check(CLI::ExistingFile);
    am->add_option("--closures", x.c, "closure description; reports whether the amalgam is U-closed")
        ->check(CLI::ExistingFile);
    cli.on(am, [&x] {
        auto b1 = read_rsf_file(x.a);
        auto b2 = read_rsf_file(x.b);
        auto r = free_amalgamation_over_common(b1, b2);
        json j{{"amalgam", to_rsf_json(r.result)}, {"beta1", map_to_json(b1, r.result, r.beta1)},
            {"beta2", map_to_json(b2, r.result, r.beta2)}};
        if (x.c.empty())
            return emit(j, ok);
        auto u = read_closure_description(x.c);
        auto v = closed_violation(r.result, u);
        j["closed"] = ! v.has_value();
        j["violation"] = violation_json(v, r.result);
        return emit(j, v ? negative : ok);
    });
}

void add_closure(Cli& cli, Args& x)
{
    auto* cl = cli.command(&cli.app, "closure", "closure descriptions");
    cl->require_subcommand(1);

    auto* check = cli.command(cl, "check", "U-closed and U-semi-closed tests");
    check->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    check->add_option("U", x.b)->required()->check(CLI::ExistingFile);
    cli.on(check, [&x] {
        auto a = read_rsf_file(x.a);
        auto u = read_closure_description(x.b);
        auto closed = closed_violation(a, u);
        auto semi = semi_closed_violation(a, u);
        return emit({{"closed", ! closed}, {"semi_closed", ! semi}, {"violation", violation_json(closed, a)}},
            closed ? negative : ok);
    });

    auto* of = cli.command(cl, "of", "U-closure of a vertex set");
    of->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    of->add_option("U", x.b)->required()->check(CLI::ExistingFile);
    of->add_option("--vertices", x.vertices, "comma separated vertex names")->required();
    cli.on(of, [&x] {
        auto a = read_rsf_file(x.a);
        auto u = read_closure_description(x.b);
        auto seed = indices(a, split_list(x.vertices));
        auto c = u_closure_vertices(a, u, seed);
        return emit({{"vertices", names_of(a, c)}, {"structure", to_rsf_json(induced_substructure(a, c))}}, ok);
    });

    auto* size = cli.command(cl, "size", "U-size of A");
    size->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    size->add_option("U", x.b)->required()->check(CLI::ExistingFile);
    cli.on(size, [&x] {
        auto a = read_rsf_file(x.a);
        auto u = read_closure_description(x.b);
        return emit({{"u_size", u_size(a, u, cap_or(20))}}, ok);
    });
}

void add_complete(Cli& cli, Args& x)
{
    auto* co = cli.command(&cli.app, "complete", "completions in a class (--class posets|metric:<S>|forbidden:<file>)");
    co->require_subcommand(1);
    auto plugin = [] {
        if (opt.klass.empty())
            throw PreconditionError("--class is required");
        return make_plugin(opt.klass);
    };

    auto* run = cli.command(co, "run", "strong completion or an obstacle");
    run->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    cli.on(run, [&x, plugin] {
        auto a = read_rsf_file(x.a);
        auto p = plugin();
        auto r = complete_with(a, *p);
        auto j = to_json(r, a);
        j["class"] = p->name();
        return emit(j, r.completed ? ok : negative);
    });

    auto* obstacles = cli.command(co, "obstacles", "minimal structures without a strong completion");
    obstacles->add_option("-n,--size", x.size, "largest vertex count")->check(CLI::Range(1, 6));
    cli.on(obstacles, [&x, plugin] {
        auto p = plugin();
        json list = json::array();
        for (const auto& s : obstacles_up_to(*p, x.size))
            list.push_back(to_rsf_json(s));
        return emit({{"class", p->name()}, {"count", list.size()}, {"obstacles", list}}, ok);
    });

    auto* iff = cli.command(co, "iff", "completion versus strong completion on small structures");
    iff->add_option("-n,--size", x.size, "largest vertex count")->check(CLI::Range(1, 5));
    cli.on(iff, [&x, plugin] {
        auto p = plugin();
        auto r = completion_iff_strong(*p, x.size);
        json v = json::array();
        for (const auto& bad : r.violations)
            v.push_back({{"structure", to_rsf_json(bad.structure)}, {"completes", bad.completes},
                {"strongly_completes", bad.strongly_completes}});
        return emit({{"class", p->name()}, {"checked", r.checked}, {"violations", v}}, v.empty() ? ok : negative);
    });

    auto* probe = cli.command(co, "probe", "structures over C0 whose small parts complete");
    probe->add_option("C0", x.a)->required()->check(CLI::ExistingFile);
    probe->add_option("-j", x.n, "substructure size that must complete")->required();
    probe->add_option("-n,--size", x.size, "largest structure probed");
    cli.on(probe, [&x, plugin] {
        auto c0 = read_rsf_file(x.a);
        auto p = plugin();
        auto r = probe_local_finiteness(*p, c0, x.n, static_cast<std::size_t>(x.size), cap_or(200000));
        const int code = ! r.counterexamples.empty() ? negative : r.inconclusive ? inconclusive : ok;
        return emit(to_json(r, c0), code);
    });
}

void add_metric(Cli& cli, Args& x)
{
    auto* me = cli.command(&cli.app, "metric", "S-metric spaces (S as a JSON file or a list like 1,2,3/2)");
    me->require_subcommand(1);

    auto* fv = cli.command(me, "four-values", "the 4-values condition");
    fv->add_option("S", x.a)->required();
    cli.on(fv, [&x] {
        auto s = read_distance_set(x.a);
        auto r = four_values(s);
        json j{{"S", to_json(s)["distances"]}, {"holds", r.holds}};
        if (r.witness)
            j["witness"] = rationals(*r.witness);
        return emit(j, r.holds ? ok : negative);
    });

    auto* as = cli.command(me, "associative", "associativity of the truncated sum");
    as->add_option("S", x.a)->required();
    cli.on(as, [&x] {
        auto s = read_distance_set(x.a);
        auto r = is_associative(s);
        json j{{"S", to_json(s)["distances"]}, {"holds", r.holds}};
        if (r.witness)
            j["witness"] = rationals(*r.witness);
        return emit(j, r.holds ? ok : negative);
    });

    auto* bl = cli.command(me, "blocks", "jump numbers and blocks");
    bl->add_option("S", x.a)->required();
    cli.on(bl, [&x] {
        auto s = read_distance_set(x.a);
        json list = json::array();
        for (const auto& b : blocks(s))
            list.push_back(to_json(b)["distances"]);
        return emit({{"jump_numbers", rationals(jump_numbers(s))}, {"jump_free", is_jump_free(s)}, {"blocks", list}},
            ok);
    });

    auto* cm = cli.command(me, "complete", "shortest S-length completion of an S-graph");
    cm->add_option("G", x.a)->required()->check(CLI::ExistingFile);
    cm->add_option("S", x.b)->required();
    cli.on(cm, [&x] {
        auto s = read_distance_set(x.b);
        auto g = sgraph_from_structure(read_rsf_file(x.a), s);
        auto r = complete_metric_graph(g, s);
        json j{{"completed", r.completed}};
        if (r.completed) {
            j["result"] = sgraph_json(r.result);
            j["structure"] = to_rsf_json(to_structure(r.result, s));
        } else {
            j["violated"] = {g.vertices[static_cast<std::size_t>(r.violated->first)],
                g.vertices[static_cast<std::size_t>(r.violated->second)]};
            json path = json::array();
            for (int v : r.path)
                path.push_back(g.vertices[static_cast<std::size_t>(v)]);
            j["path"] = path;
            j["path_length"] = format_rational(r.path_length);
        }
        return emit(j, r.completed ? ok : negative);
    });

    auto* cy = cli.command(me, "cycle", "a non-metric cycle of an S-graph");
    cy->add_option("G", x.a)->required()->check(CLI::ExistingFile);
    cy->add_option("S", x.b)->required();
    cli.on(cy, [&x] {
        auto s = read_distance_set(x.b);
        auto g = sgraph_from_structure(read_rsf_file(x.a), s);
        auto r = non_metric_cycle_scan(g, s);
        if (! r)
            return emit({{"found", false}}, ok);
        json vs = json::array();
        for (int v : r->cycle.vertices)
            vs.push_back(g.vertices[static_cast<std::size_t>(v)]);
        json j{{"found", true}, {"vertices", vs}, {"path", rationals(r->cycle.path)},
            {"closing", format_rational(r->cycle.closing)}};
        if (r->reduction)
            j["reduced_vertices"] = r->reduction->reduced_vertices;
        return emit(j, negative);
    });
}

void add_pieces(Cli& cli, Args& x)
{
    auto* pc = cli.command(&cli.app, "pieces", "separating cuts, pieces and piece classes");
    pc->require_subcommand(1);

    auto* cuts = cli.command(pc, "cuts", "minimal separating cuts");
    cuts->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    cli.on(cuts, [&x] {
        auto a = read_rsf_file(x.a);
        json list = json::array();
        for (const auto& c : minimal_separating_cuts(a)) {
            json comps = json::array();
            for (const auto& comp : c.full_components)
                comps.push_back(names_of(a, comp));
            list.push_back({{"cut", names_of(a, c.cut)}, {"full_components", comps}});
        }
        return emit({{"count", list.size()}, {"cuts", list}}, ok);
    });

    auto* ls = cli.command(pc, "list", "pieces up to rooted isomorphism");
    ls->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    cli.on(ls, [&x] {
        auto a = read_rsf_file(x.a);
        json list = json::array();
        for (const auto& p : pieces(a))
            list.push_back(to_rsf_json(p.rooted()));
        return emit({{"count", list.size()}, {"pieces", list}}, ok);
    });

    auto* cls = cli.command(pc, "classes", "piece equivalence classes of a family (--class <i> selects one)");
    cls->add_option("F", x.a, "JSON array of RSF structures")->required()->check(CLI::ExistingFile);
    cli.on(cls, [&x] {
        auto classes = classes_from(x.a);
        auto sidecar = classes_sidecar(classes);
        if (opt.klass.empty())
            return emit({{"count", classes.classes.size()}, {"classes", sidecar}}, ok);
        std::size_t i = 0;
        try {
            i = std::stoul(opt.klass);
        } catch (const std::exception&) {
            throw PreconditionError("--class must be a class index");
        }
        if (i >= classes.classes.size())
            throw PreconditionError("class index out of range");
        const auto& pcl = classes.classes[i];
        json members = json::array();
        for (auto m : pcl.members)
            members.push_back(to_rsf_json(classes.pieces[m].rooted()));
        json incompatible = json::array();
        for (auto c : pcl.incompatible)
            incompatible.push_back(to_rsf_json(classes.complements[c]));
        return emit({{"class", i}, {"width", pcl.width}, {"members", members}, {"incompatible", incompatible}}, ok);
    });
}

void add_lift(Cli& cli, Args& x)
{
    auto* li = cli.command(&cli.app, "lift", "canonical, maximal and distance lifts");
    li->require_subcommand(1);

    auto* can = cli.command(li, "canonical", "canonical lift of A for the family F");
    can->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    can->add_option("F", x.b)->required()->check(CLI::ExistingFile);
    cli.on(can, [&x] {
        auto a = read_rsf_file(x.a);
        auto classes = classes_from(x.b);
        return emit(lift_json(canonical_lift(a, classes), classes), ok);
    });

    auto* mx = cli.command(li, "maximal", "maximal lift by gluing pieces (--cap bounds added vertices)");
    mx->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    mx->add_option("F", x.b)->required()->check(CLI::ExistingFile);
    cli.on(mx, [&x] {
        auto a = read_rsf_file(x.a);
        auto classes = classes_from(x.b);
        std::optional<std::size_t> cap;
        if (opt.cap || std::getenv("RAMSEYFORGE_CAP"))
            cap = cap_or(0);
        auto r = maximal_lift(a, classes, cap);
        auto j = lift_json(r.lift, classes);
        j["witness"] = to_rsf_json(r.witness);
        j["added_vertices"] = r.added_vertices;
        j["inconclusive"] = r.inconclusive;
        return emit(j, r.inconclusive ? inconclusive : ok);
    });

    auto* forb = cli.command(li, "forb", "membership in Forb(F)");
    forb->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    forb->add_option("F", x.b)->required()->check(CLI::ExistingFile);
    cli.on(forb, [&x] {
        auto a = read_rsf_file(x.a);
        auto family = family_from_json(read_json_file(x.b));
        auto r = forb_membership(a, family);
        json j{{"member", r.member}};
        if (r.forbidden) {
            j["forbidden"] = *r.forbidden;
            j["map"] = map_to_json(family[*r.forbidden], a, r.witness->map);
        }
        return emit(j, r.member ? ok : negative);
    });

    auto* am = cli.command(li, "amalgam", "amalgamate witnesses W_X, W_Y of lifted X, Y over Z");
    const std::vector<std::pair<std::string, std::string*>> inputs{
        {"X", &x.a}, {"Y", &x.b}, {"Z", &x.c}, {"WX", &x.d}, {"WY", &x.e}, {"F", &x.f}};
    for (const auto& [name, target] : inputs)
        am->add_option(name, *target)->required()->check(CLI::ExistingFile);
    cli.on(am, [&x] {
        auto classes = classes_from(x.f);
        auto r = witness_amalgam(lifted_from_structure(read_rsf_file(x.a)), lifted_from_structure(read_rsf_file(x.b)),
            lifted_from_structure(read_rsf_file(x.c)), read_rsf_file(x.d), read_rsf_file(x.e), classes);
        const bool good = r.membership.member && r.restricts_to_x && r.restricts_to_y;
        return emit({{"amalgam", to_rsf_json(r.amalgam)}, {"in_forb", r.membership.member},
                        {"restricts_to_x", r.restricts_to_x}, {"restricts_to_y", r.restricts_to_y}},
            good ? ok : negative);
    });

    auto* dl = cli.command(li, "distance", "distance lift of a graph without odd cycles up to length l");
    dl->add_option("G", x.a)->required()->check(CLI::ExistingFile);
    dl->add_option("-l", x.l, "odd cycle length")->required();
    cli.on(dl, [&x] { return emit({{"structure", to_rsf_json(distance_lift_fixture(read_rsf_file(x.a), x.l))}}, ok); });
}

void add_ramsey(Cli& cli, Args& x)
{
    auto* ra = cli.command(&cli.app, "ramsey", "Ramsey constructions and arrow verification");
    ra->require_subcommand(1);

    auto* hj = cli.command(ra, "hj", "Hales-Jewett number by exhaustive search (--cap bounds colourings)");
    hj->add_option("-t", x.t, "alphabet size")->required()->check(CLI::PositiveNumber);
    hj->add_option("-k", x.k, "colours")->check(CLI::PositiveNumber);
    cli.on(hj, [&x] {
        auto r = hales_jewett_N(x.t, x.k, cap_or(exhaustive_cap));
        json j{{"t", x.t}, {"k", x.k}, {"lower_bound", r.lower_bound}, {"inconclusive", r.inconclusive}};
        j["N"] = r.n ? json(*r.n) : json();
        return emit(j, r.n ? ok : inconclusive);
    });

    auto* ar = cli.command(ra, "arrow", "decide C -> (B)^A_k (--mode exhaustive|sampled:<n>, --seed)");
    ar->add_option("C", x.a)->required()->check(CLI::ExistingFile);
    ar->add_option("A", x.b)->required()->check(CLI::ExistingFile);
    ar->add_option("B", x.c)->required()->check(CLI::ExistingFile);
    ar->add_option("-k", x.k, "colours")->check(CLI::PositiveNumber);
    cli.on(ar, [&x] {
        auto c = read_rsf_file(x.a);
        auto r = verify_arrow(c, read_rsf_file(x.b), read_rsf_file(x.c), x.k, parse_arrow_mode(opt.mode, opt.seed));
        const int code = r.verdict == ArrowVerdict::proved ? ok : r.verdict == ArrowVerdict::refuted ? negative : inconclusive;
        auto j = to_json(r, c);
        j["k"] = x.k;
        return emit(j, code);
    });

    auto* cert = cli.command(ra, "check", "re-check an arrow refutation certificate");
    cert->add_option("C", x.a)->required()->check(CLI::ExistingFile);
    cert->add_option("A", x.b)->required()->check(CLI::ExistingFile);
    cert->add_option("B", x.c)->required()->check(CLI::ExistingFile);
    cert->add_option("REPORT", x.d, "output of `ramsey arrow`")->required()->check(CLI::ExistingFile);
    cert->add_option("-k", x.k, "colours")->check(CLI::PositiveNumber);
    cli.on(cert, [&x] {
        auto c = read_rsf_file(x.a);
        auto a = read_rsf_file(x.b);
        auto b = read_rsf_file(x.c);
        auto j = read_json_file(x.d);
        if (! j.contains("certificate"))
            throw FormatError(x.d + ": no certificate");
        const auto& copies = j["certificate"]["copies"];
        auto colours = j["certificate"]["colouring"].get<std::vector<int>>();
        // Colours are keyed by the listed copies; re-index them to the canonical copy order.
        std::map<std::vector<int>, int> by_copy;
        for (std::size_t i = 0; i < copies.size() && i < colours.size(); ++i)
            by_copy[indices(c, copies[i].get<std::vector<std::string>>())] = colours[i];
        std::vector<int> colouring;
        for (const auto& cp : copies_of(a, c)) {
            auto it = by_copy.find(cp.vertices);
            if (it == by_copy.end())
                throw FormatError(x.d + ": certificate misses a copy of A");
            colouring.push_back(it->second);
        }
        const bool refutes = refutes_arrow(c, a, b, x.k, colouring);
        return emit({{"refutes", refutes}}, refutes ? negative : ok);
    });

    auto* pz = cli.command(ra, "picture", "picture zero of B over C0");
    pz->add_option("B", x.a)->required()->check(CLI::ExistingFile);
    pz->add_option("C0", x.b)->required()->check(CLI::ExistingFile);
    cli.on(pz, [&x] { return emit(to_json(picture_zero(read_rsf_file(x.a), read_rsf_file(x.b))), ok); });

    auto* pcn = cli.command(ra, "construct", "partite construction over C0 (--cap is the size guard)");
    pcn->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    pcn->add_option("B", x.b)->required()->check(CLI::ExistingFile);
    pcn->add_option("C0", x.c)->required()->check(CLI::ExistingFile);
    pcn->add_option("--closures", x.d, "closure description U")->check(CLI::ExistingFile);
    cli.on(pcn, [&x] {
        ClosureDescription u;
        if (! x.d.empty())
            u = read_closure_description(x.d);
        auto r = partite_construction(read_rsf_file(x.a), read_rsf_file(x.b), read_rsf_file(x.c), u,
            cap_or(default_size_guard));
        auto j = to_json(r.c);
        j["picture_sizes"] = r.picture_sizes;
        j["hales_jewett"] = r.hales_jewett;
        return emit(j, ok);
    });

    auto* un = cli.command(ra, "unary", "Ramsey structure for ordered unary functions (--cap is the size guard)");
    un->add_option("A", x.a)->required()->check(CLI::ExistingFile);
    un->add_option("B", x.b)->required()->check(CLI::ExistingFile);
    un->add_option("-n", x.n, "N with N -> (|B|)^|A|_2, when not built in")->check(CLI::PositiveNumber);
    cli.on(un, [&x] {
        std::optional<int> n;
        if (x.n > 0)
            n = x.n;
        auto b = read_rsf_file(x.b);
        auto r = unary_ramsey(read_rsf_file(x.a), b, n, cap_or(default_size_guard));
        json copies = json::array();
        for (const auto& m : r.copies)
            copies.push_back(map_to_json(b, r.c, m));
        return emit({{"N", r.n}, {"structure", to_rsf_json(r.c)}, {"copies", copies}}, ok);
    });

    auto* ro = cli.command(ra, "reorder", "reorder C by one-vertex types");
    ro->add_option("C", x.a)->required()->check(CLI::ExistingFile);
    ro->add_option("B", x.b)->required()->check(CLI::ExistingFile);
    ro->add_option("--spec", x.spec, "comma separated type keys, e.g. 'E,' for loops first")->required();
    cli.on(ro, [&x] {
        auto r = admissible_reorder(read_rsf_file(x.a), read_rsf_file(x.b), split_list(x.spec));
        return emit({{"structure", to_rsf_json(r)}}, ok);
    });
}

int report_error(const std::string& kind, const std::string& what, int code)
{
    std::cerr << "ramseyforge: " << what << "\n";
    if (code == inconclusive)
        emit({{"status", "inconclusive"}, {"reason", kind}, {"message", what}}, code);
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    Cli cli;
    Args args;
    cli.app.require_subcommand(1);
    cli.app.add_flag("--pretty", opt.pretty, "aligned table instead of JSON");
    cli.app.add_option("--out", opt.out, "write the report to a file");
    cli.app.add_option("--cap", opt.cap, "search or size cap (overrides RAMSEYFORGE_CAP)");
    cli.app.add_option("--seed", opt.seed, "seed for sampled modes");
    cli.app.add_option("--class", opt.klass, "class selector");
    cli.app.add_option("--mode", opt.mode, "exhaustive or sampled:<n>");
    add_morph(cli, args);
    add_amalg(cli, args);
    add_closure(cli, args);
    add_complete(cli, args);
    add_metric(cli, args);
    add_pieces(cli, args);
    add_lift(cli, args);
    add_ramsey(cli, args);

    try {
        cli.app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return cli.app.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.app.exit(e);
        return usage;
    }
    if (! cli.action)
        return report_error("usage", "no command given", usage);
    try {
        return cli.action();
    } catch (const CapExceeded& e) {
        return report_error("cap", e.what(), inconclusive);
    } catch (const FormatError& e) {
        return report_error("format", e.what(), usage);
    } catch (const Error& e) {
        return report_error("usage", e.what(), usage);
    } catch (const nlohmann::json::exception& e) {
        return report_error("format", e.what(), usage);
    }
}
