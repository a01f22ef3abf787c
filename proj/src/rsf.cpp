#include "ramseyforge/rsf.hpp"

#include "ramseyforge/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace rf {

using nlohmann::json;

json to_rsf_json(const Structure& s)
{
    json lang = json::array();
    for (const auto& sym : s.language().symbols())
        lang.push_back({{"name", sym.name}, {"arity", sym.arity}});
    json j;
    j["language"] = lang;
    if (s.language().order_symbol())
        j["order_symbol"] = *s.language().order_symbol();
    j["vertices"] = s.vertices();
    json rel = json::object();
    for (std::size_t r = 0; r < s.language().size(); ++r) {
        json ts = json::array();
        for (const auto& t : s.tuples(static_cast<int>(r))) {
            json tj = json::array();
            for (int v : t)
                tj.push_back(s.name(v));
            ts.push_back(tj);
        }
        rel[s.language().symbol(static_cast<int>(r)).name] = ts;
    }
    j["relations"] = rel;
    return j;
}

json to_rsf_json(const RootedStructure& r)
{
    json j = to_rsf_json(r.body);
    json root = json::array();
    for (int v : r.root)
        root.push_back(r.body.name(v));
    j["root"] = root;
    return j;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw FormatError(where + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& where)
{
    auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing key \"") + key + "\"");
    return *it;
}

std::string require_string(const json& j, const std::string& where)
{
    if (! j.is_string())
        fail(where, "expected a string");
    return j.get<std::string>();
}

Structure parse_body(const json& j, const std::string& where, bool allow_root)
{
    if (! j.is_object())
        fail(where, "expected an RSF object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "language" && key != "order_symbol" && key != "vertices" && key != "relations"
            && ! (allow_root && key == "root"))
            fail(where, "unknown key \"" + key + "\"");
    }
    const json& lang = require(j, "language", where);
    if (! lang.is_array())
        fail(where + ".language", "expected an array");
    std::vector<Symbol> symbols;
    for (std::size_t i = 0; i < lang.size(); ++i) {
        std::string w = where + ".language[" + std::to_string(i) + "]";
        const json& s = lang[i];
        if (! s.is_object())
            fail(w, "expected {\"name\", \"arity\"}");
        for (const auto& [key, value] : s.items()) {
            (void)value;
            if (key != "name" && key != "arity")
                fail(w, "unknown key \"" + key + "\"");
        }
        std::string name = require_string(require(s, "name", w), w + ".name");
        const json& ar = require(s, "arity", w);
        if (! ar.is_number_integer() || ar.get<long long>() <= 0)
            fail(w + ".arity", "expected a positive integer");
        symbols.push_back({name, ar.get<int>()});
    }
    std::optional<std::string> order;
    if (j.contains("order_symbol"))
        order = require_string(j["order_symbol"], where + ".order_symbol");
    Language language;
    try {
        language = Language(symbols, order);
    }
    catch (const PreconditionError& e) {
        fail(where + ".language", e.what());
    }

    const json& verts = require(j, "vertices", where);
    if (! verts.is_array())
        fail(where + ".vertices", "expected an array");
    StructureBuilder b(language);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        std::string v = require_string(verts[i], where + ".vertices[" + std::to_string(i) + "]");
        if (b.has_vertex(v))
            fail(where + ".vertices[" + std::to_string(i) + "]", "duplicate vertex \"" + v + "\"");
        b.vertex(v);
    }
    const json& rel = require(j, "relations", where);
    if (! rel.is_object())
        fail(where + ".relations", "expected an object");
    for (const auto& [name, tuples] : rel.items()) {
        std::string w = where + ".relations." + name;
        int s = language.find(name);
        if (s < 0)
            fail(w, "undeclared symbol \"" + name + "\"");
        if (! tuples.is_array())
            fail(w, "expected an array of tuples");
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            std::string wt = w + "[" + std::to_string(i) + "]";
            const json& t = tuples[i];
            if (! t.is_array())
                fail(wt, "expected an array of vertices");
            if (static_cast<int>(t.size()) != language.arity(s))
                fail(wt, "tuple length " + std::to_string(t.size()) + " does not match arity "
                        + std::to_string(language.arity(s)));
            Tuple ids;
            for (std::size_t k = 0; k < t.size(); ++k) {
                std::string v = require_string(t[k], wt + "[" + std::to_string(k) + "]");
                if (! b.has_vertex(v))
                    fail(wt, "undeclared vertex \"" + v + "\"");
                ids.push_back(b.vertex(v));
            }
            b.tuple(s, std::move(ids));
        }
    }
    return b.build();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        }
        else
            ++col;
    }
    return {line, col};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw FormatError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Structure structure_from_json(const json& j, const std::string& where) { return parse_body(j, where, false); }

RootedStructure rooted_from_json(const json& j, const std::string& where)
{
    RootedStructure r;
    r.body = parse_body(j, where, true);
    if (j.contains("root")) {
        const json& root = j["root"];
        if (! root.is_array())
            fail(where + ".root", "expected an array");
        std::set<int> seen;
        for (std::size_t i = 0; i < root.size(); ++i) {
            std::string v = require_string(root[i], where + ".root[" + std::to_string(i) + "]");
            int id = r.body.find(v);
            if (id < 0)
                fail(where + ".root", "undeclared vertex \"" + v + "\"");
            if (! seen.insert(id).second)
                fail(where + ".root", "repeated root vertex \"" + v + "\"");
            r.root.push_back(id);
        }
    }
    return r;
}

json parse_json_text(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, col] = line_column(text, byte);
        throw FormatError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what(), line,
            col);
    }
}

json read_json_file(const std::string& path)
{
    std::string text = slurp(path);
    if (text.empty() || text.back() != '\n') {
        auto [line, col] = line_column(text, text.size());
        throw FormatError(path + ": line " + std::to_string(line) + ", column " + std::to_string(col)
                + ": file must end with a newline",
            line, col);
    }
    try {
        return parse_json_text(text);
    }
    catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what(), e.line, e.column);
    }
}

Structure parse_rsf(std::string_view text) { return structure_from_json(parse_json_text(text)); }

Structure read_rsf_file(const std::string& path)
{
    json j = read_json_file(path);
    try {
        return structure_from_json(j);
    }
    catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what(), e.line, e.column);
    }
}

RootedStructure read_rooted_rsf_file(const std::string& path)
{
    json j = read_json_file(path);
    try {
        return rooted_from_json(j);
    }
    catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what(), e.line, e.column);
    }
}

std::string dump_rsf(const Structure& s) { return to_rsf_json(s).dump() + "\n"; }

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw FormatError(path + ": cannot open file for writing");
    out << text;
    if (text.empty() || text.back() != '\n')
        out << '\n';
}

std::vector<Structure> family_from_json(const json& j, const std::string& where)
{
    if (! j.is_array())
        fail(where, "expected an array of RSF structures");
    std::vector<Structure> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(structure_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

json map_to_json(const Structure& a, const Structure& b, const std::vector<int>& map)
{
    json m = json::object();
    for (std::size_t v = 0; v < map.size(); ++v)
        m[a.name(static_cast<int>(v))] = b.name(map[v]);
    return m;
}

} // namespace rf
