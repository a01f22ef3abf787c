#pragma once

#include "ramseyforge/structures.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace rf {

struct RootedStructure {
    Structure body;
    std::vector<int> root;

    bool operator==(const RootedStructure&) const = default;
};

// RSF: {"language": [{"name","arity"}...], "order_symbol"?, "vertices": [...],
//       "relations": {symbol: [[v...]...]}, "root"?: [...]}
nlohmann::json to_rsf_json(const Structure& s);
nlohmann::json to_rsf_json(const RootedStructure& r);
Structure structure_from_json(const nlohmann::json& j, const std::string& where = "$");
RootedStructure rooted_from_json(const nlohmann::json& j, const std::string& where = "$");

// Parses JSON text; syntax errors carry line and column.
nlohmann::json parse_json_text(std::string_view text);
nlohmann::json read_json_file(const std::string& path);

Structure parse_rsf(std::string_view text);
Structure read_rsf_file(const std::string& path);
RootedStructure read_rooted_rsf_file(const std::string& path);
std::string dump_rsf(const Structure& s);
void write_text_file(const std::string& path, const std::string& text);

// A JSON array of RSF objects.
std::vector<Structure> family_from_json(const nlohmann::json& j, const std::string& where = "$");

nlohmann::json map_to_json(const Structure& a, const Structure& b, const std::vector<int>& map);

} // namespace rf
