#pragma once

#include "ramseyforge/structures.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rf {

struct ClosureEntry {
    std::string relation;
    // Nonempty irreducible structure on vertices "1".."m"; its tuple for a
    // closure tuple t is (t[0], ..., t[m-1]).
    Structure root;
};

class ClosureDescription {
public:
    ClosureDescription() = default;
    // Throws PreconditionError when a root is empty, reducible or not on
    // vertices "1".."m". Arities are checked against the structure in use.
    explicit ClosureDescription(std::vector<ClosureEntry> entries);

    const std::vector<ClosureEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::vector<std::string> relations() const;
    bool unary() const;

private:
    std::vector<ClosureEntry> entries_;
};

// Canonical root vertex names "1".."m".
std::vector<std::string> root_names(int m);

ClosureDescription closure_description_from_json(const nlohmann::json& j, const std::string& where = "$");
ClosureDescription read_closure_description(const std::string& path);
nlohmann::json to_json(const ClosureDescription& u);

// Number of ways to complete `prefix` to a tuple of `symbol`.
std::size_t out_degree(const Structure& a, int symbol, const Tuple& prefix);
std::size_t out_degree(const Structure& a, std::string_view symbol, const Tuple& prefix);

// Embeddings of each root into A with the closure relations removed, as tuples
// (f(1), ..., f(m)). Indexed like u.entries().
std::vector<std::vector<Tuple>> root_embeddings(const Structure& a, const ClosureDescription& u);

struct ClosureViolation {
    std::size_t entry = 0;
    Tuple prefix;
    std::size_t out_degree = 0;
    bool is_root = false;
    std::string message;
};

std::optional<ClosureViolation> closed_violation(const Structure& a, const ClosureDescription& u);
std::optional<ClosureViolation> semi_closed_violation(const Structure& a, const ClosureDescription& u);
bool is_u_closed(const Structure& a, const ClosureDescription& u);
bool is_u_semi_closed(const Structure& a, const ClosureDescription& u);

// Whether the vertex subset `sub` of B is a U-substructure.
bool is_u_substructure(const Structure& b, const std::vector<int>& sub, const ClosureDescription& u);

// Vertex set of the U-closure of `seed` in A (sorted). Requires A U-closed.
std::vector<int> u_closure_vertices(const Structure& a, const ClosureDescription& u, const std::vector<int>& seed);
Structure u_closure(const Structure& a, const ClosureDescription& u, const std::vector<int>& seed);

// Minimum size of a generating set; throws CapExceeded beyond `candidate_cap`
// free generator candidates.
std::size_t u_size(const Structure& a, const ClosureDescription& u, std::size_t candidate_cap = 20);
// U-size of the substructure on `sub` inside a U-closed B: the least |G|,
// G ⊆ sub, whose U-closure in B contains sub.
std::size_t u_size_within(
    const Structure& b, const std::vector<int>& sub, const ClosureDescription& u, std::size_t candidate_cap = 20);

struct ClosedAmalgamReport {
    bool closed = false;
    Structure amalgam;
    std::optional<ClosureViolation> violation;
};

ClosedAmalgamReport free_amalgam_preserves_closed(const Structure& b1, const Structure& b2, const Structure& a,
    const std::vector<int>& alpha1, const std::vector<int>& alpha2, const ClosureDescription& u);

} // namespace rf
