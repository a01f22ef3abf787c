#pragma once

#include "ramseyforge/metric.hpp"
#include "ramseyforge/structures.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace rf {

// Structure F with a homomorphism-embedding `map` from F into the structure
// that was completed. F itself has no strong completion in the class.
struct Obstacle {
    // "local", "order-cycle", "quasi-cycle", "non-metric-cycle", "forbidden-copy", "no-member"
    std::string kind;
    std::string message;
    Structure structure;
    std::vector<int> map;
};

struct CompletionResult {
    bool completed = false;
    std::optional<Structure> completion;
    // Injective homomorphism-embedding into the completion.
    std::vector<int> map;
    std::optional<Obstacle> certificate;
};

class ClassPlugin {
public:
    virtual ~ClassPlugin() = default;

    virtual std::string name() const = 0;
    virtual const Language& language() const = 0;
    virtual bool membership(const Structure& a) const = 0;
    virtual CompletionResult try_strong_completion(const Structure& a) const = 0;
    // Members on vertices "1".."k", one per isomorphism class.
    virtual std::vector<Structure> members(int k) const = 0;
    virtual bool hereditary() const { return true; }

    // One- and two-vertex members, built on first use.
    struct LocalTypes;
    const LocalTypes& local_types() const;

private:
    mutable std::once_flag local_once_;
    mutable std::shared_ptr<const LocalTypes> local_;
};

// Posets with a linear extension: "po" is the partial order, "<=" extends it.
std::unique_ptr<ClassPlugin> poset_plugin();
std::unique_ptr<ClassPlugin> metric_plugin(const DistanceSet& s);
// Ordered graphs ({<=, E}) with no embedded copy of a family member. Holes
// become non-edges; linear extensions are tried in lexicographic order up to
// `extension_cap`.
std::unique_ptr<ClassPlugin> forbidden_plugin(std::vector<Structure> family, std::size_t extension_cap = 5040);
// "posets", "metric:<S>" (a path or comma list), "forbidden:<file>".
std::unique_ptr<ClassPlugin> make_plugin(const std::string& spec);

Language poset_language();

bool is_completion(const Structure& c, const Structure& c_prime, bool strong);
// Completion in the class: strong completion, or a homomorphism-embedding
// onto a smaller member.
bool has_completion(const Structure& a, const ClassPlugin& plugin);
// Validates the language, then asks the plugin.
CompletionResult complete_with(const Structure& a, const ClassPlugin& plugin);

// The certificate's structure has no strong completion and its map is a
// homomorphism-embedding into `a`; completions are members reached by an
// injective homomorphism-embedding.
bool verify_result(const Structure& a, const ClassPlugin& plugin, const CompletionResult& r);

// A one- or two-vertex irreducible substructure that is not a member.
std::optional<Obstacle> local_obstacle(const Structure& a, const ClassPlugin& plugin);

struct QuasiCycle {
    std::vector<int> vertices;
    Structure structure;
};

// Over the poset language: u1..un with (u1,un) in <= but not po, and
// consecutive pairs in both.
std::optional<QuasiCycle> quasi_cycle_scan(const Structure& a);

// Labelled structures on vertices "v01".."vk" whose one- and two-vertex
// irreducible substructures are members.
void for_each_candidate(const ClassPlugin& plugin, int k, const std::function<void(const Structure&)>& visit);

// Candidates without a strong completion all of whose one-vertex deletions
// complete, up to isomorphism and in order of size.
std::vector<Structure> obstacles_up_to(const ClassPlugin& plugin, int n, bool connected_only = true);

struct ProbeCounterexample {
    Structure structure;
    // Vertex -> vertex of C0.
    std::vector<int> labels;
    std::optional<Obstacle> certificate;
};

struct ProbeReport {
    int n = 0;
    std::size_t size_cap = 0;
    // Structures examined per vertex count, after isomorphism rejection.
    std::vector<std::size_t> per_size;
    std::vector<ProbeCounterexample> counterexamples;
    // Set when the node budget stopped the search before size_cap.
    bool inconclusive = false;
};

// Structures with a homomorphism-embedding to C0 (arity <= 2), grown one
// vertex at a time, whose substructures on at most n vertices strongly
// complete; reports those that do not strongly complete themselves.
ProbeReport probe_local_finiteness(const ClassPlugin& plugin, const Structure& c0, int n, std::size_t size_cap,
    std::size_t node_budget = 200000);

struct IffViolation {
    Structure structure;
    bool completes = false;
    bool strongly_completes = false;
};

struct IffReport {
    std::size_t checked = 0;
    std::vector<IffViolation> violations;
};

IffReport completion_iff_strong(const ClassPlugin& plugin, int size_cap);

nlohmann::json to_json(const Obstacle& o, const Structure& a);
nlohmann::json to_json(const CompletionResult& r, const Structure& a);
nlohmann::json to_json(const ProbeReport& r, const Structure& c0);

} // namespace rf
