#pragma once

#include "ramseyforge/closures.hpp"
#include "ramseyforge/structures.hpp"

#include <boost/rational.hpp>
#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Boost 1.74's rational-vs-integer equality recurses under C++20 rewritten
// comparisons; these exact overloads win overload resolution.
namespace boost {
inline bool operator==(const rational<long long>& a, long long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<long long>& a, int b) { return a == static_cast<long long>(b); }
inline bool operator!=(const rational<long long>& a, long long b) { return ! (a == b); }
inline bool operator!=(const rational<long long>& a, int b) { return ! (a == b); }
inline bool operator==(long long a, const rational<long long>& b) { return b == a; }
inline bool operator==(int a, const rational<long long>& b) { return b == a; }
inline bool operator!=(long long a, const rational<long long>& b) { return ! (b == a); }
inline bool operator!=(int a, const rational<long long>& b) { return ! (b == a); }
} // namespace boost

namespace rf {

using Rational = boost::rational<long long>;

std::string format_rational(const Rational& r);
// Accepts "p/q" or an integer string.
Rational parse_rational(std::string_view text);

class DistanceSet {
public:
    DistanceSet() = default;
    // Throws PreconditionError when empty or when a value is not positive.
    explicit DistanceSet(std::vector<Rational> values);

    const std::vector<Rational>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Rational& min() const { return values_.front(); }
    const Rational& max() const { return values_.back(); }
    bool contains(const Rational& x) const;
    // Position in ascending order, or -1.
    int index_of(const Rational& x) const;

    bool operator==(const DistanceSet&) const = default;

private:
    std::vector<Rational> values_;
};

std::string to_string(const DistanceSet& s);
// {"distances": ["1", "3/2", ...]}
DistanceSet distance_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DistanceSet& s);
// A file path, or a comma separated list such as "1,2,3/2".
DistanceSet read_distance_set(const std::string& path_or_list);

// max{x ∈ S : x ≤ a + b}.
Rational oplus(const DistanceSet& s, const Rational& a, const Rational& b);
// Left fold of a walk's distances.
Rational s_length(const DistanceSet& s, const std::vector<Rational>& walk);

struct FourValuesReport {
    bool holds = true;
    // (a, b, c, d, x) for the first failing choice in ascending order.
    std::optional<std::array<Rational, 5>> witness;
};
FourValuesReport four_values(const DistanceSet& s);

struct AssociativityReport {
    bool holds = true;
    std::optional<std::array<Rational, 3>> witness;
};
AssociativityReport is_associative(const DistanceSet& s);

// a ≠ max(S) with a ⊕ a = a.
std::vector<Rational> jump_numbers(const DistanceSet& s);
// Consecutive runs of S, each closed by a jump number or max(S).
std::vector<DistanceSet> blocks(const DistanceSet& s);
bool is_jump_free(const DistanceSet& s);

// Graph with partial symmetric distances.
struct SGraph {
    std::vector<std::string> vertices;
    // dist[u][v], symmetric, diagonal unset.
    std::vector<std::vector<std::optional<Rational>>> dist;

    explicit SGraph(std::vector<std::string> names = {});
    std::size_t size() const { return vertices.size(); }
    void set(int u, int v, const Rational& d);
    const std::optional<Rational>& at(int u, int v) const
    {
        return dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }
    int index_of(const std::string& name) const;
    bool total() const;

    bool operator==(const SGraph&) const = default;
};

// "d:p/q"
std::string distance_symbol(const Rational& d);
Language metric_language(const DistanceSet& s, bool with_order = false);
Structure to_structure(const SGraph& g, const DistanceSet& s);
// Reads the "d:..." symbols; throws FormatError on asymmetric, looped,
// doubly-assigned pairs or on distances outside S.
SGraph sgraph_from_structure(const Structure& a, const DistanceSet& s);

struct MetricCompletion {
    bool completed = false;
    SGraph result;
    // On failure: the pair whose given distance exceeds the shortest S-length,
    // with a simple path realizing it.
    std::optional<std::pair<int, int>> violated;
    std::vector<int> path;
    Rational path_length{0};
};

// Shortest S-length completion; unconnected pairs get max(S). Requires the
// 4-values condition.
MetricCompletion complete_metric_graph(const SGraph& g, const DistanceSet& s);
bool is_metric_space(const SGraph& g);

// v1..vn; the closing edge joins vn and v1 and is longer than the S-length
// of the path v1..vn.
struct NonMetricCycle {
    std::vector<int> vertices;
    std::vector<Rational> path;
    Rational closing{0};
};

struct UnimportantReduction {
    // Inclusive vertex-position ranges [j, k] into the cycle.
    std::vector<std::pair<int, int>> paths;
    std::vector<Rational> reduced_path;
    Rational closing{0};
    std::size_t reduced_vertices = 0;
};

UnimportantReduction unimportant_paths(const std::vector<Rational>& path, const Rational& closing, const DistanceSet& s);

struct CycleScan {
    NonMetricCycle cycle;
    std::optional<UnimportantReduction> reduction;
};

// Jump-free S: a shortest non-metric cycle, searched up to |S|+1 vertices.
// Otherwise a cycle from the shortest-walk certificate, with its reduction.
std::optional<CycleScan> non_metric_cycle_scan(const SGraph& g, const DistanceSet& s);

// Superposition by vertex names followed by completion.
SGraph strong_amalgam_metric(const SGraph& b1, const SGraph& b2, const DistanceSet& s);

// Classes of u ~ v ⇔ joined by distances ≤ max of the block containing j.
std::vector<std::vector<int>> block_equivalence(const SGraph& g, const DistanceSet& s, const Rational& j);

struct ConvexLift {
    Structure lifted;
    // Per jump number, the closure vertex names in class order.
    std::vector<std::vector<std::string>> closure_vertices;
};

// `order` lists the vertices of the metric space from smallest to largest.
ConvexLift convex_lift(const SGraph& space, const DistanceSet& s, const std::vector<int>& order);
Language convex_lift_language(const DistanceSet& s);
// One entry (U:j, single looped vertex) per jump number j.
ClosureDescription convex_lift_closures(const DistanceSet& s);

} // namespace rf
