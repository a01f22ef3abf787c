#pragma once

#include "ramseyforge/closures.hpp"
#include "ramseyforge/structures.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rf {

constexpr std::size_t default_size_guard = 50000;
constexpr std::uint64_t exhaustive_cap = std::uint64_t{1} << 24;

// B partitioned over the vertices of A: part[v] is a vertex index of A.
struct PartiteSystem {
    Structure base;
    Structure carrier;
    std::vector<int> part;
};

// Empty when the projection is a homomorphism-embedding and every tuple is
// transversal; otherwise the reason.
std::optional<std::string> partite_violation(const PartiteSystem& s);
bool is_partite_system(const PartiteSystem& s);

// Copies of the base in the carrier, as maps base vertex -> carrier vertex
// that embed and respect parts.
std::vector<std::vector<int>> transversal_copies(const PartiteSystem& s);

struct CombinatorialLine {
    // Coordinates 0..N-1; -1 marks the moving coordinates, otherwise the letter.
    std::vector<int> word;

    std::vector<int> moving() const;
    // The point of the line where the moving coordinates read `letter`.
    std::vector<int> point(int letter) const;
};

// All lines of [t]^N, in lexicographic order of words over {-1, 0..t-1}.
std::vector<CombinatorialLine> combinatorial_lines(int t, int n);
// Index of a point of [t]^N in base-t order, first coordinate most significant.
std::size_t point_index(const std::vector<int>& point, int t);

struct HalesJewettResult {
    std::optional<int> n;
    // Every N below this has a colouring without a monochromatic line.
    int lower_bound = 1;
    bool inconclusive = false;
};

// Least N such that every k-colouring of [t]^N has a monochromatic line,
// searched while k^(t^N) <= cap.
HalesJewettResult hales_jewett_N(int t, int k, std::uint64_t cap = exhaustive_cap);

struct PartiteLemmaResult {
    PartiteSystem c;
    // Alphabet: the transversal copies of A in B.
    std::vector<std::vector<int>> copies;
    std::vector<CombinatorialLine> lines;
    // Per line, B vertex -> C vertex.
    std::vector<std::vector<int>> embeddings;
    bool semi_closed = false;
    bool closed = false;
    bool lines_embed = false;
    bool lines_are_u_substructures = false;
};

// Coordinatewise product of B over [N]. Throws PreconditionError when B is not
// an A-partite U-semi-closed system or has no copy of A, CapExceeded when C
// would exceed size_guard vertices.
PartiteLemmaResult partite_lemma(const Structure& a, const PartiteSystem& b, const ClosureDescription& u, int n,
    std::size_t size_guard = default_size_guard);

// One disjoint copy of B per copy of B in C0, parts by projection.
PartiteSystem picture_zero(const Structure& b, const Structure& c0);

struct PartiteConstructionResult {
    PartiteSystem c;
    // Vertex counts of P_0, ..., P_b.
    std::vector<std::size_t> picture_sizes;
    std::vector<int> hales_jewett;
};

// Pictures P_0..P_b over the copies of A in C0. Throws PreconditionError when
// a copy of A is not a U-substructure of C0 and CapExceeded, naming the step
// and projected size, when a picture would pass size_guard or a Hales-Jewett
// number is out of reach.
PartiteConstructionResult partite_construction(const Structure& a, const Structure& b, const Structure& c0,
    const ClosureDescription& u, std::size_t size_guard = default_size_guard);

// Least N with N -> (b)^a_2 from the built-in rules, if known.
std::optional<int> ramsey_number(int a, int b);

struct UnaryRamseyResult {
    Structure c;
    int n = 0;
    // Per increasing b-tuple of [N], B vertex -> C vertex.
    std::vector<std::vector<int>> copies;
};

// Ordered structures whose non-order binary symbols are unary functions.
// n overrides the built-in Ramsey number.
UnaryRamseyResult unary_ramsey(const Structure& a, const Structure& b, std::optional<int> n = std::nullopt,
    std::size_t size_guard = default_size_guard);

enum class ArrowVerdict { proved, refuted, inconclusive };
std::string to_string(ArrowVerdict v);

struct ArrowMode {
    bool exhaustive = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// "exhaustive" or "sampled:<n>".
ArrowMode parse_arrow_mode(const std::string& text, std::uint64_t seed = 0);

struct ArrowReport {
    ArrowVerdict verdict = ArrowVerdict::inconclusive;
    // Sorted vertex sets of the copies of A, indexing the colouring.
    std::vector<std::vector<int>> a_copies;
    std::size_t b_copies = 0;
    std::optional<std::vector<int>> colouring;
    std::size_t colourings_examined = 0;
    bool exhaustive = false;
};

// Exhaustive mode runs only when k^(#copies of A) <= 2^24 and falls back to
// sampling otherwise.
ArrowReport verify_arrow(const Structure& c, const Structure& a, const Structure& b, int k, const ArrowMode& mode);
// True when the colouring of copies of A leaves no copy of B monochromatic.
bool refutes_arrow(const Structure& c, const Structure& a, const Structure& b, int k, const std::vector<int>& colouring);

// One-vertex type key: comma-joined symbols other than the order holding the
// constant tuple on the vertex.
std::string vertex_type(const Structure& s, int v);

// Reorders C so vertex types follow `order_spec` (unlisted types last), keeping
// the old order inside each type. Throws PreconditionError when B itself
// lists types against the spec, or when a copy of B stops embedding.
Structure admissible_reorder(const Structure& c, const Structure& b, const std::vector<std::string>& order_spec);

// Graph language {E} lifted with "<=" and "dist:i" for 2 <= i <= (l-1)/2.
Language distance_lift_language(int l);
// Distance lift of a symmetric graph in Forb(C_l). The order follows `order`
// (vertex indices) or vertex order. Throws PreconditionError for even l or a
// graph that takes a homomorphism-embedding of C_l.
Structure distance_lift_fixture(const Structure& g, int l, const std::vector<int>& order = {});

struct DistanceAmalgam {
    Structure c;
    bool strong = false;
};

// Re-lifts the free amalgamation of the shadows of two distance lifts over the
// vertices they share, with an order extending both.
DistanceAmalgam distance_lift_amalgam(const Structure& b1, const Structure& b2, int l);

nlohmann::json to_json(const ArrowReport& r, const Structure& c);
nlohmann::json to_json(const PartiteSystem& s);

} // namespace rf
