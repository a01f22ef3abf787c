#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rf {

struct Symbol {
    std::string name;
    int arity = 0;

    bool operator==(const Symbol&) const = default;
};

class Language {
public:
    Language() = default;
    explicit Language(std::vector<Symbol> symbols, std::optional<std::string> order_symbol = std::nullopt);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    const Symbol& symbol(int s) const { return symbols_[static_cast<std::size_t>(s)]; }
    int arity(int s) const { return symbols_[static_cast<std::size_t>(s)].arity; }
    int max_arity() const;

    // -1 when absent.
    int find(std::string_view name) const;
    // Throws PreconditionError when absent.
    int index_of(std::string_view name) const;

    const std::optional<std::string>& order_symbol() const { return order_; }
    int order_index() const { return order_index_; }

    bool operator==(const Language& other) const
    {
        return symbols_ == other.symbols_ && order_ == other.order_;
    }

private:
    std::vector<Symbol> symbols_;
    std::optional<std::string> order_;
    int order_index_ = -1;
};

using Tuple = std::vector<int>;

// Vertices are kept in lexicographic order of their tokens; tuples refer to
// vertex indices and are kept sorted and duplicate-free per symbol.
class Structure {
public:
    Structure() = default;
    explicit Structure(Language language);
    Structure(Language language, std::vector<std::string> vertices,
        const std::map<std::string, std::vector<std::vector<std::string>>>& relations);

    const Language& language() const { return language_; }
    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::vector<std::string>& vertices() const { return names_; }
    const std::string& name(int v) const { return names_[static_cast<std::size_t>(v)]; }

    int find(std::string_view name) const;
    int index_of(std::string_view name) const;

    const std::vector<Tuple>& tuples(int symbol) const { return relations_[static_cast<std::size_t>(symbol)]; }
    const std::vector<Tuple>& tuples(std::string_view symbol) const;
    bool has(int symbol, const Tuple& t) const;
    std::size_t tuple_count() const;

    bool operator==(const Structure&) const = default;

private:
    friend class StructureBuilder;
    Language language_;
    std::vector<std::string> names_;
    std::vector<std::vector<Tuple>> relations_;
};

class StructureBuilder {
public:
    explicit StructureBuilder(Language language);
    // Starts from a copy of an existing structure; its vertices get ids 0..n-1.
    explicit StructureBuilder(const Structure& base);

    // Returns the builder id of the vertex, creating it on first use.
    int vertex(const std::string& name);
    bool has_vertex(const std::string& name) const;
    std::size_t vertex_count() const { return names_.size(); }
    const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
    void tuple(int symbol, Tuple ids);
    void tuple(std::string_view symbol, Tuple ids);
    const Language& language() const { return language_; }

    // index_of_id, when given, receives the final vertex index of each builder id.
    Structure build(std::vector<int>* index_of_id = nullptr) const;

private:
    Language language_;
    std::vector<std::string> names_;
    std::map<std::string, int> ids_;
    std::vector<std::vector<Tuple>> relations_;
};

// A vertex name not used by `taken`, derived from `stem`.
std::string fresh_name(const std::string& stem, const std::function<bool(const std::string&)>& taken);

Structure induced_substructure(const Structure& a, const std::vector<int>& subset);
Structure induced_substructure(const Structure& a, const std::vector<std::string>& subset);
Structure drop_symbols(const Structure& a, const std::vector<std::string>& symbols);
Structure relabel(const Structure& a, const std::function<std::string(const std::string&)>& rename);
Structure with_language(const Structure& a, const Language& language);

// Adjacency lists of the Gaifman graph; neighbours sorted, no self-loops.
std::vector<std::vector<int>> gaifman_adjacency(const Structure& a, bool ignore_order = false);
// Gaifman graph as a structure over the language {E/2}, edges stored both ways.
Structure gaifman_graph(const Structure& a, bool ignore_order = false);
bool is_irreducible(const Structure& a, bool ignore_order = false);
bool is_clique(const std::vector<std::vector<int>>& adjacency, const std::vector<int>& vertices);
std::vector<std::vector<int>> connected_components(const Structure& a);
bool is_connected(const Structure& a);
// Pairs {u,v}, u < v, that share no tuple.
std::vector<std::pair<int, int>> holes(const Structure& a);

// Linear-order predicate on the order symbol: reflexive, antisymmetric,
// transitive and total on all vertices.
bool order_is_linear(const Structure& a);

enum class MorphismKind { homomorphism, monomorphism, embedding, homomorphism_embedding };

std::string to_string(MorphismKind kind);
MorphismKind parse_morphism_kind(std::string_view text);

struct Morphism {
    std::vector<int> map;
    MorphismKind kind = MorphismKind::homomorphism;

    bool operator==(const Morphism&) const = default;
};

bool verify_morphism(const Structure& a, const Structure& b, const std::vector<int>& map, MorphismKind kind);
// Name-based variant; throws MalformedMorphism on undeclared or missing vertices.
bool verify_morphism(const Structure& a, const Structure& b, const std::map<std::string, std::string>& map,
    MorphismKind kind);

struct SearchOptions {
    // Per source vertex: required image, or -1.
    std::vector<int> fixed;
    // Source vertices whose images must be pairwise distinct.
    std::vector<int> injective_on;
    // Optional colour classes: source vertex v may map to w only if colours agree.
    std::vector<int> source_colour;
    std::vector<int> target_colour;
};

// Calls visit for every morphism found; stops when visit returns false.
// Returns the number of morphisms visited.
std::size_t search_morphisms(const Structure& a, const Structure& b, MorphismKind kind, const SearchOptions& options,
    const std::function<bool(const std::vector<int>&)>& visit);
std::vector<Morphism> enumerate_morphisms(
    const Structure& a, const Structure& b, MorphismKind kind, const SearchOptions& options = {});
std::optional<Morphism> find_morphism(
    const Structure& a, const Structure& b, MorphismKind kind, const SearchOptions& options = {});

struct Copy {
    std::vector<int> vertices;  // sorted image
    Morphism witness;
};

std::vector<Copy> copies_of(const Structure& a, const Structure& b);

std::optional<Morphism> are_isomorphic(const Structure& a, const Structure& b);
// Isomorphism sending root_a[i] to root_b[i].
std::optional<Morphism> are_isomorphic_rooted(
    const Structure& a, const std::vector<int>& root_a, const Structure& b, const std::vector<int>& root_b);

// Collects structures up to (rooted) isomorphism.
class IsoCatalogue {
public:
    // Returns the index of the isomorphism class, and whether it was new.
    std::pair<std::size_t, bool> insert(const Structure& s, const std::vector<int>& root = {});
    std::optional<std::size_t> find(const Structure& s, const std::vector<int>& root = {}) const;
    std::size_t size() const { return entries_.size(); }
    const Structure& structure(std::size_t i) const { return entries_[i].first; }
    const std::vector<int>& root(std::size_t i) const { return entries_[i].second; }

private:
    std::vector<std::pair<Structure, std::vector<int>>> entries_;
    std::map<std::vector<long long>, std::vector<std::size_t>> buckets_;
};

std::vector<long long> isomorphism_invariant(const Structure& s, const std::vector<int>& root = {});

struct Amalgam {
    Structure result;
    std::vector<int> beta1;
    std::vector<int> beta2;
};

// Free amalgamation of B1 and B2 over A along the embeddings alpha1, alpha2.
// B1 keeps its vertex names; vertices of B2 outside alpha2(A) keep theirs
// unless they clash, in which case they are primed.
Amalgam free_amalgamation(const Structure& b1, const Structure& b2, const Structure& a, const std::vector<int>& alpha1,
    const std::vector<int>& alpha2);
// Free amalgamation over the substructure induced on the shared vertex names.
Amalgam free_amalgamation_over_common(const Structure& b1, const Structure& b2);

bool is_strong_amalgamation(const Structure& c, const Structure& b1, const Structure& b2, const Structure& a,
    const std::vector<int>& alpha1, const std::vector<int>& alpha2, const std::vector<int>& beta1,
    const std::vector<int>& beta2);

bool is_free_amalgamation(const Structure& c, const Structure& b1, const Structure& b2, const Structure& a,
    const std::vector<int>& alpha1, const std::vector<int>& alpha2, const std::vector<int>& beta1,
    const std::vector<int>& beta2);

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second);

} // namespace rf
