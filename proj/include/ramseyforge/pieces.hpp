#pragma once

#include "ramseyforge/rsf.hpp"
#include "ramseyforge/structures.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rf {

// Vertices outside `set` adjacent to it in the Gaifman graph, sorted.
std::vector<int> neighbourhood(const Structure& a, const std::vector<int>& set);

struct SeparatingCut {
    std::vector<int> cut;
    // Components of A - cut whose neighbourhood is the whole cut (at least two).
    std::vector<std::vector<int>> full_components;
};

// All minimal separating cuts of A, sorted by cut.
std::vector<SeparatingCut> minimal_separating_cuts(const Structure& a);

struct ShrunkCut {
    std::vector<int> cut;
    std::vector<int> first;
    std::vector<int> second;
};

// Given a cut separating the connected vertex sets `first` and `second`,
// returns a minimal separating cut inside it together with the two
// components it separates, which contain `first` and `second`.
ShrunkCut shrink_separating_cut(const Structure& a, const std::vector<int>& cut, const std::vector<int>& first,
    const std::vector<int>& second);

struct Piece {
    Structure body;
    // Body vertex indices, in root order.
    std::vector<int> root;
    // Index of the family member it was cut from.
    std::size_t origin = 0;
    // Body vertex -> vertex of the origin member.
    std::vector<int> origin_vertices;

    RootedStructure rooted() const { return {body, root}; }
};

// Pieces of a connected structure under every root ordering, one per rooted
// isomorphism class.
std::vector<Piece> pieces(const Structure& a, std::size_t origin = 0);

// The member with the non-root vertices of the piece removed, rooted at the cut.
RootedStructure piece_complement(const Piece& p, const Structure& member);

// Free amalgamation identifying p.root[i] with q.root[i]; empty when the
// root-induced structures differ under that bijection.
std::optional<Structure> piece_glue(const RootedStructure& p, const RootedStructure& q);

// Complements of pieces of family members, up to rooted isomorphism, whose
// glue with p is isomorphic to a member.
std::vector<RootedStructure> incompatibility_set(const RootedStructure& p, const std::vector<Structure>& family);

struct PieceClass {
    int width = 0;
    // Indices into PieceClasses::pieces; the first is the representative.
    std::vector<std::size_t> members;
    // Indices into PieceClasses::complements.
    std::vector<std::size_t> incompatible;
};

struct PieceClasses {
    std::vector<Structure> family;
    std::vector<Piece> pieces;
    std::vector<RootedStructure> complements;
    // Ordered by width, body size of the representative, then first appearance.
    std::vector<PieceClass> classes;
    std::vector<std::size_t> class_of;
};

// Throws PreconditionError when members are disconnected or differ in language.
PieceClasses piece_equivalence_classes(const std::vector<Structure>& family);

struct LiftedStructure {
    Structure base;
    // Per class: width and tuples of base vertex indices.
    std::vector<int> widths;
    std::vector<std::set<Tuple>> ext;

    bool operator==(const LiftedStructure&) const = default;
};

LiftedStructure canonical_lift(const Structure& a, const PieceClasses& classes);
// Lift of `a` induced on the vertex subset (sorted on output).
LiftedStructure canonical_lift_on(const Structure& a, const PieceClasses& classes, const std::vector<int>& subset);
LiftedStructure restrict_lift(const LiftedStructure& x, const std::vector<int>& subset);
// The lift on x.base pulled back along an injective map into y.base.
LiftedStructure pull_back(const LiftedStructure& y, const Structure& base, const std::vector<int>& map);

// "ext:i:w" symbols appended to the base language.
Structure lifted_to_structure(const LiftedStructure& x);
LiftedStructure lifted_from_structure(const Structure& s);
std::string ext_symbol(std::size_t index, int width);
// Class index -> width and representative piece.
nlohmann::json classes_sidecar(const PieceClasses& classes);

struct ForbReport {
    bool member = true;
    std::optional<std::size_t> forbidden;
    std::optional<Morphism> witness;
};

ForbReport forb_membership(
    const Structure& a, const std::vector<Structure>& family, MorphismKind kind = MorphismKind::homomorphism_embedding);

struct MaximalLift {
    LiftedStructure lift;
    // Contains `a` as an induced substructure on the same vertex names.
    Structure witness;
    std::size_t added_vertices = 0;
    // Some extension would grow the lift but needs more than growth_cap vertices.
    bool inconclusive = false;
};

// Grows a witness by gluing pieces onto tuples of `a` while the lift on `a`
// grows and the witness stays in Forb(F). growth_cap defaults to the largest
// member size. Throws PreconditionError when a is not in Forb(F).
MaximalLift maximal_lift(
    const Structure& a, const PieceClasses& classes, std::optional<std::size_t> growth_cap = std::nullopt);

struct WitnessAmalgamReport {
    Structure amalgam;
    // Vertices of each witness in the amalgam.
    std::vector<int> beta_x;
    std::vector<int> beta_y;
    ForbReport membership;
    // The amalgam's lift restricted to X and to Y agrees with the inputs.
    bool restricts_to_x = false;
    bool restricts_to_y = false;
};

// Free amalgamation of the witnesses over the shadow of Z (vertices shared by
// name). Throws PreconditionError when X, Y do not sit on their witnesses or
// do not induce Z.
WitnessAmalgamReport witness_amalgam(const LiftedStructure& x, const LiftedStructure& y, const LiftedStructure& z,
    const Structure& w_x, const Structure& w_y, const PieceClasses& classes);

} // namespace rf
