#pragma once

#include <set>
#include <string>

#include "shadowcalc/cardinality.hpp"
#include "shadowcalc/evaluator.hpp"

namespace shadowcalc {

struct SuiteResult {
    std::string name;
    int instances = 0;
    int failures = 0;
    std::vector<std::string> witnesses;
    bool ok() const { return failures == 0 && instances > 0; }
};

// ---- atomic coherences of the backend (family instance) ----
// kinds: *** **! *!! !!! u* u! c* c! **x !!x *!x ux cx *xx !xx
// (x stands in for the external product in kind names)
std::vector<std::string> atomic_kinds();
SuiteResult atomic_suite(const std::string& kind, std::uint64_t seed, int instances,
                         bool matrix_backend = false);

SuiteResult pasting_suite(std::uint64_t seed, int instances);
SuiteResult rearrangement_suite(std::uint64_t seed, int instances);

// ---- coherences of the cardinality map ----
// kinds: H** H!! Hu Hc H*! Hxx Hx* Hx!
std::vector<std::string> h_kinds();
SuiteResult h_suite(const std::string& kind, std::uint64_t seed, int instances);

// ---- relation routes on partially darkened graphs ----
// A darkening of a fixed vertex set factors as one tensor regrouping followed
// by a word of single-vertex color flips. Routes differ only in the order of
// the flips, so the component universe is fixed throughout and relation
// isomorphisms reduce to adjacent flip transpositions.
struct DarkContext {
    LabeledGraph graph;
    std::vector<VertexId> dark_set;
    Coloring start, graying, full;
    std::vector<int> universe;             // components after the tensor stage
    std::map<EdgeId, int> graying_glue;    // on the gray edges of the graying
    std::map<int, int> sigma;              // star components -> universe
};

DarkContext darkening_context(const LabeledGraph& g, const std::vector<VertexId>& dark_set);

struct VerticalState {
    Coloring coloring;
    std::map<int, Family> value;
};

// Apply the tensor stage to a star assignment.
VerticalState start_state(const DarkContext& ctx, const Assignment& a);

// One color flip: pull turns the vertex gray, push turns it black.
struct RouteSymbol {
    VertexId vertex = 0;
    bool push = false;
    bool operator==(const RouteSymbol& o) const = default;
};
using RouteWord = std::vector<RouteSymbol>;

// The canonical word for a darkening order: gray then blacken each vertex.
RouteWord blocks_for(const std::vector<VertexId>& order);

VerticalState apply_symbol(const DarkContext& ctx, const VerticalState& s, const RouteSymbol& sym);
VerticalState apply_word(const DarkContext& ctx, VerticalState s, const RouteWord& w);

// Relation bijection for transposing the symbols at `position`, whiskered
// through the rest of the word: connects the end values of the two words.
std::map<int, Bijection> transposition_iso(const DarkContext& ctx, const VerticalState& start,
                                           const RouteWord& word, std::size_t position);

// Compose transposition isos along a path of adjacent swaps, mutating `word`.
std::map<int, Bijection> swap_path_iso(const DarkContext& ctx, const VerticalState& start,
                                       RouteWord& word, const std::vector<std::size_t>& swaps);

bool swap_loop_is_identity(const DarkContext& ctx, const VerticalState& start, const RouteWord& word,
                           const std::vector<std::size_t>& loop);
bool swap_paths_agree(const DarkContext& ctx, const VerticalState& start, const RouteWord& word,
                      const std::vector<std::size_t>& path1, const std::vector<std::size_t>& path2);

// Random assignment with fibers of size <= max_fiber on each star.
Assignment random_assignment(const LabeledGraph& g, Rng& rng, int max_fiber = 2);

// The composite relation bijection connecting the two-step evaluation of a
// pair of darkenings to the one-step evaluation of their composite; per final
// component. S1 darkens first, then S2.
std::map<int, Bijection> composition_soundness_iso(const LabeledGraph& g,
                                                   const std::vector<VertexId>& s1,
                                                   const std::vector<VertexId>& s2, const Assignment& a);

// ---- derived isomorphisms ----
// Each is the composite relation bijection along its figure's route pair,
// returned on concrete one-cell inputs.
Bijection derived_associator(const Family& m, const Family& n, const Family& p);
// (m . n) . p -> m . (n . p), as evaluations of the two darkening orders
Bijection derived_left_unitor(const Family& m);
Bijection derived_right_unitor(const Family& m);
// evaluations of the unit-insertion routes against the direct route
Bijection derived_shadow_twist(const Family& m, const Family& n);
// sh(m . n) -> sh(n . m)
Bijection derived_base_change_composition(const BaseMap& f, const BaseMap& g);
// the two routes of the composition figure for <A f B] and <B g C]

// ---- figure suites ----
SuiteResult pentagon_suite(std::uint64_t seed, int instances);
SuiteResult unitor_suite(std::uint64_t seed, int instances);
SuiteResult shadow_axiom_suite(std::uint64_t seed, int instances);
SuiteResult shadow_coherence_suite(int max_n, std::uint64_t seed, int instances);
SuiteResult four_isomorphism_suite(std::uint64_t seed, int instances);

// ---- the rotation counterexample ----
struct RotationVerdict {
    bool unequal = false;
    std::string witness;
};
// Builds the two glued squares over B with the twist map f and compares the
// two route automorphisms of X -> X x B; `control_identity` replaces f by the
// identity, which must come out equal.
RotationVerdict negative_test_rotation(std::uint64_t seed, bool control_identity = false,
                                       int base_size = 2);

}  // namespace shadowcalc
