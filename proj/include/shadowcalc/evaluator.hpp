#pragma once

#include "shadowcalc/coloring.hpp"
#include "shadowcalc/ddiagram.hpp"
#include "shadowcalc/family.hpp"
#include "shadowcalc/matrix.hpp"

namespace shadowcalc {

// One step of a compiled operation plan, acting componentwise on an
// assignment. `maps` holds the base map per target component:
//   Pull      pullback along f: new base -> old base
//   Push      pushforward along f: old base -> new base
//   GraphPull pullback along the product identification of a graph map
struct PlanStep {
    enum class Kind { Tensor, Pull, Push, GraphPull };
    Kind kind = Kind::Tensor;
    std::map<int, int> sigma;          // Tensor: dom component -> cod component
    std::vector<int> cod_components;   // Tensor
    std::map<int, LabeledProductMap> maps;
    std::map<int, LabeledProduct> before, after;  // per-component base stamps
};

struct OperationPlan {
    std::vector<PlanStep> steps;
    std::map<int, LabeledProduct> source_stamp() const;
    std::map<int, LabeledProduct> target_stamp() const;
};

// The four-stage generator word of a gigantic morphism: tensor along the
// component map, then white-to-gray pullbacks, gray-to-black pushforwards,
// and the pullback along the graph map, each vertex stage in ascending
// vertex order.
OperationPlan generator_decomposition(const GiganticMorphism& m);

// Compile a labeled graph map through the embedding.
OperationPlan plan_from(const LabeledGraphMap& m);

// Restriction of labeled products and their maps to glue components.
std::map<int, LabeledProduct> split_product(const LabeledProduct& p, const std::map<EdgeId, int>& glue,
                                            const std::vector<int>& comps);
std::map<int, LabeledProductMap> split_lpm(const LabeledProductMap& f, const std::map<EdgeId, int>& glue_dom,
                                           const std::map<EdgeId, int>& glue_cod,
                                           const std::vector<int>& comps);

template <class Obj>
struct AssignmentT {
    std::map<int, Obj> comp;
    bool operator==(const AssignmentT& o) const = default;
};
using Assignment = AssignmentT<Family>;
using MatrixAssignment = AssignmentT<MatrixObject>;

// Backend operation bundles for the evaluator.
struct FamilyBackend {
    using Obj = Family;
    using Map = FamilyMap;
    static Obj pull(const LabeledProductMap& f, const Obj& y) { return pullback(f, y); }
    static Obj push(const LabeledProductMap& f, const Obj& x) { return pushforward(f, x); }
    static std::map<int, Obj> tensor(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                     const std::map<int, Obj>& xs) {
        return tensor_along(sigma, cod, xs);
    }
    static Map pull_map(const LabeledProductMap& f, const Map& m) { return pullback_map(f, m); }
    static Map push_map(const LabeledProductMap& f, const Map& m) { return pushforward_map(f, m); }
    static std::map<int, Map> tensor_map(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                         const std::map<int, Map>& ms) {
        return tensor_along_map(sigma, cod, ms);
    }
    static Map id_map(const Obj& x) { return Map::identity(x); }
    static const LabeledProduct& base_of(const Obj& x) { return x.base; }
};

struct MatrixBackend {
    using Obj = MatrixObject;
    using Map = MatrixMap;
    static Obj pull(const LabeledProductMap& f, const Obj& y) { return m_pullback(f, y); }
    static Obj push(const LabeledProductMap& f, const Obj& x) { return m_pushforward(f, x); }
    static std::map<int, Obj> tensor(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                     const std::map<int, Obj>& xs) {
        return m_tensor_along(sigma, cod, xs);
    }
    static Map pull_map(const LabeledProductMap& f, const Map& m) { return m_pullback_map(f, m); }
    static Map push_map(const LabeledProductMap& f, const Map& m) { return m_pushforward_map(f, m); }
    static std::map<int, Map> tensor_map(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                         const std::map<int, Map>& ms) {
        return m_tensor_along_map(sigma, cod, ms);
    }
    static Map id_map(const Obj& x) { return Map::identity(x); }
    static const LabeledProduct& base_of(const Obj& x) { return x.base; }
};

template <class B>
AssignmentT<typename B::Obj> evaluate(const OperationPlan& plan, const AssignmentT<typename B::Obj>& a);

// Functorial action on vertical maps between assignments.
template <class B>
std::map<int, typename B::Map> evaluate_map(const OperationPlan& plan,
                                            const std::map<int, typename B::Map>& ms);

extern template AssignmentT<Family> evaluate<FamilyBackend>(const OperationPlan&, const AssignmentT<Family>&);
extern template AssignmentT<MatrixObject> evaluate<MatrixBackend>(const OperationPlan&,
                                                                  const AssignmentT<MatrixObject>&);
extern template std::map<int, FamilyMap> evaluate_map<FamilyBackend>(const OperationPlan&,
                                                                     const std::map<int, FamilyMap>&);
extern template std::map<int, MatrixMap> evaluate_map<MatrixBackend>(const OperationPlan&,
                                                                     const std::map<int, MatrixMap>&);

// Figure graphs. Paths have vertices 0..n and edges 0..n-1 left to right;
// cycles have vertices 0..n-1 with edge i joining i and i+1 mod n. Vertex
// labels default to identities on the shared edge label.
LabeledGraph make_path(const std::vector<Color2>& colors, const std::vector<BaseObject>& edge_labels,
                       const std::map<VertexId, BaseMap>& vertex_labels = {});
LabeledGraph make_cycle(const std::vector<Color2>& colors, const std::vector<BaseObject>& edge_labels,
                        const std::map<VertexId, BaseMap>& vertex_labels = {});

// The darkening morphism of a graph: identity on the underlying graph except
// that the listed internal whites become black; identifications are trivial.
LabeledGraphMap darkening_map(const LabeledGraph& g, const std::vector<VertexId>& to_black);

// Transport a family along a bijective reindexing of its base product.
Family reindex_family(const Family& x, const std::map<IndexId, IndexId>& fresh_index);
MatrixObject reindex_matrix(const MatrixObject& x, const std::map<IndexId, IndexId>& fresh_index);

// The ten named operations of the calculus, family backend. One-cells over
// A x B live over the two-index product {0: A, 1: B}.
LabeledProduct one_cell_base(const BaseObject& a, const BaseObject& b);
Family op_I();
Family op_unit(const BaseObject& b);                                   // U_B
Family op_base_change_l(const BaseMap& f);                             // <A f B] over A x B
Family op_base_change_r(const BaseMap& f);                             // [B f A> over B x A
Family op_odot(const Family& m, const Family& n);                      // m odot n
Family op_shadow(const Family& m);                                     // sh(m), over the empty product
Family op_pull(const BaseMap& f, const Family& m);                     // (f x 1)-style pullback on slot 0
Family op_push(const BaseMap& f, const Family& m);                     // pushforward on slot 1
Family op_boxtimes(const std::vector<Family>& ms);                     // external product of one-cells
Family op_twisted_boxtimes(const std::vector<Family>& ms);             // cyclically twisted product
Family op_cover_pullback(const LabeledGraphMap& cover, const Assignment& a);

// Locality: evaluating a diagram of maps before and after cutting along a
// valid system of cut sets gives identical assignments; disjoint unions
// evaluate to the product of the reports.
struct CoherenceVerdict {
    bool equal = true;
    std::string witness;
};
CoherenceVerdict check_locality(const LabeledGraphMap& m, const std::vector<VertexId>& source_cut,
                                const std::vector<VertexId>& target_cut, const Assignment& a);

}  // namespace shadowcalc
