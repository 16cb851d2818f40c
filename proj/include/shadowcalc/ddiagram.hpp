#pragma once

#include "shadowcalc/coloring.hpp"
#include "shadowcalc/labeled_product.hpp"

namespace shadowcalc {

// The labeled product indexed by the gray edges of a coloring, with the
// representative's edge label as each factor.
LabeledProduct d_object(const LabeledGraph& g, const Coloring& c);

// The map D(c_gray) -> D(c_prime) for a single-vertex flip of c_gray to white
// or black. Component at an index t of c_prime: project to the containing
// gray edge s of c_gray and apply the composite vertex label along the
// oriented path from rep(s) to rep(t); gray edges with no preimage are
// projected away.
LabeledProductMap d_arrow(const LabeledGraph& g, const Coloring& c_gray, const Coloring& c_prime);

// The same rule for simultaneous flips of several vertices away from gray,
// all in the same direction per vertex.
LabeledProductMap d_arrow_multi(const LabeledGraph& g, const Coloring& c_gray, const Coloring& c_prime);

// The map D(c on target) -> D(h*c on source) for a labeled graph map: the
// edge identification at the representative followed by the projection onto
// the preimage representative's factor.
LabeledProductMap d_along_graphmap(const LabeledGraphMap& h, const Coloring& c);

// The component of an edge identification at one preimage edge.
BaseMap iota_component(const LabeledGraphMap& m, EdgeId target_edge, EdgeId preimage_edge);

// Every relation square of the rotated darkening cube (one vertex to white,
// one to black) must land on a Beck-Chevalley square in the labeled product
// category; the report lists failures.
ValidationReport check_rotation_bc(const LabeledGraph& g);

}  // namespace shadowcalc
