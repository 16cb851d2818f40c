#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowcalc/util.hpp"

namespace shadowcalc {

using VertexId = int;
using EdgeId = int;

enum class Color2 { Black, White };

struct ValidationIssue {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
    void add(std::string code, std::string detail) { issues.push_back({std::move(code), std::move(detail)}); }
    bool has(const std::string& code) const {
        for (const auto& i : issues)
            if (i.code == code) return true;
        return false;
    }
};

// A finite multigraph with black/white vertices. Parallel edges are allowed,
// loops only at black vertices. White vertices have degree <= 2; degree-1
// whites are external, degree-2 whites internal.
struct ColoredGraph {
    std::map<VertexId, Color2> vertices;
    std::map<EdgeId, std::pair<VertexId, VertexId>> edges;  // unordered ends

    bool operator==(const ColoredGraph& o) const = default;

    int degree(VertexId v) const;  // a loop counts twice
    Color2 color(VertexId v) const { return vertices.at(v); }
    bool is_black(VertexId v) const { return color(v) == Color2::Black; }
    bool is_external_white(VertexId v) const { return color(v) == Color2::White && degree(v) == 1; }
    bool is_internal_white(VertexId v) const { return color(v) == Color2::White && degree(v) == 2; }
    std::vector<VertexId> internal_whites() const;
    std::vector<EdgeId> incident_edges(VertexId v) const;

    // Connected components as a vertex -> representative map (least vertex id).
    std::map<VertexId, VertexId> components() const;
};

ValidationReport validate_graph(const ColoredGraph& g);

// Edge image: either an edge of the target or a single vertex the edge
// collapses onto.
struct EdgeImage {
    bool collapsed = false;
    int id = 0;  // EdgeId when !collapsed, VertexId otherwise
    static EdgeImage edge(EdgeId e) { return {false, e}; }
    static EdgeImage vertex(VertexId v) { return {true, v}; }
    bool operator==(const EdgeImage& o) const = default;
};

struct GraphMap {
    ColoredGraph source, target;
    std::map<VertexId, VertexId> vmap;
    std::map<EdgeId, EdgeImage> emap;

    bool operator==(const GraphMap& o) const = default;

    static GraphMap identity(const ColoredGraph& g);
};

ValidationReport validate_map(const GraphMap& m);

enum class MorphismClass { Darkening, Collapsing, Covering, General, Invalid };

std::string to_string(MorphismClass c);

// Class membership predicates. The identity belongs to all three classes;
// is_darkening admits isomorphisms that recolor zero vertices.
bool is_darkening(const GraphMap& m);
bool is_collapsing(const GraphMap& m);
bool is_covering(const GraphMap& m);

// Deterministic classifier. Checks run in the order invalid, darkening
// (proper, recoloring at least one vertex), collapsing, covering, general;
// color-preserving isomorphisms therefore report collapsing.
MorphismClass classify_map(const GraphMap& m);

struct Factorization {
    GraphMap darkening;   // recolors vertices whose image is black
    GraphMap collapsing;  // collapses edges whose image is a vertex
    GraphMap covering;    // the induced remainder
};

Factorization factorize(const GraphMap& m);

GraphMap compose_maps(const GraphMap& f, const GraphMap& g);  // g after f

}  // namespace shadowcalc
