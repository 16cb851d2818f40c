#include "shadowcalc/json_io.hpp"

#include <sstream>

namespace shadowcalc {

json to_json(const Elem& e) {
    if (e.is_atom()) return json(e.atom_value());
    json arr = json::array();
    for (const auto& p : e.parts()) arr.push_back(to_json(p));
    return arr;
}

Elem elem_from_json(const json& j) {
    if (j.is_number_integer()) return Elem::atom(j.get<std::int64_t>());
    if (!j.is_array()) throw ParseError("element must be an integer or an array");
    std::vector<Elem> parts;
    for (const auto& p : j) parts.push_back(elem_from_json(p));
    return Elem::tuple(std::move(parts));
}

namespace {

// elements double as JSON object keys through their printed form
Elem elem_from_key(const std::string& s) {
    std::size_t pos = 0;
    std::function<Elem()> parse = [&]() -> Elem {
        if (pos >= s.size()) throw ParseError("truncated element key: " + s);
        if (s[pos] == '(') {
            ++pos;
            std::vector<Elem> parts;
            while (pos < s.size() && s[pos] != ')') {
                parts.push_back(parse());
                if (pos < s.size() && s[pos] == ',') ++pos;
            }
            if (pos >= s.size()) throw ParseError("unbalanced element key: " + s);
            ++pos;
            return Elem::tuple(std::move(parts));
        }
        std::size_t start = pos;
        if (s[pos] == '-') ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return Elem::atom(std::stoll(s.substr(start, pos - start)));
    };
    Elem e = parse();
    if (pos != s.size()) throw ParseError("trailing characters in element key: " + s);
    return e;
}

}  // namespace

json to_json(const BaseObject& o) {
    json elems = json::array();
    for (const auto& e : o.elems) elems.push_back(to_json(e));
    return json{{"elems", elems}};
}

BaseObject base_object_from_json(const json& j) {
    std::vector<Elem> elems;
    for (const auto& e : j.at("elems")) elems.push_back(elem_from_json(e));
    return BaseObject(std::move(elems));
}

json to_json(const BaseMap& m) {
    json fn = json::object();
    for (const auto& [k, v] : m.fn) fn[k.str()] = to_json(v);
    return json{{"dom", to_json(m.dom)}, {"cod", to_json(m.cod)}, {"map", fn}};
}

BaseMap base_map_from_json(const json& j) {
    BaseObject dom = base_object_from_json(j.at("dom"));
    BaseObject cod = base_object_from_json(j.at("cod"));
    std::map<Elem, Elem> fn;
    for (const auto& [k, v] : j.at("map").items()) fn[elem_from_key(k)] = elem_from_json(v);
    return BaseMap(std::move(dom), std::move(cod), std::move(fn));
}

json to_json(const ColoredGraph& g) {
    json vs = json::array(), es = json::array();
    for (const auto& [v, c] : g.vertices)
        vs.push_back(json{{"id", v}, {"color", c == Color2::Black ? "black" : "white"}});
    for (const auto& [e, ends] : g.edges)
        es.push_back(json{{"id", e}, {"ends", json::array({ends.first, ends.second})}});
    return json{{"vertices", vs}, {"edges", es}};
}

ColoredGraph graph_from_json(const json& j) {
    ColoredGraph g;
    for (const auto& v : j.at("vertices")) {
        std::string c = v.at("color").get<std::string>();
        if (c != "black" && c != "white") throw ParseError("vertex color must be black or white");
        g.vertices[v.at("id").get<int>()] = c == "black" ? Color2::Black : Color2::White;
    }
    for (const auto& e : j.at("edges"))
        g.edges[e.at("id").get<int>()] = {e.at("ends").at(0).get<int>(), e.at("ends").at(1).get<int>()};
    return g;
}

json to_json(const GraphMap& m) {
    json vmap = json::object(), emap = json::object();
    for (const auto& [v, w] : m.vmap) vmap[std::to_string(v)] = w;
    for (const auto& [e, img] : m.emap)
        emap[std::to_string(e)] = img.collapsed ? json{{"vertex", img.id}} : json{{"edge", img.id}};
    return json{{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"vmap", vmap},
                {"emap", emap}};
}

GraphMap graph_map_from_json(const json& j) {
    GraphMap m;
    m.source = graph_from_json(j.at("source"));
    m.target = graph_from_json(j.at("target"));
    for (const auto& [k, v] : j.at("vmap").items()) m.vmap[std::stoi(k)] = v.get<int>();
    for (const auto& [k, v] : j.at("emap").items()) {
        if (v.contains("edge"))
            m.emap[std::stoi(k)] = EdgeImage::edge(v.at("edge").get<int>());
        else
            m.emap[std::stoi(k)] = EdgeImage::vertex(v.at("vertex").get<int>());
    }
    return m;
}

json to_json(const LabeledGraph& g) {
    json orient = json::object(), elabel = json::object(), vlabel = json::object();
    for (const auto& [v, o] : g.orient)
        orient[std::to_string(v)] = json{{"src", o.src}, {"tgt", o.tgt}};
    for (const auto& [e, lab] : g.edge_label) elabel[std::to_string(e)] = to_json(lab);
    for (const auto& [v, m] : g.vertex_label) vlabel[std::to_string(v)] = to_json(m);
    json out = to_json(g.graph);
    out["orient"] = orient;
    out["edgeLabel"] = elabel;
    out["vertexLabel"] = vlabel;
    return out;
}

LabeledGraph labeled_graph_from_json(const json& j) {
    LabeledGraph g;
    g.graph = graph_from_json(j);
    if (j.contains("orient"))
        for (const auto& [k, v] : j.at("orient").items())
            g.orient[std::stoi(k)] = {v.at("src").get<int>(), v.at("tgt").get<int>()};
    if (j.contains("edgeLabel"))
        for (const auto& [k, v] : j.at("edgeLabel").items())
            g.edge_label[std::stoi(k)] = base_object_from_json(v);
    if (j.contains("vertexLabel"))
        for (const auto& [k, v] : j.at("vertexLabel").items())
            g.vertex_label.emplace(std::stoi(k), base_map_from_json(v));
    return g;
}

json to_json(const LabeledGraphMap& m) {
    json iota = json::object();
    for (const auto& [e, io] : m.iota) iota[std::to_string(e)] = to_json(io);
    json und = to_json(m.underlying);
    return json{{"source", to_json(m.source)},
                {"target", to_json(m.target)},
                {"vmap", und.at("vmap")},
                {"emap", und.at("emap")},
                {"iota", iota}};
}

LabeledGraphMap labeled_graph_map_from_json(const json& j) {
    LabeledGraphMap m;
    m.source = labeled_graph_from_json(j.at("source"));
    m.target = labeled_graph_from_json(j.at("target"));
    json und{{"source", json(j.at("source"))}, {"target", json(j.at("target"))},
             {"vmap", j.at("vmap")}, {"emap", j.at("emap")}};
    m.underlying = graph_map_from_json(und);
    if (j.contains("iota"))
        for (const auto& [k, v] : j.at("iota").items()) m.iota.emplace(std::stoi(k), base_map_from_json(v));
    return m;
}

json to_json(const Coloring& c) {
    json colors = json::object();
    for (const auto& [v, s] : c.shades)
        colors[std::to_string(v)] =
            s == Color3::White ? "white" : (s == Color3::Gray ? "gray" : "black");
    return json{{"colors", colors}};
}

Coloring coloring_from_json(const json& j) {
    Coloring c;
    for (const auto& [k, v] : j.at("colors").items()) {
        std::string s = v.get<std::string>();
        if (s != "white" && s != "gray" && s != "black") throw ParseError("bad shade " + s);
        c.shades[std::stoi(k)] = s == "white" ? Color3::White : (s == "gray" ? Color3::Gray : Color3::Black);
    }
    return c;
}

json to_json(const LabeledProduct& p) {
    json factors = json::object();
    for (const auto& [i, obj] : p.factors) factors[std::to_string(i)] = to_json(obj);
    return json{{"factors", factors}};
}

LabeledProduct labeled_product_from_json(const json& j) {
    LabeledProduct p;
    for (const auto& [k, v] : j.at("factors").items()) p.factors[std::stoi(k)] = base_object_from_json(v);
    return p;
}

json to_json(const Family& f) {
    json elems = json::array();
    for (const auto& [k, anchor] : f.elems) {
        json a = json::array();
        for (const auto& [i, e] : anchor) a.push_back(json::array({i, to_json(e)}));
        elems.push_back(json{{"id", to_json(k)}, {"anchor", a}});
    }
    return json{{"base", to_json(f.base)}, {"elems", elems}};
}

Family family_from_json(const json& j) {
    Family f;
    f.base = labeled_product_from_json(j.at("base"));
    for (const auto& e : j.at("elems")) {
        std::map<IndexId, Elem> anchor;
        for (const auto& pair : e.at("anchor")) anchor[pair.at(0).get<int>()] = elem_from_json(pair.at(1));
        f.insert(elem_from_json(e.at("id")), std::move(anchor));
    }
    return f;
}

json to_json(const Assignment& a) {
    json comps = json::object();
    for (const auto& [u, f] : a.comp) comps[std::to_string(u)] = to_json(f);
    return json{{"components", comps}};
}

Assignment assignment_from_json(const json& j) {
    Assignment a;
    for (const auto& [k, v] : j.at("components").items()) a.comp[std::stoi(k)] = family_from_json(v);
    return a;
}

json to_json(const ValidationReport& r) {
    json issues = json::array();
    for (const auto& i : r.issues) issues.push_back(json{{"code", i.code}, {"detail", i.detail}});
    return json{{"valid", r.valid()}, {"issues", issues}};
}

json to_json(const OperationPlan& p) {
    json steps = json::array();
    for (const auto& st : p.steps) {
        json s;
        switch (st.kind) {
            case PlanStep::Kind::Tensor: s["kind"] = "tensor"; break;
            case PlanStep::Kind::Pull: s["kind"] = "pullback"; break;
            case PlanStep::Kind::Push: s["kind"] = "pushforward"; break;
            case PlanStep::Kind::GraphPull: s["kind"] = "graph-pullback"; break;
        }
        if (st.kind == PlanStep::Kind::Tensor) {
            json sig = json::object();
            for (const auto& [u, v] : st.sigma) sig[std::to_string(u)] = v;
            s["sigma"] = sig;
        } else {
            json maps = json::object();
            for (const auto& [u, f] : st.maps) {
                json idx = json::object();
                for (const auto& [i, t] : f.index_map) idx[std::to_string(i)] = t;
                maps[std::to_string(u)] = json{{"index_map", idx}};
            }
            s["maps"] = maps;
        }
        steps.push_back(std::move(s));
    }
    return json{{"steps", steps}};
}

std::string to_dot(const LabeledGraph& g, const Coloring* coloring) {
    std::ostringstream os;
    os << "graph G {\n  node [shape=circle];\n";
    for (const auto& [v, c] : g.graph.vertices) {
        std::string style = "filled";
        std::string fill = "black";
        if (c == Color2::White) fill = "white";
        if (coloring && g.graph.is_internal_white(v)) {
            Color3 s = coloring->at(v);
            fill = s == Color3::White ? "white" : (s == Color3::Gray ? "gray" : "black");
        }
        os << "  v" << v << " [style=" << style << ", fillcolor=" << fill
           << (fill == "black" ? ", fontcolor=white" : "") << ", label=\"" << v << "\"];\n";
    }
    for (const auto& [e, ends] : g.graph.edges) {
        os << "  v" << ends.first << " -- v" << ends.second << " [label=\"" << e;
        auto it = g.edge_label.find(e);
        if (it != g.edge_label.end()) os << " |" << it->second.size() << "|";
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace shadowcalc
