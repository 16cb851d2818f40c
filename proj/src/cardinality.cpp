#include "shadowcalc/cardinality.hpp"

namespace shadowcalc {

namespace {

// position of an element within the total basis of H(x): fibers ordered by
// anchor tuple, elements ascending inside each fiber
std::size_t h_position(const Family& x, const MatrixObject& hx, const Elem& key) {
    const auto& anchor = x.elems.at(key);
    std::size_t off = hx.offset(tuple_elem(anchor));
    for (const auto& [k, a] : x.elems) {
        if (k == key) return off;
        if (a == anchor) ++off;
    }
    throw ShapeMismatch("element not in its own family");
}

}  // namespace

MatrixObject cardinality(const Family& x) {
    MatrixObject out;
    out.base = x.base;
    for (const auto& t : x.base.tuples()) out.rank[tuple_elem(t)] = 0;
    for (const auto& [k, a] : x.elems) out.rank.at(tuple_elem(a)) += 1;
    return out;
}

MatrixMap cardinality_map(const FamilyMap& m) {
    MatrixObject d = cardinality(m.dom), c = cardinality(m.cod);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& [k, a] : m.dom.elems)
        out.at(h_position(m.cod, c, m.el.at(k)), h_position(m.dom, d, k)) = 1;
    return MatrixMap(std::move(d), std::move(c), m.base, std::move(out));
}

MatrixMap h_pull_iso(const LabeledProductMap& f, const Family& y) {
    Family fy = pullback(f, y);
    MatrixObject d = m_pullback(f, cardinality(y));
    MatrixObject c = cardinality(fy);
    Mat out(c.total_dim(), d.total_dim());
    MatrixObject hy = cardinality(y);
    for (const auto& [k, a] : fy.elems) {
        // domain position: the y-element's slot inside the fiber over f(a)
        Elem ykey = f.is_identity() ? k : k.parts()[1];
        std::size_t col = d.offset(tuple_elem(a));
        for (const auto& [k2, a2] : y.elems) {
            if (!(a2 == f.apply(a))) continue;
            if (k2 == ykey) break;
            ++col;
        }
        (void)hy;
        out.at(h_position(fy, c, k), col) = 1;
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

MatrixMap h_push_iso(const LabeledProductMap& f, const Family& x) {
    Family fx = pushforward(f, x);
    MatrixObject hx = cardinality(x);
    MatrixObject d = m_pushforward(f, hx);
    MatrixObject c = cardinality(fx);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& [k, a] : x.elems) {
        // domain position: block of the image tuple, summand of the anchor
        auto image = f.apply(a);
        std::size_t col = d.offset(tuple_elem(image));
        for (const auto& t : f.dom.tuples()) {
            Elem te = tuple_elem(t);
            if (!(tuple_elem(f.apply(t)) == tuple_elem(image))) continue;
            if (t == a) break;
            col += hx.rank_at(te);
        }
        for (const auto& [k2, a2] : x.elems) {
            if (!(a2 == a)) continue;
            if (k2 == k) break;
            ++col;
        }
        out.at(h_position(fx, c, k), col) = 1;
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

MatrixMap h_extern_iso(const Family& x, const Family& y) {
    Family xy = extern_product(x, y);
    MatrixObject hx = cardinality(x), hy = cardinality(y);
    MatrixObject d = m_extern(hx, hy);
    MatrixObject c = cardinality(xy);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& [k, a] : xy.elems) {
        const Elem& kx = k.parts()[0];
        const Elem& ky = k.parts()[1];
        const auto& ax = x.elems.at(kx);
        const auto& ay = y.elems.at(ky);
        std::size_t i = h_position(x, hx, kx) - hx.offset(tuple_elem(ax));
        std::size_t j = h_position(y, hy, ky) - hy.offset(tuple_elem(ay));
        std::size_t col = d.offset(tuple_elem(a)) + i * hy.rank_at(tuple_elem(ay)) + j;
        out.at(h_position(xy, c, k), col) = 1;
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

std::map<int, MatrixMap> h_tensor_iso(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                      const std::map<int, Family>& xs) {
    std::map<int, Family> ts = tensor_along(sigma, cod, xs);
    std::map<int, MatrixObject> hs;
    for (const auto& [u, x] : xs) hs[u] = cardinality(x);
    std::map<int, MatrixObject> ms = m_tensor_along(sigma, cod, hs);
    std::map<int, MatrixMap> out;
    for (int v : cod) {
        std::vector<int> us;
        for (const auto& [u, vv] : sigma)
            if (vv == v) us.push_back(u);
        const Family& t = ts.at(v);
        const MatrixObject& d = ms.at(v);
        MatrixObject c = cardinality(t);
        Mat m(c.total_dim(), d.total_dim());
        for (const auto& [k, a] : t.elems) {
            // mixed-radix column from the per-factor positions
            std::size_t col = 0;
            for (std::size_t p = 0; p < us.size(); ++p) {
                const Family& xu = xs.at(us[p]);
                Elem part = us.size() == 1 ? k : k.parts()[p];
                const auto& pa = xu.elems.at(part);
                MatrixObject hxu = cardinality(xu);
                std::size_t i = h_position(xu, hxu, part) - hxu.offset(tuple_elem(pa));
                std::size_t radix = hxu.rank_at(tuple_elem(pa));
                col = col * radix + i;
            }
            m.at(h_position(t, c, k), d.offset(tuple_elem(a)) + col) = 1;
        }
        out.emplace(v, MatrixMap::vertical(d, std::move(c), std::move(m)));
    }
    return out;
}

}  // namespace shadowcalc
