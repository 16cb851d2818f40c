#include "shadowcalc/matrix.hpp"

#include <algorithm>

namespace shadowcalc {

Mat Mat::eye(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols != o.rows) throw ShapeMismatch("matrix product shape");
    Mat r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

Int Mat::trace() const {
    if (rows != cols) throw ShapeMismatch("trace of a non-square matrix");
    Int t = 0;
    for (std::size_t i = 0; i < rows; ++i) t += at(i, i);
    return t;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    r.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

MatrixObject MatrixObject::constant(const LabeledProduct& base, const Int& r) {
    MatrixObject x;
    x.base = base;
    for (const auto& t : base.tuples()) x.rank[tuple_elem(t)] = r;
    return x;
}

std::size_t MatrixObject::total_dim() const {
    std::size_t d = 0;
    for (const auto& [t, r] : rank) d += static_cast<std::size_t>(r);
    return d;
}

std::size_t MatrixObject::offset(const Elem& tuple) const {
    std::size_t off = 0;
    for (const auto& [t, r] : rank) {
        if (t == tuple) return off;
        off += static_cast<std::size_t>(r);
    }
    throw ShapeMismatch("tuple outside the base product");
}

std::size_t MatrixObject::rank_at(const Elem& tuple) const {
    return static_cast<std::size_t>(rank.at(tuple));
}

MatrixObject unit_module() { return MatrixObject::constant(LabeledProduct::empty(), 1); }

MatrixMap::MatrixMap(MatrixObject d, MatrixObject c, LabeledProductMap b, Mat mat)
    : dom(std::move(d)), cod(std::move(c)), base(std::move(b)), m(std::move(mat)) {
    if (!(base.dom == dom.base) || !(base.cod == cod.base))
        throw BaseMismatch("matrix map base endpoints disagree");
    if (m.rows != cod.total_dim() || m.cols != dom.total_dim())
        throw ShapeMismatch("matrix map dimensions disagree with the ranks");
    // block support: nonzero entries only in (image tuple, tuple) blocks
    for (const auto& t : dom.base.tuples()) {
        Elem te = tuple_elem(t);
        Elem ie = tuple_elem(base.apply(t));
        std::size_t c0 = dom.offset(te), cn = dom.rank_at(te);
        std::size_t r0 = cod.offset(ie), rn = cod.rank_at(ie);
        for (std::size_t j = c0; j < c0 + cn; ++j)
            for (std::size_t i = 0; i < m.rows; ++i)
                if (m.at(i, j) != 0 && (i < r0 || i >= r0 + rn))
                    throw ShapeMismatch("matrix map entry outside its block");
    }
}

MatrixMap MatrixMap::identity(const MatrixObject& x) {
    return MatrixMap(x, x, LabeledProductMap::identity(x.base), Mat::eye(x.total_dim()));
}

MatrixMap MatrixMap::vertical(MatrixObject d, MatrixObject c, Mat mat) {
    LabeledProductMap b = LabeledProductMap::identity(d.base);
    return MatrixMap(std::move(d), std::move(c), std::move(b), std::move(mat));
}

bool MatrixMap::is_bijective() const {
    if (m.rows != m.cols) return false;
    // integer invertibility is only needed for permutation-like blocks here;
    // test by requiring exactly one +/-1 per row and column
    std::vector<int> rowc(m.rows, 0), colc(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Int& v = m.at(i, j);
            if (v == 0) continue;
            if (v != 1 && v != -1) return false;
            ++rowc[i];
            ++colc[j];
        }
    for (std::size_t i = 0; i < m.rows; ++i)
        if (rowc[i] != 1 || colc[i] != 1) return false;
    return true;
}

MatrixMap MatrixMap::inverse() const {
    if (!is_bijective()) throw ShapeMismatch("inverse of a non-invertible matrix map");
    std::map<IndexId, IndexId> idx;
    std::map<IndexId, BaseMap> comps;
    for (const auto& [u, t] : base.index_map) {
        if (idx.count(t)) throw ShapeMismatch("base map of matrix bijection is not invertible");
        idx[t] = u;
    }
    for (const auto& [t, obj] : base.dom.factors) comps.emplace(t, base.component.at(idx.at(t)).inverse());
    LabeledProductMap inv_base(base.cod, base.dom, std::move(idx), std::move(comps));
    Mat inv = m.transpose();
    for (auto& v : inv.a)
        if (v == -1) v = -1;  // signed permutation transpose is the inverse
    return MatrixMap(cod, dom, std::move(inv_base), std::move(inv));
}

MatrixMap compose(const MatrixMap& f, const MatrixMap& g) {
    if (!(f.cod == g.dom)) throw CompositionMismatch("matrix maps do not compose");
    return MatrixMap(f.dom, g.cod, compose(f.base, g.base), g.m * f.m);
}

namespace {

std::map<IndexId, Elem> restrict_tuple(const std::map<IndexId, Elem>& t, const LabeledProduct& p) {
    std::map<IndexId, Elem> out;
    for (const auto& [i, obj] : p.factors) out[i] = t.at(i);
    return out;
}

}  // namespace

MatrixObject m_pullback(const LabeledProductMap& f, const MatrixObject& y) {
    if (!(f.cod == y.base)) throw BaseMismatch("pullback base mismatch");
    MatrixObject out;
    out.base = f.dom;
    for (const auto& t : f.dom.tuples()) out.rank[tuple_elem(t)] = y.rank.at(tuple_elem(f.apply(t)));
    return out;
}

MatrixObject m_pushforward(const LabeledProductMap& f, const MatrixObject& x) {
    if (!(f.dom == x.base)) throw BaseMismatch("pushforward base mismatch");
    MatrixObject out;
    out.base = f.cod;
    for (const auto& t : f.cod.tuples()) out.rank[tuple_elem(t)] = 0;
    for (const auto& t : f.dom.tuples()) out.rank.at(tuple_elem(f.apply(t))) += x.rank.at(tuple_elem(t));
    return out;
}

MatrixObject m_extern(const MatrixObject& x, const MatrixObject& y) {
    MatrixObject out;
    out.base = lp_union(x.base, y.base);
    for (const auto& t : out.base.tuples())
        out.rank[tuple_elem(t)] = x.rank.at(tuple_elem(restrict_tuple(t, x.base))) *
                                  y.rank.at(tuple_elem(restrict_tuple(t, y.base)));
    return out;
}

MatrixObject m_tensor_list(const std::vector<MatrixObject>& xs) {
    if (xs.empty()) return unit_module();
    MatrixObject out = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) out = m_extern(out, xs[i]);
    return out;
}

std::map<int, MatrixObject> m_tensor_along(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                           const std::map<int, MatrixObject>& xs) {
    std::map<int, MatrixObject> out;
    for (int v : cod) {
        std::vector<MatrixObject> fiber;
        for (const auto& [u, vv] : sigma)
            if (vv == v) fiber.push_back(xs.at(u));
        out[v] = m_tensor_list(fiber);
    }
    return out;
}

MatrixMap m_pullback_map(const LabeledProductMap& f, const MatrixMap& mm) {
    if (!mm.is_vertical()) throw ShapeMismatch("pullback of a non-vertical matrix map");
    MatrixObject d = m_pullback(f, mm.dom), c = m_pullback(f, mm.cod);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& t : f.dom.tuples()) {
        Elem te = tuple_elem(t), ie = tuple_elem(f.apply(t));
        std::size_t dc = d.offset(te), dr = c.offset(te);
        std::size_t sc = mm.dom.offset(ie), sr = mm.cod.offset(ie);
        for (std::size_t i = 0; i < c.rank_at(te); ++i)
            for (std::size_t j = 0; j < d.rank_at(te); ++j) out.at(dr + i, dc + j) = mm.m.at(sr + i, sc + j);
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

MatrixMap m_pushforward_map(const LabeledProductMap& f, const MatrixMap& mm) {
    if (!mm.is_vertical()) throw ShapeMismatch("pushforward of a non-vertical matrix map");
    MatrixObject d = m_pushforward(f, mm.dom), c = m_pushforward(f, mm.cod);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& t : f.dom.tuples()) {
        Elem te = tuple_elem(t), ie = tuple_elem(f.apply(t));
        // offsets of the t-summand within the image blocks
        std::size_t drow = c.offset(ie), dcol = d.offset(ie);
        for (const auto& t2 : f.dom.tuples()) {
            Elem t2e = tuple_elem(t2);
            if (!(tuple_elem(f.apply(t2)) == ie)) continue;
            if (t2e < te) {
                dcol += mm.dom.rank_at(t2e);
                drow += mm.cod.rank_at(t2e);
            }
            if (t2e == te) break;
        }
        std::size_t sc = mm.dom.offset(te), sr = mm.cod.offset(te);
        for (std::size_t i = 0; i < mm.cod.rank_at(te); ++i)
            for (std::size_t j = 0; j < mm.dom.rank_at(te); ++j)
                out.at(drow + i, dcol + j) = mm.m.at(sr + i, sc + j);
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

MatrixMap m_extern_map(const MatrixMap& mm, const MatrixMap& nn) {
    MatrixObject d = m_extern(mm.dom, nn.dom), c = m_extern(mm.cod, nn.cod);
    Mat out(c.total_dim(), d.total_dim());
    LabeledProductMap b = lp_union_map(mm.base, nn.base);
    for (const auto& t : d.base.tuples()) {
        auto tm = restrict_tuple(t, mm.dom.base);
        auto tn = restrict_tuple(t, nn.dom.base);
        auto im = mm.base.apply(tm);
        auto in = nn.base.apply(tn);
        auto it = b.apply(t);
        Elem tme = tuple_elem(tm), tne = tuple_elem(tn), ime = tuple_elem(im), ine = tuple_elem(in);
        std::size_t rn = nn.dom.rank_at(tne), rcn = nn.cod.rank_at(ine);
        std::size_t dcol = d.offset(tuple_elem(t)), drow = c.offset(tuple_elem(it));
        for (std::size_t i = 0; i < mm.cod.rank_at(ime); ++i)
            for (std::size_t j = 0; j < mm.dom.rank_at(tme); ++j)
                for (std::size_t k = 0; k < rcn; ++k)
                    for (std::size_t l = 0; l < rn; ++l)
                        out.at(drow + i * rcn + k, dcol + j * rn + l) =
                            mm.m.at(mm.cod.offset(ime) + i, mm.dom.offset(tme) + j) *
                            nn.m.at(nn.cod.offset(ine) + k, nn.dom.offset(tne) + l);
    }
    return MatrixMap(std::move(d), std::move(c), std::move(b), std::move(out));
}

std::map<int, MatrixMap> m_tensor_along_map(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                            const std::map<int, MatrixMap>& ms) {
    std::map<int, MatrixMap> out;
    for (int v : cod) {
        std::vector<const MatrixMap*> fiber;
        for (const auto& [u, vv] : sigma)
            if (vv == v) fiber.push_back(&ms.at(u));
        if (fiber.empty()) {
            out.emplace(v, MatrixMap::identity(unit_module()));
            continue;
        }
        MatrixMap acc = *fiber[0];
        for (std::size_t i = 1; i < fiber.size(); ++i) acc = m_extern_map(acc, *fiber[i]);
        out.emplace(v, std::move(acc));
    }
    return out;
}

MatrixMap m_cartesian_arrow(const LabeledProductMap& f, const MatrixObject& y) {
    MatrixObject d = m_pullback(f, y);
    Mat out(y.total_dim(), d.total_dim());
    for (const auto& t : f.dom.tuples()) {
        Elem te = tuple_elem(t), ie = tuple_elem(f.apply(t));
        for (std::size_t i = 0; i < d.rank_at(te); ++i) out.at(y.offset(ie) + i, d.offset(te) + i) = 1;
    }
    return MatrixMap(std::move(d), y, f, std::move(out));
}

MatrixMap m_cocartesian_arrow(const LabeledProductMap& f, const MatrixObject& x) {
    MatrixObject c = m_pushforward(f, x);
    Mat out(c.total_dim(), x.total_dim());
    for (const auto& t : f.dom.tuples()) {
        Elem te = tuple_elem(t), ie = tuple_elem(f.apply(t));
        std::size_t drow = c.offset(ie);
        for (const auto& t2 : f.dom.tuples()) {
            Elem t2e = tuple_elem(t2);
            if (!(tuple_elem(f.apply(t2)) == ie)) continue;
            if (t2e < te) drow += x.rank_at(t2e);
            if (t2e == te) break;
        }
        for (std::size_t i = 0; i < x.rank_at(te); ++i) out.at(drow + i, x.offset(te) + i) = 1;
    }
    return MatrixMap(x, std::move(c), f, std::move(out));
}

bool m_is_cartesian(const MatrixMap& mm) {
    // per dom tuple: the block onto the image tuple is an identity-sized
    // invertible permutation-like block
    for (const auto& t : mm.dom.base.tuples()) {
        Elem te = tuple_elem(t), ie = tuple_elem(mm.base.apply(t));
        if (mm.dom.rank_at(te) != mm.cod.rank_at(ie)) return false;
        std::size_t n = mm.dom.rank_at(te);
        Mat blk(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) blk.at(i, j) = mm.m.at(mm.cod.offset(ie) + i, mm.dom.offset(te) + j);
        MatrixObject tmp = MatrixObject::constant(LabeledProduct::empty(), Int(n));
        if (!MatrixMap::vertical(tmp, tmp, blk).is_bijective()) return false;
    }
    return true;
}

bool m_is_cocartesian(const MatrixMap& mm) { return mm.is_bijective(); }

MatrixMap m_iso_comp_pull(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x) {
    MatrixObject d = m_pullback(compose(f, g), x);
    MatrixObject c = m_pullback(f, m_pullback(g, x));
    return MatrixMap::vertical(d, c, Mat::eye(d.total_dim()));
}

MatrixMap m_iso_comp_push(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x) {
    LabeledProductMap fg = compose(f, g);
    MatrixObject d = m_pushforward(fg, x);
    MatrixObject mid = m_pushforward(f, x);
    MatrixObject c = m_pushforward(g, mid);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& a : f.dom.tuples()) {
        Elem ae = tuple_elem(a);
        Elem be = tuple_elem(f.apply(a));
        Elem ce = tuple_elem(fg.apply(a));
        // dom position: within the flat c-block, summands ascending by a
        std::size_t dcol = d.offset(ce);
        for (const auto& a2 : f.dom.tuples()) {
            Elem a2e = tuple_elem(a2);
            if (!(tuple_elem(fg.apply(a2)) == ce)) continue;
            if (a2e < ae) dcol += x.rank_at(a2e);
            if (a2e == ae) break;
        }
        // cod position: by b ascending, then a ascending within b
        std::size_t drow = c.offset(ce);
        for (const auto& b2 : f.cod.tuples()) {
            Elem b2e = tuple_elem(b2);
            if (!(tuple_elem(g.apply(b2)) == ce)) continue;
            if (b2e < be) drow += mid.rank_at(b2e);
            if (b2e == be) break;
        }
        for (const auto& a2 : f.dom.tuples()) {
            Elem a2e = tuple_elem(a2);
            if (!(tuple_elem(f.apply(a2)) == be)) continue;
            if (a2e < ae) drow += x.rank_at(a2e);
            if (a2e == ae) break;
        }
        for (std::size_t i = 0; i < x.rank_at(ae); ++i) out.at(drow + i, dcol + i) = 1;
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

MatrixMap m_beck_chevalley_map(const LabeledProductMap& f, const LabeledProductMap& h,
                               const LabeledProductMap& g, const LabeledProductMap& k,
                               const MatrixObject& z) {
    if (!(compose(f, g) == compose(h, k))) throw NotCommuting("Beck-Chevalley square does not commute");
    MatrixObject hz = m_pullback(h, z);
    MatrixObject d = m_pushforward(f, hz);
    MatrixObject kz = m_pushforward(k, z);
    MatrixObject c = m_pullback(g, kz);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& a : f.dom.tuples()) {
        Elem ae = tuple_elem(a);
        Elem be = tuple_elem(f.apply(a));
        Elem ce = tuple_elem(h.apply(a));
        std::size_t dcol = d.offset(be);
        for (const auto& a2 : f.dom.tuples()) {
            Elem a2e = tuple_elem(a2);
            if (!(tuple_elem(f.apply(a2)) == be)) continue;
            if (a2e < ae) dcol += hz.rank_at(a2e);
            if (a2e == ae) break;
        }
        // cod row: pullback block at b of k_! z: summands over k-fibers of g(b)
        Elem gbe = tuple_elem(compose(f, g).apply(a));
        std::size_t drow = c.offset(be);
        for (const auto& c2 : k.dom.tuples()) {
            Elem c2e = tuple_elem(c2);
            if (!(tuple_elem(k.apply(c2)) == gbe)) continue;
            if (c2e < ce) drow += z.rank_at(c2e);
            if (c2e == ce) break;
        }
        for (std::size_t i = 0; i < z.rank_at(ce); ++i) out.at(drow + i, dcol + i) = 1;
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

MatrixMap m_beck_chevalley_iso(const LabeledProductMap& f, const LabeledProductMap& h,
                               const LabeledProductMap& g, const LabeledProductMap& k,
                               const MatrixObject& z) {
    if (!is_beck_chevalley(f, h, g, k))
        throw NotBeckChevalley("cannot invert the Beck-Chevalley map of a non-Beck-Chevalley square");
    MatrixMap m = m_beck_chevalley_map(f, h, g, k, z);
    if (!m.is_bijective()) throw NotBeckChevalley("Beck-Chevalley matrix failed to invert");
    return m;
}

MatrixMap m_unit_map(const LabeledProductMap& f, const MatrixObject& x) {
    MatrixObject fx = m_pushforward(f, x);
    MatrixObject c = m_pullback(f, fx);
    Mat out(c.total_dim(), x.total_dim());
    for (const auto& a : f.dom.tuples()) {
        Elem ae = tuple_elem(a);
        Elem be = tuple_elem(f.apply(a));
        std::size_t drow = c.offset(ae);
        for (const auto& a2 : f.dom.tuples()) {
            Elem a2e = tuple_elem(a2);
            if (!(tuple_elem(f.apply(a2)) == be)) continue;
            if (a2e < ae) drow += x.rank_at(a2e);
            if (a2e == ae) break;
        }
        for (std::size_t i = 0; i < x.rank_at(ae); ++i) out.at(drow + i, x.offset(ae) + i) = 1;
    }
    return MatrixMap::vertical(x, std::move(c), std::move(out));
}

MatrixMap m_counit_map(const LabeledProductMap& f, const MatrixObject& y) {
    MatrixObject fy = m_pullback(f, y);
    MatrixObject d = m_pushforward(f, fy);
    Mat out(y.total_dim(), d.total_dim());
    for (const auto& a : f.dom.tuples()) {
        Elem ae = tuple_elem(a);
        Elem be = tuple_elem(f.apply(a));
        std::size_t dcol = d.offset(be);
        for (const auto& a2 : f.dom.tuples()) {
            Elem a2e = tuple_elem(a2);
            if (!(tuple_elem(f.apply(a2)) == be)) continue;
            if (a2e < ae) dcol += fy.rank_at(a2e);
            if (a2e == ae) break;
        }
        for (std::size_t i = 0; i < y.rank_at(be); ++i) out.at(y.offset(be) + i, dcol + i) = 1;
    }
    return MatrixMap::vertical(std::move(d), y, std::move(out));
}

MatrixMap m_iso_tensor_pull(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x,
                            const MatrixObject& y) {
    MatrixObject d = m_extern(m_pullback(f, x), m_pullback(g, y));
    MatrixObject c = m_pullback(lp_union_map(f, g), m_extern(x, y));
    return MatrixMap::vertical(d, c, Mat::eye(d.total_dim()));
}

MatrixMap m_iso_tensor_push(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x,
                            const MatrixObject& y) {
    LabeledProductMap fg = lp_union_map(f, g);
    MatrixObject xy = m_extern(x, y);
    MatrixObject d = m_pushforward(fg, xy);
    MatrixObject fx = m_pushforward(f, x), gy = m_pushforward(g, y);
    MatrixObject c = m_extern(fx, gy);
    Mat out(c.total_dim(), d.total_dim());
    for (const auto& t : fg.dom.tuples()) {
        auto a = restrict_tuple(t, f.dom);
        auto ap = restrict_tuple(t, g.dom);
        Elem te = tuple_elem(t);
        Elem ae = tuple_elem(a), ape = tuple_elem(ap);
        Elem be = tuple_elem(f.apply(a)), bpe = tuple_elem(g.apply(ap));
        auto image = fg.apply(t);
        Elem ie = tuple_elem(image);
        // dom: flat pushforward block at the image tuple, summands by t
        std::size_t dcol = d.offset(ie);
        for (const auto& t2 : fg.dom.tuples()) {
            Elem t2e = tuple_elem(t2);
            if (!(tuple_elem(fg.apply(t2)) == ie)) continue;
            if (t2e < te) dcol += xy.rank_at(t2e);
            if (t2e == te) break;
        }
        // cod: Kronecker of the two pushforward blocks
        std::size_t rowx = 0;
        for (const auto& a2 : f.dom.tuples()) {
            Elem a2e = tuple_elem(a2);
            if (!(tuple_elem(f.apply(a2)) == be)) continue;
            if (a2e < ae) rowx += x.rank_at(a2e);
            if (a2e == ae) break;
        }
        std::size_t rowy = 0;
        for (const auto& a2 : g.dom.tuples()) {
            Elem a2e = tuple_elem(a2);
            if (!(tuple_elem(g.apply(a2)) == bpe)) continue;
            if (a2e < ape) rowy += y.rank_at(a2e);
            if (a2e == ape) break;
        }
        std::size_t nx = x.rank_at(ae), ny = y.rank_at(ape);
        std::size_t gyb = gy.rank_at(bpe);
        std::size_t drow0 = c.offset(ie);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                out.at(drow0 + (rowx + i) * gyb + (rowy + j), dcol + i * ny + j) = 1;
    }
    return MatrixMap::vertical(std::move(d), std::move(c), std::move(out));
}

std::map<int, MatrixMap> m_iso_tensor_tensor(const std::map<int, int>& sigma, const std::vector<int>& mid,
                                             const std::map<int, int>& tau, const std::vector<int>& cod,
                                             const std::map<int, MatrixObject>& xs) {
    std::map<int, int> total;
    for (const auto& [u, v] : sigma) total[u] = tau.at(v);
    std::map<int, MatrixObject> flat = m_tensor_along(total, cod, xs);
    std::map<int, MatrixObject> staged_mid = m_tensor_along(sigma, mid, xs);
    std::map<int, MatrixObject> staged = m_tensor_along(tau, cod, staged_mid);
    std::map<int, MatrixMap> out;
    for (int w : cod) {
        std::vector<int> us, vs;
        for (const auto& [u, ww] : total)
            if (ww == w) us.push_back(u);
        for (const auto& [v, ww] : tau)
            if (ww == w) vs.push_back(v);
        const MatrixObject& dd = flat.at(w);
        const MatrixObject& cc = staged.at(w);
        Mat m(cc.total_dim(), dd.total_dim());
        for (const auto& t : dd.base.tuples()) {
            Elem te = tuple_elem(t);
            // mixed-radix digits per u (flat) and per (v,u) (nested); the
            // digit values coincide, only the radix order changes
            std::vector<std::size_t> radix_flat, radix_nested;
            std::vector<int> order_nested;
            for (int u : us) radix_flat.push_back(xs.at(u).rank_at(tuple_elem(restrict_tuple(t, xs.at(u).base))));
            for (int v : vs)
                for (const auto& [u, vv] : sigma)
                    if (vv == v) {
                        order_nested.push_back(u);
                        radix_nested.push_back(
                            xs.at(u).rank_at(tuple_elem(restrict_tuple(t, xs.at(u).base))));
                    }
            std::size_t n = 1;
            for (std::size_t r : radix_flat) n *= r;
            for (std::size_t idx = 0; idx < n; ++idx) {
                // decode flat digits
                std::map<int, std::size_t> digit;
                std::size_t rem = idx;
                for (std::size_t p = us.size(); p-- > 0;) {
                    digit[us[p]] = rem % radix_flat[p];
                    rem /= radix_flat[p];
                }
                std::size_t nested_idx = 0;
                for (std::size_t p = 0; p < order_nested.size(); ++p)
                    nested_idx = nested_idx * radix_nested[p] + digit.at(order_nested[p]);
                m.at(cc.offset(te) + nested_idx, dd.offset(te) + idx) = 1;
            }
        }
        out.emplace(w, MatrixMap::vertical(dd, cc, std::move(m)));
    }
    return out;
}

}  // namespace shadowcalc

namespace shadowcalc {

std::map<int, MatrixMap> m_iso_tensor_pull_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                             const std::map<int, LabeledProductMap>& fs,
                                             const std::map<int, MatrixObject>& ys) {
    std::map<int, MatrixObject> pulled;
    for (const auto& [u, y] : ys) pulled[u] = m_pullback(fs.at(u), y);
    std::map<int, MatrixObject> lhs = m_tensor_along(sigma, cod, pulled);
    std::map<int, MatrixMap> out;
    for (int v : cod) {
        std::vector<int> us;
        for (const auto& [u, vv] : sigma)
            if (vv == v) us.push_back(u);
        LabeledProductMap joint = LabeledProductMap::identity(LabeledProduct::empty());
        for (std::size_t i = 0; i < us.size(); ++i)
            joint = i == 0 ? fs.at(us[0]) : lp_union_map(joint, fs.at(us[i]));
        std::vector<MatrixObject> yobjs;
        for (int u : us) yobjs.push_back(ys.at(u));
        MatrixObject rhs = m_pullback(joint, m_tensor_list(yobjs));
        const MatrixObject& dd = lhs.at(v);
        // both sides have identical ranks tuplewise and identical Kronecker
        // digit layouts, so the interchange is the identity permutation
        Mat m = Mat::eye(dd.total_dim());
        out.emplace(v, MatrixMap::vertical(dd, rhs, std::move(m)));
    }
    return out;
}

std::map<int, MatrixMap> m_iso_tensor_push_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                             const std::map<int, LabeledProductMap>& fs,
                                             const std::map<int, MatrixObject>& xs) {
    std::map<int, MatrixMap> out;
    for (int v : cod) {
        std::vector<int> us;
        for (const auto& [u, vv] : sigma)
            if (vv == v) us.push_back(u);
        LabeledProductMap joint = LabeledProductMap::identity(LabeledProduct::empty());
        for (std::size_t i = 0; i < us.size(); ++i)
            joint = i == 0 ? fs.at(us[0]) : lp_union_map(joint, fs.at(us[i]));
        std::vector<MatrixObject> xobjs;
        for (int u : us) xobjs.push_back(xs.at(u));
        MatrixObject boxed = m_tensor_list(xobjs);
        MatrixObject dd = m_pushforward(joint, boxed);
        std::vector<MatrixObject> pushed;
        for (int u : us) pushed.push_back(m_pushforward(fs.at(u), xs.at(u)));
        MatrixObject cc = m_tensor_list(pushed);
        Mat m(cc.total_dim(), dd.total_dim());
        // per source tuple: its slot inside the flat pushforward versus the
        // Kronecker of the per-factor pushforward slots
        for (const auto& t : joint.dom.tuples()) {
            Elem te = tuple_elem(t);
            auto image = joint.apply(t);
            Elem ie = tuple_elem(image);
            std::size_t col = dd.offset(ie);
            for (const auto& t2 : joint.dom.tuples()) {
                Elem t2e = tuple_elem(t2);
                if (!(tuple_elem(joint.apply(t2)) == ie)) continue;
                if (t2e < te) col += boxed.rank_at(t2e);
                if (t2e == te) break;
            }
            // row: mixed-radix offset over the per-factor pushforward blocks
            std::vector<std::size_t> row_off(us.size()), in_rank(us.size()), out_rank(us.size());
            for (std::size_t p = 0; p < us.size(); ++p) {
                const LabeledProductMap& f = fs.at(us[p]);
                std::map<IndexId, Elem> sub, isub;
                for (const auto& [idx, obj] : f.dom.factors) sub[idx] = t.at(idx);
                isub = f.apply(sub);
                Elem se = tuple_elem(sub), sie = tuple_elem(isub);
                std::size_t off = 0;
                for (const auto& t3 : f.dom.tuples()) {
                    Elem t3e = tuple_elem(t3);
                    if (!(tuple_elem(f.apply(t3)) == sie)) continue;
                    if (t3e < se) off += xs.at(us[p]).rank_at(t3e);
                    if (t3e == se) break;
                }
                row_off[p] = off;
                in_rank[p] = xs.at(us[p]).rank_at(se);
                out_rank[p] = static_cast<std::size_t>(pushed[p].rank.at(sie));
            }
            // enumerate the within-block digits
            std::vector<std::size_t> digit(us.size(), 0);
            std::size_t count = 1;
            for (std::size_t r : in_rank) count *= r;
            std::size_t row0 = cc.offset(ie);
            for (std::size_t c2 = 0; c2 < count; ++c2) {
                std::size_t rem = c2;
                for (std::size_t p = us.size(); p-- > 0;) {
                    digit[p] = rem % in_rank[p];
                    rem /= in_rank[p];
                }
                std::size_t row = 0;
                for (std::size_t p = 0; p < us.size(); ++p) row = row * out_rank[p] + (row_off[p] + digit[p]);
                m.at(row0 + row, col + c2) = 1;
            }
        }
        out.emplace(v, MatrixMap::vertical(std::move(dd), std::move(cc), std::move(m)));
    }
    return out;
}

}  // namespace shadowcalc
