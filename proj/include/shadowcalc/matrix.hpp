#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "shadowcalc/labeled_product.hpp"

namespace shadowcalc {

using Int = boost::multiprecision::cpp_int;

// Small dense integer matrix.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    bool operator==(const Mat& o) const = default;

    static Mat eye(std::size_t n);
    Mat operator*(const Mat& o) const;  // this * o
    Mat transpose() const;
    Int trace() const;
};

Mat kron(const Mat& a, const Mat& b);

// A fiber object of the integer-matrix backend: a free module of the given
// rank over each tuple of the base product.
struct MatrixObject {
    LabeledProduct base;
    std::map<Elem, Int> rank;  // keyed by serialized base tuple

    bool operator==(const MatrixObject& o) const = default;

    static MatrixObject constant(const LabeledProduct& base, const Int& r);
    std::size_t total_dim() const;
    std::size_t offset(const Elem& tuple) const;  // by ascending tuple
    std::size_t rank_at(const Elem& tuple) const;
};

MatrixObject unit_module();

// A blockwise integer matrix over a base map; nonzero blocks sit only at
// (image tuple, tuple).
struct MatrixMap {
    MatrixObject dom, cod;
    LabeledProductMap base;
    Mat m;  // total_dim(cod) x total_dim(dom)

    MatrixMap() = default;
    MatrixMap(MatrixObject d, MatrixObject c, LabeledProductMap b, Mat mat);

    bool operator==(const MatrixMap& o) const = default;

    static MatrixMap identity(const MatrixObject& x);
    static MatrixMap vertical(MatrixObject d, MatrixObject c, Mat mat);
    bool is_vertical() const { return base.is_identity(); }
    bool is_bijective() const;  // permutation-like invertibility over an invertible base
    MatrixMap inverse() const;
};

MatrixMap compose(const MatrixMap& f, const MatrixMap& g);  // g after f

MatrixObject m_pullback(const LabeledProductMap& f, const MatrixObject& y);
MatrixObject m_pushforward(const LabeledProductMap& f, const MatrixObject& x);
MatrixObject m_extern(const MatrixObject& x, const MatrixObject& y);
MatrixObject m_tensor_list(const std::vector<MatrixObject>& xs);
std::map<int, MatrixObject> m_tensor_along(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                           const std::map<int, MatrixObject>& xs);

MatrixMap m_pullback_map(const LabeledProductMap& f, const MatrixMap& m);
MatrixMap m_pushforward_map(const LabeledProductMap& f, const MatrixMap& m);
MatrixMap m_extern_map(const MatrixMap& m, const MatrixMap& n);
std::map<int, MatrixMap> m_tensor_along_map(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                            const std::map<int, MatrixMap>& ms);

MatrixMap m_cartesian_arrow(const LabeledProductMap& f, const MatrixObject& y);
MatrixMap m_cocartesian_arrow(const LabeledProductMap& f, const MatrixObject& x);
bool m_is_cartesian(const MatrixMap& m);
bool m_is_cocartesian(const MatrixMap& m);

// Canonical isomorphisms, same shapes and directions as the family backend.
MatrixMap m_iso_comp_pull(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x);
MatrixMap m_iso_comp_push(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x);
MatrixMap m_beck_chevalley_map(const LabeledProductMap& f, const LabeledProductMap& h,
                               const LabeledProductMap& g, const LabeledProductMap& k,
                               const MatrixObject& z);
MatrixMap m_beck_chevalley_iso(const LabeledProductMap& f, const LabeledProductMap& h,
                               const LabeledProductMap& g, const LabeledProductMap& k,
                               const MatrixObject& z);
MatrixMap m_unit_map(const LabeledProductMap& f, const MatrixObject& x);
MatrixMap m_counit_map(const LabeledProductMap& f, const MatrixObject& y);
MatrixMap m_iso_tensor_pull(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x,
                            const MatrixObject& y);
MatrixMap m_iso_tensor_push(const LabeledProductMap& f, const LabeledProductMap& g, const MatrixObject& x,
                            const MatrixObject& y);
std::map<int, MatrixMap> m_iso_tensor_pull_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                             const std::map<int, LabeledProductMap>& fs,
                                             const std::map<int, MatrixObject>& ys);
std::map<int, MatrixMap> m_iso_tensor_push_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                             const std::map<int, LabeledProductMap>& fs,
                                             const std::map<int, MatrixObject>& xs);
std::map<int, MatrixMap> m_iso_tensor_tensor(const std::map<int, int>& sigma, const std::vector<int>& mid,
                                             const std::map<int, int>& tau, const std::vector<int>& cod,
                                             const std::map<int, MatrixObject>& xs);

}  // namespace shadowcalc
