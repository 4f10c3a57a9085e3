#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "nsvoa/scalar.hpp"

namespace nsvoa {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;  // row-major

struct RowEchelon {
    Mat rows;                 // reduced rows, pivot entry 1, zero above and below
    std::vector<int> pivots;  // pivot column of each row
};

/// Reduced row echelon form. Columns are scanned in `column_order` when given.
RowEchelon rref(Mat a, const std::vector<int>& column_order = {});
int rank(const Mat& a);
/// Basis of {x : a x = 0}; `cols` is needed when a has no rows.
Mat kernel(const Mat& a, std::size_t cols);
/// Exact positive-semidefiniteness of a real symmetric matrix.
bool is_psd(const Mat& sym);
Mat transpose(const Mat& a);
Vec mat_vec(const Mat& a, const Vec& x);

/// Sparse vector keyed by K. Zero coefficients are never stored.
template <class K, class Cmp = std::less<K>>
using SparseVec = std::map<K, Scalar, Cmp>;

template <class K, class Cmp>
void axpy(SparseVec<K, Cmp>& y, const Scalar& a, const SparseVec<K, Cmp>& x) {
    if (a.is_zero()) return;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            y.emplace(k, a * v);
        } else {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

/// Incrementally built echelon basis of a subspace. The pivot of each row is
/// its first key under Cmp, so reduction never creates smaller keys. Reducing
/// a vector eliminates every pivot coordinate, which yields the canonical
/// representative of its class modulo the subspace.
template <class K, class Cmp = std::less<K>>
class Echelon {
public:
    using V = SparseVec<K, Cmp>;

    /// Reduces v in place against the stored rows.
    void reduce(V& v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            K key = it->first;
            Scalar coef = -it->second;
            axpy(v, coef, row->second);
            it = v.upper_bound(key);
        }
    }

    /// Adds v to the span. Returns true when the rank grew.
    bool insert(V v) {
        reduce(v);
        if (v.empty()) return false;
        Scalar inv = v.begin()->second.inverse();
        for (auto& [k, c] : v) c *= inv;
        K pivot = v.begin()->first;
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    bool contains(V v) const {
        reduce(v);
        return v.empty();
    }

    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(const K& k) const { return rows_.count(k) != 0; }
    const std::map<K, V, Cmp>& rows() const { return rows_; }

private:
    std::map<K, V, Cmp> rows_;
};

}  // namespace nsvoa
