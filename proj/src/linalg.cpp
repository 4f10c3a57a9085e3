#include "nsvoa/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace nsvoa {

RowEchelon rref(Mat a, const std::vector<int>& column_order) {
    RowEchelon out;
    if (a.empty()) return out;
    std::size_t cols = a[0].size();
    std::vector<int> order = column_order;
    if (order.empty()) {
        order.resize(cols);
        std::iota(order.begin(), order.end(), 0);
    }
    std::size_t r = 0;
    for (int col : order) {
        auto c = static_cast<std::size_t>(col);
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c].is_zero()) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[r], a[piv]);
        Scalar inv = a[r][c].inverse();
        for (auto& x : a[r])
            if (!x.is_zero()) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
        }
        out.pivots.push_back(col);
        ++r;
        if (r == a.size()) break;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

int rank(const Mat& a) { return static_cast<int>(rref(a).pivots.size()); }

Mat kernel(const Mat& a, std::size_t cols) {
    RowEchelon e = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Mat basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols);
        v[f] = Scalar(1);
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            v[static_cast<std::size_t>(e.pivots[i])] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_psd(const Mat& sym) {
    Mat a = sym;
    std::size_t n = a.size();
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][i].is_zero()) continue;
            if (a[i][i].real_sign() == Sign::negative) return false;
            piv = i;
            break;
        }
        if (piv == n) {
            // remaining diagonal is zero: PSD only if the remaining block vanishes
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && !a[i][j].is_zero()) return false;
            return true;
        }
        done[piv] = true;
        Scalar inv = a[piv][piv].inverse();
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][piv].is_zero()) continue;
            Scalar f = a[i][piv] * inv;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j] && !a[piv][j].is_zero()) a[i][j] -= f * a[piv][j];
        }
    }
    return true;
}

Mat transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    Vec y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] += a[i][j] * x[j];
    }
    return y;
}

}  // namespace nsvoa
