#pragma once

// Exact sparse linear algebra over the rationals: rank, kernel, solve,
// reduced echelon form. Matrices are immutable values; all entries are
// stored in lowest terms and zero entries are absent.

#include "rbx/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rbx {

using Vec = std::vector<Scalar>;

class Matrix {
  public:
    Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative size");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, Scalar v) {
        check(r, c);
        if (v == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = std::move(v);
    }

    void add(int r, int c, const Scalar& v) {
        check(r, c);
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            if (v != 0) entries_[{r, c}] = v;
            return;
        }
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }

    Scalar at(int r, int c) const {
        check(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Scalar(0) : it->second;
    }

    bool is_zero() const { return entries_.empty(); }

    const std::map<std::pair<int, int>, Scalar>& entries() const { return entries_; }

    Vec apply(const Vec& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("apply: dim mismatch");
        Vec y(rows_, Scalar(0));
        for (const auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
        return y;
    }

    Matrix times(const Matrix& other) const {
        if (cols_ != other.rows_) throw std::invalid_argument("times: dim mismatch");
        Matrix out(rows_, other.cols_);
        for (const auto& [rc, v] : entries_)
            for (int c = 0; c < other.cols_; ++c) {
                Scalar w = other.at(rc.second, c);
                if (w != 0) out.add(rc.first, c, v * w);
            }
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (const auto& [rc, v] : entries_) out.set(rc.second, rc.first, v);
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

  private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("Matrix: index out of range");
    }

    int rows_, cols_;
    std::map<std::pair<int, int>, Scalar> entries_;
};

namespace detail {

// Dense working copy for elimination.
inline std::vector<Vec> to_dense(const Matrix& m) {
    std::vector<Vec> d(m.rows(), Vec(m.cols(), Scalar(0)));
    for (const auto& [rc, v] : m.entries()) d[rc.first][rc.second] = v;
    return d;
}

inline Int abs_int(Int x) { return x < 0 ? Int(-x) : x; }

}  // namespace detail

/// Exact rank via fraction-free (Bareiss) elimination on an integer
/// matrix obtained by clearing row denominators. Pivot choice: smallest
/// nonzero magnitude in the pivot column, which keeps intermediate
/// integers modest at the sizes this library meets.
inline int rank(const Matrix& m) {
    std::vector<std::vector<Int>> a(m.rows(), std::vector<Int>(m.cols(), 0));
    for (int r = 0; r < m.rows(); ++r) {
        Int lcm = 1;
        for (int c = 0; c < m.cols(); ++c) {
            Scalar v = m.at(r, c);
            if (v != 0) lcm = boost::multiprecision::lcm(lcm, den(v));
        }
        for (int c = 0; c < m.cols(); ++c) {
            Scalar v = m.at(r, c) * Scalar(lcm);
            a[r][c] = num(v);
        }
    }
    int rk = 0;
    Int prev_pivot = 1;
    for (int col = 0; col < m.cols() && rk < m.rows(); ++col) {
        int best = -1;
        for (int r = rk; r < m.rows(); ++r) {
            if (a[r][col] == 0) continue;
            if (best < 0 || detail::abs_int(a[r][col]) < detail::abs_int(a[best][col])) best = r;
        }
        if (best < 0) continue;
        std::swap(a[rk], a[best]);
        for (int r = rk + 1; r < m.rows(); ++r) {
            for (int c = col + 1; c < m.cols(); ++c)
                a[r][c] = (a[rk][col] * a[r][c] - a[r][col] * a[rk][c]) / prev_pivot;
            a[r][col] = 0;
        }
        prev_pivot = a[rk][col];
        ++rk;
    }
    return rk;
}

/// Reduced row echelon form with the list of pivot columns.
struct Echelon {
    std::vector<Vec> rows;       // nonzero rows only, fully reduced
    std::vector<int> pivot_cols; // one per row, strictly increasing
    int cols = 0;
};

inline Echelon rref(const Matrix& m) {
    auto a = detail::to_dense(m);
    Echelon e;
    e.cols = m.cols();
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int best = -1;
        for (int r = row; r < m.rows(); ++r) {
            if (a[r][col] == 0) continue;
            if (best < 0) { best = r; continue; }
            // prefer the entry with smaller numerator*denominator magnitude
            Int cur = detail::abs_int(num(a[r][col])) * den(a[r][col]);
            Int ref = detail::abs_int(num(a[best][col])) * den(a[best][col]);
            if (cur < ref) best = r;
        }
        if (best < 0) continue;
        std::swap(a[row], a[best]);
        Scalar p = a[row][col];
        for (int c = col; c < m.cols(); ++c) a[row][c] /= p;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Scalar f = a[r][col];
            for (int c = col; c < m.cols(); ++c) a[r][c] -= f * a[row][c];
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    a.resize(row);
    e.rows = std::move(a);
    return e;
}

/// Exact basis of the null space; size = cols - rank. Vectors are the
/// standard free-variable basis read off the reduced echelon form, in
/// free-column order.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), Scalar(0));
        v[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            v[e.pivot_cols[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Any exact solution of m x = b, or nothing when inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve: rhs length != rows");
    Matrix aug(m.rows(), m.cols() + 1);
    for (const auto& [rc, v] : m.entries()) aug.set(rc.first, rc.second, v);
    for (int r = 0; r < m.rows(); ++r) aug.set(r, m.cols(), b[r]);
    Echelon e = rref(aug);
    Vec x(m.cols(), Scalar(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivot_cols[r] == m.cols()) return std::nullopt;  // 0 = 1 row
        x[e.pivot_cols[r]] = e.rows[r][m.cols()];
    }
    return x;
}

/// Matrix whose columns are the given vectors.
inline Matrix from_columns(const std::vector<Vec>& cols, int dim) {
    Matrix m(dim, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (static_cast<int>(cols[c].size()) != dim)
            throw std::invalid_argument("from_columns: length mismatch");
        for (int r = 0; r < dim; ++r) m.set(r, static_cast<int>(c), cols[c][r]);
    }
    return m;
}

/// True when v lies in the column span of `span`.
inline bool in_span(const std::vector<Vec>& span, const Vec& v) {
    int dim = static_cast<int>(v.size());
    Matrix m = from_columns(span, dim);
    return solve(m, v).has_value();
}

}  // namespace rbx
