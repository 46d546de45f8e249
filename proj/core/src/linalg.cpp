#include "cara/linalg.hpp"

#include <string>

#include "cara/error.hpp"

namespace cara {

Matrix Matrix::from_rows(const std::vector<Point>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().dim());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].dim() != m.cols_) throw InputError("matrix rows of unequal length");
        for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Point>& cols) {
    if (cols.empty()) return Matrix();
    Matrix m(cols.front().dim(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].dim() != m.rows_) throw InputError("matrix columns of unequal length");
        for (std::size_t r = 0; r < m.rows_; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Point Matrix::row(std::size_t r) const {
    std::vector<Rational> c(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    return Point(std::move(c));
}

Point Matrix::column(std::size_t c) const {
    Point p(rows_);
    for (std::size_t r = 0; r < rows_; ++r) p[r] = (*this)(r, c);
    return p;
}

Point Matrix::apply(const Point& x) const {
    if (x.dim() != cols_)
        throw InputError("shape mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " map applied to a point of dimension " + std::to_string(x.dim()));
    Point y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational s(0);
        for (std::size_t c = 0; c < cols_; ++c)
            if (sgn((*this)(r, c)) != 0) s += (*this)(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
        Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (m(row, c) != 0) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::optional<AffineSolution> solve(const Matrix& a, const Point& b) {
    if (b.dim() != a.rows()) throw InputError("solve: right-hand side has wrong dimension");
    const std::size_t n = a.cols();
    Matrix aug(a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;

    AffineSolution sol{Point(n), {}};
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        is_pivot[pivots[i]] = true;
        sol.particular[pivots[i]] = aug(i, n);
    }
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Point v(n);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -aug(i, free);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

std::vector<Point> nullspace(const Matrix& a) { return solve(a, Point(a.rows()))->nullspace; }

std::size_t affine_dimension(const std::vector<Point>& points) {
    if (points.empty()) throw InputError("affine_dimension: empty point list");
    std::vector<Point> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
    if (diffs.empty()) return 0;
    return rank(Matrix::from_rows(diffs));
}

bool affinely_independent(const std::vector<Point>& points) {
    return affine_dimension(points) + 1 == points.size();
}

bool linearly_independent(const std::vector<Point>& vectors) {
    if (vectors.empty()) return true;
    return rank(Matrix::from_rows(vectors)) == vectors.size();
}


AffineFrame affine_frame(const std::vector<Point>& points) {
    if (points.empty()) throw InputError("affine_frame: empty point list");
    AffineFrame f;
    f.origin = points.front();
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<Point> trial = f.basis;
        trial.push_back(points[i] - f.origin);
        if (linearly_independent(trial)) f.basis = std::move(trial);
    }
    const std::size_t a = f.basis.size();
    if (a == 0) return f;
    // left inverse (B^T B)^{-1} B^T, one column at a time
    Matrix gram(a, a);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) gram(i, j) = dot(f.basis[i], f.basis[j]);
    const std::size_t d = f.origin.dim();
    f.left_inverse = Matrix(a, d);
    for (std::size_t col = 0; col < d; ++col) {
        Point rhs(a);
        for (std::size_t i = 0; i < a; ++i) rhs[i] = f.basis[i][col];
        auto sol = solve(gram, rhs);
        for (std::size_t i = 0; i < a; ++i) f.left_inverse(i, col) = sol->particular[i];
    }
    return f;
}

std::optional<Point> AffineFrame::coordinates(const Point& p) const {
    if (basis.empty()) return p == origin ? std::optional<Point>(Point(0)) : std::nullopt;
    Point c = left_inverse.apply(p - origin);
    if (embed(c) != p) return std::nullopt;
    return c;
}

Point AffineFrame::embed(const Point& coords) const {
    Point x = origin;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (sgn(coords[i]) != 0) x += coords[i] * basis[i];
    return x;
}

}  // namespace cara
