#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cara/rational.hpp"

namespace cara {

/// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    /// Matrix whose rows are the given points.
    static Matrix from_rows(const std::vector<Point>& rows);
    /// Matrix whose columns are the given points.
    static Matrix from_columns(const std::vector<Point>& cols);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Point row(std::size_t r) const;
    Point column(std::size_t c) const;

    /// y = M x. Throws InputError on shape mismatch.
    Point apply(const Point& x) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Solution set of A x = b: a particular solution plus a nullspace basis,
/// or nullopt when the system is inconsistent.
struct AffineSolution {
    Point particular;
    std::vector<Point> nullspace;
};
std::optional<AffineSolution> solve(const Matrix& a, const Point& b);

/// Basis of {x : A x = 0}.
std::vector<Point> nullspace(const Matrix& a);

/// Dimension of the affine hull (-1 never occurs: input must be nonempty).
std::size_t affine_dimension(const std::vector<Point>& points);

bool affinely_independent(const std::vector<Point>& points);

bool linearly_independent(const std::vector<Point>& vectors);


/// Affine coordinate system of a point set: origin plus a basis of the
/// difference space, chosen greedily from the input order.
struct AffineFrame {
    Point origin;
    std::vector<Point> basis;
    Matrix left_inverse;

    std::size_t dim() const { return basis.size(); }
    /// Coordinates of p in the frame; nullopt when p is off the affine hull.
    std::optional<Point> coordinates(const Point& p) const;
    Point embed(const Point& coords) const;
};

AffineFrame affine_frame(const std::vector<Point>& points);

}  // namespace cara
