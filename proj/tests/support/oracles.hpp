#pragma once

// Brute-force reference computations used by the unit and acceptance suites.
// Nothing here calls into the solvers it is used to check; exact linear solves
// are done with a separate elimination routine.

#include <cstddef>
#include <optional>
#include <vector>

#include "cara/rational.hpp"

namespace cara::oracle {

/// Solves the square system A x = b by plain Gauss-Jordan elimination.
/// Returns nullopt when A is singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

struct NearestPoint {
    Point point;
    Rational squared_distance;
};

/// Nearest point of conv(points) to the origin by enumerating every subset,
/// projecting the origin onto its affine hull and keeping feasible projections.
NearestPoint nearest_by_face_enumeration(const std::vector<Point>& points);

/// Exact test of p in conv(points) through face enumeration of the translated set.
bool in_hull(const Point& p, const std::vector<Point>& points);

/// Every colorful tuple (one index per color) whose hull contains `target`.
std::vector<std::vector<std::size_t>> colorful_simplices(const std::vector<std::vector<Point>>& colors,
                                                          const Point& target);

/// True when conv(a) and conv(b) meet, via 0 in conv(a - b).
bool hulls_intersect(const std::vector<Point>& a, const std::vector<Point>& b);

/// Whether some 2-partition of a family (members given as vertex lists) has
/// intersecting union-hulls. Both parts nonempty.
bool two_partition_exists(const std::vector<std::vector<Point>>& members);

/// p is a convex combination of at most m points of X, by subset enumeration.
bool in_convm(const Point& p, const std::vector<Point>& X, std::size_t m);

/// Grid points (denominator `resolution`) of the planar bounding box that lie
/// in conv(target) but in no piece's hull.
std::vector<Point> uncovered_grid_points(const std::vector<Point>& target, const std::vector<std::vector<Point>>& pieces,
                                         long resolution);

/// Squared distance between the line {base + s d} and the segment [a, b],
/// minimizing the exact quadratic in the segment parameter.
Rational segment_line_squared_distance(const Point& base, const Point& d, const Point& a, const Point& b);

}  // namespace cara::oracle
