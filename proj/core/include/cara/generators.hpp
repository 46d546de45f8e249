#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cara/join_hulls.hpp"

namespace cara {

/// (t, t^2, ..., t^n) for each t.
std::vector<Point> moment_curve(std::size_t n, const std::vector<Rational>& ts);

/// All degree-2 monomials x_i x_j, i <= j, in lexicographic order.
Point veronese(const Point& x);

/// Rational points of the unit sphere S^{n-1} in R^n: inverse stereographic
/// images of the grid {-1, -1 + 1/density, ..., 1}^{n-1}, mirrored to both
/// hemispheres, without repeats.
std::vector<Point> rational_sphere_points(std::size_t n, std::size_t density);

/// Veronese images of rational_sphere_points; antipodes share an image, listed once.
std::vector<Point> veronese_sphere(std::size_t n, std::size_t density);

/// Integer points with coordinates uniform in [-range, range].
std::vector<Point> random_points(std::size_t n, std::size_t count, long range, std::uint64_t seed);

/// Random walk with integer steps in [-range, range]; consecutive waypoints differ.
std::vector<Point> random_walk(std::size_t n, std::size_t waypoints, long range, std::uint64_t seed);

/// Closed polygon with `vertices` rational points on the circle of the given
/// radius in the first two coordinates; remaining coordinates equal `height`.
std::vector<Point> pl_loop(std::size_t n, std::size_t vertices, const Rational& radius, const Rational& height);

/// Faces of dimension k of the crosspolytope or the standard simplex in R^n,
/// each as a vertex list.
enum class SkeletonBase { crosspolytope, simplex };
std::vector<VPolytope> polytope_skeleton(SkeletonBase base, std::size_t n, std::size_t k);

/// `count` one-point members.
Family singleton_family(std::size_t n, std::size_t count, long range, std::uint64_t seed);

/// Edges of a random convex polygon with `sides` corners near a circle, plus
/// `inner_points` singleton members inside it.
Family edge_family(std::size_t sides, std::size_t inner_points, std::uint64_t seed);

/// The four edges of [0,1]^2.
Family square_edges_family();

}  // namespace cara
