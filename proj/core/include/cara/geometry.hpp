#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "cara/linalg.hpp"
#include "cara/rational.hpp"

namespace cara {

/// Convex combination over a ground point list: indices are distinct, weights
/// strictly positive and summing to exactly one.
struct ConvexCombination {
    std::vector<std::size_t> indices;
    std::vector<Rational> weights;

    std::size_t size() const { return indices.size(); }

    /// Weighted sum of the referenced ground points.
    Point evaluate(const std::vector<Point>& ground) const;

    /// Throws InputError if indices repeat or leave the ground list, a weight
    /// is not positive, or the weights do not sum to one.
    void validate(std::size_t ground_size) const;

    friend bool operator==(const ConvexCombination&, const ConvexCombination&) = default;
};

/// Nearest point of a hull to the origin.
///
/// The support is a corral: affinely independent, all weights positive, and
/// `point` is its weighted sum. Every input v satisfies <v, point> >= squared_distance.
struct MinNormResult {
    Point point;
    ConvexCombination support;
    Rational squared_distance;
};

struct Hyperplane {
    Point normal;
    Rational offset;

    /// <normal, x> - offset.
    Rational evaluate(const Point& x) const { return dot(normal, x) - offset; }
};

/// Wolfe's algorithm in exact arithmetic. The minor cycle drops the
/// lowest-index blocking point when several vanish at once.
MinNormResult min_norm_point(const std::vector<Point>& points);

/// Strict separation certificate: <normal, p - v> >= margin > 0 for all inputs v.
struct Separator {
    Point normal;
    Rational margin;
};

/// Either a convex combination reproducing the query point or a separator.
struct Membership {
    std::variant<ConvexCombination, Separator> verdict;

    bool member() const { return std::holds_alternative<ConvexCombination>(verdict); }
    const ConvexCombination& combination() const { return std::get<ConvexCombination>(verdict); }
    const Separator& separator() const { return std::get<Separator>(verdict); }
};

Membership hull_membership(const Point& p, const std::vector<Point>& points);

/// Shrinks `comb` to an affinely independent support (size <= dim + 1)
/// expressing the same point.
ConvexCombination caratheodory_reduce(const Point& p, const std::vector<Point>& points,
                                      const ConvexCombination& comb);

/// Result of intersecting {origin + t * direction} with a simplex.
struct LineIntersection {
    enum class Kind { empty, interval, degenerate };
    Kind kind = Kind::empty;
    Rational t_min;
    Rational t_max;

    bool hit() const { return kind == Kind::interval; }
};

/// Exact parameter interval of the line inside conv(vertices). Affinely
/// dependent vertex lists are reported as `degenerate` and not resolved.
LineIntersection line_simplex_intersection(const Point& origin, const Point& direction,
                                           const std::vector<Point>& vertices);

/// Applies a k x n linear map to each point.
std::vector<Point> project(const std::vector<Point>& points, const Matrix& linear_map);

/// Affine minimizer of |sum a_i s_i| subject to sum a_i = 1 over an affinely
/// independent list; nullopt when the list is affinely dependent.
std::optional<std::vector<Rational>> affine_min_norm_weights(const std::vector<Point>& points);

}  // namespace cara
