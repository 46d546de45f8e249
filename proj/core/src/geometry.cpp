#include "cara/geometry.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cara/error.hpp"

namespace cara {

Point ConvexCombination::evaluate(const std::vector<Point>& ground) const {
    if (indices.empty()) throw InputError("empty convex combination");
    Point sum(ground.at(indices.front()).dim());
    for (std::size_t i = 0; i < indices.size(); ++i) sum += weights[i] * ground.at(indices[i]);
    return sum;
}

void ConvexCombination::validate(std::size_t ground_size) const {
    if (indices.empty()) throw InputError("convex combination has no terms");
    if (indices.size() != weights.size()) throw InputError("convex combination: index/weight count mismatch");
    std::set<std::size_t> seen;
    Rational total(0);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= ground_size) throw InputError("convex combination index out of range");
        if (!seen.insert(indices[i]).second) throw InputError("convex combination repeats an index");
        if (sgn(weights[i]) <= 0) throw InputError("convex combination weight is not positive");
        total += weights[i];
    }
    if (total != 1) throw InputError("convex combination weights sum to " + format_rational(total));
}

std::optional<std::vector<Rational>> affine_min_norm_weights(const std::vector<Point>& points) {
    const std::size_t k = points.size();
    Matrix system(k + 1, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            Rational g = dot(points[i], points[j]);
            system(i, j) = g;
            system(j, i) = g;
        }
        system(i, k) = 1;
        system(k, i) = 1;
    }
    Point rhs(k + 1);
    rhs[k] = 1;
    auto sol = solve(system, rhs);
    if (!sol || !sol->nullspace.empty()) return std::nullopt;
    std::vector<Rational> w(sol->particular.coords().begin(), sol->particular.coords().begin() + static_cast<std::ptrdiff_t>(k));
    return w;
}

MinNormResult min_norm_point(const std::vector<Point>& points) {
    const std::size_t dim = common_dim(points, "min_norm_point");

    std::size_t start = 0;
    Rational best = squared_norm(points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
        Rational n = squared_norm(points[i]);
        if (n < best) {
            best = n;
            start = i;
        }
    }

    std::vector<std::size_t> corral{start};
    std::vector<Rational> lambda{Rational(1)};
    Point x = points[start];

    auto combine = [&](const std::vector<Rational>& w) {
        Point s(dim);
        for (std::size_t i = 0; i < corral.size(); ++i)
            if (sgn(w[i]) != 0) s += w[i] * points[corral[i]];
        return s;
    };

    for (;;) {
        if (x.is_zero()) break;
        const Rational xx = squared_norm(x);

        std::size_t entering = 0;
        Rational lowest = dot(points[0], x);
        for (std::size_t i = 1; i < points.size(); ++i) {
            Rational v = dot(points[i], x);
            if (v < lowest) {
                lowest = v;
                entering = i;
            }
        }
        if (lowest >= xx) break;

        corral.push_back(entering);
        lambda.emplace_back(0);

        for (;;) {
            std::vector<Point> support;
            support.reserve(corral.size());
            for (std::size_t idx : corral) support.push_back(points[idx]);
            auto alpha = affine_min_norm_weights(support);
            if (!alpha) throw ConsistencyError("min_norm_point: corral lost affine independence");

            bool interior = std::all_of(alpha->begin(), alpha->end(), [](const Rational& a) { return sgn(a) > 0; });
            if (interior) {
                lambda = std::move(*alpha);
                x = combine(lambda);
                break;
            }

            // Walk from the current point toward the affine minimizer until a
            // weight reaches zero.
            std::optional<Rational> theta;
            std::size_t blocking = 0;
            for (std::size_t i = 0; i < corral.size(); ++i) {
                if (sgn((*alpha)[i]) > 0) continue;
                Rational gap = lambda[i] - (*alpha)[i];
                Rational ratio = sgn(gap) == 0 ? Rational(0) : Rational(lambda[i] / gap);
                if (!theta || ratio < *theta || (ratio == *theta && corral[i] < corral[blocking])) {
                    theta = ratio;
                    blocking = i;
                }
            }
            for (std::size_t i = 0; i < corral.size(); ++i) {
                Rational moved = *theta * (*alpha)[i] + (1 - *theta) * lambda[i];
                lambda[i] = std::move(moved);
            }
            corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(blocking));
            lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(blocking));
            x = combine(lambda);
        }
    }

    MinNormResult result;
    result.point = x;
    result.squared_distance = squared_norm(x);
    for (std::size_t i = 0; i < corral.size(); ++i) {
        if (sgn(lambda[i]) <= 0) throw ConsistencyError("min_norm_point: nonpositive corral weight");
        result.support.indices.push_back(corral[i]);
        result.support.weights.push_back(lambda[i]);
    }
    return result;
}

Membership hull_membership(const Point& p, const std::vector<Point>& points) {
    if (points.empty()) throw InputError("hull_membership: empty point list");
    require_dim(points, p.dim(), "hull_membership");

    std::vector<Point> shifted;
    shifted.reserve(points.size());
    for (const auto& v : points) shifted.push_back(v - p);
    MinNormResult mn = min_norm_point(shifted);
    if (sgn(mn.squared_distance) == 0) return Membership{mn.support};

    Separator sep{-mn.point, Rational(0)};
    bool first = true;
    for (const auto& v : points) {
        Rational gap = dot(sep.normal, p - v);
        if (first || gap < sep.margin) sep.margin = gap;
        first = false;
    }
    if (sgn(sep.margin) <= 0) throw ConsistencyError("hull_membership: separator margin not positive");
    return Membership{std::move(sep)};
}

ConvexCombination caratheodory_reduce(const Point& p, const std::vector<Point>& points,
                                      const ConvexCombination& comb) {
    comb.validate(points.size());
    require_dim(points, p.dim(), "caratheodory_reduce");
    if (comb.evaluate(points) != p) throw InputError("caratheodory_reduce: combination does not reproduce the point");

    ConvexCombination cur = comb;
    for (;;) {
        std::vector<Point> lifted;
        lifted.reserve(cur.size());
        for (std::size_t idx : cur.indices) lifted.push_back(concat(points[idx], Point{Rational(1)}));
        auto deps = nullspace(Matrix::from_columns(lifted));
        if (deps.empty()) break;

        Point beta = deps.front();
        bool has_positive = std::any_of(beta.coords().begin(), beta.coords().end(),
                                        [](const Rational& b) { return sgn(b) > 0; });
        if (!has_positive) beta = -beta;

        std::optional<Rational> theta;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (sgn(beta[i]) <= 0) continue;
            Rational r = cur.weights[i] / beta[i];
            if (!theta || r < *theta) theta = r;
        }
        ConvexCombination next;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            Rational w = cur.weights[i] - *theta * beta[i];
            if (sgn(w) > 0) {
                next.indices.push_back(cur.indices[i]);
                next.weights.push_back(std::move(w));
            }
        }
        cur = std::move(next);
    }
    if (cur.evaluate(points) != p) throw ConsistencyError("caratheodory_reduce: reduction changed the point");
    return cur;
}

LineIntersection line_simplex_intersection(const Point& origin, const Point& direction,
                                           const std::vector<Point>& vertices) {
    const std::size_t dim = origin.dim();
    if (direction.dim() != dim) throw InputError("line_simplex_intersection: direction dimension mismatch");
    if (direction.is_zero()) throw InputError("line_simplex_intersection: zero direction");
    if (vertices.empty()) throw InputError("line_simplex_intersection: no vertices");
    require_dim(vertices, dim, "line_simplex_intersection");

    LineIntersection out;
    if (!affinely_independent(vertices)) {
        out.kind = LineIntersection::Kind::degenerate;
        return out;
    }

    // Unknowns: barycentric weights of the vertices, then the line parameter.
    const std::size_t k = vertices.size();
    Matrix a(dim + 1, k + 1);
    Point b(dim + 1);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < k; ++c) a(r, c) = vertices[c][r];
        a(r, k) = -direction[r];
        b[r] = origin[r];
    }
    for (std::size_t c = 0; c < k; ++c) a(dim, c) = 1;
    b[dim] = 1;

    auto sol = solve(a, b);
    if (!sol) return out;

    const Point& base = sol->particular;
    if (sol->nullspace.empty()) {
        for (std::size_t c = 0; c < k; ++c)
            if (sgn(base[c]) < 0) return out;
        out.kind = LineIntersection::Kind::interval;
        out.t_min = base[k];
        out.t_max = base[k];
        return out;
    }
    if (sol->nullspace.size() > 1) throw ConsistencyError("line_simplex_intersection: solution space too large");

    // Weights move affinely with t: w(t) = base_w + (t - base_t) * step_w.
    Point step = sol->nullspace.front();
    if (sgn(step[k]) == 0) throw ConsistencyError("line_simplex_intersection: line parameter not free");
    step /= step[k];

    std::optional<Rational> lo, hi;
    for (std::size_t c = 0; c < k; ++c) {
        if (sgn(step[c]) == 0) {
            if (sgn(base[c]) < 0) return out;
            continue;
        }
        Rational bound = base[k] - base[c] / step[c];
        if (sgn(step[c]) > 0) {
            if (!lo || bound > *lo) lo = bound;
        } else {
            if (!hi || bound < *hi) hi = bound;
        }
    }
    if (!lo || !hi) throw ConsistencyError("line_simplex_intersection: unbounded intersection with a simplex");
    if (*lo > *hi) return out;
    out.kind = LineIntersection::Kind::interval;
    out.t_min = *lo;
    out.t_max = *hi;
    return out;
}

std::vector<Point> project(const std::vector<Point>& points, const Matrix& linear_map) {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(linear_map.apply(p));
    return out;
}

}  // namespace cara
