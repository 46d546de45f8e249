#include "cara/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cara/combinatorics.hpp"
#include "cara/error.hpp"

namespace cara {

std::vector<Point> moment_curve(std::size_t n, const std::vector<Rational>& ts) {
    if (n == 0) throw InputError("moment_curve: dimension must be positive");
    std::vector<Point> out;
    for (const auto& t : ts) {
        Point p(n);
        Rational power = t;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = power;
            power *= t;
        }
        out.push_back(std::move(p));
    }
    return out;
}

Point veronese(const Point& x) {
    const std::size_t n = x.dim();
    Point out(n * (n + 1) / 2);
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) out[at++] = x[i] * x[j];
    return out;
}

std::vector<Point> rational_sphere_points(std::size_t n, std::size_t density) {
    if (n == 0) throw InputError("rational_sphere_points: dimension must be positive");
    if (density == 0) throw InputError("rational_sphere_points: density must be positive");
    std::vector<Point> out;
    if (n == 1) return {Point::from_ints({-1}), Point::from_ints({1})};

    const std::size_t m = n - 1, side = 2 * density + 1;
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        Point u(m);
        for (std::size_t i = 0; i < m; ++i)
            u[i] = ratio(static_cast<long>(idx[i]) - static_cast<long>(density), static_cast<long>(density));
        const Rational u2 = squared_norm(u);
        const Rational denom = u2 + 1;
        Point x(n);
        for (std::size_t i = 0; i < m; ++i) x[i] = 2 * u[i] / denom;
        x[m] = (u2 - 1) / denom;
        out.push_back(x);
        x[m] = -x[m];
        out.push_back(std::move(x));

        std::size_t c = 0;
        while (c < m && ++idx[c] == side) idx[c++] = 0;
        if (c == m) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Point> veronese_sphere(std::size_t n, std::size_t density) {
    std::vector<Point> out;
    for (const auto& x : rational_sphere_points(n, density)) out.push_back(veronese(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Point> random_points(std::size_t n, std::size_t count, long range, std::uint64_t seed) {
    if (n == 0 || range < 0) throw InputError("random_points: bad parameters");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-range, range);
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) {
        Point p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = coord(rng);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Point> random_walk(std::size_t n, std::size_t waypoints, long range, std::uint64_t seed) {
    if (n == 0 || range <= 0 || waypoints == 0) throw InputError("random_walk: bad parameters");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> step(-range, range);
    std::vector<Point> out{Point(n)};
    for (std::size_t j = 0; j < n; ++j) out[0][j] = step(rng);
    while (out.size() < waypoints) {
        Point d(n);
        for (std::size_t j = 0; j < n; ++j) d[j] = step(rng);
        if (d.is_zero()) continue;
        out.push_back(out.back() + d);
    }
    return out;
}

std::vector<Point> pl_loop(std::size_t n, std::size_t vertices, const Rational& radius, const Rational& height) {
    if (n < 2 || vertices < 3) throw InputError("pl_loop: needs n >= 2 and at least 3 vertices");
    std::vector<Point> out;
    for (std::size_t j = 0; j < vertices; ++j) {
        const double theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(vertices);
        Point p(n);
        if (2 * j == vertices) {
            p[0] = -1;
            p[1] = 0;
        } else {
            // Rational point of the unit circle from u = tan(theta / 2).
            Rational u = round_to(std::tan(theta / 2), 256);
            Rational d = 1 + u * u;
            p[0] = (1 - u * u) / d;
            p[1] = 2 * u / d;
        }
        p[0] *= radius;
        p[1] *= radius;
        for (std::size_t i = 2; i < n; ++i) p[i] = height;
        out.push_back(std::move(p));
    }
    out.push_back(out.front());
    return out;
}

std::vector<VPolytope> polytope_skeleton(SkeletonBase base, std::size_t n, std::size_t k) {
    if (n == 0 || k >= n) throw InputError("polytope_skeleton: need k < n");
    std::vector<VPolytope> out;
    if (base == SkeletonBase::simplex) {
        std::vector<Point> verts{Point(n)};
        for (std::size_t i = 0; i < n; ++i) {
            Point e(n);
            e[i] = 1;
            verts.push_back(std::move(e));
        }
        for_each_combination(n + 1, k + 1, [&](const std::vector<std::size_t>& idx) {
            VPolytope f;
            for (auto i : idx) f.vertices.push_back(verts[i]);
            out.push_back(std::move(f));
            return true;
        });
        return out;
    }
    for_each_combination(n, k + 1, [&](const std::vector<std::size_t>& axes) {
        for (unsigned signs = 0; signs < (1u << (k + 1)); ++signs) {
            VPolytope f;
            for (std::size_t j = 0; j <= k; ++j) {
                Point v(n);
                v[axes[j]] = (signs & (1u << j)) ? -1 : 1;
                f.vertices.push_back(std::move(v));
            }
            out.push_back(std::move(f));
        }
        return true;
    });
    return out;
}

Family singleton_family(std::size_t n, std::size_t count, long range, std::uint64_t seed) {
    Family f{n, {}};
    for (auto& p : random_points(n, count, range, seed)) f.members.push_back({{std::move(p)}});
    return f;
}

Family edge_family(std::size_t sides, std::size_t inner_points, std::uint64_t seed) {
    if (sides < 3) throw InputError("edge_family: needs at least 3 sides");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    std::uniform_int_distribution<long> weight(1, 9);
    std::vector<Point> corners;
    while (corners.size() < 3) {
        std::vector<Point> pts;
        for (std::size_t j = 0; j < sides; ++j) {
            const double theta = 2 * std::numbers::pi * (static_cast<double>(j) + jitter(rng)) / static_cast<double>(sides);
            const double radius = 8 * (1 + jitter(rng));
            pts.push_back(Point{Rational(std::lround(radius * std::cos(theta))), Rational(std::lround(radius * std::sin(theta)))});
        }
        corners = convex_hull_2d(pts);
    }
    Family f{2, {}};
    for (std::size_t j = 0; j < corners.size(); ++j) f.members.push_back({{corners[j], corners[(j + 1) % corners.size()]}});
    for (std::size_t i = 0; i < inner_points; ++i) {
        Point p(2);
        Rational total(0);
        for (const auto& c : corners) {
            Rational w(weight(rng));
            p += w * c;
            total += w;
        }
        f.members.push_back({{p / total}});
    }
    return f;
}

Family square_edges_family() {
    const std::vector<Point> c{Point::from_ints({0, 0}), Point::from_ints({1, 0}), Point::from_ints({1, 1}),
                               Point::from_ints({0, 1})};
    Family f{2, {}};
    for (std::size_t i = 0; i < 4; ++i) f.members.push_back({{c[i], c[(i + 1) % 4]}});
    return f;
}

}  // namespace cara
