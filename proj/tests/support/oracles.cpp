#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace cara::oracle {

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

NearestPoint nearest_by_face_enumeration(const std::vector<Point>& points) {
    const std::size_t n = points.size();
    if (n == 0 || n > 20) throw std::invalid_argument("face enumeration needs 1..20 points");
    std::optional<NearestPoint> best;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<const Point*> face;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) face.push_back(&points[i]);
        const std::size_t k = face.size();
        // Lagrange system for min |sum w_i f_i|^2 with sum w_i = 1.
        std::vector<std::vector<Rational>> a(k + 1, std::vector<Rational>(k + 1));
        std::vector<Rational> rhs(k + 1);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) a[i][j] = dot(*face[i], *face[j]);
            a[i][k] = 1;
            a[k][i] = 1;
        }
        rhs[k] = 1;
        auto w = solve_square(a, rhs);
        if (!w) continue;
        bool feasible = true;
        for (std::size_t i = 0; i < k; ++i)
            if (sgn((*w)[i]) < 0) feasible = false;
        if (!feasible) continue;
        Point z(points[0].dim());
        for (std::size_t i = 0; i < k; ++i) z += (*w)[i] * *face[i];
        Rational d = squared_norm(z);
        if (!best || d < best->squared_distance) best = NearestPoint{z, d};
    }
    return *best;
}

bool in_hull(const Point& p, const std::vector<Point>& points) {
    std::vector<Point> shifted;
    for (const auto& v : points) shifted.push_back(v - p);
    return sgn(nearest_by_face_enumeration(shifted).squared_distance) == 0;
}

std::vector<std::vector<std::size_t>> colorful_simplices(const std::vector<std::vector<Point>>& colors,
                                                          const Point& target) {
    std::vector<std::vector<std::size_t>> hits;
    std::vector<std::size_t> pick(colors.size(), 0);
    for (;;) {
        std::vector<Point> tuple;
        for (std::size_t c = 0; c < colors.size(); ++c) tuple.push_back(colors[c][pick[c]]);
        if (in_hull(target, tuple)) hits.push_back(pick);
        std::size_t c = 0;
        while (c < colors.size() && ++pick[c] == colors[c].size()) pick[c++] = 0;
        if (c == colors.size()) break;
    }
    return hits;
}

namespace {

// 0 in conv(points) iff 0 lies in the hull of some (dim+1)-subset.
bool origin_in_hull_by_subsets(const std::vector<Point>& points) {
    const std::size_t d = points.front().dim();
    const std::size_t k = std::min(d + 1, points.size());
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::vector<Point> sub;
        for (auto i : idx) sub.push_back(points[i]);
        if (sgn(nearest_by_face_enumeration(sub).squared_distance) == 0) return true;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == points.size() - k + pos - 1) --pos;
        if (pos == 0) return false;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

bool hulls_intersect(const std::vector<Point>& a, const std::vector<Point>& b) {
    std::vector<Point> diff;
    for (const auto& x : a)
        for (const auto& y : b) diff.push_back(x - y);
    return origin_in_hull_by_subsets(diff);
}

bool two_partition_exists(const std::vector<std::vector<Point>>& members) {
    const std::size_t m = members.size();
    // Member 0 always goes to the first part; this visits each partition once.
    for (unsigned mask = 1; mask < (1u << (m - 1)); ++mask) {
        std::vector<Point> first = members[0], second;
        for (std::size_t i = 1; i < m; ++i) {
            auto& part = (mask & (1u << (i - 1))) ? second : first;
            part.insert(part.end(), members[i].begin(), members[i].end());
        }
        if (hulls_intersect(first, second)) return true;
    }
    return false;
}

bool in_convm(const Point& p, const std::vector<Point>& X, std::size_t m) {
    const std::size_t n = X.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > m) continue;
        std::vector<Point> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(X[i]);
        if (in_hull(p, subset)) return true;
    }
    return false;
}

std::vector<Point> uncovered_grid_points(const std::vector<Point>& target, const std::vector<std::vector<Point>>& pieces,
                                         long resolution) {
    Rational lo_x = target[0][0], hi_x = lo_x, lo_y = target[0][1], hi_y = lo_y;
    for (const auto& v : target) {
        lo_x = std::min(lo_x, v[0]);
        hi_x = std::max(hi_x, v[0]);
        lo_y = std::min(lo_y, v[1]);
        hi_y = std::max(hi_y, v[1]);
    }
    std::vector<Point> out;
    for (long i = 0; i <= resolution; ++i)
        for (long j = 0; j <= resolution; ++j) {
            Point q{lo_x + (hi_x - lo_x) * Rational(i) / resolution, lo_y + (hi_y - lo_y) * Rational(j) / resolution};
            if (!in_hull(q, target)) continue;
            bool hit = false;
            for (const auto& piece : pieces)
                if (in_hull(q, piece)) {
                    hit = true;
                    break;
                }
            if (!hit) out.push_back(q);
        }
    return out;
}

Rational segment_line_squared_distance(const Point& base, const Point& d, const Point& a, const Point& b) {
    auto perp = [&](const Point& w) {
        Rational c = dot(w, d) / dot(d, d);
        return w - c * d;
    };
    const Point u = perp(a - base), v = perp(b - a);
    // |u + t v|^2 on [0, 1]
    auto value = [&](const Rational& t) { return squared_norm(u + t * v); };
    Rational best = std::min(value(0), value(1));
    if (sgn(squared_norm(v)) > 0) {
        Rational t = -dot(u, v) / squared_norm(v);
        if (sgn(t) > 0 && t < 1) best = std::min(best, value(t));
    }
    return best;
}

}  // namespace cara::oracle
