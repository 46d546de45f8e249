#include "cara/kconvexity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cara/error.hpp"

namespace cara {

Point PLCurve::at(std::size_t segment, const Rational& t) const {
    if (segment >= segments()) throw InputError("curve has no segment " + std::to_string(segment));
    const Point& a = waypoints[segment];
    return a + t * (waypoints[segment + 1] - a);
}

// ---------------------------------------------------------------------------

CompactumRep CompactumRep::cloud(std::vector<Point> pts) {
    CompactumRep r;
    r.kind = Kind::pointCloud;
    r.points = std::move(pts);
    return r;
}

CompactumRep CompactumRep::pl_curve(std::vector<Point> waypoints) {
    CompactumRep r;
    r.kind = Kind::plCurve;
    r.curve.waypoints = std::move(waypoints);
    return r;
}

CompactumRep CompactumRep::polytope_union(std::vector<VPolytope> parts) {
    CompactumRep r;
    r.kind = Kind::polytopeUnion;
    r.polytopes = std::move(parts);
    return r;
}

CompactumRep CompactumRep::from_oracle(std::shared_ptr<const CompactumOracle> o) {
    CompactumRep r;
    r.kind = Kind::oracle;
    r.oracle = std::move(o);
    return r;
}

const char* CompactumRep::kind_name(Kind k) {
    switch (k) {
        case Kind::pointCloud: return "pointCloud";
        case Kind::plCurve: return "plCurve";
        case Kind::polytopeUnion: return "polytopeUnion";
        case Kind::oracle: return "oracle";
    }
    return "?";
}

std::size_t CompactumRep::dim() const {
    switch (kind) {
        case Kind::pointCloud: return points.empty() ? 0 : points.front().dim();
        case Kind::plCurve: return curve.dim();
        case Kind::polytopeUnion: return polytopes.empty() ? 0 : polytopes.front().dim();
        case Kind::oracle: return oracle ? oracle->dim : 0;
    }
    return 0;
}

void CompactumRep::validate() const {
    switch (kind) {
        case Kind::pointCloud:
            if (points.empty()) throw InputError("pointCloud has no points");
            common_dim(points, "pointCloud");
            break;
        case Kind::plCurve:
            if (curve.waypoints.empty()) throw InputError("plCurve has no waypoints");
            common_dim(curve.waypoints, "plCurve");
            break;
        case Kind::polytopeUnion: {
            if (polytopes.empty()) throw InputError("polytopeUnion has no polytopes");
            const std::size_t d = dim();
            for (const auto& poly : polytopes) {
                if (poly.vertices.empty()) throw InputError("polytopeUnion has an empty polytope");
                require_dim(poly.vertices, d, "polytopeUnion");
            }
            break;
        }
        case Kind::oracle:
            if (!oracle || oracle->dim == 0) throw InputError("oracle compactum without a dimension");
            break;
    }
}

std::vector<std::vector<Point>> CompactumRep::pieces() const {
    std::vector<std::vector<Point>> out;
    switch (kind) {
        case Kind::pointCloud:
            for (const auto& p : points) out.push_back({p});
            break;
        case Kind::plCurve:
            if (curve.waypoints.size() == 1) out.push_back({curve.waypoints[0]});
            for (std::size_t i = 0; i < curve.segments(); ++i)
                out.push_back({curve.waypoints[i], curve.waypoints[i + 1]});
            break;
        case Kind::polytopeUnion:
            for (const auto& poly : polytopes) out.push_back(poly.vertices);
            break;
        case Kind::oracle: throw CapabilityError("oracle compactum has no finite pieces");
    }
    return out;
}

std::vector<Point> CompactumRep::generators() const {
    switch (kind) {
        case Kind::pointCloud: return points;
        case Kind::plCurve: return curve.waypoints;
        case Kind::polytopeUnion: {
            std::vector<Point> out;
            for (const auto& poly : polytopes) out.insert(out.end(), poly.vertices.begin(), poly.vertices.end());
            return out;
        }
        case Kind::oracle: throw CapabilityError("oracle compactum has no generators");
    }
    return {};
}

std::vector<Point> CompactumRep::sample(std::size_t density, std::uint64_t seed) const {
    density = std::max<std::size_t>(density, 1);
    std::vector<Point> out;
    switch (kind) {
        case Kind::pointCloud: return points;
        case Kind::plCurve:
            for (std::size_t i = 0; i < curve.segments(); ++i)
                for (std::size_t j = 0; j < density; ++j)
                    out.push_back(curve.at(i, ratio(static_cast<long>(j), static_cast<long>(density))));
            out.push_back(curve.waypoints.back());
            return out;
        case Kind::polytopeUnion:
            for (const auto& poly : polytopes) {
                out.insert(out.end(), poly.vertices.begin(), poly.vertices.end());
                if (poly.vertices.size() > 1) {
                    auto inner = halton_hull_samples(poly.vertices, density);
                    out.insert(out.end(), inner.begin(), inner.end());
                }
            }
            return out;
        case Kind::oracle:
            if (!oracle->sampler) throw CapabilityError("oracle compactum does not support sampling");
            return oracle->sampler(density, seed);
    }
    return out;
}

namespace {

bool on_segment(const Point& x, const Point& a, const Point& b) {
    if (a == b) return x == a;
    const Point d = b - a;
    Rational t = dot(x - a, d) / squared_norm(d);
    return sgn(t) >= 0 && t <= 1 && a + t * d == x;
}

}  // namespace

bool CompactumRep::contains(const Point& x) const {
    switch (kind) {
        case Kind::pointCloud: return std::find(points.begin(), points.end(), x) != points.end();
        case Kind::plCurve:
            if (curve.waypoints.size() == 1) return x == curve.waypoints[0];
            for (std::size_t i = 0; i < curve.segments(); ++i)
                if (on_segment(x, curve.waypoints[i], curve.waypoints[i + 1])) return true;
            return false;
        case Kind::polytopeUnion:
            return std::any_of(polytopes.begin(), polytopes.end(),
                               [&](const VPolytope& p) { return hull_membership(x, p.vertices).member(); });
        case Kind::oracle:
            if (!oracle->contains) throw CapabilityError("oracle compactum does not support membership");
            return oracle->contains(x);
    }
    return false;
}

Point CompactumRep::extreme_point(const Point& c) const {
    if (kind == Kind::oracle) {
        if (!oracle->extreme_point) throw CapabilityError("oracle compactum does not support extreme points");
        return oracle->extreme_point(c);
    }
    const auto gens = generators();
    std::size_t best = 0;
    Rational best_value = dot(c, gens[0]);
    for (std::size_t i = 1; i < gens.size(); ++i) {
        Rational v = dot(c, gens[i]);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    return gens[best];
}

// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<double>;

double dot_d(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Orthonormalizes rows in place; false when they are (numerically) dependent.
bool orthonormalize(std::vector<Vec>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double c = dot_d(rows[i], rows[j]);
            for (std::size_t t = 0; t < rows[i].size(); ++t) rows[i][t] -= c * rows[j][t];
        }
        double len = std::sqrt(dot_d(rows[i], rows[i]));
        if (len < 1e-9) return false;
        for (double& v : rows[i]) v /= len;
    }
    return true;
}

std::vector<Vec> gaussian_rows(std::size_t k, std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vec> rows(k, Vec(n));
    for (auto& r : rows)
        for (double& v : r) v = g(rng);
    return rows;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rational squared_distance_to_pieces(const Point& y, const std::vector<std::vector<Point>>& projected_pieces) {
    std::optional<Rational> best;
    for (const auto& piece : projected_pieces) {
        std::vector<Point> shifted;
        shifted.reserve(piece.size());
        for (const auto& v : piece) shifted.push_back(v - y);
        Rational d = min_norm_point(shifted).squared_distance;
        if (!best || d < *best) best = d;
        if (sgn(*best) == 0) break;
    }
    return *best;
}

double nearest_sample(const Vec& y, const std::vector<Vec>& samples) {
    double best = INFINITY;
    for (const auto& s : samples) {
        double d = 0;
        for (std::size_t i = 0; i < y.size(); ++i) d += (y[i] - s[i]) * (y[i] - s[i]);
        best = std::min(best, d);
    }
    return std::sqrt(best);
}

bool in_polygon_d(const Vec& y, const std::vector<Vec>& hull) {
    if (hull.size() < 3) return false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec& a = hull[i];
        const Vec& b = hull[(i + 1) % hull.size()];
        if ((b[0] - a[0]) * (y[1] - a[1]) - (b[1] - a[1]) * (y[0] - a[0]) < 0) return false;
    }
    return true;
}

}  // namespace

Matrix random_dyadic_projection(std::size_t k, std::size_t n, std::uint64_t seed, long denominator) {
    if (k == 0 || k > n) throw InputError("projection rank must lie in [1, n]");
    std::mt19937_64 rng(seed);
    for (;;) {
        auto rows = gaussian_rows(k, n, rng);
        if (!orthonormalize(rows)) continue;
        Matrix a(k, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = round_to(rows[i][j], denominator);
        if (rank(a) == k) return a;
    }
}

namespace {

struct HoleCandidate {
    Vec y;
    double score;
};

std::vector<HoleCandidate> screen_holes(const std::vector<Vec>& samples, const std::vector<Point>& projected_gens,
                                        std::size_t k, double tol, const KConvexityConfig& config,
                                        std::mt19937_64& rng) {
    std::vector<HoleCandidate> out;
    if (k == 1) {
        std::vector<double> xs;
        for (const auto& s : samples) xs.push_back(s[0]);
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 1; i < xs.size(); ++i) {
            double half = (xs[i] - xs[i - 1]) / 2;
            if (half > tol) out.push_back({{xs[i - 1] + half}, half});
        }
    } else if (k == 2) {
        std::vector<Vec> hull;
        for (const auto& v : convex_hull_2d(projected_gens)) hull.push_back(to_doubles(v));
        if (hull.size() < 3) return out;
        double lo0 = hull[0][0], hi0 = lo0, lo1 = hull[0][1], hi1 = lo1;
        for (const auto& v : hull) {
            lo0 = std::min(lo0, v[0]);
            hi0 = std::max(hi0, v[0]);
            lo1 = std::min(lo1, v[1]);
            hi1 = std::max(hi1, v[1]);
        }
        const std::size_t g = std::max<std::size_t>(config.grid, 2);
        for (std::size_t i = 0; i <= g; ++i)
            for (std::size_t j = 0; j <= g; ++j) {
                Vec y{lo0 + (hi0 - lo0) * static_cast<double>(i) / static_cast<double>(g),
                      lo1 + (hi1 - lo1) * static_cast<double>(j) / static_cast<double>(g)};
                if (!in_polygon_d(y, hull)) continue;
                double s = nearest_sample(y, samples);
                if (s > tol) out.push_back({y, s});
            }
    } else {
        std::vector<Vec> gens;
        for (const auto& v : projected_gens) gens.push_back(to_doubles(v));
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        std::exponential_distribution<double> expo(1.0);
        const std::size_t count = config.grid * config.grid;
        for (std::size_t c = 0; c < count; ++c) {
            Vec y(k, 0.0);
            double total = 0;
            for (std::size_t t = 0; t <= k; ++t) {
                double w = expo(rng);
                const Vec& g = gens[pick(rng)];
                for (std::size_t i = 0; i < k; ++i) y[i] += w * g[i];
                total += w;
            }
            for (double& v : y) v /= total;
            double s = nearest_sample(y, samples);
            if (s > tol) out.push_back({y, s});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const HoleCandidate& a, const HoleCandidate& b) { return a.score > b.score; });
    return out;
}

}  // namespace

KConvexityVerdict check_k_convexity(const CompactumRep& X, std::size_t k, const Rational& tol,
                                    const KConvexityConfig& config) {
    X.validate();
    const std::size_t n = X.dim();
    if (k < 1 || k > n) throw InputError("check_k_convexity: k must lie in [1, dim]");
    if (sgn(tol) < 0) throw InputError("check_k_convexity: negative tolerance");
    if (!X.finite() && (!X.oracle->projected_membership || !X.oracle->sampler))
        throw CapabilityError("check_k_convexity: oracle needs projected membership and sampling");

    const std::vector<Point> samples = X.sample(X.finite() ? config.density : config.density * 64, config.seed);
    const std::vector<Point> gens = X.finite() ? X.generators() : samples;
    const auto pieces = X.finite() ? X.pieces() : std::vector<std::vector<Point>>{};
    const double tol_d = to_double(tol);
    const Rational tol2 = tol * tol;

    KConvexityVerdict verdict;
    std::mt19937_64 rng(mix(config.seed, 7));
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        ++verdict.trials_run;
        Matrix a = random_dyadic_projection(k, n, mix(config.seed, trial));
        std::vector<Vec> projected;
        for (const auto& s : project(samples, a)) projected.push_back(to_doubles(s));
        const auto projected_gens = project(gens, a);

        auto candidates = screen_holes(projected, projected_gens, k, tol_d, config, rng);
        verdict.candidates_screened += candidates.size();
        std::vector<std::vector<Point>> projected_pieces;
        if (X.finite())
            for (const auto& piece : pieces) projected_pieces.push_back(project(piece, a));

        for (std::size_t c = 0; c < std::min(candidates.size(), config.verify_per_trial); ++c) {
            ++verdict.candidates_verified;
            Point y(k);
            for (std::size_t i = 0; i < k; ++i) y[i] = round_to(candidates[c].y[i], 1L << 16);
            if (!hull_membership(y, projected_gens).member()) continue;
            if (X.finite()) {
                Rational d2 = squared_distance_to_pieces(y, projected_pieces);
                if (d2 <= tol2) continue;
                verdict.hole_squared_distance = d2;
            } else if (X.oracle->projected_membership(a, y, tol)) {
                continue;
            }
            verdict.counterexample = true;
            verdict.projection = std::move(a);
            verdict.hole = std::move(y);
            return verdict;
        }
    }
    return verdict;
}

bool verify_k_convexity_counterexample(const CompactumRep& X, const KConvexityVerdict& verdict, const Rational& tol) {
    if (!verdict.counterexample) return false;
    const Matrix& a = verdict.projection;
    if (a.cols() != X.dim() || verdict.hole.dim() != a.rows()) return false;
    if (X.finite()) {
        if (!hull_membership(verdict.hole, project(X.generators(), a)).member()) return false;
        std::vector<std::vector<Point>> projected;
        for (const auto& piece : X.pieces()) projected.push_back(project(piece, a));
        return squared_distance_to_pieces(verdict.hole, projected) > tol * tol;
    }
    if (!X.oracle->projected_membership || !X.oracle->sampler) return false;
    return !X.oracle->projected_membership(a, verdict.hole, tol);
}

// ---------------------------------------------------------------------------

std::optional<CurvePoint> hyperplane_curve_intersection(const PLCurve& curve, const Hyperplane& h) {
    if (curve.waypoints.empty()) throw InputError("hyperplane_curve_intersection: empty curve");
    require_dim(curve.waypoints, h.normal.dim(), "hyperplane_curve_intersection");
    if (curve.segments() == 0) {
        if (sgn(h.evaluate(curve.waypoints[0])) == 0) return CurvePoint{curve.waypoints[0], 0, Rational(0)};
        return std::nullopt;
    }
    for (std::size_t i = 0; i < curve.segments(); ++i) {
        const Point& a = curve.waypoints[i];
        const Point& b = curve.waypoints[i + 1];
        Rational s0 = h.evaluate(a), s1 = h.evaluate(b);
        if (sgn(s0) == 0) return CurvePoint{a, i, Rational(0)};
        if (sgn(s0) * sgn(s1) < 0) {
            Rational t = s0 / (s0 - s1);
            return CurvePoint{curve.at(i, t), i, t};
        }
    }
    const std::size_t last = curve.segments() - 1;
    if (sgn(h.evaluate(curve.waypoints.back())) == 0) return CurvePoint{curve.waypoints.back(), last, Rational(1)};
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

// Component of w orthogonal to span(directions), exact.
Point orthogonal_part(const Point& w, const std::vector<Point>& directions, const Matrix& gram) {
    if (directions.empty()) return w;
    Point rhs(directions.size());
    for (std::size_t j = 0; j < directions.size(); ++j) rhs[j] = dot(directions[j], w);
    auto sol = solve(gram, rhs);
    if (!sol) throw ConsistencyError("flat directions are dependent");
    Point out = w;
    for (std::size_t j = 0; j < directions.size(); ++j)
        if (sgn(sol->particular[j]) != 0) out -= sol->particular[j] * directions[j];
    return out;
}

Matrix gram_of(const std::vector<Point>& directions) {
    Matrix g(directions.size(), directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i)
        for (std::size_t j = 0; j < directions.size(); ++j) g(i, j) = dot(directions[i], directions[j]);
    return g;
}

}  // namespace

Rational flat_piece_squared_distance(const Point& base, const std::vector<Point>& directions,
                                     const std::vector<Point>& piece) {
    if (piece.empty()) throw InputError("flat_piece_squared_distance: empty piece");
    const Matrix gram = gram_of(directions);
    std::vector<Point> projected;
    projected.reserve(piece.size());
    for (const auto& v : piece) projected.push_back(orthogonal_part(v - base, directions, gram));
    return min_norm_point(projected).squared_distance;
}

Rational flat_squared_clearance(const Point& base, const std::vector<Point>& directions, const CompactumRep& set) {
    std::optional<Rational> best;
    for (const auto& piece : set.pieces()) {
        Rational d = flat_piece_squared_distance(base, directions, piece);
        if (!best || d < *best) best = d;
        if (sgn(*best) == 0) break;
    }
    return *best;
}

namespace {

// Floating-point view of a set for the search objective: points and segments.
struct FloatSet {
    std::vector<Vec> points;
    std::vector<std::pair<Vec, Vec>> segments;
};

FloatSet float_view(const CompactumRep& set, std::size_t density, std::uint64_t seed) {
    FloatSet f;
    if (!set.finite()) {
        for (const auto& p : set.sample(density * 64, seed)) f.points.push_back(to_doubles(p));
        return f;
    }
    for (const auto& piece : set.pieces()) {
        if (piece.size() == 1) {
            f.points.push_back(to_doubles(piece[0]));
        } else if (piece.size() == 2) {
            f.segments.emplace_back(to_doubles(piece[0]), to_doubles(piece[1]));
        } else {
            for (std::size_t i = 0; i < piece.size(); ++i)
                for (std::size_t j = i + 1; j < piece.size(); ++j)
                    f.segments.emplace_back(to_doubles(piece[i]), to_doubles(piece[j]));
            for (const auto& s : halton_hull_samples(piece, density)) f.points.push_back(to_doubles(s));
        }
    }
    return f;
}

Vec perp(const Vec& w, const std::vector<Vec>& q) {
    Vec out = w;
    for (const auto& row : q) {
        double c = dot_d(w, row);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * row[i];
    }
    return out;
}

double float_clearance(const Vec& p, std::vector<Vec> rows, const std::vector<FloatSet>& sets) {
    if (!orthonormalize(rows)) return -1;
    double best = INFINITY;
    auto diff = [](const Vec& a, const Vec& b) {
        Vec d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        return d;
    };
    for (const auto& s : sets) {
        for (const auto& x : s.points) {
            Vec u = perp(diff(x, p), rows);
            best = std::min(best, dot_d(u, u));
        }
        for (const auto& [a, b] : s.segments) {
            Vec u = perp(diff(a, p), rows);
            Vec v = perp(diff(b, a), rows);
            double vv = dot_d(v, v);
            double t = vv > 0 ? std::clamp(-dot_d(u, v) / vv, 0.0, 1.0) : 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += t * v[i];
            best = std::min(best, dot_d(u, u));
        }
    }
    return std::sqrt(best);
}

}  // namespace

AvoidFlatResult find_avoiding_flat(const Point& p, const std::vector<CompactumRep>& sets, std::size_t k,
                                   const AvoidFlatConfig& config) {
    const std::size_t n = p.dim();
    if (sets.empty()) throw InputError("find_avoiding_flat: no sets");
    for (const auto& s : sets) {
        s.validate();
        if (s.dim() != n) throw InputError("find_avoiding_flat: set dimension differs from the point");
    }
    if (k >= n) throw InputError("find_avoiding_flat: k must be smaller than the dimension");

    AvoidFlatResult result;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!sets[i].finite()) {
            result.warnings.push_back("set " + std::to_string(i) + ": precondition not checked for an oracle set");
            if (!sets[i].oracle->flat_intersection || !sets[i].oracle->sampler)
                throw CapabilityError("find_avoiding_flat: oracle needs flat intersection and sampling");
            continue;
        }
        if (convm_membership_pieces(p, sets[i].pieces(), k + 1).member())
            result.warnings.push_back("set " + std::to_string(i) + ": point lies in conv_" + std::to_string(k + 1));
    }

    std::vector<FloatSet> views;
    for (std::size_t i = 0; i < sets.size(); ++i) views.push_back(float_view(sets[i], config.density, mix(config.seed, i)));
    const Vec pd = to_doubles(p);

    std::mt19937_64 rng(mix(config.seed, 99));
    std::uniform_int_distribution<std::size_t> row_pick(0, std::max<std::size_t>(k, 1) - 1), col_pick(0, n - 1);
    for (std::size_t restart = 0; restart < config.restarts; ++restart) {
        ++result.restarts_used;
        auto rows = gaussian_rows(k, n, rng);
        double value = float_clearance(pd, rows, views);
        if (k > 0) {
            double step = 0.5;
            std::size_t stale = 0;
            for (std::size_t it = 0; it < config.climb_steps && step > 1e-4; ++it) {
                std::size_t r = row_pick(rng), c = col_pick(rng);
                bool improved = false;
                for (double sign : {1.0, -1.0}) {
                    auto trial = rows;
                    trial[r][c] += sign * step;
                    double v = float_clearance(pd, trial, views);
                    if (v > value) {
                        rows = std::move(trial);
                        value = v;
                        improved = true;
                        break;
                    }
                }
                if (improved) {
                    stale = 0;
                } else if (++stale >= k * n) {
                    step /= 2;
                    stale = 0;
                }
            }
        }
        result.best_float_clearance = std::max(result.best_float_clearance, value);
        if (value <= 0) continue;

        if (!orthonormalize(rows)) continue;
        std::vector<Point> directions;
        for (const auto& row : rows) {
            Point d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = round_to(row[j], config.denominator);
            directions.push_back(std::move(d));
        }
        if (!linearly_independent(directions)) continue;

        FlatCertificate cert{p, directions, Rational(0), true};
        std::optional<Rational> best;
        bool blocked = false;
        for (std::size_t i = 0; i < sets.size() && !blocked; ++i) {
            Rational d;
            if (sets[i].finite()) {
                d = flat_squared_clearance(p, directions, sets[i]);
            } else {
                cert.exact = false;
                if (sets[i].oracle->flat_intersection(p, directions)) {
                    blocked = true;
                    break;
                }
                const Matrix gram = gram_of(directions);
                std::optional<Rational> s;
                for (const auto& x : sets[i].sample(config.density * 64, mix(config.seed, i))) {
                    Rational v = squared_norm(orthogonal_part(x - p, directions, gram));
                    if (!s || v < *s) s = v;
                }
                d = *s;
            }
            if (!best || d < *best) best = d;
            if (sgn(*best) == 0) blocked = true;
        }
        if (blocked) continue;
        cert.squared_clearance = *best;
        result.certificate = std::move(cert);
        return result;
    }
    return result;
}

bool verify_flat_certificate(const FlatCertificate& cert, const std::vector<CompactumRep>& sets) {
    const std::size_t n = cert.base.dim();
    for (const auto& d : cert.directions)
        if (d.dim() != n) return false;
    if (!linearly_independent(cert.directions) || cert.directions.size() >= n) return false;
    if (sgn(cert.squared_clearance) <= 0) return false;
    for (const auto& s : sets) {
        if (s.dim() != n) return false;
        if (s.finite()) {
            if (flat_squared_clearance(cert.base, cert.directions, s) < cert.squared_clearance) return false;
        } else {
            if (cert.exact || !s.oracle->flat_intersection) return false;
            if (s.oracle->flat_intersection(cert.base, cert.directions)) return false;
        }
    }
    return true;
}

}  // namespace cara
