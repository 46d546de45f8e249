#include "cara/join_hulls.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>

#include "cara/combinatorics.hpp"
#include "cara/error.hpp"

namespace cara {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        std::size_t num = n - k + i;
        if (r > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
        r = r * num / i;
    }
    return r;
}

unsigned long nth_prime(std::size_t i) {
    static std::mutex guard;
    static std::vector<unsigned long> primes{2};
    std::lock_guard<std::mutex> lock(guard);
    while (primes.size() <= i) {
        unsigned long c = primes.back() + 1;
        for (;; ++c) {
            bool prime = true;
            for (unsigned long p : primes) {
                if (p * p > c) break;
                if (c % p == 0) {
                    prime = false;
                    break;
                }
            }
            if (prime) break;
        }
        primes.push_back(c);
    }
    return primes[i];
}

void Family::validate() const {
    if (members.empty()) throw InputError("family has no members");
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].vertices.empty()) throw InputError("family member " + std::to_string(i) + " has no vertices");
        require_dim(members[i].vertices, dim, "family member " + std::to_string(i));
    }
}

std::vector<Point> Family::union_vertices(const std::vector<std::size_t>& subfamily) const {
    std::vector<Point> out;
    for (std::size_t i : subfamily) out.insert(out.end(), members.at(i).vertices.begin(), members.at(i).vertices.end());
    return out;
}

// ---------------------------------------------------------------------------

ConvmResult convm_membership(const Point& p, const std::vector<Point>& X, std::size_t m) {
    if (m == 0) throw InputError("convm_membership: m must be positive");
    if (X.empty()) throw InputError("convm_membership: empty ground set");
    require_dim(X, p.dim(), "convm_membership");

    ConvmResult result;
    const std::size_t k = std::min(m, X.size());
    if (k >= affine_dimension(X) + 1) {
        // conv_k X = conv X here, so one hull test decides.
        result.subsets_tested = 1;
        auto mem = hull_membership(p, X);
        if (mem.member()) result.combination = caratheodory_reduce(p, X, mem.combination());
        return result;
    }

    std::vector<Point> subset(k);
    result.subsets_tested = for_each_combination(X.size(), k, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = X[idx[i]];
        auto mem = hull_membership(p, subset);
        if (!mem.member()) return true;
        ConvexCombination c;
        for (std::size_t j = 0; j < mem.combination().size(); ++j) {
            c.indices.push_back(idx[mem.combination().indices[j]]);
            c.weights.push_back(mem.combination().weights[j]);
        }
        result.combination = std::move(c);
        return false;
    });
    return result;
}

Point PieceCombination::evaluate() const {
    Point s(points.front().dim());
    for (std::size_t i = 0; i < points.size(); ++i) s += weights[i] * points[i];
    return s;
}

namespace {

// Frank-Wolfe estimate of the squared distance from the origin to conv(vs).
double float_hull_distance(const std::vector<std::vector<double>>& vs, int iterations) {
    std::vector<double> x = vs.front();
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    for (int it = 0; it < iterations; ++it) {
        std::size_t best = 0;
        double best_val = dot(x, vs[0]);
        for (std::size_t i = 1; i < vs.size(); ++i)
            if (double v = dot(x, vs[i]); v < best_val) best = i, best_val = v;
        std::vector<double> d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = vs[best][i] - x[i];
        const double dd = dot(d, d);
        if (dd == 0) break;
        const double gamma = std::clamp(-dot(x, d) / dd, 0.0, 1.0);
        if (gamma == 0) break;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += gamma * d[i];
    }
    return dot(x, x);
}

}  // namespace

PieceConvmResult convm_membership_pieces(const Point& p, const std::vector<std::vector<Point>>& pieces,
                                         std::size_t m) {
    if (m == 0) throw InputError("convm_membership_pieces: m must be positive");
    if (pieces.empty()) throw InputError("convm_membership_pieces: no pieces");
    for (const auto& piece : pieces) {
        if (piece.empty()) throw InputError("convm_membership_pieces: empty piece");
        require_dim(piece, p.dim(), "convm_membership_pieces");
    }

    const std::size_t k = std::min(m, pieces.size());
    std::vector<std::vector<std::size_t>> order;
    constexpr std::size_t kMaxScreened = 1u << 21;
    if (binomial(pieces.size(), k) <= kMaxScreened) {
        std::vector<std::vector<std::vector<double>>> shifted(pieces.size());
        for (std::size_t i = 0; i < pieces.size(); ++i)
            for (const auto& v : pieces[i]) shifted[i].push_back(to_doubles(v - p));
        std::vector<std::pair<double, std::vector<std::size_t>>> scored;
        std::vector<std::vector<double>> vs;
        auto score = [&](const std::vector<std::size_t>& idx, int iterations) {
            vs.clear();
            for (std::size_t piece : idx) vs.insert(vs.end(), shifted[piece].begin(), shifted[piece].end());
            return float_hull_distance(vs, iterations);
        };
        for_each_combination(pieces.size(), k, [&](const std::vector<std::size_t>& idx) {
            scored.emplace_back(score(idx, 48), idx);
            return true;
        });
        auto by_score = [](const auto& a, const auto& b) { return a.first < b.first; };
        std::stable_sort(scored.begin(), scored.end(), by_score);
        const std::size_t head = std::min<std::size_t>(64, scored.size());
        for (std::size_t i = 0; i < head; ++i) scored[i].first = score(scored[i].second, 2048);
        std::stable_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(head), by_score);
        for (auto& s : scored) order.push_back(std::move(s.second));
    }

    PieceConvmResult result;
    std::vector<Point> pts;
    std::vector<std::size_t> owner;
    auto test = [&](const std::vector<std::size_t>& idx) {
        ++result.subsets_tested;
        pts.clear();
        owner.clear();
        for (std::size_t piece : idx)
            for (const auto& v : pieces[piece]) {
                pts.push_back(v);
                owner.push_back(piece);
            }
        auto mem = hull_membership(p, pts);
        if (!mem.member()) return true;

        std::map<std::size_t, std::pair<Rational, Point>> grouped;
        for (std::size_t j = 0; j < mem.combination().size(); ++j) {
            std::size_t at = mem.combination().indices[j];
            const Rational& w = mem.combination().weights[j];
            auto [it, fresh] = grouped.try_emplace(owner[at], Rational(0), Point(p.dim()));
            it->second.first += w;
            it->second.second += w * pts[at];
        }
        PieceCombination c;
        for (auto& [piece, acc] : grouped) {
            c.pieces.push_back(piece);
            c.points.push_back(acc.second / acc.first);
            c.weights.push_back(acc.first);
        }
        result.combination = std::move(c);
        return false;
    };
    if (order.empty()) {
        for_each_combination(pieces.size(), k, test);
    } else {
        for (const auto& idx : order)
            if (!test(idx)) break;
    }
    return result;
}

JoinResult join_membership(const Point& p, const std::vector<std::vector<Point>>& sets, std::size_t budget) {
    if (sets.empty()) throw InputError("join_membership: no sets");
    std::size_t total = 1;
    for (const auto& s : sets) {
        if (s.empty()) throw InputError("join_membership: empty set");
        require_dim(s, p.dim(), "join_membership");
        if (total > budget / s.size()) throw ResourceError("join_membership: tuple count exceeds budget");
        total *= s.size();
    }

    JoinResult result;
    std::vector<std::size_t> pick(sets.size(), 0);
    std::vector<Point> tuple(sets.size());
    for (;;) {
        ++result.tuples_tested;
        for (std::size_t c = 0; c < sets.size(); ++c) tuple[c] = sets[c][pick[c]];
        auto mem = hull_membership(p, tuple);
        if (mem.member()) {
            result.member = true;
            result.choice = pick;
            result.weights.assign(sets.size(), Rational(0));
            for (std::size_t j = 0; j < mem.combination().size(); ++j)
                result.weights[mem.combination().indices[j]] = mem.combination().weights[j];
            return result;
        }
        std::size_t c = 0;
        while (c < sets.size() && ++pick[c] == sets[c].size()) pick[c++] = 0;
        if (c == sets.size()) break;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Planar primitives

namespace {

using Polygon = std::vector<Point>;

Rational cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Rational twice_area(const Polygon& poly) {
    Rational s(0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    return s;
}

bool positive_area(const Polygon& poly) { return poly.size() >= 3 && sgn(twice_area(poly)) > 0; }

// Part of a ccw convex polygon on the left (keep_left) or right of line a->b,
// boundary included.
Polygon clip(const Polygon& poly, const Point& a, const Point& b, bool keep_left) {
    Polygon out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % n];
        Rational sc = cross(a, b, cur), sn = cross(a, b, nxt);
        if (!keep_left) {
            sc = -sc;
            sn = -sn;
        }
        if (sgn(sc) >= 0) out.push_back(cur);
        if ((sgn(sc) > 0 && sgn(sn) < 0) || (sgn(sc) < 0 && sgn(sn) > 0)) {
            Rational t = sc / (sc - sn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    Polygon dedup;
    for (auto& v : out)
        if (dedup.empty() || dedup.back() != v) dedup.push_back(std::move(v));
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

// cell \ piece as interior-disjoint convex pieces of positive area.
std::vector<Polygon> subtract(const Polygon& cell, const Polygon& piece) {
    std::vector<Polygon> out;
    Polygon rest = cell;
    for (std::size_t i = 0; i < piece.size(); ++i) {
        const Point& a = piece[i];
        const Point& b = piece[(i + 1) % piece.size()];
        Polygon outside = clip(rest, a, b, false);
        if (positive_area(outside)) out.push_back(std::move(outside));
        rest = clip(rest, a, b, true);
        if (!positive_area(rest)) break;
    }
    return out;
}

bool in_planar_hull(const Point& x, const Polygon& hull) {
    if (hull.size() == 1) return x == hull[0];
    if (hull.size() == 2) {
        if (sgn(cross(hull[0], hull[1], x)) != 0) return false;
        Rational t = dot(x - hull[0], hull[1] - hull[0]);
        return sgn(t) >= 0 && t <= squared_norm(hull[1] - hull[0]);
    }
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (sgn(cross(hull[i], hull[(i + 1) % hull.size()], x)) < 0) return false;
    return true;
}

bool in_any(const Point& x, const std::vector<Polygon>& hulls) {
    return std::any_of(hulls.begin(), hulls.end(), [&](const Polygon& h) { return in_planar_hull(x, h); });
}

// Interior point of a positive-area cell avoiding every piece. Interiors of
// full-dimensional pieces are already cut away, so only points and segments
// remain; each lies on a line, which the parabola c + t a + t^2 b meets at most
// twice.
std::optional<Point> cell_witness(const Polygon& cell, const std::vector<Polygon>& pieces) {
    Point centroid(2);
    for (const auto& v : cell) centroid += v;
    centroid /= Rational(static_cast<long>(cell.size()));
    if (!in_any(centroid, pieces)) return centroid;
    const Point a = (cell[0] - centroid) / Rational(2);
    std::size_t j = 1;
    while (j < cell.size() && sgn(cross(centroid, cell[0], cell[j])) == 0) ++j;
    if (j == cell.size()) return std::nullopt;
    const Point b = (cell[j] - centroid) / Rational(2);
    for (long k = 2; k <= 2 * static_cast<long>(pieces.size()) + 3; ++k) {
        Rational t = ratio(1, k);
        Point q = centroid + t * a + (t * t) * b;
        if (!in_any(q, pieces)) return q;
    }
    return std::nullopt;
}

// Closed parameter interval of segment a->b (t in [0,1]) inside a planar hull.
std::optional<std::pair<Rational, Rational>> segment_interval(const Point& a, const Point& b, const Polygon& hull) {
    const Point dir = b - a;
    const Rational len2 = squared_norm(dir);
    auto param = [&](const Point& x) { return Rational(dot(x - a, dir) / len2); };
    auto on_line = [&](const Point& x) { return sgn(cross(a, b, x)) == 0; };
    auto clamp = [](Rational lo, Rational hi) -> std::optional<std::pair<Rational, Rational>> {
        if (lo < 0) lo = 0;
        if (hi > 1) hi = 1;
        if (lo > hi) return std::nullopt;
        return std::make_pair(lo, hi);
    };

    if (hull.size() == 1) {
        if (!on_line(hull[0])) return std::nullopt;
        Rational t = param(hull[0]);
        return clamp(t, t);
    }
    if (hull.size() == 2) {
        const Point &c = hull[0], &d = hull[1];
        Rational sc = cross(a, b, c), sd = cross(a, b, d);
        if (sgn(sc) == 0 && sgn(sd) == 0) {
            Rational tc = param(c), td = param(d);
            return clamp(std::min(tc, td), std::max(tc, td));
        }
        if (sgn(sc) * sgn(sd) > 0) return std::nullopt;
        Point q = c + Rational(sc / (sc - sd)) * (d - c);
        Rational t = param(q);
        return clamp(t, t);
    }
    Rational lo(0), hi(1);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& u = hull[i];
        const Point& v = hull[(i + 1) % hull.size()];
        Rational s0 = cross(u, v, a), s1 = cross(u, v, b);
        Rational slope = s1 - s0;
        if (sgn(slope) == 0) {
            if (sgn(s0) < 0) return std::nullopt;
            continue;
        }
        Rational bound = -s0 / slope;
        if (sgn(slope) > 0) lo = std::max(lo, bound);
        else hi = std::min(hi, bound);
    }
    return clamp(lo, hi);
}

}  // namespace

std::vector<Point> convex_hull_2d(std::vector<Point> points) {
    if (points.empty()) throw InputError("convex_hull_2d: empty point list");
    require_dim(points, 2, "convex_hull_2d");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() <= 2) return points;

    std::vector<Point> hull(2 * points.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        while (k >= 2 && sgn(cross(hull[k - 2], hull[k - 1], points[i])) <= 0) --k;
        hull[k++] = points[i];
    }
    for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && sgn(cross(hull[k - 2], hull[k - 1], points[i])) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

CoverageResult coverage_check_2d(const VPolytope& target, const std::vector<VPolytope>& pieces) {
    if (target.vertices.empty()) throw InputError("coverage_check_2d: empty target");
    require_dim(target.vertices, 2, "coverage_check_2d target");
    std::vector<Polygon> hulls;
    hulls.reserve(pieces.size());
    for (const auto& piece : pieces) {
        if (piece.vertices.empty()) throw InputError("coverage_check_2d: empty piece");
        hulls.push_back(convex_hull_2d(piece.vertices));
    }
    const Polygon t = convex_hull_2d(target.vertices);

    CoverageResult result;
    if (t.size() == 1) {
        result.covered = in_any(t[0], hulls);
        if (!result.covered) result.witness = t[0];
        return result;
    }

    if (t.size() == 2) {
        std::vector<std::pair<Rational, Rational>> spans;
        for (const auto& h : hulls)
            if (auto s = segment_interval(t[0], t[1], h)) spans.push_back(std::move(*s));
        std::sort(spans.begin(), spans.end());
        Rational reach(0);
        std::optional<Rational> gap;
        for (const auto& [lo, hi] : spans) {
            if (lo > reach) {
                gap = (reach + lo) / 2;
                break;
            }
            if (hi > reach) reach = hi;
        }
        if (!gap && spans.empty()) gap = ratio(1, 2);
        if (!gap && !spans.empty() && spans.front().first > 0) gap = spans.front().first / 2;
        if (!gap && reach < 1) gap = (reach + 1) / 2;
        result.covered = !gap.has_value();
        if (gap) result.witness = t[0] + *gap * (t[1] - t[0]);
        return result;
    }

    std::vector<Polygon> cells{t};
    for (const auto& h : hulls) {
        if (h.size() < 3) continue;
        std::vector<Polygon> next;
        for (const auto& c : cells) {
            auto parts = subtract(c, h);
            next.insert(next.end(), std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end()));
        }
        cells = std::move(next);
        if (cells.empty()) break;
    }
    result.covered = cells.empty();
    for (const auto& c : cells) {
        if (auto w = cell_witness(c, hulls)) {
            result.witness = std::move(w);
            break;
        }
    }
    if (!result.covered && !result.witness)
        throw ConsistencyError("coverage_check_2d: uncovered cell without an off-piece witness");
    return result;
}

std::vector<Point> halton_hull_samples(const std::vector<Point>& vertices, std::size_t count, std::size_t offset) {
    if (vertices.empty()) throw InputError("halton_hull_samples: no vertices");
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const unsigned long index = static_cast<unsigned long>(s + offset);
        std::vector<Rational> w(vertices.size());
        Rational total(0);
        for (std::size_t j = 0; j < vertices.size(); ++j) {
            const unsigned long base = nth_prime(j);
            Rational f(1), r(0);
            for (unsigned long i = index; i > 0; i /= base) {
                f /= base;
                r += f * Rational(static_cast<long>(i % base));
            }
            // Shift away from zero so every vertex keeps positive weight.
            w[j] = r + ratio(1, static_cast<long>(2 * base));
            total += w[j];
        }
        Point p(vertices.front().dim());
        for (std::size_t j = 0; j < vertices.size(); ++j) p += (w[j] / total) * vertices[j];
        out.push_back(std::move(p));
    }
    return out;
}

CoverageResult coverage_check(const std::vector<Point>& target, const std::vector<std::vector<Point>>& pieces,
                              std::size_t samples) {
    const AffineFrame frame = affine_frame(target);
    if (frame.dim() <= 2) {
        auto to_plane = [&](const Point& x) {
            auto c = frame.coordinates(x);
            if (!c) throw InputError("coverage_check: piece leaves the affine hull of the target");
            Point q(2);
            for (std::size_t i = 0; i < c->dim(); ++i) q[i] = (*c)[i];
            return q;
        };
        VPolytope t;
        for (const auto& v : target) t.vertices.push_back(to_plane(v));
        std::vector<VPolytope> ps;
        for (const auto& piece : pieces) {
            VPolytope q;
            for (const auto& v : piece) q.vertices.push_back(to_plane(v));
            ps.push_back(std::move(q));
        }
        CoverageResult r = coverage_check_2d(t, ps);
        if (r.witness) {
            Point c(frame.dim());
            for (std::size_t i = 0; i < frame.dim(); ++i) c[i] = (*r.witness)[i];
            r.witness = frame.embed(c);
        }
        return r;
    }

    CoverageResult result;
    std::vector<Point> candidates = halton_hull_samples(target, samples);
    for (const auto& x : candidates) {
        bool hit = std::any_of(pieces.begin(), pieces.end(),
                               [&](const std::vector<Point>& piece) { return hull_membership(x, piece).member(); });
        if (!hit) {
            result.covered = false;
            result.witness = x;
            result.exact = true;
            return result;
        }
    }
    result.covered = true;
    result.exact = false;
    return result;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Point> distinct(std::vector<Point> pts) {
    std::vector<Point> out;
    for (auto& p : pts)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    return out;
}

// Candidate witnesses: Halton interior points, then centroids of vertex subsets.
std::vector<Point> witness_candidates(const std::vector<Point>& vertices, const KappaConfig& config) {
    std::vector<Point> out = halton_hull_samples(vertices, config.samples);
    std::size_t budget = config.centroid_subsets;
    for (std::size_t k = 2; k <= vertices.size() && budget > 0; ++k) {
        for_each_combination(vertices.size(), k, [&](const std::vector<std::size_t>& idx) {
            Point c(vertices.front().dim());
            for (auto i : idx) c += vertices[i];
            out.push_back(c / Rational(static_cast<long>(k)));
            return --budget > 0;
        });
    }
    return out;
}

}  // namespace

KappaBound caratheodory_number_pointset(const std::vector<Point>& X, const KappaConfig& config) {
    common_dim(X, "caratheodory_number_pointset");
    const std::vector<Point> D = distinct(X);
    const int cap = static_cast<int>(affine_dimension(D)) + 1;

    KappaBound bound;
    for (const auto& p : witness_candidates(D, config)) {
        if (bound.lower >= cap) break;
        if (convm_membership(p, D, static_cast<std::size_t>(bound.lower)).member()) continue;
        int need = bound.lower + 1;
        while (need < cap && !convm_membership(p, D, static_cast<std::size_t>(need)).member()) ++need;
        bound.lower = need;
        bound.witness = KappaWitness{{}, p};
    }

    if (cap <= 3 && bound.lower < cap) {
        // Affine hull of dimension <= 2: settle the remaining levels by exact coverage.
        for (int m = bound.lower; m < cap; ++m) {
            std::vector<std::vector<Point>> pieces;
            if (binomial(D.size(), static_cast<std::size_t>(m)) > config.max_pieces) break;
            for_each_combination(D.size(), static_cast<std::size_t>(m), [&](const std::vector<std::size_t>& idx) {
                std::vector<Point> piece;
                for (auto i : idx) piece.push_back(D[i]);
                pieces.push_back(std::move(piece));
                return true;
            });
            CoverageResult cov = coverage_check(D, pieces, config.samples);
            if (cov.covered && cov.exact) {
                bound.upper = m;
                bound.upper_proven = true;
                bound.method = "coverage";
                return bound;
            }
            if (!cov.covered) {
                bound.lower = m + 1;
                bound.witness = KappaWitness{{}, *cov.witness};
            }
        }
    }
    bound.upper = cap;
    bound.upper_proven = true;
    bound.method = bound.lower == cap && cap <= 3 ? "coverage" : "caratheodory";
    return bound;
}

KappaBound family_caratheodory_number(const Family& family, const KappaConfig& config) {
    family.validate();
    const std::size_t m = family.size();
    const int cap = static_cast<int>(std::min(m, family.dim + 1));

    KappaBound bound;
    std::size_t examined = 0;
    bool all_exact = true;
    for (int kappa = 1; kappa <= cap; ++kappa) {
        std::optional<KappaWitness> failure;
        for (std::size_t size = static_cast<std::size_t>(kappa) + 1; size <= m && !failure; ++size) {
            for_each_combination(m, size, [&](const std::vector<std::size_t>& G) {
                if (++examined > config.max_subfamilies) return false;
                std::vector<std::vector<Point>> pieces;
                for_each_combination(size, static_cast<std::size_t>(kappa), [&](const std::vector<std::size_t>& H) {
                    std::vector<std::size_t> members;
                    for (auto h : H) members.push_back(G[h]);
                    pieces.push_back(family.union_vertices(members));
                    return true;
                });
                CoverageResult cov = coverage_check(family.union_vertices(G), pieces, config.samples);
                all_exact = all_exact && cov.exact;
                if (!cov.covered) {
                    failure = KappaWitness{G, *cov.witness};
                    return false;
                }
                return true;
            });
            if (examined > config.max_subfamilies) {
                bound.lower = kappa;
                bound.upper.reset();
                bound.upper_proven = false;
                bound.method = "budget";
                return bound;
            }
        }
        if (!failure) {
            bound.lower = kappa;
            bound.upper = kappa;
            bound.upper_proven = all_exact;
            bound.method = all_exact ? "coverage" : "sampled";
            return bound;
        }
        bound.lower = kappa + 1;
        bound.witness = std::move(failure);
    }
    // Unreachable for convex members: kappa = dim + 1 always covers.
    throw ConsistencyError("family_caratheodory_number: no level up to dim + 1 covered");
}

}  // namespace cara
