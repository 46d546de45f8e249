#include "cara/colorful.hpp"

#include <algorithm>

#include "cara/combinatorics.hpp"

namespace cara {

ColorSystem ColorSystem::of(std::vector<CompactumRep> colors, std::optional<Point> target) {
    ColorSystem s;
    if (colors.empty()) throw InputError("color system has no colors");
    s.dim = colors.front().dim();
    s.colors = std::move(colors);
    s.target = target ? std::move(*target) : Point(s.dim);
    return s;
}

void ColorSystem::validate() const {
    if (colors.empty()) throw InputError("color system has no colors");
    if (target.dim() != dim) throw InputError("target dimension differs from the color system");
    for (std::size_t i = 0; i < colors.size(); ++i) {
        colors[i].validate();
        if (colors[i].dim() != dim) throw InputError("color " + std::to_string(i) + " has the wrong dimension");
        if (!colors[i].finite()) continue;
        auto mem = hull_membership(target, colors[i].generators());
        if (!mem.member())
            throw InputError("target is outside the hull of color " + std::to_string(i) + ": separated by normal " +
                             to_string(mem.separator().normal) + " with margin " +
                             format_rational(mem.separator().margin));
    }
}

RepresentativeState RepresentativeState::of(std::vector<Point> reps) {
    RepresentativeState s{std::move(reps), {}};
    s.min_norm = min_norm_point(s.reps);
    return s;
}

// ---------------------------------------------------------------------------

LineIntersection line_hull_intersection(const Point& direction, const std::vector<Point>& points) {
    const Point origin(direction.dim());
    if (affinely_independent(points)) return line_simplex_intersection(origin, direction, points);
    // conv of the list is the union of conv over affinely independent subsets
    // of size affdim + 1, and the line meets a convex set in an interval.
    const std::size_t k = affine_dimension(points) + 1;
    LineIntersection out;
    std::vector<Point> subset(k);
    for_each_combination(points.size(), k, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = points[idx[i]];
        if (!affinely_independent(subset)) return true;
        auto hit = line_simplex_intersection(origin, direction, subset);
        if (!hit.hit()) return true;
        if (!out.hit()) {
            out = hit;
        } else {
            if (hit.t_min < out.t_min) out.t_min = hit.t_min;
            if (hit.t_max > out.t_max) out.t_max = hit.t_max;
        }
        return true;
    });
    return out;
}

ParityStep parity_descent_step(const RepresentativeState& state, const std::vector<Point>& y_reps) {
    const std::size_t m = state.reps.size();
    if (m == 0 || m > 31) throw InputError("parity_descent_step: between 1 and 31 colors supported");
    if (y_reps.size() != m) throw InputError("parity_descent_step: one y representative per color required");
    if (sgn(state.min_norm.squared_distance) == 0) throw InputError("parity_descent_step: distance is already zero");
    if (state.min_norm.support.size() != m)
        throw InputError("parity_descent_step: a corral weight is zero; swap instead");

    const Point& z = state.min_norm.point;
    ParityStep step;
    std::optional<std::uint32_t> best;
    Rational best_t;
    std::vector<Point> facet(m);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        for (std::size_t i = 0; i < m; ++i) facet[i] = (mask & (1u << i)) ? y_reps[i] : state.reps[i];
        FacetIntersection row{mask, line_hull_intersection(z, facet)};
        if (row.hit.hit() && sgn(row.hit.t_max) >= 0 && row.hit.t_min < 1) {
            Rational t = sgn(row.hit.t_min) > 0 ? row.hit.t_min : Rational(0);
            if (!best || t < best_t) {
                best = mask;
                best_t = t;
            }
        }
        step.table.push_back(std::move(row));
    }
    if (!best) throw DegeneracyError("parity_descent_step: no facet meets the segment from the target to z", step.table);

    std::vector<Point> reps(m);
    for (std::size_t i = 0; i < m; ++i) reps[i] = (*best & (1u << i)) ? y_reps[i] : state.reps[i];
    step.state = RepresentativeState::of(std::move(reps));
    step.mask = *best;
    step.t = best_t;
    if (!(step.state.min_norm.squared_distance < state.min_norm.squared_distance))
        throw ConsistencyError("parity_descent_step: distance did not decrease");
    return step;
}

// ---------------------------------------------------------------------------

namespace {

// A color seen from the target: all points are shifted by -target.
class ShiftedColor {
public:
    ShiftedColor(const CompactumRep& rep, const Point& target, const ColorfulConfig& config)
        : rep_(rep), target_(target), config_(config) {}

    bool is_curve() const { return rep_.kind == CompactumRep::Kind::plCurve; }

    // Generator nearest to the target, first in input order on ties.
    RepPoint nearest_vertex() const {
        const auto gens = rep_.generators();
        std::size_t best = 0;
        Rational best_d = squared_distance(gens[0], target_);
        for (std::size_t i = 1; i < gens.size(); ++i) {
            Rational d = squared_distance(gens[i], target_);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return vertex_rep(gens, best);
    }

    // Nearest point of the color to the target.
    RepPoint nearest() const {
        if (rep_.kind == CompactumRep::Kind::oracle) return initial_oracle_point();
        if (is_curve()) {
            const auto& w = rep_.curve.waypoints;
            if (w.size() == 1) return RepPoint{w[0], std::nullopt, 0};
            std::optional<RepPoint> best;
            Rational best_d;
            for (std::size_t s = 0; s + 1 < w.size(); ++s) {
                auto mn = min_norm_point({w[s] - target_, w[s + 1] - target_});
                Rational param = 0;
                for (std::size_t j = 0; j < mn.support.size(); ++j)
                    if (mn.support.indices[j] == 1) param = mn.support.weights[j];
                if (!best || mn.squared_distance < best_d) {
                    best = RepPoint{rep_.curve.at(s, param), s, param};
                    best_d = mn.squared_distance;
                }
            }
            return *best;
        }
        return nearest_vertex();
    }

    // A point minimizing <c, x> over the color.
    RepPoint extreme(const Point& c) const {
        if (rep_.kind == CompactumRep::Kind::oracle) {
            RepPoint r{rep_.extreme_point(c), std::nullopt, 0};
            require_in_subspace(r.point);
            return r;
        }
        const auto gens = rep_.generators();
        std::size_t best = 0;
        Rational best_v = dot(c, gens[0]);
        for (std::size_t i = 1; i < gens.size(); ++i) {
            Rational v = dot(c, gens[i]);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        return vertex_rep(gens, best);
    }

    // A point of the color on target + span(directions).
    std::optional<RepPoint> on_flat(const std::vector<Point>& directions) const {
        if (rep_.kind == CompactumRep::Kind::oracle) {
            if (!rep_.oracle->flat_intersection)
                throw CapabilityError("oracle color does not support flat intersection");
            auto x = rep_.oracle->flat_intersection(target_, directions);
            if (!x) return std::nullopt;
            return RepPoint{*x, std::nullopt, 0};
        }
        if (!is_curve() || directions.size() + 1 != target_.dim())
            throw CapabilityError("finite colors answer flat queries only as curves against hyperplanes");
        // Hyperplane through the target with normal orthogonal to the directions.
        Matrix a = Matrix::from_rows(directions);
        auto normal = nullspace(a);
        if (normal.size() != 1) throw ConsistencyError("flat directions are dependent");
        Hyperplane h{normal[0], dot(normal[0], target_)};
        auto hit = hyperplane_curve_intersection(rep_.curve, h);
        if (!hit) return std::nullopt;
        return RepPoint{hit->point, hit->segment, hit->param};
    }

    // Shift a curve point along its segment, staying on the curve.
    std::optional<RepPoint> perturb(const RepPoint& r, const Rational& eps) const {
        if (!is_curve() || !r.segment) return std::nullopt;
        Rational t = r.param + eps;
        if (t > 1) t = r.param - eps;
        if (sgn(t) < 0) return std::nullopt;
        return RepPoint{rep_.curve.at(*r.segment, t), r.segment, t};
    }

    Point shifted(const RepPoint& r) const { return r.point - target_; }
    Point shifted(const Point& x) const { return x - target_; }

    // Vertices of a convex piece of the color containing r, if known.
    std::optional<std::vector<Point>> cell(const RepPoint& r) const {
        if (is_curve() && r.segment)
            return std::vector<Point>{rep_.curve.waypoints[*r.segment], rep_.curve.waypoints[*r.segment + 1]};
        if (rep_.kind == CompactumRep::Kind::oracle) {
            if (!rep_.oracle->piece || config_.subspace) return std::nullopt;
            return rep_.oracle->piece(r.point);
        }
        return std::vector<Point>{r.point};
    }

    // Point sum_j w_j cell_j / total, located on the cell.
    RepPoint on_cell(const RepPoint& r, const std::vector<Point>& cell, const std::vector<Rational>& w,
                     const Rational& total) const {
        Point p(target_.dim());
        for (std::size_t j = 0; j < cell.size(); ++j) p += (w[j] / total) * cell[j];
        if (is_curve() && r.segment) return RepPoint{p, r.segment, w[1] / total};
        return RepPoint{p, r.segment, r.param};
    }

private:
    RepPoint vertex_rep(const std::vector<Point>& gens, std::size_t i) const {
        if (is_curve() && gens.size() > 1) {
            if (i + 1 == gens.size()) return RepPoint{gens[i], i - 1, Rational(1)};
            return RepPoint{gens[i], i, Rational(0)};
        }
        return RepPoint{gens[i], std::nullopt, 0};
    }

    RepPoint initial_oracle_point() const {
        if (config_.subspace) {
            auto r = on_flat(*config_.subspace);
            if (!r) throw ConsistencyError("oracle color misses the subspace M");
            return *r;
        }
        if (rep_.oracle->sampler) {
            auto pts = rep_.oracle->sampler(1, 0);
            if (!pts.empty()) return RepPoint{pts.front(), std::nullopt, 0};
        }
        Point e(target_.dim());
        e[0] = 1;
        return RepPoint{rep_.extreme_point(e), std::nullopt, 0};
    }

    void require_in_subspace(const Point& x) const {
        if (!config_.subspace) return;
        auto sol = solve(Matrix::from_columns(*config_.subspace), x - target_);
        if (!sol) throw CapabilityError("oracle extreme point leaves the subspace M");
    }

    const CompactumRep& rep_;
    const Point& target_;
    const ColorfulConfig& config_;
};

ColorfulCertificate finish(const std::vector<RepPoint>& reps, const MinNormResult& mn, ColorfulCertificate cert) {
    cert.reps = reps;
    cert.weights = mn.support;
    return cert;
}

void push_distance(ColorfulCertificate& cert, const Rational& d) {
    if (!cert.distance_trace.empty() && !(d < cert.distance_trace.back()))
        throw ConsistencyError("distance did not strictly decrease: " + format_rational(d) + " after " +
                               format_rational(cert.distance_trace.back()));
    cert.distance_trace.push_back(d);
}

std::vector<Point> shifted_points(const std::vector<ShiftedColor>& colors, const std::vector<RepPoint>& reps) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < reps.size(); ++i) out.push_back(colors[i].shifted(reps[i]));
    return out;
}

// Lowest-index color missing from the corral.
std::size_t absent_color(const ConvexCombination& support, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i)
        if (std::find(support.indices.begin(), support.indices.end(), i) == support.indices.end()) return i;
    throw ConsistencyError("no color is absent from the corral");
}

// Zero-coefficient swap: replace an absent color by its point minimizing <x, z>.
void swap_absent(std::vector<RepPoint>& reps, const std::vector<ShiftedColor>& colors, const MinNormResult& mn) {
    const std::size_t i = absent_color(mn.support, reps.size());
    RepPoint next = colors[i].extreme(mn.point);
    if (!(dot(colors[i].shifted(next), mn.point) < mn.squared_distance))
        throw ConsistencyError("swap for color " + std::to_string(i) + " cannot improve: target outside its hull");
    reps[i] = std::move(next);
}

// Move each rep to the best point of its current piece. Pieces are convex, so
// the best distance over them is the min-norm point of all their vertices.
// Returns false when some color cannot name a piece.
bool settle(std::vector<RepPoint>& reps, const std::vector<ShiftedColor>& colors) {
    std::vector<std::vector<Point>> cells;
    std::vector<Point> all;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        auto c = colors[i].cell(reps[i]);
        if (!c || c->empty()) return false;
        for (const auto& v : *c) all.push_back(colors[i].shifted(v));
        cells.push_back(std::move(*c));
    }
    auto mn = min_norm_point(all);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        std::vector<Rational> w(cells[i].size());
        Rational total = 0;
        for (std::size_t j = 0; j < mn.support.size(); ++j) {
            const std::size_t idx = mn.support.indices[j];
            if (idx >= offset && idx < offset + w.size()) {
                w[idx - offset] = mn.support.weights[j];
                total += mn.support.weights[j];
            }
        }
        if (sgn(total) > 0) reps[i] = colors[i].on_cell(reps[i], cells[i], w, total);
        offset += w.size();
    }
    return true;
}

}  // namespace

ColorfulCertificate colorful_caratheodory(const ColorSystem& system, const ColorfulConfig& config) {
    system.validate();
    for (const auto& c : system.colors)
        if (!c.finite()) throw CapabilityError("colorful_caratheodory needs finite colors");
    if (system.colors.size() != system.dim + 1)
        throw InputError("colorful_caratheodory needs dim + 1 colors, got " + std::to_string(system.colors.size()));

    // Only generators are ever chosen, so curves contribute their waypoints.
    std::vector<ShiftedColor> colors;
    for (const auto& c : system.colors) colors.emplace_back(c, system.target, config);

    std::vector<RepPoint> reps;
    for (const auto& c : colors) reps.push_back(c.nearest_vertex());

    ColorfulCertificate cert;
    for (std::size_t it = 0; it < config.max_iterations; ++it) {
        auto mn = min_norm_point(shifted_points(colors, reps));
        push_distance(cert, mn.squared_distance);
        if (sgn(mn.squared_distance) == 0) return finish(reps, mn, std::move(cert));
        swap_absent(reps, colors, mn);
        ++cert.swaps;
    }
    throw ResourceError("colorful_caratheodory: iteration budget exhausted");
}

ColorfulCertificate kconv_colorful(const ColorSystem& system, std::size_t k, const ColorfulConfig& config) {
    system.validate();
    const std::size_t n = system.dim;
    if (k > n) throw InputError("kconv_colorful: k exceeds the dimension");
    if (system.colors.size() != k + 1)
        throw InputError("kconv_colorful: expected " + std::to_string(k + 1) + " colors, got " +
                         std::to_string(system.colors.size()));

    if (k == 0) {
        const auto& c = system.colors[0];
        if (!c.contains(system.target)) throw InputError("kconv_colorful: k = 0 needs the target on the color");
        ColorfulCertificate cert;
        RepPoint r{system.target, std::nullopt, 0};
        if (c.kind == CompactumRep::Kind::plCurve) {
            for (std::size_t s = 0; s < c.curve.segments(); ++s) {
                const Point& a = c.curve.waypoints[s];
                const Point d = c.curve.waypoints[s + 1] - a;
                if (d.is_zero()) continue;
                Rational t = dot(system.target - a, d) / squared_norm(d);
                if (sgn(t) >= 0 && t <= 1 && c.curve.at(s, t) == system.target) {
                    r.segment = s;
                    r.param = t;
                    break;
                }
            }
        }
        cert.reps = {r};
        cert.weights = ConvexCombination{{0}, {Rational(1)}};
        cert.distance_trace = {Rational(0)};
        return cert;
    }
    if (k == n) return colorful_caratheodory(system, config);

    bool curves = true, oracles = true;
    for (const auto& c : system.colors) {
        curves = curves && c.kind == CompactumRep::Kind::plCurve;
        oracles = oracles && c.kind == CompactumRep::Kind::oracle;
    }
    if (!(curves && k + 1 == n) && !oracles)
        throw CapabilityError("kconv_colorful: needs PL curves with k = n - 1, or oracle colors");
    if (config.subspace && config.subspace->size() != k + 1)
        throw InputError("kconv_colorful: subspace M must have k + 1 basis vectors");

    std::vector<ShiftedColor> colors;
    for (const auto& c : system.colors) colors.emplace_back(c, system.target, config);
    std::vector<RepPoint> reps;
    for (const auto& c : colors) reps.push_back(c.nearest());

    ColorfulCertificate cert;
    settle(reps, colors);
    for (std::size_t it = 0; it < config.max_iterations; ++it) {
        auto state = RepresentativeState::of(shifted_points(colors, reps));
        const auto& mn = state.min_norm;
        push_distance(cert, mn.squared_distance);
        if (sgn(mn.squared_distance) == 0) return finish(reps, mn, std::move(cert));
        if (mn.support.size() < reps.size()) {
            swap_absent(reps, colors, mn);
            ++cert.swaps;
            settle(reps, colors);
            continue;
        }

        // All weights positive: y_i on the flat through the target parallel to the reps' hull.
        std::vector<Point> directions;
        for (std::size_t j = 1; j < state.reps.size(); ++j) directions.push_back(state.reps[j] - state.reps[0]);
        std::vector<RepPoint> ys;
        for (std::size_t i = 0; i < colors.size(); ++i) {
            auto y = colors[i].on_flat(directions);
            if (!y) throw ConsistencyError("color " + std::to_string(i) + " misses the flat parallel to the representatives");
            ys.push_back(std::move(*y));
        }

        auto attempt = [&](const std::vector<RepPoint>& y) {
            return parity_descent_step(state, shifted_points(colors, y));
        };
        ParityStep step;
        try {
            step = attempt(ys);
        } catch (const DegeneracyError&) {
            std::vector<RepPoint> moved = ys;
            for (std::size_t i = 0; i < colors.size(); ++i)
                if (auto p = colors[i].perturb(ys[i], config.perturbation)) moved[i] = std::move(*p);
            ++cert.perturbations;
            step = attempt(moved);
            ys = std::move(moved);
        }
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (step.mask & (1u << i)) reps[i] = ys[i];
        ++cert.parity_steps;
        settle(reps, colors);
    }
    throw ResourceError("kconv_colorful: iteration budget exhausted");
}

bool verify_colorful_certificate(const ColorSystem& system, const ColorfulCertificate& cert, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (cert.reps.size() != system.colors.size()) return fail("one representative per color required");
    for (std::size_t i = 0; i < cert.reps.size(); ++i) {
        const auto& r = cert.reps[i];
        const auto& c = system.colors[i];
        if (r.point.dim() != system.dim) return fail("representative " + std::to_string(i) + " has the wrong dimension");
        if (r.segment) {
            if (c.kind != CompactumRep::Kind::plCurve || *r.segment >= c.curve.segments())
                return fail("representative " + std::to_string(i) + " names a missing segment");
            if (sgn(r.param) < 0 || r.param > 1 || c.curve.at(*r.segment, r.param) != r.point)
                return fail("representative " + std::to_string(i) + " is not at its curve location");
        }
        bool on;
        try {
            on = c.contains(r.point);
        } catch (const CapabilityError&) {
            return fail("color " + std::to_string(i) + " cannot confirm membership");
        }
        if (!on) return fail("representative " + std::to_string(i) + " is not on its color");
    }
    std::vector<Point> pts;
    for (const auto& r : cert.reps) pts.push_back(r.point);
    try {
        cert.weights.validate(pts.size());
    } catch (const InputError& e) {
        return fail(e.what());
    }
    if (cert.weights.evaluate(pts) != system.target) return fail("weights do not reproduce the target");
    return true;
}

}  // namespace cara
