#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cara/join_hulls.hpp"

namespace cara {

/// Polygonal curve through its waypoints.
struct PLCurve {
    std::vector<Point> waypoints;

    std::size_t dim() const { return waypoints.empty() ? 0 : waypoints.front().dim(); }
    /// Number of segments; a one-waypoint curve has none.
    std::size_t segments() const { return waypoints.empty() ? 0 : waypoints.size() - 1; }
    /// waypoints[segment] + t (waypoints[segment+1] - waypoints[segment]).
    Point at(std::size_t segment, const Rational& t) const;
};

/// Procedures standing in for a compactum that has no finite description.
/// Any of them may be left empty; calls needing a missing one raise CapabilityError.
struct CompactumOracle {
    std::size_t dim = 0;
    /// Is y within distance tol of A X?
    std::function<bool(const Matrix& projection, const Point& y, const Rational& tol)> projected_membership;
    /// Some point of X on the affine flat base + span(directions), if any.
    std::function<std::optional<Point>(const Point& base, const std::vector<Point>& directions)> flat_intersection;
    /// A point of X minimizing <c, x>.
    std::function<Point(const Point& c)> extreme_point;
    /// Exact membership of x in X.
    std::function<bool(const Point& x)> contains;
    /// `count` points of X, deterministic in `seed`.
    std::function<std::vector<Point>(std::size_t count, std::uint64_t seed)> sampler;
    /// Vertices of a convex subset of X containing x.
    std::function<std::vector<Point>(const Point& x)> piece;
};

/// Finite representation of a compactum.
struct CompactumRep {
    enum class Kind { pointCloud, plCurve, polytopeUnion, oracle };

    Kind kind = Kind::pointCloud;
    std::vector<Point> points;
    PLCurve curve;
    std::vector<VPolytope> polytopes;
    std::shared_ptr<const CompactumOracle> oracle;

    static CompactumRep cloud(std::vector<Point> pts);
    static CompactumRep pl_curve(std::vector<Point> waypoints);
    static CompactumRep polytope_union(std::vector<VPolytope> parts);
    static CompactumRep from_oracle(std::shared_ptr<const CompactumOracle> o);

    std::size_t dim() const;
    /// Throws InputError on an empty payload or mixed dimensions.
    void validate() const;
    bool finite() const { return kind != Kind::oracle; }

    /// Convex pieces whose union is the set: single points, segments or polytopes.
    std::vector<std::vector<Point>> pieces() const;
    /// Vertices of all pieces; their hull is conv X.
    std::vector<Point> generators() const;
    /// Points on the set: piece vertices plus `density` subdivision or
    /// interior points per piece.
    std::vector<Point> sample(std::size_t density, std::uint64_t seed = 0) const;
    /// Exact test that x lies on the represented set.
    bool contains(const Point& x) const;
    /// A point of the set minimizing <c, x>.
    Point extreme_point(const Point& c) const;

    static const char* kind_name(Kind k);
};

// ---------------------------------------------------------------------------

struct KConvexityConfig {
    std::size_t trials = 32;
    /// Subdivision density used to sample finite representations.
    std::size_t density = 16;
    /// Grid resolution per axis for planar hole search; candidate count otherwise.
    std::size_t grid = 32;
    /// Exact re-verifications attempted per trial.
    std::size_t verify_per_trial = 8;
    std::uint64_t seed = 1;
};

struct KConvexityVerdict {
    bool counterexample = false;
    /// k x n map with dyadic entries and the hole in its image.
    Matrix projection;
    Point hole;
    /// Exact squared distance from the hole to A X (finite kinds only).
    std::optional<Rational> hole_squared_distance;
    std::size_t trials_run = 0;
    std::size_t candidates_screened = 0;
    std::size_t candidates_verified = 0;
};

/// Searches random linear images A X in R^k for a point of conv(A X) farther
/// than tol from A X. A reported hole is always re-verified exactly; absence of
/// a counterexample is negative evidence only.
KConvexityVerdict check_k_convexity(const CompactumRep& X, std::size_t k, const Rational& tol,
                                    const KConvexityConfig& config = {});

/// Replays a verdict: the hole lies in conv(A X) and its distance to A X exceeds tol.
bool verify_k_convexity_counterexample(const CompactumRep& X, const KConvexityVerdict& verdict, const Rational& tol);

/// Row-orthonormal-ish k x n map rounded to multiples of 1/denominator.
Matrix random_dyadic_projection(std::size_t k, std::size_t n, std::uint64_t seed, long denominator = 64);

// ---------------------------------------------------------------------------

struct CurvePoint {
    Point point;
    std::size_t segment = 0;
    Rational param;
};

/// First point, in curve order, where the curve meets the hyperplane; none when
/// every waypoint lies strictly on one side.
std::optional<CurvePoint> hyperplane_curve_intersection(const PLCurve& curve, const Hyperplane& h);

// ---------------------------------------------------------------------------

/// Affine flat base + span(directions) with its exact squared clearance to
/// every set.
struct FlatCertificate {
    Point base;
    std::vector<Point> directions;
    Rational squared_clearance;
    /// False when some set is an oracle and the clearance rests on its samples.
    bool exact = true;
};

struct AvoidFlatConfig {
    std::size_t restarts = 24;
    std::size_t climb_steps = 200;
    /// Rounding denominator for the final directions.
    long denominator = 4096;
    std::uint64_t seed = 1;
    /// Subdivision density of the floating-point objective for polytope pieces.
    std::size_t density = 8;
};

struct AvoidFlatResult {
    std::optional<FlatCertificate> certificate;
    /// Precondition findings (p in conv_{k+1} of some set) and capability notes.
    std::vector<std::string> warnings;
    std::size_t restarts_used = 0;
    double best_float_clearance = 0;
};

/// Random directions with hill climbing on the minimum clearance, rounded to
/// rationals and re-verified exactly. Failure means the budget ran out.
AvoidFlatResult find_avoiding_flat(const Point& p, const std::vector<CompactumRep>& sets, std::size_t k,
                                   const AvoidFlatConfig& config = {});

/// Exact squared distance from the flat to conv of one finite piece.
Rational flat_piece_squared_distance(const Point& base, const std::vector<Point>& directions,
                                     const std::vector<Point>& piece);

/// Exact squared clearance of the flat against every piece of a finite set.
Rational flat_squared_clearance(const Point& base, const std::vector<Point>& directions, const CompactumRep& set);

/// Independent directions, positive clearance, and the stated clearance not
/// exceeding the recomputed one.
bool verify_flat_certificate(const FlatCertificate& cert, const std::vector<CompactumRep>& sets);

}  // namespace cara
