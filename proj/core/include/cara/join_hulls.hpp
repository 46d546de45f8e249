#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cara/geometry.hpp"

namespace cara {

/// Convex polytope given by a (possibly redundant) vertex list.
struct VPolytope {
    std::vector<Point> vertices;

    std::size_t dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }
};

/// Finite family of convex compacta, all in R^dim.
struct Family {
    std::size_t dim = 0;
    std::vector<VPolytope> members;

    std::size_t size() const { return members.size(); }
    /// Throws InputError on empty members or mixed dimensions.
    void validate() const;
    /// Vertices of the union of the listed members, in member order.
    std::vector<Point> union_vertices(const std::vector<std::size_t>& subfamily) const;
};

// ---------------------------------------------------------------------------
// conv_m and joins

struct ConvmResult {
    /// Combination over the ground set with at most m terms; empty when refused.
    std::optional<ConvexCombination> combination;
    /// Number of candidate subsets examined.
    std::size_t subsets_tested = 0;

    bool member() const { return combination.has_value(); }
};

/// Is p a convex combination of at most m points of X? Non-membership is an
/// exhaustive refusal over all min(m, |X|)-subsets.
ConvmResult convm_membership(const Point& p, const std::vector<Point>& X, std::size_t m);

/// One point per chosen piece, with positive weights reproducing the query.
struct PieceCombination {
    std::vector<std::size_t> pieces;
    std::vector<Point> points;
    std::vector<Rational> weights;

    Point evaluate() const;
};

struct PieceConvmResult {
    std::optional<PieceCombination> combination;
    std::size_t subsets_tested = 0;

    bool member() const { return combination.has_value(); }
};

/// conv_m of a union of convex pieces (segments of a curve, polytopes, single
/// points). A join of convex sets is the hull of their union, so it suffices to
/// test min(m, #pieces)-subsets of pieces. Subsets are tried in order of a
/// floating-point distance estimate; every verdict is exact.
PieceConvmResult convm_membership_pieces(const Point& p, const std::vector<std::vector<Point>>& pieces,
                                         std::size_t m);

struct JoinResult {
    bool member = false;
    /// Chosen index into each set, and the join weight of that point (>= 0).
    std::vector<std::size_t> choice;
    std::vector<Rational> weights;
    std::size_t tuples_tested = 0;
};

/// p in A_1 * A_2 * ... * A_k for finite sets. Throws ResourceError when the
/// number of tuples exceeds `budget`.
JoinResult join_membership(const Point& p, const std::vector<std::vector<Point>>& sets,
                           std::size_t budget = 1'000'000);

// ---------------------------------------------------------------------------
// Caratheodory numbers

struct KappaWitness {
    /// Subfamily whose hull is not covered; empty for point sets.
    std::vector<std::size_t> subfamily;
    Point point;
};

/// Bounds on a Caratheodory number with their epistemic status.
struct KappaBound {
    int lower = 1;
    std::optional<int> upper;
    /// True when `upper` is proven (exact coverage or a theorem), false when
    /// it only survived sampling.
    bool upper_proven = false;
    /// How the upper bound was established: "coverage", "caratheodory",
    /// "sampled" or "budget".
    std::string method;
    /// A point of the (sub)hull outside conv_{lower-1}; absent when lower == 1.
    std::optional<KappaWitness> witness;

    bool exact() const { return upper && *upper == lower && upper_proven; }
};

struct KappaConfig {
    /// Low-discrepancy interior samples per hull.
    std::size_t samples = 64;
    /// Cap on vertex-subset centroids added as candidate witnesses.
    std::size_t centroid_subsets = 256;
    /// Cap on the number of subfamilies examined.
    std::size_t max_subfamilies = 1u << 16;
    /// Cap on pieces handed to one coverage check.
    std::size_t max_pieces = 4096;
};

KappaBound caratheodory_number_pointset(const std::vector<Point>& X, const KappaConfig& config = {});

KappaBound family_caratheodory_number(const Family& family, const KappaConfig& config = {});

// ---------------------------------------------------------------------------
// Coverage

struct CoverageResult {
    bool covered = false;
    /// Point of the target outside every piece when not covered.
    std::optional<Point> witness;
    /// False when the verdict rests on sampling (targets of affine dimension >= 3).
    bool exact = true;
};

/// Exact planar coverage: target is contained in the union of the pieces'
/// hulls. Works by repeated convex polygon difference; degenerate targets are
/// handled on their affine hull.
CoverageResult coverage_check_2d(const VPolytope& target, const std::vector<VPolytope>& pieces);

/// Coverage of conv(target) by the pieces' hulls in any dimension: exact when
/// the target's affine hull has dimension <= 2 (mapped to affine coordinates),
/// sampled otherwise. Pieces must lie in the affine hull of the target.
CoverageResult coverage_check(const std::vector<Point>& target, const std::vector<std::vector<Point>>& pieces,
                              std::size_t samples);

/// Counter-clockwise hull vertices of planar points without collinear points.
/// Returns one point or a segment's two endpoints for degenerate inputs.
std::vector<Point> convex_hull_2d(std::vector<Point> points);

/// Deterministic low-discrepancy convex combinations of `vertices`
/// (Halton weights, normalized), exact.
std::vector<Point> halton_hull_samples(const std::vector<Point>& vertices, std::size_t count, std::size_t offset = 1);

}  // namespace cara
