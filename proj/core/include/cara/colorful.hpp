#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cara/error.hpp"
#include "cara/kconvexity.hpp"

namespace cara {

/// Colored compacta and the point to be caught by a colorful simplex.
struct ColorSystem {
    std::size_t dim = 0;
    std::vector<CompactumRep> colors;
    Point target;

    /// Origin target when none is given.
    static ColorSystem of(std::vector<CompactumRep> colors, std::optional<Point> target = std::nullopt);

    /// Nonempty colors of dimension `dim`, and target in the hull of every
    /// finite color; the InputError message names the color and its separator.
    void validate() const;
};

/// A point of one color, with its location on a curve when it has one.
struct RepPoint {
    Point point;
    std::optional<std::size_t> segment;
    Rational param;
};

/// Representatives in coordinates where the target is the origin, together
/// with the nearest point of their hull.
struct RepresentativeState {
    std::vector<Point> reps;
    MinNormResult min_norm;

    static RepresentativeState of(std::vector<Point> reps);
};

struct ColorfulCertificate {
    std::vector<RepPoint> reps;
    /// Convex combination over `reps` reproducing the target.
    ConvexCombination weights;
    /// Squared distance of each visited representative hull, strictly decreasing.
    std::vector<Rational> distance_trace;
    std::size_t swaps = 0;
    std::size_t parity_steps = 0;
    std::size_t perturbations = 0;

    std::size_t iterations() const { return distance_trace.size(); }
};

/// One line of the facet table of a parity step.
struct FacetIntersection {
    /// Bit i set: the facet takes y_i instead of x_i.
    std::uint32_t mask = 0;
    LineIntersection hit;
};

/// No facet of the crosspolytope join meets [target, z).
class DegeneracyError : public ConsistencyError {
public:
    DegeneracyError(const std::string& what, std::vector<FacetIntersection> table)
        : ConsistencyError(what), table_(std::move(table)) {}
    const std::vector<FacetIntersection>& table() const { return table_; }

private:
    std::vector<FacetIntersection> table_;
};

struct ParityStep {
    RepresentativeState state;
    std::uint32_t mask = 0;
    /// Position of the crossing on the segment from the target (t = 0) to z (t = 1).
    Rational t;
    std::vector<FacetIntersection> table;
};

struct ColorfulConfig {
    std::size_t max_iterations = 100000;
    /// Parameter shift along a curve segment when a parity step degenerates.
    Rational perturbation = Rational(1, 1024);
    /// Optional basis of a (k+1)-dimensional subspace M (through the target)
    /// in which oracle representatives must stay.
    std::optional<std::vector<Point>> subspace;
};

/// Finite colors (any finite kind, through their generators), n + 1 of them in R^n.
ColorfulCertificate colorful_caratheodory(const ColorSystem& system, const ColorfulConfig& config = {});

/// Line through the origin and z against every facet {x_i or y_i} of the
/// crosspolytope join except the all-x facet; moves to the facet crossing
/// [0, z) closest to the origin. Coordinates have the target at the origin.
ParityStep parity_descent_step(const RepresentativeState& state, const std::vector<Point>& y_reps);

/// k + 1 colors that are (n - k)-convex: PL curves for k = n - 1, oracle colors
/// with flat intersection for other k. k = 0 and k = n are handled directly.
ColorfulCertificate kconv_colorful(const ColorSystem& system, std::size_t k, const ColorfulConfig& config = {});

/// Reps lie on their colors, weights are a convex combination reproducing
/// the target. On failure `why` receives the reason.
bool verify_colorful_certificate(const ColorSystem& system, const ColorfulCertificate& cert,
                                 std::string* why = nullptr);

/// Parameter interval of {t z} inside conv(points); affinely dependent point
/// lists are split into affinely independent subsets first.
LineIntersection line_hull_intersection(const Point& direction, const std::vector<Point>& points);

}  // namespace cara
