#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cara/error.hpp"
#include "cara/join_hulls.hpp"

namespace cara {

/// r centered vectors with constant Gram diagonal and constant off-diagonal,
/// whose only linear relation is that they sum to zero.
struct SimplexFrame {
    std::size_t r = 0;
    std::vector<Point> vertices;

    std::size_t ambient_dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }
    /// Throws ConsistencyError when an invariant fails.
    void validate() const;
};

/// r = 2: {(1), (-1)}. r >= 3: rows of r I - J in Q^r.
SimplexFrame simplex_vertices(std::size_t r);

/// s (x) (c, 1).
Point lift_point(const SimplexFrame& frame, std::size_t tag, const Point& c);

struct LiftedGenerator {
    std::size_t tag = 0;
    std::size_t vertex = 0;
    Point point;
};

struct SarkariaLift {
    SimplexFrame frame;
    Family family;
    /// For member i: s (x) (v, 1) for every tag s and vertex v, tag-major.
    std::vector<std::vector<LiftedGenerator>> colors;

    std::size_t dim() const { return frame.ambient_dim() * (family.dim + 1); }
    /// Rank of the span of all lifted generators is at most (r-1)(n+1) and
    /// the tags of each (member, vertex) sum to zero.
    void validate() const;
};

SarkariaLift lift(const Family& family, std::size_t r);

/// A point c of member i, to be lifted with tag s.
struct TaggedRep {
    std::size_t tag = 0;
    Point point;
};

/// parts[s] lists the members carrying tag s, ascending.
using Partition = std::vector<std::vector<std::size_t>>;

Partition partition_of_representatives(const std::vector<std::size_t>& tags, std::size_t r);
std::vector<std::size_t> tags_of_partition(const Partition& parts, std::size_t m);

struct SarkariaSides {
    /// 0 in the hull of the lifted representatives.
    bool lifted = false;
    /// The per-part hulls of the unlifted points share a point.
    bool intersection = false;
    bool agree() const { return lifted == intersection; }
};

/// Decides both sides independently. The intersection side tests 0 against
/// the hull of all difference vectors (a_1 - a_2, ..., a_{r-1} - a_r).
SarkariaSides sarkaria_equiv_check(const SarkariaLift& lifted, const std::vector<TaggedRep>& reps,
                                   std::size_t budget = 1'000'000);

/// q lies in no hull of kappa or fewer of the offered members.
class KappaViolation : public InputError {
public:
    KappaViolation(const std::string& what, Point q, std::size_t kappa)
        : InputError(what), q_(std::move(q)), kappa_(kappa) {}
    const Point& q() const { return q_; }
    std::size_t kappa() const { return kappa_; }

private:
    Point q_;
    std::size_t kappa_;
};

struct KappaRewrite {
    /// Members used, ascending, with a point of each and positive weights.
    std::vector<std::size_t> members;
    std::vector<Point> points;
    std::vector<Rational> weights;
    std::size_t subsets_tested = 0;
};

/// Smallest (then lexicographically first) subset of `members` of size at
/// most kappa whose union hull holds q.
KappaRewrite kappa_rewrite(const Point& q, const Family& family, const std::vector<std::size_t>& members,
                           std::size_t kappa);

struct PartTerm {
    std::size_t member = 0;
    std::size_t vertex = 0;
    Rational weight;
};

struct TverbergCertificate {
    std::size_t r = 0;
    Partition parts;
    Point witness;
    /// For each part, a convex combination of its members' vertices giving the witness.
    std::vector<std::vector<PartTerm>> coefficients;
    bool empty_parts = false;
    std::size_t kappa = 0;
    /// "given", "proven" or "sampled".
    std::string kappa_status;
    std::vector<Rational> distance_trace;
    std::size_t swaps = 0;
    std::size_t rewrites = 0;

    std::size_t iterations() const { return distance_trace.size(); }
};

struct TverbergConfig {
    /// Caratheodory number to use; computed when absent.
    std::optional<std::size_t> kappa;
    /// Defaults to 10 m r (largest vertex count).
    std::optional<std::size_t> max_iterations;
    KappaConfig kappa_config;
};

TverbergCertificate tverberg_partition(const Family& family, std::size_t r, const TverbergConfig& config = {});

struct CertificateCheck {
    bool ok = false;
    std::optional<std::size_t> failing_part;
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// Disjoint cover, and the witness in the hull of every nonempty part.
CertificateCheck verify_certificate(const Family& family, const TverbergCertificate& cert);

/// The stored coefficients are convex, stay inside their part and reproduce
/// the witness.
CertificateCheck check_coefficients(const Family& family, const TverbergCertificate& cert);

}  // namespace cara
