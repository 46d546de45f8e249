#include "cara/tverberg.hpp"

#include <algorithm>
#include <sstream>

#include "cara/combinatorics.hpp"
#include "cara/linalg.hpp"

namespace cara {

void SimplexFrame::validate() const {
    if (r < 2 || vertices.size() != r) throw ConsistencyError("simplex frame needs r >= 2 vertices");
    Point sum(ambient_dim());
    for (const auto& v : vertices) sum += v;
    if (!sum.is_zero()) throw ConsistencyError("simplex frame is not centered");
    const Rational diag = dot(vertices[0], vertices[0]);
    const Rational off = dot(vertices[0], vertices[1]);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j)
            if (dot(vertices[i], vertices[j]) != (i == j ? diag : off))
                throw ConsistencyError("simplex frame Gram matrix is not uniform");
    if (rank(Matrix::from_rows(vertices)) != r - 1) throw ConsistencyError("simplex frame has the wrong rank");
}

SimplexFrame simplex_vertices(std::size_t r) {
    if (r < 2) throw InputError("simplex frame needs r >= 2");
    SimplexFrame f;
    f.r = r;
    if (r == 2) {
        f.vertices = {Point{Rational(1)}, Point{Rational(-1)}};
    } else {
        for (std::size_t i = 0; i < r; ++i) {
            Point v(r);
            for (std::size_t j = 0; j < r; ++j) v[j] = (i == j) ? Rational(static_cast<long>(r) - 1) : Rational(-1);
            f.vertices.push_back(std::move(v));
        }
    }
    f.validate();
    return f;
}

Point lift_point(const SimplexFrame& frame, std::size_t tag, const Point& c) {
    if (tag >= frame.r) throw InputError("tag " + std::to_string(tag) + " out of range");
    return tensor(frame.vertices[tag], concat(c, Point{Rational(1)}));
}

void SarkariaLift::validate() const {
    frame.validate();
    std::vector<Point> all;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        const auto& verts = family.members[i].vertices;
        if (colors[i].size() != frame.r * verts.size())
            throw ConsistencyError("lifted color " + std::to_string(i) + " has the wrong size");
        for (std::size_t v = 0; v < verts.size(); ++v) {
            Point sum(dim());
            for (std::size_t s = 0; s < frame.r; ++s) sum += colors[i][s * verts.size() + v].point;
            if (!sum.is_zero()) throw ConsistencyError("lifted tags of a vertex do not sum to zero");
        }
        for (const auto& g : colors[i]) all.push_back(g.point);
    }
    if (!all.empty() && rank(Matrix::from_rows(all)) > (frame.r - 1) * (family.dim + 1))
        throw ConsistencyError("lifted generators span too much");
}

SarkariaLift lift(const Family& family, std::size_t r) {
    family.validate();
    SarkariaLift out;
    out.frame = simplex_vertices(r);
    out.family = family;
    for (const auto& member : family.members) {
        std::vector<LiftedGenerator> color;
        for (std::size_t s = 0; s < r; ++s)
            for (std::size_t v = 0; v < member.vertices.size(); ++v)
                color.push_back({s, v, lift_point(out.frame, s, member.vertices[v])});
        out.colors.push_back(std::move(color));
    }
    out.validate();
    return out;
}

Partition partition_of_representatives(const std::vector<std::size_t>& tags, std::size_t r) {
    Partition parts(r);
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (tags[i] >= r) throw InputError("tag " + std::to_string(tags[i]) + " out of range");
        parts[tags[i]].push_back(i);
    }
    return parts;
}

std::vector<std::size_t> tags_of_partition(const Partition& parts, std::size_t m) {
    std::vector<std::optional<std::size_t>> tags(m);
    for (std::size_t s = 0; s < parts.size(); ++s)
        for (std::size_t i : parts[s]) {
            if (i >= m) throw InputError("partition names member " + std::to_string(i) + " of " + std::to_string(m));
            if (tags[i]) throw InputError("member " + std::to_string(i) + " lies in two parts");
            tags[i] = s;
        }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i) {
        if (!tags[i]) throw InputError("member " + std::to_string(i) + " lies in no part");
        out.push_back(*tags[i]);
    }
    return out;
}

SarkariaSides sarkaria_equiv_check(const SarkariaLift& lifted, const std::vector<TaggedRep>& reps,
                                   std::size_t budget) {
    const std::size_t r = lifted.frame.r;
    SarkariaSides sides;
    std::vector<Point> lifted_reps;
    std::vector<std::size_t> tags;
    for (const auto& rep : reps) {
        lifted_reps.push_back(lift_point(lifted.frame, rep.tag, rep.point));
        tags.push_back(rep.tag);
    }
    sides.lifted = hull_membership(Point(lifted.dim()), lifted_reps).member();

    const auto parts = partition_of_representatives(tags, r);
    std::size_t tuples = 1;
    for (const auto& p : parts) {
        if (p.empty()) return sides;
        tuples *= p.size();
        if (tuples > budget) throw ResourceError("sarkaria_equiv_check: too many difference vectors");
    }
    std::vector<Point> differences;
    std::vector<std::size_t> pick(r, 0);
    while (true) {
        Point d;
        for (std::size_t s = 0; s + 1 < r; ++s)
            d = concat(d, reps[parts[s][pick[s]]].point - reps[parts[s + 1][pick[s + 1]]].point);
        differences.push_back(std::move(d));
        std::size_t s = 0;
        while (s < r && ++pick[s] == parts[s].size()) pick[s++] = 0;
        if (s == r) break;
    }
    sides.intersection = sgn(min_norm_point(differences).squared_distance) == 0;
    return sides;
}

KappaRewrite kappa_rewrite(const Point& q, const Family& family, const std::vector<std::size_t>& members,
                           std::size_t kappa) {
    if (kappa == 0) throw InputError("kappa_rewrite: kappa must be positive");
    KappaRewrite out;
    const std::size_t top = std::min(kappa, members.size());
    for (std::size_t size = 1; size <= top; ++size) {
        std::optional<KappaRewrite> found;
        for_each_combination(members.size(), size, [&](const std::vector<std::size_t>& idx) {
            ++out.subsets_tested;
            std::vector<Point> pts;
            std::vector<std::size_t> owner;
            for (std::size_t j : idx)
                for (const auto& v : family.members[members[j]].vertices) {
                    pts.push_back(v);
                    owner.push_back(members[j]);
                }
            auto mem = hull_membership(q, pts);
            if (!mem.member()) return true;
            auto comb = caratheodory_reduce(q, pts, mem.combination());
            KappaRewrite hit;
            for (std::size_t j : idx) {
                Rational total = 0;
                Point p(q.dim());
                for (std::size_t t = 0; t < comb.size(); ++t)
                    if (owner[comb.indices[t]] == members[j]) {
                        total += comb.weights[t];
                        p += comb.weights[t] * pts[comb.indices[t]];
                    }
                if (sgn(total) == 0) continue;
                hit.members.push_back(members[j]);
                hit.points.push_back(p / total);
                hit.weights.push_back(total);
            }
            found = std::move(hit);
            return false;
        });
        if (found) {
            found->subsets_tested = out.subsets_tested;
            return *found;
        }
    }
    throw KappaViolation("point " + to_string(q) + " is in no union hull of " + std::to_string(kappa) +
                             " or fewer members: kappa is below the family's Caratheodory number",
                         q, kappa);
}

namespace {

// Best representatives for fixed tags: the lifted tagged sets are convex, so
// the nearest point of their join is the min-norm point of all lifted vertices.
struct Settled {
    MinNormResult min_norm;
    /// weights[i][v]: coefficient of member i's vertex v.
    std::vector<std::vector<Rational>> weights;
    std::vector<Rational> alpha;
};

Settled settle(const Family& family, const SimplexFrame& frame, const std::vector<std::size_t>& tags) {
    std::vector<Point> pts;
    std::vector<std::pair<std::size_t, std::size_t>> owner;
    Settled out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& verts = family.members[i].vertices;
        out.weights.emplace_back(verts.size(), Rational(0));
        for (std::size_t v = 0; v < verts.size(); ++v) {
            pts.push_back(lift_point(frame, tags[i], verts[v]));
            owner.emplace_back(i, v);
        }
    }
    out.min_norm = min_norm_point(pts);
    out.alpha.assign(family.size(), Rational(0));
    const auto& sup = out.min_norm.support;
    for (std::size_t t = 0; t < sup.size(); ++t) {
        auto [i, v] = owner[sup.indices[t]];
        out.weights[i][v] = sup.weights[t];
        out.alpha[i] += sup.weights[t];
    }
    return out;
}

std::string diagnostic(const std::vector<std::size_t>& tags, const std::vector<Rational>& trace) {
    std::ostringstream os;
    os << "tags [";
    for (std::size_t i = 0; i < tags.size(); ++i) os << (i ? " " : "") << tags[i];
    os << "], distances [";
    for (std::size_t i = 0; i < trace.size(); ++i) os << (i ? " " : "") << format_rational(trace[i]);
    os << "]";
    return os.str();
}

}  // namespace

TverbergCertificate tverberg_partition(const Family& family, std::size_t r, const TverbergConfig& config) {
    family.validate();
    const SimplexFrame frame = simplex_vertices(r);
    const std::size_t m = family.size();

    TverbergCertificate cert;
    cert.r = r;
    if (config.kappa) {
        if (*config.kappa == 0) throw InputError("kappa must be positive");
        cert.kappa = *config.kappa;
        cert.kappa_status = "given";
    } else {
        auto bound = family_caratheodory_number(family, config.kappa_config);
        if (!bound.upper)
            throw ResourceError("kappa could not be bounded within budget (method " + bound.method + ")");
        cert.kappa = static_cast<std::size_t>(*bound.upper);
        cert.kappa_status = bound.upper_proven ? "proven" : "sampled";
    }
    if (m < r * cert.kappa + 1)
        throw InputError("family has " + std::to_string(m) + " members, needs at least r * kappa + 1 = " +
                         std::to_string(r * cert.kappa + 1));

    std::size_t max_vertices = 1;
    for (const auto& c : family.members) max_vertices = std::max(max_vertices, c.vertices.size());
    const std::size_t budget = config.max_iterations.value_or(10 * m * r * max_vertices);

    std::vector<std::size_t> tags(m);
    for (std::size_t i = 0; i < m; ++i) tags[i] = i % r;

    for (std::size_t it = 0; it < budget; ++it) {
        const Settled st = settle(family, frame, tags);
        const Point& z = st.min_norm.point;
        const Rational& dist = st.min_norm.squared_distance;
        if (!cert.distance_trace.empty() && !(dist < cert.distance_trace.back()))
            throw ConsistencyError("lifted distance did not strictly decrease: " + diagnostic(tags, cert.distance_trace));
        cert.distance_trace.push_back(dist);

        if (sgn(dist) == 0) {
            cert.parts = partition_of_representatives(tags, r);
            cert.coefficients.assign(r, {});
            std::optional<Point> witness;
            for (std::size_t s = 0; s < r; ++s) {
                if (cert.parts[s].empty()) {
                    cert.empty_parts = true;
                    continue;
                }
                Rational total = 0;
                Point c(family.dim);
                for (std::size_t i : cert.parts[s]) {
                    total += st.alpha[i];
                    for (std::size_t v = 0; v < st.weights[i].size(); ++v)
                        c += st.weights[i][v] * family.members[i].vertices[v];
                }
                if (sgn(total) == 0) throw ConsistencyError("a nonempty part carries no weight at distance zero");
                c /= total;
                if (!witness) witness = c;
                if (c != *witness) throw ConsistencyError("parts disagree on the common point");
                for (std::size_t i : cert.parts[s])
                    for (std::size_t v = 0; v < st.weights[i].size(); ++v)
                        if (sgn(st.weights[i][v]) > 0) cert.coefficients[s].push_back({i, v, st.weights[i][v] / total});
            }
            cert.witness = *witness;
            return cert;
        }

        // Member to re-tag: one with zero coefficient, after a kappa rewrite
        // of every part when all coefficients are positive.
        std::optional<std::size_t> idle;
        for (std::size_t i = 0; i < m && !idle; ++i)
            if (sgn(st.alpha[i]) == 0) idle = i;
        if (!idle) {
            const auto parts = partition_of_representatives(tags, r);
            std::vector<bool> active(m, false);
            Point rebuilt(z.dim());
            for (std::size_t s = 0; s < r; ++s) {
                Rational total = 0;
                Point c(family.dim);
                for (std::size_t i : parts[s]) {
                    total += st.alpha[i];
                    for (std::size_t v = 0; v < st.weights[i].size(); ++v)
                        c += st.weights[i][v] * family.members[i].vertices[v];
                }
                if (sgn(total) == 0) continue;
                auto rw = kappa_rewrite(c / total, family, parts[s], cert.kappa);
                for (std::size_t j = 0; j < rw.members.size(); ++j) {
                    active[rw.members[j]] = true;
                    rebuilt += (total * rw.weights[j]) * lift_point(frame, s, rw.points[j]);
                }
            }
            if (rebuilt != z) throw ConsistencyError("kappa rewrite changed the lifted point");
            for (std::size_t i = 0; i < m && !idle; ++i)
                if (!active[i]) idle = i;
            if (!idle) throw ConsistencyError("kappa rewrite left every member active");
            ++cert.rewrites;
        }

        std::optional<std::pair<std::size_t, Rational>> best;
        for (std::size_t s = 0; s < r; ++s)
            for (const auto& v : family.members[*idle].vertices) {
                Rational val = dot(lift_point(frame, s, v), z);
                if (!best || val < best->second) best = {s, val};
            }
        if (!(best->second < dist))
            throw ConsistencyError("swap of member " + std::to_string(*idle) + " cannot improve: " +
                                   diagnostic(tags, cert.distance_trace));
        tags[*idle] = best->first;
        ++cert.swaps;
    }
    throw ResourceError("tverberg_partition: iteration budget of " + std::to_string(budget) +
                        " exhausted; " + diagnostic(tags, cert.distance_trace));
}

CertificateCheck verify_certificate(const Family& family, const TverbergCertificate& cert) {
    CertificateCheck out;
    try {
        family.validate();
        tags_of_partition(cert.parts, family.size());
    } catch (const InputError& e) {
        out.reason = e.what();
        return out;
    }
    if (cert.witness.dim() != family.dim) {
        out.reason = "witness has the wrong dimension";
        return out;
    }
    std::size_t nonempty = 0;
    for (std::size_t s = 0; s < cert.parts.size(); ++s) {
        if (cert.parts[s].empty()) {
            if (!cert.empty_parts) {
                out.failing_part = s;
                out.reason = "part " + std::to_string(s) + " is empty but not flagged";
                return out;
            }
            continue;
        }
        ++nonempty;
        if (!hull_membership(cert.witness, family.union_vertices(cert.parts[s])).member()) {
            out.failing_part = s;
            out.reason = "witness is outside the hull of part " + std::to_string(s);
            return out;
        }
    }
    if (nonempty == 0) {
        out.reason = "no nonempty part";
        return out;
    }
    out.ok = true;
    return out;
}

CertificateCheck check_coefficients(const Family& family, const TverbergCertificate& cert) {
    CertificateCheck out;
    if (cert.coefficients.size() != cert.parts.size()) {
        out.reason = "one coefficient list per part required";
        return out;
    }
    for (std::size_t s = 0; s < cert.parts.size(); ++s) {
        if (cert.parts[s].empty()) continue;
        Rational total = 0;
        Point p(family.dim);
        for (const auto& term : cert.coefficients[s]) {
            const auto& part = cert.parts[s];
            if (std::find(part.begin(), part.end(), term.member) == part.end() ||
                term.vertex >= family.members[term.member].vertices.size() || sgn(term.weight) < 0) {
                out.failing_part = s;
                out.reason = "part " + std::to_string(s) + " has a term outside the part";
                return out;
            }
            total += term.weight;
            p += term.weight * family.members[term.member].vertices[term.vertex];
        }
        if (total != 1 || p != cert.witness) {
            out.failing_part = s;
            out.reason = "coefficients of part " + std::to_string(s) + " do not reproduce the witness";
            return out;
        }
    }
    out.ok = true;
    return out;
}

}  // namespace cara
