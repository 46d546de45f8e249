#include <gtest/gtest.h>

#include <random>

#include "cara/generators.hpp"
#include "cara/tverberg.hpp"
#include "oracles.hpp"

using namespace cara;

namespace {

Point P(std::initializer_list<long> v) { return Point::from_ints(v); }
Rational Q(long n, long d = 1) { return ratio(n, d); }

std::vector<std::vector<Point>> vertex_lists(const Family& f) {
    std::vector<std::vector<Point>> out;
    for (const auto& c : f.members) out.push_back(c.vertices);
    return out;
}

Family square_with_center() {
    Family f = square_edges_family();
    f.members.push_back({{Point{Q(1, 2), Q(1, 2)}}});
    return f;
}

// Witness in every part's hull, decided by the independent oracle.
bool oracle_accepts(const Family& f, const TverbergCertificate& cert) {
    for (const auto& part : cert.parts) {
        if (part.empty()) continue;
        std::vector<Point> pts;
        for (std::size_t i : part)
            for (const auto& v : f.members[i].vertices) pts.push_back(v);
        if (!oracle::in_hull(cert.witness, pts)) return false;
    }
    return true;
}

void expect_valid(const Family& f, const TverbergCertificate& cert) {
    auto check = verify_certificate(f, cert);
    EXPECT_TRUE(check) << check.reason;
    auto coeff = check_coefficients(f, cert);
    EXPECT_TRUE(coeff) << coeff.reason;
    EXPECT_TRUE(oracle_accepts(f, cert));
    for (std::size_t i = 1; i < cert.distance_trace.size(); ++i)
        EXPECT_LT(cert.distance_trace[i], cert.distance_trace[i - 1]);
}

}  // namespace

TEST(SimplexFrame, TwoTags) {
    auto f = simplex_vertices(2);
    EXPECT_EQ(f.vertices, (std::vector<Point>{P({1}), P({-1})}));
    EXPECT_THROW(simplex_vertices(1), InputError);
}

TEST(SimplexFrame, UniformGram) {
    for (std::size_t r = 2; r <= 6; ++r) {
        auto f = simplex_vertices(r);
        Point sum(f.ambient_dim());
        for (const auto& v : f.vertices) sum += v;
        EXPECT_TRUE(sum.is_zero());
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                EXPECT_EQ(dot(f.vertices[i], f.vertices[j]), dot(f.vertices[0], f.vertices[i == j ? 0 : 1]));
        EXPECT_EQ(rank(Matrix::from_rows(f.vertices)), r - 1);
    }
    auto bad = simplex_vertices(3);
    bad.vertices[0][0] += 1;
    EXPECT_THROW(bad.validate(), ConsistencyError);
}

TEST(Lift, PointInLine) {
    Family f{1, {{{P({5})}}}};
    auto l = lift(f, 2);
    ASSERT_EQ(l.colors[0].size(), 2u);
    EXPECT_EQ(l.colors[0][0].point, P({5, 1}));
    EXPECT_EQ(l.colors[0][1].point, P({-5, -1}));
    EXPECT_EQ(l.dim(), 2u);
}

TEST(Lift, SizesAndOriginInEveryColor) {
    Family f{2, {{{P({0, 0}), P({3, 1})}}, {{P({1, 1}), P({2, 5}), P({-1, 2})}}}};
    for (std::size_t r = 2; r <= 4; ++r) {
        auto l = lift(f, r);
        for (std::size_t i = 0; i < f.size(); ++i) {
            EXPECT_EQ(l.colors[i].size(), r * f.members[i].vertices.size());
            std::vector<Point> pts;
            for (const auto& g : l.colors[i]) pts.push_back(g.point);
            EXPECT_TRUE(hull_membership(Point(l.dim()), pts).member());
        }
    }
}

TEST(Partition, Examples) {
    EXPECT_EQ(partition_of_representatives({0, 0}, 3), (Partition{{0, 1}, {}, {}}));
    EXPECT_EQ(partition_of_representatives({0, 1, 2}, 3), (Partition{{0}, {1}, {2}}));
    const std::vector<std::size_t> tags{2, 0, 1, 0, 2};
    EXPECT_EQ(tags_of_partition(partition_of_representatives(tags, 3), tags.size()), tags);
    EXPECT_THROW(tags_of_partition({{0, 1}, {1}}, 2), InputError);
    EXPECT_THROW(tags_of_partition({{0}}, 2), InputError);
}

TEST(Sarkaria, Examples) {
    Family zeros{1, {{{P({0})}}, {{P({0})}}}};
    auto sides = sarkaria_equiv_check(lift(zeros, 2), {{0, P({0})}, {1, P({0})}});
    EXPECT_TRUE(sides.lifted);
    EXPECT_TRUE(sides.intersection);

    Family apart{1, {{{P({1})}}, {{P({2})}}}};
    sides = sarkaria_equiv_check(lift(apart, 2), {{0, P({1})}, {1, P({2})}});
    EXPECT_FALSE(sides.lifted);
    EXPECT_FALSE(sides.intersection);
}

TEST(Sarkaria, ExhaustiveSingletonsOnLine) {
    Family f{1, {{{P({0})}}, {{P({2})}}, {{P({1})}}}};
    auto l = lift(f, 2);
    std::size_t agreeing = 0, true_cases = 0;
    for (std::size_t mask = 0; mask < 8; ++mask) {
        std::vector<TaggedRep> reps;
        for (std::size_t i = 0; i < 3; ++i) reps.push_back({(mask >> i) & 1u, f.members[i].vertices[0]});
        auto sides = sarkaria_equiv_check(l, reps);
        agreeing += sides.agree();
        true_cases += sides.lifted;
    }
    EXPECT_EQ(agreeing, 8u);
    // Only {1} against {0, 2}, in either orientation.
    EXPECT_EQ(true_cases, 2u);
}

TEST(Sarkaria, ThreeTagsInPlane) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coord(-2, 2);
    std::uniform_int_distribution<std::size_t> tag(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        Family f{2, {}};
        std::vector<TaggedRep> reps;
        for (int i = 0; i < 5; ++i) {
            Point p{Rational(coord(rng)), Rational(coord(rng))};
            f.members.push_back({{p}});
            reps.push_back({tag(rng), p});
        }
        EXPECT_TRUE(sarkaria_equiv_check(lift(f, 3), reps).agree());
    }
}

TEST(KappaRewrite, VertexNeedsOneMember) {
    Family f = square_edges_family();
    auto rw = kappa_rewrite(P({1, 1}), f, {0, 1, 2, 3}, 1);
    EXPECT_EQ(rw.members, std::vector<std::size_t>{1});
    EXPECT_EQ(rw.points, std::vector<Point>{P({1, 1})});
    EXPECT_EQ(rw.weights, std::vector<Rational>{Q(1)});
}

TEST(KappaRewrite, SquareCenterUsesTwoEdges) {
    Family f = square_edges_family();
    const Point center{Q(1, 2), Q(1, 2)};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_FALSE(oracle::in_hull(center, f.members[i].vertices));
    auto rw = kappa_rewrite(center, f, {0, 1, 2, 3}, 2);
    // First pair in enumeration order; the center is on its diagonal.
    EXPECT_EQ(rw.members, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(rw.points, (std::vector<Point>{P({0, 0}), P({1, 1})}));
    EXPECT_EQ(rw.weights, (std::vector<Rational>{Q(1, 2), Q(1, 2)}));
    EXPECT_TRUE(oracle::in_hull(center, f.union_vertices(rw.members)));
}

TEST(KappaRewrite, ViolationCarriesThePoint) {
    Family f{2, {{{P({0, 0})}}, {{P({3, 0})}}, {{P({0, 3})}}}};
    auto kappa = family_caratheodory_number(f);
    ASSERT_TRUE(kappa.witness);
    ASSERT_EQ(kappa.lower, 3);
    try {
        kappa_rewrite(kappa.witness->point, f, {0, 1, 2}, 2);
        FAIL() << "expected KappaViolation";
    } catch (const KappaViolation& e) {
        EXPECT_EQ(e.q(), kappa.witness->point);
        EXPECT_EQ(e.kappa(), 2u);
    }
    EXPECT_NO_THROW(kappa_rewrite(kappa.witness->point, f, {0, 1, 2}, 3));
}

TEST(Tverberg, SevenPointsInPlane) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Family f = singleton_family(2, 7, 6, seed);
        ASSERT_TRUE(oracle::two_partition_exists(vertex_lists(f)));
        TverbergConfig config;
        config.kappa = 3;
        auto cert = tverberg_partition(f, 2, config);
        expect_valid(f, cert);
        EXPECT_EQ(cert.kappa_status, "given");
        EXPECT_FALSE(cert.empty_parts);
    }
}

TEST(Tverberg, CommonPointFamily) {
    // Five segments through (1, 1).
    Family f{2, {}};
    for (long k = 0; k < 5; ++k) f.members.push_back({{P({1 - k, 1 + 2 * k}), P({1 + k, 1 - 2 * k})}});
    f.members[0].vertices = {P({1, 1})};
    TverbergConfig config;
    config.kappa = 2;
    auto cert = tverberg_partition(f, 2, config);
    expect_valid(f, cert);

    TverbergCertificate mine = cert;
    mine.witness = P({1, 1});
    EXPECT_TRUE(verify_certificate(f, mine));
}

TEST(Tverberg, SquareEdgesWithCenter) {
    Family f = square_with_center();
    ASSERT_TRUE(oracle::two_partition_exists(vertex_lists(f)));
    auto cert = tverberg_partition(f, 2);
    EXPECT_EQ(cert.kappa, 2u);
    EXPECT_EQ(cert.kappa_status, "proven");
    expect_valid(f, cert);
}

TEST(Tverberg, ThreePartsOnLineAndPlane) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Family line = singleton_family(1, 7, 9, seed);
        TverbergConfig config;
        config.kappa = 2;
        auto cert = tverberg_partition(line, 3, config);
        expect_valid(line, cert);
        EXPECT_EQ(cert.parts.size(), 3u);

        Family plane = singleton_family(2, 10, 6, seed);
        config.kappa = 3;
        auto cert2 = tverberg_partition(plane, 3, config);
        expect_valid(plane, cert2);
    }
}

TEST(Tverberg, PolytopeMembers) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Family f = edge_family(5, 2, seed);
        auto cert = tverberg_partition(f, 2);
        expect_valid(f, cert);
        EXPECT_TRUE(oracle::two_partition_exists(vertex_lists(f)));
    }
}

TEST(Tverberg, PreconditionsAndViolations) {
    Family triangle{2, {{{P({0, 0})}}, {{P({4, 0})}}, {{P({0, 4})}}}};
    TverbergConfig config;
    config.kappa = 3;
    EXPECT_THROW(tverberg_partition(triangle, 2, config), InputError);
    EXPECT_THROW(tverberg_partition(triangle, 2), InputError);

    // Three points in general position have no Radon partition; kappa = 1 is a lie.
    ASSERT_FALSE(oracle::two_partition_exists(vertex_lists(triangle)));
    config.kappa = 1;
    EXPECT_THROW(tverberg_partition(triangle, 2, config), KappaViolation);
}

TEST(Certificate, Tampering) {
    Family f = singleton_family(2, 7, 6, 3);
    TverbergConfig config;
    config.kappa = 3;
    auto cert = tverberg_partition(f, 2, config);
    ASSERT_TRUE(verify_certificate(f, cert));

    auto shifted = cert;
    shifted.witness += P({1, 0});
    auto check = verify_certificate(f, shifted);
    EXPECT_FALSE(check);
    ASSERT_TRUE(check.failing_part.has_value());
    EXPECT_LT(*check.failing_part, 2u);

    for (std::size_t from = 0; from < 2; ++from) {
        if (cert.parts[from].empty()) continue;
        auto moved = cert;
        const std::size_t i = moved.parts[from].back();
        moved.parts[from].pop_back();
        moved.parts[1 - from].push_back(i);
        const bool recomputed = !moved.parts[from].empty() && oracle_accepts(f, moved);
        EXPECT_EQ(static_cast<bool>(verify_certificate(f, moved)), recomputed);
    }

    auto overlapping = cert;
    overlapping.parts[0].push_back(overlapping.parts[1].front());
    EXPECT_FALSE(verify_certificate(f, overlapping));

    auto bad_coeff = cert;
    bad_coeff.coefficients[0][0].weight += 1;
    EXPECT_TRUE(verify_certificate(f, bad_coeff));
    EXPECT_FALSE(check_coefficients(f, bad_coeff));
}

TEST(Tverberg, RewriteBranch) {
    // All five members carry weight at some point, so the kappa rewrite runs.
    // Validity of the result does not depend on kappa being an upper bound.
    Family f{4,
             {{{P({-2, 3, -2, 0})}},
              {{P({3, -2, 3, 0})}},
              {{P({0, -2, 2, 2}), P({-1, -1, 3, 2}), P({0, -3, -2, 1})}},
              {{P({-1, -1, -3, 3})}},
              {{P({-3, 1, -3, -2}), P({-1, 1, 2, 2}), P({-2, 3, -2, 0})}}}};
    TverbergConfig config;
    config.kappa = 2;
    auto cert = tverberg_partition(f, 2, config);
    EXPECT_GE(cert.rewrites, 1u);
    expect_valid(f, cert);
}
