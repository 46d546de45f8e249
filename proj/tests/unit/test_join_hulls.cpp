#include <gtest/gtest.h>

#include <random>

#include "cara/error.hpp"
#include "cara/join_hulls.hpp"
#include "oracles.hpp"

using namespace cara;

namespace {

Point P(std::initializer_list<long> v) { return Point::from_ints(v); }
Rational Q(long n, long d = 1) { return ratio(n, d); }

std::vector<Point> square() { return {P({1, 1}), P({1, -1}), P({-1, 1}), P({-1, -1})}; }
std::vector<Point> unit_square() { return {P({0, 0}), P({1, 0}), P({1, 1}), P({0, 1})}; }

std::vector<std::vector<Point>> pairs_of(const std::vector<Point>& X) {
    std::vector<std::vector<Point>> out;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) out.push_back({X[i], X[j]});
    return out;
}

Family square_edges() {
    Family f{2, {}};
    auto c = unit_square();
    for (std::size_t i = 0; i < 4; ++i) f.members.push_back({{c[i], c[(i + 1) % 4]}});
    return f;
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim, long range) {
    std::uniform_int_distribution<long> coord(-range, range);
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i) {
        Point p(dim);
        for (std::size_t j = 0; j < dim; ++j) p[j] = coord(rng);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

TEST(Convm, SquareCenterViaDiagonal) {
    auto X = square();
    auto r = convm_membership(P({0, 0}), X, 2);
    ASSERT_TRUE(r.member());
    EXPECT_EQ(r.combination->size(), 2u);
    EXPECT_EQ(r.combination->weights, (std::vector<Rational>{Q(1, 2), Q(1, 2)}));
    EXPECT_EQ(r.combination->evaluate(X), P({0, 0}));
    EXPECT_FALSE(convm_membership(P({0, 0}), X, 1).member());
}

TEST(Convm, TriangleCentroidNeedsThree) {
    std::vector<Point> X{P({0, 0}), P({1, 0}), P({0, 1})};
    Point p{Q(1, 3), Q(1, 3)};
    ASSERT_FALSE(oracle::in_convm(p, X, 2));
    ASSERT_TRUE(oracle::in_convm(p, X, 3));

    auto two = convm_membership(p, X, 2);
    EXPECT_FALSE(two.member());
    EXPECT_EQ(two.subsets_tested, 3u);
    auto three = convm_membership(p, X, 3);
    ASSERT_TRUE(three.member());
    EXPECT_EQ(three.combination->evaluate(X), p);
}

TEST(Convm, RejectsBadInput) {
    EXPECT_THROW(convm_membership(P({0, 0}), square(), 0), InputError);
    EXPECT_THROW(convm_membership(P({0, 0}), {}, 1), InputError);
    EXPECT_THROW(convm_membership(P({0, 0, 0}), square(), 2), InputError);
}

TEST(Convm, AgreesWithSubsetOracleAndIsMonotone) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t dim = 2 + trial % 2;
        auto X = random_points(rng, 4 + trial % 3, dim, 4);
        auto p = random_points(rng, 1, dim, 2).front();
        bool prev = false;
        for (std::size_t m = 1; m <= X.size(); ++m) {
            auto r = convm_membership(p, X, m);
            EXPECT_EQ(r.member(), oracle::in_convm(p, X, m)) << "trial " << trial << " m " << m;
            if (r.member()) {
                EXPECT_LE(r.combination->size(), m);
                EXPECT_EQ(r.combination->evaluate(X), p);
            }
            EXPECT_TRUE(!prev || r.member());
            prev = r.member();
        }
    }
}

TEST(ConvmPieces, SegmentsOfSquareBoundary) {
    auto c = unit_square();
    std::vector<std::vector<Point>> edges;
    for (std::size_t i = 0; i < 4; ++i) edges.push_back({c[i], c[(i + 1) % 4]});
    Point center{Q(1, 2), Q(1, 2)};
    EXPECT_FALSE(convm_membership_pieces(center, edges, 1).member());
    auto r = convm_membership_pieces(center, edges, 2);
    ASSERT_TRUE(r.member());
    EXPECT_EQ(r.combination->evaluate(), center);
    for (std::size_t i = 0; i < r.combination->pieces.size(); ++i) {
        EXPECT_GT(r.combination->weights[i], 0);
        EXPECT_TRUE(oracle::in_hull(r.combination->points[i], edges[r.combination->pieces[i]]));
    }
}

TEST(Join, Examples) {
    auto r = join_membership(P({0, 0}), {{P({1, 0})}, {P({-1, 0})}});
    ASSERT_TRUE(r.member);
    EXPECT_EQ(r.weights, (std::vector<Rational>{Q(1, 2), Q(1, 2)}));
    EXPECT_FALSE(join_membership(P({0, 2}), {{P({1, 0})}, {P({-1, 0})}}).member);

    std::vector<std::vector<Point>> sets{{P({1, 1}), P({2, 0})}, {P({-1, -1}), P({0, -3})}};
    auto brute = oracle::colorful_simplices(sets, P({0, 0}));
    ASSERT_EQ(brute, (std::vector<std::vector<std::size_t>>{{0, 0}}));
    auto j = join_membership(P({0, 0}), sets);
    ASSERT_TRUE(j.member);
    EXPECT_EQ(j.choice, (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(j.weights, (std::vector<Rational>{Q(1, 2), Q(1, 2)}));
}

TEST(Join, BudgetExceeded) {
    std::vector<Point> many(200, P({1}));
    EXPECT_THROW(join_membership(P({0}), {many, many, many}, 1000), ResourceError);
    EXPECT_THROW(join_membership(P({0}), {many, {}}), InputError);
}

TEST(Join, CopiesAgreeWithConvm) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto X = random_points(rng, 4, 2, 3);
        auto p = random_points(rng, 1, 2, 2).front();
        for (std::size_t k = 1; k <= 3; ++k) {
            std::vector<std::vector<Point>> copies(k, X);
            EXPECT_EQ(join_membership(p, copies).member, convm_membership(p, X, k).member()) << trial;
        }
    }
}

TEST(KappaPointset, SinglePoint) {
    auto b = caratheodory_number_pointset({P({3, 4})});
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, 1);
}

TEST(KappaPointset, TriangleIsThree) {
    std::vector<Point> X{P({0, 0}), P({1, 0}), P({0, 1})};
    ASSERT_FALSE(oracle::uncovered_grid_points(X, pairs_of(X), 12).empty());
    auto b = caratheodory_number_pointset(X);
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, 3);
    ASSERT_TRUE(b.witness);
    EXPECT_TRUE(oracle::in_hull(b.witness->point, X));
    EXPECT_FALSE(oracle::in_convm(b.witness->point, X, 2));
}

TEST(KappaPointset, SquareIsThree) {
    auto X = square();
    auto b = caratheodory_number_pointset(X);
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, 3);
    EXPECT_FALSE(oracle::in_convm(b.witness->point, X, 2));
}

TEST(KappaPointset, CollinearIsTwo) {
    auto b = caratheodory_number_pointset({P({0, 0, 0}), P({1, 1, 1}), P({3, 3, 3})});
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, 2);
}

TEST(KappaPointset, NeverExceedsDimPlusOne) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto X = random_points(rng, 6, 3, 5);
        auto b = caratheodory_number_pointset(X, {.samples = 16, .centroid_subsets = 16});
        ASSERT_TRUE(b.upper);
        EXPECT_LE(*b.upper, 4);
        EXPECT_LE(b.lower, *b.upper);
    }
}

TEST(KappaFamily, SingleMemberIsOne) {
    Family f{2, {{unit_square()}}};
    auto b = family_caratheodory_number(f);
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, 1);
}

TEST(KappaFamily, SquareEdgesIsTwo) {
    auto f = square_edges();
    auto b = family_caratheodory_number(f);
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, 2);
    ASSERT_TRUE(b.witness);
    // Witness: some point of conv of the subfamily's union outside every single member.
    auto target = f.union_vertices(b.witness->subfamily);
    EXPECT_TRUE(oracle::in_hull(b.witness->point, target));
    for (auto i : b.witness->subfamily) EXPECT_FALSE(oracle::in_hull(b.witness->point, f.members[i].vertices));

    // Sampling cross-check of level 2 on the whole family.
    std::vector<std::vector<Point>> pair_hulls;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) pair_hulls.push_back(f.union_vertices({i, j}));
    EXPECT_TRUE(oracle::uncovered_grid_points(unit_square(), pair_hulls, 16).empty());
}

TEST(KappaFamily, ThreeIsolatedPointsIsThree) {
    Family f{2, {{{P({0, 0})}}, {{P({100, 0})}}, {{P({0, 100})}}}};
    auto b = family_caratheodory_number(f);
    EXPECT_TRUE(b.exact());
    EXPECT_EQ(b.lower, 3);
    ASSERT_TRUE(b.witness);
    EXPECT_EQ(b.witness->subfamily.size(), 3u);
    std::vector<Point> tri{P({0, 0}), P({100, 0}), P({0, 100})};
    EXPECT_FALSE(oracle::in_convm(b.witness->point, tri, 2));
}

TEST(KappaFamily, BudgetGivesUnknownUpper) {
    auto f = square_edges();
    auto b = family_caratheodory_number(f, {.max_subfamilies = 3});
    EXPECT_FALSE(b.upper);
    EXPECT_EQ(b.method, "budget");
}

TEST(Coverage2d, SquareBySquareAndTriangles) {
    VPolytope sq{unit_square()};
    EXPECT_TRUE(coverage_check_2d(sq, {sq}).covered);
    auto c = unit_square();
    EXPECT_TRUE(coverage_check_2d(sq, {{{c[0], c[1], c[2]}}, {{c[0], c[2], c[3]}}}).covered);
    EXPECT_FALSE(coverage_check_2d(sq, {{{c[0], c[1], c[2]}}}).covered);
}

TEST(Coverage2d, SixSegmentsLeaveHoles) {
    auto c = unit_square();
    std::vector<VPolytope> segs;
    std::vector<std::vector<Point>> raw = pairs_of(c);
    for (auto& s : raw) segs.push_back({s});
    ASSERT_EQ(segs.size(), 6u);
    ASSERT_FALSE(oracle::uncovered_grid_points(c, raw, 8).empty());

    auto r = coverage_check_2d({c}, segs);
    EXPECT_FALSE(r.covered);
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(oracle::in_hull(*r.witness, c));
    for (auto& s : raw) EXPECT_FALSE(oracle::in_hull(*r.witness, s));
    EXPECT_TRUE(oracle::in_hull(Point{Q(1, 4), Q(1, 3)}, c));
}

TEST(Coverage2d, DegenerateTargets) {
    VPolytope seg{{P({0, 0}), P({4, 0})}};
    EXPECT_TRUE(coverage_check_2d(seg, {{{P({0, 0}), P({2, 0})}}, {{P({2, -1}), P({6, 1}), P({1, 1})}}}).covered);
    auto gap = coverage_check_2d(seg, {{{P({0, 0}), P({1, 0})}}, {{P({2, 0}), P({4, 0})}}});
    EXPECT_FALSE(gap.covered);
    EXPECT_EQ(*gap.witness, (Point{Q(3, 2), Q(0)}));
    auto start = coverage_check_2d(seg, {{{P({1, 0}), P({4, 0})}}});
    EXPECT_FALSE(start.covered);
    EXPECT_EQ(*start.witness, (Point{Q(1, 2), Q(0)}));
    // A crossing segment covers one point only.
    EXPECT_FALSE(coverage_check_2d(seg, {{{P({2, -1}), P({2, 1})}}}).covered);
    EXPECT_TRUE(coverage_check_2d({{P({2, 0})}}, {{{P({2, -1}), P({2, 1})}}}).covered);
}

TEST(Coverage2d, AgreesWithRasterOracle) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        auto target = random_points(rng, 4, 2, 4);
        std::vector<std::vector<Point>> raw;
        std::vector<VPolytope> pieces;
        for (int k = 0; k < 3; ++k) {
            raw.push_back(random_points(rng, 3, 2, 5));
            pieces.push_back({raw.back()});
        }
        auto r = coverage_check_2d({target}, pieces);
        if (r.covered) {
            EXPECT_TRUE(oracle::uncovered_grid_points(target, raw, 10).empty()) << trial;
        } else {
            EXPECT_TRUE(oracle::in_hull(*r.witness, target));
            for (auto& s : raw) EXPECT_FALSE(oracle::in_hull(*r.witness, s));
        }
    }
}

TEST(Coverage, EmbeddedPlaneInR3) {
    std::vector<Point> tri{P({0, 0, 1}), P({2, 0, 1}), P({0, 2, 1})};
    auto r = coverage_check(tri, {{tri[0], tri[1]}, {tri[1], tri[2]}, {tri[0], tri[2]}}, 16);
    EXPECT_TRUE(r.exact);
    EXPECT_FALSE(r.covered);
    EXPECT_EQ((*r.witness)[2], 1);
    EXPECT_TRUE(coverage_check(tri, {tri}, 16).covered);
    EXPECT_THROW(coverage_check(tri, {{P({0, 0, 0})}}, 16), InputError);
}

TEST(Coverage, SampledInR3) {
    std::vector<Point> tet{P({0, 0, 0}), P({1, 0, 0}), P({0, 1, 0}), P({0, 0, 1})};
    auto full = coverage_check(tet, {tet}, 32);
    EXPECT_TRUE(full.covered);
    EXPECT_FALSE(full.exact);
    auto faces = coverage_check(tet, {{tet[0], tet[1], tet[2]}, {tet[0], tet[1], tet[3]}}, 32);
    EXPECT_FALSE(faces.covered);
    EXPECT_TRUE(faces.exact);
    EXPECT_TRUE(oracle::in_hull(*faces.witness, tet));
}

TEST(Hull2d, DropsCollinearAndOrdersCounterClockwise) {
    auto h = convex_hull_2d({P({0, 0}), P({2, 0}), P({1, 0}), P({2, 2}), P({0, 2}), P({1, 1})});
    EXPECT_EQ(h, (std::vector<Point>{P({0, 0}), P({2, 0}), P({2, 2}), P({0, 2})}));
    EXPECT_EQ(convex_hull_2d({P({1, 1}), P({1, 1})}).size(), 1u);
    EXPECT_EQ(convex_hull_2d({P({0, 0}), P({1, 1}), P({3, 3})}).size(), 2u);
}

TEST(Halton, SamplesAreInteriorAndDeterministic) {
    auto c = unit_square();
    auto a = halton_hull_samples(c, 20);
    EXPECT_EQ(a, halton_hull_samples(c, 20));
    for (const auto& p : a) {
        EXPECT_GT(p[0], 0);
        EXPECT_LT(p[0], 1);
    }
}
