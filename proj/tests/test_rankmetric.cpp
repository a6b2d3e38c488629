#include <gtest/gtest.h>

#include "rsl/liealg.hpp"
#include "rsl/random.hpp"
#include "rsl/rankmetric.hpp"
#include "rsl/verma.hpp"

using namespace rsl;

namespace {
using QM = Matrix<RationalField>;
const RationalField Q;
}

TEST(StrictDistance, Examples) {
    EXPECT_EQ(strict_distance(QM::identity(Q, 4), QM::identity(Q, 4)).str(), "0");
    EXPECT_EQ(strict_distance(QM::identity(Q, 4), neg(QM::identity(Q, 4))).str(), "1");
    EXPECT_EQ(strict_distance(QM::identity(Q, 4), add(QM::identity(Q, 4), QM::unit(Q, 4, 0, 1))).str(), "1/4");
    EXPECT_THROW(strict_distance(QM::identity(Q, 4), QM::identity(Q, 5)), dimension_mismatch);
}

TEST(FlexibleDistance, Examples) {
    auto d = flexible_distance(QM::identity(Q, 4), QM::identity(Q, 5));
    EXPECT_EQ(d.numerator, 1u);
    EXPECT_EQ(d.denominator, 4u);
    EXPECT_EQ(flexible_distance(QM::identity(Q, 2), QM::identity(Q, 6)).str(), "2");
    Rng rng(4);
    auto a = random_matrix(Q, rng, 3, 3);
    EXPECT_EQ(flexible_distance(a, a).str(), "0");
}

TEST(FlexibleDistance, Properties) {
    PrimeField f(7);
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng.index(5), m = 2 + rng.index(5);
        auto a = random_invertible(f, rng, n);
        auto b = random_invertible(f, rng, m);
        auto c = random_invertible(f, rng, n);
        EXPECT_EQ(flexible_distance(a, b), flexible_distance(b, a));
        EXPECT_FALSE(flexible_distance(a, b) < dimension_gap(n, m));
        const std::size_t extra = std::max(n, m) + 3;
        auto padded = flexible_distance(pad(a, extra, extra), pad(b, extra, extra));
        EXPECT_EQ(padded.numerator, flexible_distance(a, b).numerator);
        // Triangle inequality for the strict metric.
        auto b2 = random_invertible(f, rng, n);
        EXPECT_LE(strict_distance(a, c).value(), strict_distance(a, b2).value() + strict_distance(b2, c).value());
    }
}

TEST(RankDistance, ValueIsCanonical) {
    RankDistance d{2, 6};
    EXPECT_EQ(d.str(), "1/3");
    EXPECT_EQ(d, (RankDistance{1, 3}));
    EXPECT_TRUE((RankDistance{1, 4}) < d);
}

TEST(MapDistance, Examples) {
    ChevalleyBasis sl2(2);
    auto ad = adjoint_rep(Q, sl2);
    EXPECT_EQ(map_distance(ad, ad, DistanceMode::Strict).basis_max.str(), "0");

    auto phi = build_truncation(sl2, Q, {mpq_class(1, 2)}, 4).rep;
    auto images = phi.images();
    images[sl2.x(0)] = add(images[sl2.x(0)], QM::unit(Q, 5, 0, 0));
    AlmostRep<RationalField> psi(sl2, Q, images);
    auto d = map_distance(phi, psi, DistanceMode::Strict);
    EXPECT_EQ(d.basis_max.str(), "1/5");
    EXPECT_EQ(d.argmax, sl2.x(0));
    EXPECT_EQ(d.uniform_bound, mpq_class(3, 5));
    EXPECT_EQ(map_distance(phi, psi, DistanceMode::Flexible).basis_max.str(), "1/5");
}
