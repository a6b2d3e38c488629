#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "rsl/errors.hpp"
#include "rsl/field.hpp"
#include "rsl/linalg.hpp"
#include "rsl/matrix.hpp"
#include "rsl/random.hpp"

using namespace rsl;

namespace {

template <class F>
Matrix<F> ones(const F& f, std::size_t n) {
    return Matrix<F>::generate(f, n, n, [&](std::size_t, std::size_t) { return f.one(); });
}

std::vector<std::vector<std::int64_t>> to_rows(const Matrix<PrimeField>& m) {
    std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = static_cast<std::int64_t>(m(i, j));
    return out;
}

} // namespace

TEST(Field, RationalsStayCanonical) {
    RationalField q;
    auto v = q.parse("6/-4");
    EXPECT_EQ(q.format(v), "-3/2");
    EXPECT_EQ(q.format(q.add(q.parse("1/3"), q.parse("2/3"))), "1");
    EXPECT_THROW(q.parse("1/0"), parse_error);
    EXPECT_THROW(q.parse("abc"), parse_error);
    EXPECT_THROW(q.inv(q.zero()), rsl::error);
}

TEST(Field, GaussianArithmetic) {
    GaussianField c;
    auto i = c.i();
    EXPECT_TRUE(c.eq(c.mul(i, i), c.from_int(-1)));
    auto z = c.parse("1/2+3/4 i");
    EXPECT_EQ(c.format(z), "1/2+3/4 i");
    EXPECT_TRUE(c.eq(c.parse(c.format(c.neg(z))), c.neg(z)));
    EXPECT_TRUE(c.eq(c.mul(z, c.inv(z)), c.one()));
    EXPECT_TRUE(c.eq(c.parse("i"), i));
    EXPECT_TRUE(c.eq(c.parse("-2"), c.from_int(-2)));
}

TEST(Field, PrimeFieldRejectsComposites) {
    EXPECT_THROW(PrimeField(6), not_prime);
    EXPECT_THROW(PrimeField(1), not_prime);
    PrimeField f(7);
    EXPECT_EQ(f.from_int(-1), 6u);
    EXPECT_EQ(f.mul(f.inv(3), 3), 1u);
    EXPECT_EQ(f.from_rational(mpq_class(1, 2)), 4u);
    EXPECT_THROW(f.from_rational(mpq_class(1, 7)), bad_reduction);
}

TEST(Field, SpecTags) {
    EXPECT_EQ(FieldSpec::parse("rational").kind, FieldKind::Rational);
    EXPECT_EQ(FieldSpec::parse("gaussian").kind, FieldKind::GaussianRational);
    auto g = FieldSpec::parse("gf101");
    EXPECT_EQ(g.p, 101u);
    EXPECT_EQ(g.tag(), "gf101");
    EXPECT_THROW(FieldSpec::parse("gf9"), not_prime);
    EXPECT_THROW(FieldSpec::parse("reals"), parse_error);
}

TEST(Rank, SpecExamples) {
    RationalField q;
    EXPECT_EQ(rank(Matrix<RationalField>::identity(q, 5)), 5u);
    EXPECT_EQ(rank(Matrix<PrimeField>::zero(PrimeField(7), 3, 4)), 0u);
    EXPECT_EQ(rank(ones(q, 4)), 1u);
}

TEST(Rank, ModularCertificateExamples) {
    RationalField q;
    EXPECT_EQ(modular_rank_certificate(Matrix<RationalField>::identity(q, 5), {2, 3}), 5u);
    auto d = Matrix<RationalField>::diagonal(q, {6, 1});
    EXPECT_EQ(rank(reduce_mod(d, 2)), 1u);
    // 6 vanishes both mod 2 and mod 3, so neither prime sees the full rank.
    EXPECT_EQ(rank(reduce_mod(d, 3)), 1u);
    EXPECT_EQ(modular_rank_certificate(d, {2, 3}), 1u);
    EXPECT_EQ(modular_rank_certificate(d, {2, 3, 5}), 2u);
    EXPECT_EQ(modular_rank_certificate(ones(q, 4), {5}), 1u);
    auto half = Matrix<RationalField>::diagonal(q, {mpq_class(1, 2), 1});
    EXPECT_THROW(modular_rank_certificate(half, {2}), bad_reduction);
}

TEST(Rank, ModularCertificateNeverExceedsRank) {
    RationalField q;
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t r = rng.index(5);
        auto m = random_matrix_of_rank(q, rng, 5, 5, r);
        // Scale out denominators so that every prime is admissible.
        mpz_class l = 1;
        for (const auto& e : m.entries()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
        auto mi = scalar_mul(mpq_class(l), m);
        EXPECT_LE(modular_rank_certificate(mi, {2, 3, 5}), rank(mi));
    }
}

TEST(Rank, MinorsOracleExhaustive3x3OverGF2) {
    PrimeField f(2);
    for (unsigned bits = 0; bits < 512; ++bits) {
        auto m = Matrix<PrimeField>::generate(f, 3, 3, [&](std::size_t i, std::size_t j) {
            return static_cast<std::uint64_t>((bits >> (3 * i + j)) & 1u);
        });
        ASSERT_EQ(rank(m), oracle::rank_by_minors(to_rows(m), 2)) << to_text(m);
    }
}

TEST(Rank, MinorsOracleSampledOverGF3) {
    PrimeField f(3);
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        const std::size_t rows = 1 + rng.index(4), cols = 1 + rng.index(4);
        auto m = random_matrix(f, rng, rows, cols);
        ASSERT_EQ(rank(m), oracle::rank_by_minors(to_rows(m), 3)) << to_text(m);
    }
}

TEST(Rank, BareissAgreesWithGaussJordan) {
    RationalField q;
    GaussianField c;
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = rng.index(6);
        auto m = random_matrix_of_rank(q, rng, 6, 7, r);
        EXPECT_EQ(rank(m), r);
        EXPECT_EQ(rank_gauss_jordan(m), r);
        auto z = random_matrix_of_rank(c, rng, 5, 5, std::min<std::size_t>(r, 5));
        EXPECT_EQ(rank(z), rank_gauss_jordan(z));
    }
}

TEST(Rank, GaussianNeedsTheImaginaryUnit) {
    // [[1, i], [i, -1]] has rank 1 over Q(i).
    GaussianField c;
    Matrix<GaussianField> m(c, 2, 2, {c.one(), c.i(), c.i(), c.from_int(-1)});
    EXPECT_EQ(rank(m), 1u);
}

TEST(Rank, Properties) {
    PrimeField f(5);
    RationalField q;
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        auto a = random_matrix_of_rank(f, rng, 5, 5, rng.index(6));
        auto b = random_matrix_of_rank(f, rng, 5, 5, rng.index(6));
        EXPECT_LE(rank(add(a, b)), rank(a) + rank(b));
        EXPECT_LE(rank(mul(a, b)), std::min(rank(a), rank(b)));
        EXPECT_EQ(rank(a), rank(transpose(a)));
        auto c = random_matrix(q, rng, 4, 6);
        EXPECT_EQ(rank(c), rank(transpose(c)));
    }
}

TEST(MatOps, InverseKernelAndColumnSpace) {
    RationalField q;
    EXPECT_EQ(inverse(Matrix<RationalField>::identity(q, 3)), (Matrix<RationalField>::identity(q, 3)));
    EXPECT_EQ(kernel_basis(Matrix<RationalField>::zero(q, 2, 2)).cols(), 2u);
    EXPECT_THROW(inverse(ones(q, 3)), singular_matrix);

    PrimeField f(101);
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        auto a = random_invertible(f, rng, 6);
        EXPECT_EQ(mul(a, inverse(a)), (Matrix<PrimeField>::identity(f, 6)));
    }
    for (int t = 0; t < 30; ++t) {
        auto m = random_matrix_of_rank(q, rng, 5, 7, rng.index(6));
        auto k = kernel_basis(m);
        EXPECT_EQ(k.cols(), 7 - rank(m));
        EXPECT_TRUE(mul(m, k).is_zero());
        EXPECT_EQ(column_space_basis(m).cols(), rank(m));
    }
}

TEST(MatOps, DirectSumAndBlocks) {
    RationalField q;
    auto a = Matrix<RationalField>::identity(q, 2);
    auto b = ones(q, 3);
    auto s = direct_sum(a, b);
    EXPECT_EQ(s.rows(), 5u);
    EXPECT_EQ(rank(s), 3u);
    EXPECT_EQ(submatrix(s, 2, 2, 3, 3), b);
    EXPECT_THROW(add(a, b), dimension_mismatch);
    EXPECT_THROW(mul(a, b), dimension_mismatch);
}

TEST(MatOps, CompleteBasis) {
    RationalField q;
    auto v = Matrix<RationalField>(q, 3, 1, {1, 1, 0});
    auto c = complete_basis(v);
    EXPECT_TRUE(is_invertible(c));
    EXPECT_EQ(submatrix(c, 0, 0, 3, 1), v);
}

TEST(TextFormat, RoundTrips) {
    RationalField q;
    GaussianField c;
    PrimeField f(7);
    Rng rng(2);
    auto mq = random_matrix(q, rng, 3, 4);
    EXPECT_EQ(from_text(to_text(mq), q), mq);
    auto mc = random_matrix(c, rng, 2, 2);
    EXPECT_EQ(from_text(to_text(mc), c), mc);
    auto mf = random_matrix(f, rng, 4, 2);
    EXPECT_EQ(from_text(to_text(mf), f), mf);
    EXPECT_EQ(to_text(Matrix<RationalField>::diagonal(q, {mpq_class(1, 2), -3})), "2 2 rational\n1/2 0\n0 -3\n");
    EXPECT_THROW(from_text(to_text(mf), PrimeField(5)), parse_error);
    EXPECT_THROW(from_text("2 2 rational\n1 2\n3\n", q), parse_error);
}

TEST(TextFormat, GaussianEntriesWithDetachedUnit) {
    GaussianField c;
    auto m = from_text("1 2 gaussian\n1/2+3/4 i -i\n", c);
    EXPECT_TRUE(c.eq(m(0, 0), c.parse("1/2+3/4i")));
    EXPECT_TRUE(c.eq(m(0, 1), c.neg(c.i())));
}
