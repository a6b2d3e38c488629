#include <gtest/gtest.h>

#include <sstream>

#include "rsl/serialize.hpp"
#include "rsl/verma.hpp"

using namespace rsl;

TEST(Json, RankDistance) {
    auto j = to_json(RankDistance{2, 6});
    EXPECT_EQ(j["num"], 2);
    EXPECT_EQ(j["den"], 6);
    EXPECT_EQ(j["value"], "1/3");
    EXPECT_EQ(to_json(mpq_class(-3, 4)), "-3/4");
}

TEST(Json, KeysAreSorted) {
    json j = {{"zeta", 1}, {"alpha", 2}, {"mid", 3}};
    EXPECT_EQ(j.dump(), R"({"alpha":2,"mid":3,"zeta":1})");
}

TEST(AlmostRepFile, RoundTripRational) {
    RationalField q;
    ChevalleyBasis sl2(2);
    auto phi = build_truncation(sl2, q, {mpq_class(1, 2)}, 6).rep;
    std::stringstream ss;
    write_rep(ss, phi);
    auto back = read_rep(ss, q);
    EXPECT_EQ(back.dim(), 7u);
    EXPECT_EQ(back.metadata().construction, "verma");
    EXPECT_EQ(back.metadata().lambda, std::vector<std::string>{"1/2"});
    EXPECT_EQ(back.metadata().n, 6u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.image(k), phi.image(k));
}

TEST(AlmostRepFile, RoundTripPrimeAndGaussian) {
    PrimeField f(7);
    ChevalleyBasis sl3(3);
    auto ad = adjoint_rep(f, sl3);
    std::stringstream ss;
    write_rep(ss, ad);
    auto back = read_rep(ss, f);
    for (std::size_t k = 0; k < sl3.dim(); ++k) EXPECT_EQ(back.image(k), ad.image(k));

    auto c = complexify(build_truncation(ChevalleyBasis(2), RationalField(), {mpq_class(1, 3)}, 3).rep);
    std::stringstream sc;
    write_rep(sc, c);
    auto cb = read_rep(sc, GaussianField());
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(cb.image(k), c.image(k));
}

TEST(AlmostRepFile, HeaderMismatchesThrow) {
    RationalField q;
    auto phi = irreducible_sl2(q, 2);
    std::stringstream ss;
    write_rep(ss, phi);
    const std::string text = ss.str();

    std::stringstream wrong_field(text);
    EXPECT_THROW(read_rep(wrong_field, PrimeField(5)), parse_error);

    std::string bad_dim = text;
    bad_dim.replace(bad_dim.find("\"dim\":3"), 7, "\"dim\":4");
    std::stringstream sd(bad_dim);
    EXPECT_THROW(read_rep(sd, q), parse_error);

    std::stringstream garbage("{not json\n");
    EXPECT_THROW(read_rep(garbage, q), parse_error);
    std::stringstream empty;
    EXPECT_THROW(read_rep(empty, q), parse_error);
    EXPECT_THROW(algebra_rank_from_name("so3"), parse_error);
    EXPECT_THROW(algebra_rank_from_name("sl1"), parse_error);
    EXPECT_EQ(algebra_rank_from_name("sl4"), 4u);
}
