#include <gtest/gtest.h>

#include "rsl/liealg.hpp"
#include "rsl/random.hpp"
#include "rsl/verma.hpp"

using namespace rsl;

namespace {

const RationalField Q;
const ChevalleyBasis SL2(2), SL3(3);

mpq_class half() { return mpq_class(1, 2); }

mpq_class frac(long a, long b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

ModuleVector<RationalField> single(const Exponents& e, const mpq_class& c = 1) {
    if (c == 0) return {};
    return {{e, c}};
}

// An upper-left block of every image, as a representation in its own right.
AlmostRep<RationalField> corner(const AlmostRep<RationalField>& phi, std::size_t k) {
    std::vector<Matrix<RationalField>> images;
    for (const auto& m : phi.images()) images.push_back(submatrix(m, 0, 0, k, k));
    return AlmostRep<RationalField>(phi.algebra(), Q, images);
}

ModuleVector<RationalField> random_vector(Rng& rng, std::size_t m, unsigned max_degree) {
    ModuleVector<RationalField> v;
    for (const auto& mon : monomials_up_to(m, max_degree)) {
        auto c = random_scalar(Q, rng);
        if (c != 0) v.emplace(mon, c);
    }
    return v;
}

ModuleVector<RationalField> combine(const ModuleVector<RationalField>& a, const ModuleVector<RationalField>& b,
                                    const mpq_class& sb) {
    ModuleVector<RationalField> out = a;
    for (const auto& [k, c] : b) {
        out[k] += sb * c;
        if (out[k] == 0) out.erase(k);
    }
    return out;
}

} // namespace

TEST(VermaAction, Sl2ClosedForms) {
    for (const mpq_class& lambda : {half(), mpq_class(-7, 3), mpq_class(4)}) {
        VermaModule<RationalField> m(SL2, Q, {lambda});
        for (unsigned k = 0; k <= 8; ++k) {
            EXPECT_EQ(m.act(SL2.h(0), {k}), single({k}, lambda - 2 * k));
            EXPECT_EQ(m.act(SL2.y(0), {k}), single({k + 1}));
            const mpq_class ek = k * (lambda - k + 1);
            if (k == 0 || ek == 0)
                EXPECT_TRUE(m.act(SL2.x(0), {k}).empty());
            else
                EXPECT_EQ(m.act(SL2.x(0), {k}), single({k - 1}, ek));
        }
    }
}

TEST(VermaAction, ModuleRespectsBrackets) {
    // x.(y.v) - y.(x.v) = [x, y].v on M(lambda) for every basis pair.
    Rng rng(3);
    for (const auto* g : {&SL2, &SL3}) {
        std::vector<mpq_class> lambda;
        for (std::size_t i = 0; i < g->rank(); ++i) lambda.push_back(random_scalar(Q, rng));
        VermaModule<RationalField> m(*g, Q, lambda);
        for (const auto& mon : monomials_up_to(g->num_positive_roots(), 3)) {
            for (std::size_t a = 0; a < g->dim(); ++a)
                for (std::size_t b = 0; b < g->dim(); ++b) {
                    auto ab = m.act(a, m.act(b, single(mon)));
                    auto ba = m.act(b, m.act(a, single(mon)));
                    ModuleVector<RationalField> rhs;
                    for (const auto& [k, c] : g->bracket(a, b)) rhs = combine(rhs, m.act(k, single(mon)), c);
                    EXPECT_EQ(combine(ab, ba, -1), rhs);
                }
        }
    }
}

TEST(VermaAction, WeightsOfMonomials) {
    VermaModule<RationalField> m(SL3, Q, {half(), mpq_class(1, 3)});
    for (const auto& mon : monomials_up_to(3, 4))
        for (std::size_t i = 0; i < 2; ++i) {
            auto v = m.act(SL3.h(i), mon);
            ASSERT_EQ(v.size(), 1u);
            EXPECT_EQ(v.begin()->first, mon);
            mpq_class w = i == 0 ? half() : mpq_class(1, 3);
            for (std::size_t a = 0; a < 3; ++a) w -= mon[a] * SL3.root_on_coroot(a, i);
            EXPECT_EQ(v.begin()->second, w);
        }
}

TEST(Truncation, DimensionsAndMonomialOrder) {
    EXPECT_EQ(monomials_up_to(1, 4).size(), 5u);
    EXPECT_EQ(monomials_up_to(3, 6).size(), 84u);
    EXPECT_EQ(monomials_up_to(1, 3), (std::vector<Exponents>{{0}, {1}, {2}, {3}}));
    for (std::size_t n : {2, 3, 4}) {
        auto t = build_truncation(SL3, Q, {half(), mpq_class(1, 3)}, n);
        EXPECT_EQ(mpz_class(t.rep.dim()), binomial(n + 3, 3));
    }
    EXPECT_THROW(build_truncation(SL2, Q, {half()}, 1), domain_error);
    EXPECT_THROW(build_truncation(SL3, Q, {half()}, 4), dimension_mismatch);
}

TEST(Truncation, Sl2MatchesClosedForms) {
    Rng rng(5);
    for (std::size_t n = 2; n <= 5; ++n) {
        const mpq_class lambda = random_scalar(Q, rng);
        auto t = build_truncation(SL2, Q, {lambda}, n);
        const auto& f = t.rep.image(0);
        const auto& h = t.rep.image(1);
        const auto& e = t.rep.image(2);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j) {
                EXPECT_EQ(h(i, j), i == j ? mpq_class(lambda - 2 * static_cast<long>(i)) : mpq_class(0));
                EXPECT_EQ(f(i, j), i == j + 1 ? 1 : 0);
                EXPECT_EQ(e(i, j), j == i + 1 ? mpq_class(j * (lambda - j + 1)) : mpq_class(0));
            }
    }
}

TEST(Truncation, Sl2DefectIsOneOverNPlusOne) {
    for (std::size_t n : {4, 8, 16}) {
        auto t = build_truncation(SL2, Q, {half()}, n);
        auto r = certify_defect(t);
        EXPECT_EQ(r.defect.pointwise, (RankDistance{1, n + 1}));
        EXPECT_EQ(r.bound, frac(2, static_cast<long>(n)));
        EXPECT_TRUE(r.pass);
        // The only violation is e f on the top monomial: -(n+1)(lambda-n).
        auto d = bracket_defect_matrix(t.rep, SL2.x(0), SL2.y(0));
        EXPECT_EQ(d(n, n), -mpq_class(n + 1) * (half() - n));
    }
    auto exact = build_truncation(SL2, Q, {mpq_class(5)}, 5);
    EXPECT_EQ(pointwise_defect(exact.rep).pointwise.str(), "0");
}

TEST(Truncation, Sl3DefectWithinBound) {
    auto t = build_truncation(SL3, Q, {half(), mpq_class(1, 3)}, 4);
    auto r = certify_defect(t);
    EXPECT_TRUE(r.pass);
    EXPECT_GT(r.defect.pointwise.numerator, 0u);
    EXPECT_EQ(r.bound, mpq_class(9, 2));
}

TEST(Truncation, ExactBelowTheBoundary) {
    for (const auto* g : {&SL2, &SL3}) {
        const std::size_t n = g->r() == 2 ? 6 : 3;
        std::vector<mpq_class> lambda(g->rank(), mpq_class(2, 7));
        VermaModule<RationalField> m(*g, Q, lambda);
        auto t = build_truncation(m, n);
        for (std::size_t col = 0; col < t.basis.size(); ++col) {
            const unsigned deg = degree(t.basis[col]);
            for (std::size_t gen = 0; gen < g->dim(); ++gen) {
                const bool raises = g->part(gen) == ChevalleyBasis::Part::Negative;
                if (raises && deg + 1 > n) continue;
                for (const auto& [mon, c] : m.act(gen, t.basis[col])) EXPECT_EQ(t.rep.image(gen)(t.index.at(mon), col), c);
            }
        }
    }
}

TEST(Truncation, HighestWeightStructure) {
    EXPECT_TRUE(check_highest_weight_structure(build_truncation(SL2, Q, {half()}, 4)).pass());
    EXPECT_TRUE(check_highest_weight_structure(build_truncation(SL2, Q, {mpq_class(0)}, 3)).pass());
    auto r = check_highest_weight_structure(build_truncation(SL3, Q, {half(), mpq_class(1, 3)}, 4));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.span_dim, 35u);
}

TEST(UEA, EvaluateBasics) {
    auto t = build_truncation(SL2, Q, {half()}, 4);
    EXPECT_EQ(evaluate_uea(t.rep, UEAElement<RationalField>::generator(Q, 2)), t.rep.image(2));
    EXPECT_EQ(evaluate_uea(t.rep, UEAElement<RationalField>::unit(Q)), (Matrix<RationalField>::identity(Q, 5)));
    UEAElement<RationalField> fe(Q);
    fe.add_term({0, 2}, 1);
    EXPECT_EQ(evaluate_uea(t.rep, fe), mul(t.rep.image(0), t.rep.image(2)));
}

TEST(UEA, StraighteningPreservesTheActionOfTrueReps) {
    Rng rng(7);
    for (const auto* g : {&SL2, &SL3}) {
        auto ad = adjoint_rep(Q, *g);
        for (int t = 0; t < 10; ++t) {
            UEAElement<RationalField> z(Q);
            for (int term = 0; term < 3; ++term) {
                std::vector<std::size_t> w;
                for (std::size_t len = rng.index(4) + 1; len > 0; --len) w.push_back(rng.index(g->dim()));
                z.add_term(w, random_scalar(Q, rng));
            }
            auto s = straighten(*g, z);
            EXPECT_TRUE(s.is_pbw_ordered());
            EXPECT_EQ(evaluate_uea(ad, s), evaluate_uea(ad, z));
        }
    }
}

TEST(Casimir, Sl2NormalForm) {
    auto omega = casimir(SL2, Q);
    UEAElement<RationalField> expect(Q);
    expect.add_term({1, 1}, 1);
    expect.add_term({1}, 2);
    expect.add_term({0, 2}, 4);
    EXPECT_EQ(omega, expect);
    EXPECT_EQ(omega.degree(), 2u);
}

TEST(Casimir, DualBasisFormStraightensToNormalForm) {
    for (const auto* g : {&SL2, &SL3}) EXPECT_EQ(straighten(*g, casimir_dual_basis(*g, Q)), casimir(*g, Q));
}

TEST(Casimir, IsCentral) {
    for (const auto* g : {&SL2, &SL3}) {
        auto omega = casimir(*g, Q);
        for (std::size_t k = 0; k < g->dim(); ++k) {
            auto gen = UEAElement<RationalField>::generator(Q, k);
            auto comm = gen * omega;
            comm.add(omega * gen, -1);
            EXPECT_TRUE(straighten(*g, comm).is_zero()) << k;
        }
    }
}

TEST(Casimir, CommutesInTheModule) {
    Rng rng(11);
    for (const auto* g : {&SL2, &SL3}) {
        std::vector<mpq_class> lambda;
        for (std::size_t i = 0; i < g->rank(); ++i) lambda.push_back(random_scalar(Q, rng));
        VermaModule<RationalField> m(*g, Q, lambda);
        auto omega = casimir(*g, Q);
        auto act_omega = [&](const ModuleVector<RationalField>& v) {
            ModuleVector<RationalField> out;
            for (const auto& [w, c] : omega.terms()) out = combine(out, m.act_word(w, v), c);
            return out;
        };
        const mpq_class chi = central_character_value(m, omega);
        for (int t = 0; t < 3; ++t) {
            auto v = random_vector(rng, g->num_positive_roots(), g->r() == 2 ? 5 : 2);
            auto ov = act_omega(v);
            EXPECT_EQ(ov, combine({}, v, chi));
            for (std::size_t k = 0; k < g->dim(); ++k) EXPECT_EQ(act_omega(m.act(k, v)), m.act(k, ov));
        }
    }
}

TEST(CentralCharacter, Sl2Values) {
    auto omega = casimir(SL2, Q);
    EXPECT_EQ(central_character_value(SL2, Q, omega, {half()}), mpq_class(5, 4));
    EXPECT_EQ(central_character_value(SL2, Q, omega, {mpq_class(0)}), 0);
    EXPECT_EQ(central_character_value(SL2, Q, omega, {mpq_class(-5, 2)}), mpq_class(5, 4));
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        mpq_class l = random_scalar(Q, rng);
        EXPECT_EQ(central_character_value(SL2, Q, omega, {l}), l * l + 2 * l);
    }
}

TEST(CentralCharacter, Sl3LinkageClasses) {
    auto omega = casimir(SL3, Q);
    std::vector<mpq_class> lambda{half(), mpq_class(1, 3)};
    auto orbit = weyl_dot_orbit(SL3, Q, lambda);
    EXPECT_EQ(orbit.size(), 6u);
    const auto chi = central_character_value(SL3, Q, omega, lambda);
    for (const auto& w : orbit) EXPECT_EQ(central_character_value(SL3, Q, omega, w), chi);
    EXPECT_TRUE(is_weyl_linked(SL3, Q, lambda, orbit.back()));
    // -2 rho is the dot image of 0 under the longest element.
    EXPECT_TRUE(is_weyl_linked(SL3, Q, {0, 0}, {-2, -2}));
    EXPECT_FALSE(is_weyl_linked(SL3, Q, lambda, {mpq_class(1, 3), half()}));
    EXPECT_NE(central_character_value(SL3, Q, omega, {mpq_class(1, 5), 0}), chi);
}

TEST(NearScalar, Sl2OrderedAndReorderedCasimir) {
    for (std::size_t n : {4, 8}) {
        auto t = build_truncation(SL2, Q, {half()}, n);
        const mpq_class chi(5, 4);
        auto ordered = check_near_scalar(t, casimir(SL2, Q), chi);
        EXPECT_EQ(ordered.deviation.numerator, 0u);
        EXPECT_TRUE(ordered.pass);

        UEAElement<RationalField> reordered(Q);
        reordered.add_term({1, 1}, 1);
        reordered.add_term({1}, -2);
        reordered.add_term({2, 0}, 4);
        EXPECT_EQ(straighten(SL2, reordered), casimir(SL2, Q));
        auto r = check_near_scalar(t, reordered, chi);
        EXPECT_GT(r.deviation.numerator, 0u);
        EXPECT_EQ(r.bound, 3 * frac(2, static_cast<long>(n)));
        EXPECT_TRUE(r.pass);
    }
}

TEST(NearScalar, Sl3Casimir) {
    auto t = build_truncation(SL3, Q, {half(), mpq_class(1, 3)}, 4);
    auto omega = casimir(SL3, Q);
    auto r = check_near_scalar(t, omega, central_character_value(SL3, Q, omega, t.lambda));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.degree, 2u);
}

TEST(Separation, Sl2Verdicts) {
    auto a = build_truncation(SL2, Q, {half()}, 16);
    auto b = build_truncation(SL2, Q, {mpq_class(1, 3)}, 16);
    auto r = separation_certificate(a, b);
    EXPECT_EQ(r.verdict, Verdict::Certified);
    EXPECT_EQ(r.chi_lambda, "5/4");
    EXPECT_EQ(r.chi_mu, "7/9");
    EXPECT_EQ(r.central_gap.str(), "1");
    EXPECT_EQ(r.required, mpq_class(1, 4));
    EXPECT_EQ(r.strict_bound, mpq_class(1, 24));

    auto linked = build_truncation(SL2, Q, {mpq_class(-5, 2)}, 16);
    EXPECT_EQ(separation_certificate(a, linked).verdict, Verdict::Inconclusive);
    EXPECT_EQ(separation_certificate(a, a).verdict, Verdict::Inconclusive);
    EXPECT_THROW(separation_certificate(a, build_truncation(SL2, Q, {half()}, 8)), dimension_mismatch);
}

TEST(RepDistance, Sl2Verdicts) {
    auto t = build_truncation(SL2, Q, {half()}, 6);
    auto r = rep_distance_certificate(t, direct_sum_rep(Q, {3, 2}));
    EXPECT_EQ(r.kernel_dim, 0u);
    EXPECT_EQ(r.verdict, Verdict::Certified);
    EXPECT_TRUE(r.bound_vacuous);
    EXPECT_EQ(r.flex_bound, mpq_class(1, 6) * (1 - 4 * mpq_class(1, 3)));

    auto trivial = rep_distance_certificate(t, direct_sum_rep(Q, std::vector<std::size_t>(7, 0)));
    EXPECT_EQ(trivial.kernel_dim, 0u);
    EXPECT_EQ(trivial.verdict, Verdict::Certified);

    auto dominant = build_truncation(SL2, Q, {mpq_class(3)}, 6);
    EXPECT_EQ(rep_distance_certificate(dominant, direct_sum_rep(Q, {3, 2})).verdict, Verdict::Inconclusive);

    EXPECT_THROW(rep_distance_certificate(t, direct_sum_rep(Q, {1})), domain_error);
    EXPECT_THROW(rep_distance_certificate(t, direct_sum_rep(Q, {14})), domain_error);
    EXPECT_NO_THROW(rep_distance_certificate(t, direct_sum_rep(Q, {13})));
}

TEST(WeylTwist, InvolutionAndSelfDuality) {
    auto t = build_truncation(SL2, Q, {half()}, 5);
    auto twice = weyl_twist(weyl_twist(t.rep));
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(twice.image(k), t.rep.image(k));
    EXPECT_THROW(weyl_twist(adjoint_rep(Q, SL3)), domain_error);

    // lambda = d: the first d+1 coordinates carry L(d), which the twist fixes up to isomorphism.
    for (std::size_t d : {1, 2, 3}) {
        auto block = corner(build_truncation(SL2, Q, {mpq_class(d)}, 5).rep, d + 1);
        EXPECT_EQ(pointwise_defect(block).pointwise.str(), "0");
        auto j = intertwiner(weyl_twist(block), block);
        ASSERT_TRUE(j.has_value());
        EXPECT_EQ(map_distance(conjugate(weyl_twist(block), *j, inverse(*j)), block, DistanceMode::Flexible)
                      .basis_max.str(),
                  "0");
    }

    auto report = weyl_twist_report(t.rep, 3, 1);
    EXPECT_EQ(report.samples.size(), 5u);
    for (const auto& s : report.samples) EXPECT_FALSE(s.distance < report.minimum);
}
