#include <gtest/gtest.h>

#include <etakit/etakit.hpp>

#include "oracles.hpp"

using namespace etakit;

namespace {

const BlockVerdict& find_block(const GradedVerdict& v, const std::string& label) {
    for (const auto& b : v.blocks)
        if (b.label == label) return b;
    throw std::runtime_error("no block " + label);
}

}  // namespace

TEST(QdR, OneDimensionalCohomologyOverZ) {
    const QdR<Integers> Q(ZTower(Integers{}, 2, 0), 1, 2);
    const auto H = graded_cohomology<Integers>(Q);
    ASSERT_EQ(H.size(), 5u);
    std::size_t free = 0;
    std::vector<std::string> torsion;
    for (const auto& [w, groups] : H) {
        free += groups[1].free_rank;
        for (const auto& d : groups[1].divisors) torsion.push_back(d);
        EXPECT_TRUE(groups[0].is_zero() || w[0] == 0);
    }
    EXPECT_EQ(free, 1u);
    EXPECT_EQ(torsion, (std::vector<std::string>{"q_0 + 1", "q_0 + 1"}));
}

TEST(QdR, UnitKoszulBlockIsAcyclic) {
    const QdR<PrimeField> Q(FpTower(PrimeField(3), 3, 0), 2, 2);
    const auto& A = Q.ring();
    EXPECT_TRUE(cohomology(A, Q.block({1, 1})).acyclic());
    EXPECT_THROW(Q.block({3, 0}), BandOverflow);
    EXPECT_THROW(Q.block({1}), DomainError);
}

TEST(TorusKoszul, FractionalBlock) {
    const TorusKoszul<PrimeField> T(FpTower(PrimeField(2), 2, 1), 1, 3);
    EXPECT_EQ(T.denominator(), 2);
    EXPECT_EQ(T.weight_string({1}), "1/2");
    const auto B = T.block({1});
    EXPECT_EQ(B.d[0](0, 0), T.ring().binomial(1));
    const auto Z0 = T.block({0});
    EXPECT_TRUE(mat::is_zero(T.ring(), Z0.d[0]));
    const TorusKoszul<PrimeField> T0(FpTower(PrimeField(2), 2, 0), 1, 3);
    for (const auto& J : T0.weights()) EXPECT_TRUE(T0.integral(J));
}

TEST(Compare, EtaMuAgainstQdR) {
    const TorusKoszul<PrimeField> T(FpTower(PrimeField(2), 2, 1), 1, 3);
    const auto v = compare_eta_qdr(T, 1, 8);
    EXPECT_TRUE(v.pass);
    EXPECT_TRUE(find_block(v, "1/2").annihilators.empty());
    EXPECT_EQ(find_block(v, "3/2").annihilators, std::vector<std::string>{oracle::kJunkThreeHalves});
    EXPECT_TRUE(find_block(v, "2").integral);

    // the block of weight 1/2 is acyclic after eta
    const auto& A = T.ring();
    EXPECT_TRUE(cohomology(A, eta(A, T.block({1}), A.mu()).complex).acyclic());
    // integral weight j: eta_mu gives [A --[j]_q--> A]
    const auto E = eta(A, T.block({4}), A.mu());
    EXPECT_EQ(normalize(A, E.complex.d[0](0, 0)), normalize(A, A.q_int(2)));
}

TEST(Compare, ExactModeOneDimensional) {
    const TorusKoszul<Integers> T(ZTower(Integers{}, 2, 1), 1, 3);
    const auto v = compare_eta_qdr(T, 1, 8);
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(find_block(v, "3/2").annihilators, std::vector<std::string>{oracle::kJunkThreeHalves});
    EXPECT_THROW(TorusKoszul<Integers>(ZTower(Integers{}, 2, 1), 2, 3), Unsupported);
}

TEST(Compare, InvertMu) {
    for (std::int64_t p : {2, 3}) {
        const TorusKoszul<PrimeField> T(FpTower(PrimeField(p), p, 1), 1, 2);
        EXPECT_TRUE(invert_mu_check(T).pass);
    }
}

TEST(Frobenius, ChainMapAndOverflow) {
    const QdR<PrimeField> Q(FpTower(PrimeField(2), 2, 0), 1, 2);
    const auto v = frobenius_check<PrimeField>(Q);
    EXPECT_TRUE(v.pass);
    bool overflow = false;
    for (const auto& b : v.blocks)
        if (b.label == "2" && b.note.find("overflow") != std::string::npos) overflow = true;
    EXPECT_TRUE(overflow);
}

TEST(Frobenius, BreuilKisin) {
    for (std::int64_t p : {2, 3}) {
        const QdR<PrimeField> Q(FpTower(PrimeField(p), p, 0), 1, 6);
        EXPECT_TRUE(breuil_kisin_check(Q, 0, 1, 8).pass) << p;
        EXPECT_TRUE(breuil_kisin_check(Q, 1, 1, 8).pass) << p;
    }
    const QdR<PrimeField> small(FpTower(PrimeField(3), 3, 0), 1, 2);
    EXPECT_THROW(breuil_kisin_check(small, 1, 1, 8), BandOverflow);
}

TEST(Specialization, ClassicalDeRham) {
    const QdR<Integers> Q(ZTower(Integers{}, 2, 0), 1, 2);
    for (const auto& [w, C] : specialize_q_to_one(Q)) EXPECT_EQ(C.d[0](0, 0), BigInt(w[0]));
    EXPECT_TRUE(q_to_one_check(Q).pass);
    EXPECT_TRUE(q_to_one_check(QdR<Integers>(ZTower(Integers{}, 3, 1), 2, 3)).pass);

    const QdR<PrimeField> F(FpTower(PrimeField(2), 2, 0), 1, 2);
    const PrimeField F2(2);
    std::size_t dim = 0;
    for (const auto& [w, C] : specialize_q_to_one(F)) {
        const auto H = cohomology(F2, C);
        dim += H.at(1).free_rank();
    }
    EXPECT_EQ(dim, oracle::kClassicalH1DimP2B2);
}
