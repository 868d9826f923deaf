#include <gtest/gtest.h>

#include <etakit/etakit.hpp>

#include "oracles.hpp"

using namespace etakit;

namespace {

template <class R>
typename R::value_type poly_of(const R& ring, std::vector<std::int64_t> c) {
    typename R::value_type out;
    for (auto x : c) out.push_back(ring.base().from_int(x));
    poly::trim(ring.base(), out);
    return out;
}

}  // namespace

TEST(ScalarRings, IntegersModArithmetic) {
    const IntegersMod Z14(14);
    EXPECT_EQ(Z14.mul(3, 5), BigInt(1));
    EXPECT_TRUE(Z14.is_unit(3));
    EXPECT_FALSE(Z14.is_unit(7));
}

TEST(ScalarRings, PrimeFieldInverse) {
    const PrimeField F7(7);
    for (std::int64_t a = 1; a < 7; ++a) EXPECT_EQ(F7.mul(a, F7.inv(a)), 1);
    EXPECT_THROW(PrimeField(6), DomainError);
}

TEST(Polynomials, QIntegerByDivision) {
    const Poly<Integers> Zq(Integers{}, "q");
    const auto num = poly_of(Zq, {-1, 0, 0, 1});
    const auto den = poly_of(Zq, {-1, 1});
    const auto quo = Zq.try_divide(num, den);
    ASSERT_TRUE(quo);
    EXPECT_EQ(Zq.to_string(*quo), "q^2 + q + 1");
    EXPECT_FALSE(Zq.try_divide(poly_of(Zq, {-1, 0, 1}), num));
}

TEST(Polynomials, GcdOfBinomials) {
    const Poly<Rationals> Qq(Rationals{}, "q");
    const auto g = normalize(Qq, ring_gcd(Qq, poly_of(Qq, {-1, 0, 0, 0, 1}), poly_of(Qq, {-1, 0, 0, 0, 0, 0, 1})));
    EXPECT_EQ(Qq.to_string(g), oracle::kGcdQ4Q6);
    const auto a = poly_of(Qq, {2, 3});
    EXPECT_EQ(normalize(Qq, ring_gcd(Qq, a, Qq.zero())), normalize(Qq, a));
}

TEST(Polynomials, GcdOverF2) {
    const Poly<PrimeField> F2q(PrimeField(2), "q");
    const auto a = poly_of(F2q, {1, 1});
    EXPECT_EQ(F2q.to_string(ring_gcd(F2q, a, F2q.mul(a, poly_of(F2q, {1, 1})))), "q + 1");
}

TEST(Polynomials, QIntegersModP) {
    for (std::int64_t p : {2, 3, 5}) {
        const FpTower A(PrimeField(p), p, 0);
        for (int j = 2; j <= 4; ++j) {
            const auto s = Poly<PrimeField>(PrimeField(p), "q").to_string(A.q_int(j).coeffs);
            EXPECT_EQ(s, oracle::kQIntegers[static_cast<std::size_t>(j - 2)]) << "p=" << p << " j=" << j;
        }
    }
    const FpTower A(PrimeField(2), 2, 0);
    EXPECT_EQ(A.q_int(2), A.binomial(1));
}

TEST(Tower, LevelEmbedding) {
    const ZTower A1(Integers{}, 2, 1);
    const auto q1 = A1.qk();
    EXPECT_EQ(A1.to_string(A1.mul(A1.add(q1, A1.one()), A1.sub(q1, A1.one()))), "q_1^2 - 1");
    const ZTower A0(Integers{}, 2, 0);
    EXPECT_EQ(A1.to_string(A1.add(A0.embed(A0.qk(), 1), q1)), "q_1^2 + q_1");
    EXPECT_EQ(A1.frobenius(q1), A1.monomial(2, 1));
}

TEST(Tower, DistinguishedElements) {
    for (std::int64_t p : {2, 3, 5}) {
        for (int k = 1; k <= 3; ++k) {
            const ZTower A(Integers{}, p, k);
            for (int r = 0; r <= k; ++r) {
                EXPECT_EQ(A.mul(A.xi_r(r), A.phi_inv_mu(r)), A.mu());
                auto prod = A.one();
                for (int i = 0; i < r; ++i) prod = A.mul(prod, A.phi_inv_xi(i));
                EXPECT_EQ(prod, A.xi_r(r));
                EXPECT_EQ(A.evaluate_at_one(A.xi_r(r)), BigInt(ipow(p, static_cast<unsigned>(r))));
            }
            EXPECT_EQ(A.mul(A.frobenius(A.xi()), A.mu()), A.frobenius(A.mu()));
        }
    }
    const ZTower A2(Integers{}, 2, 2);
    EXPECT_EQ(A2.to_string(A2.phi_inv_mu(1)), "q_2^2 - 1");
    EXPECT_EQ(A2.to_string(A2.phi_inv_mu(2)), "q_2 - 1");
    EXPECT_EQ(ZTower(Integers{}, 3, 1).to_string(ZTower(Integers{}, 3, 1).xi()), "q_1^2 + q_1 + 1");
    EXPECT_THROW(ZTower(Integers{}, 2, 1).xi_r(2), DomainError);
}

TEST(Tower, UnitInTruncation) {
    const FpTower A(PrimeField(2), 2, 1);
    EXPECT_TRUE(unit_in_truncation(A, A.q_int(3), 1, 8));
    EXPECT_FALSE(unit_in_truncation(A, A.binomial(1), 1, 8));
    EXPECT_TRUE(unit_in_truncation(A, A.one(), 1, 1));
    const auto h = A.q_int(2);
    EXPECT_FALSE(unit_in_truncation(A, h, 1, 1));
    EXPECT_FALSE(unit_in_truncation(A, h, 4, 64));
}

TEST(Tower, Specialization) {
    const ZTower A(Integers{}, 3, 1);
    for (std::int64_t j = -4; j <= 4; ++j) EXPECT_EQ(A.specialize(A.q_int(j), 1), BigInt(j));
    EXPECT_EQ(A.specialize(A.mu(), 1), BigInt(0));
    EXPECT_EQ(A.specialize(A.xi(), 1), BigInt(3));
}

TEST(Tower, CyclotomicFactor) {
    EXPECT_EQ(cyclotomic(6), (std::vector<BigInt>{1, -1, 1}));
    const ZTower A(Integers{}, 2, 0);
    EXPECT_TRUE(cyclotomic_divides(A.q_int(2), A.q_int(4)));
    EXPECT_FALSE(cyclotomic_divides(A.q_int(3), A.q_int(4)));
}

TEST(Smith, IntegerOracle) {
    const Integers Z;
    Mat<Integers> A(2, 2, Z.zero());
    A(0, 0) = 2, A(0, 1) = 4, A(1, 0) = 6, A(1, 1) = 8;
    const auto S = smith_form(Z, A);
    ASSERT_EQ(S.rank, 2u);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(abs(S.diag[i]), BigInt(oracle::kSmith2468[i]));
    EXPECT_EQ(mat::mul(Z, mat::mul(Z, S.U, A), S.V), S.D);
    EXPECT_EQ(mat::mul(Z, S.U, S.Uinv), mat::identity(Z, 2));
}

TEST(Smith, IdentityAndScalar) {
    const Integers Z;
    const auto I = mat::identity(Z, 3);
    EXPECT_EQ(smith_form(Z, I).diag, (std::vector<BigInt>{1, 1, 1}));
    EXPECT_EQ(smith_form(Z, mat::scalar(Z, 1, BigInt(5))).diag, std::vector<BigInt>{5});
}

TEST(Smith, SolveInSubmodule) {
    const Integers Z;
    const auto B = solve_in_submodule(Z, mat::scalar(Z, 1, BigInt(3)), BigInt(9));
    EXPECT_EQ(B(0, 0), BigInt(3));
    EXPECT_EQ(solve_in_submodule(Z, mat::zero(Z, 1, 2), BigInt(9)), mat::identity(Z, 2));

    const Poly<PrimeField> F2q(PrimeField(2), "q");
    const auto qm1 = poly_of(F2q, {1, 1});
    const Mat<Poly<PrimeField>> A = mat::scalar(F2q, 1, qm1);
    const auto Bq = solve_in_submodule(F2q, A, F2q.mul(qm1, qm1));
    EXPECT_EQ(normalize(F2q, Bq(0, 0)), qm1);
}

TEST(Modules, ElementaryDivisorsAndFitting) {
    const Integers Z;
    ModulePresentation<Integers> M{2, mat::zero(Z, 2, 2)};
    M.relations(0, 0) = 3, M.relations(1, 1) = 9;
    auto e = elementary_divisors(Z, M);
    EXPECT_EQ(e.divisors, (std::vector<BigInt>{3, 9}));
    EXPECT_EQ(fitting_ideal(Z, e, 0), BigInt(27));
    EXPECT_EQ(fitting_ideal(Z, e, 1), BigInt(3));
    EXPECT_EQ(fitting_ideal(Z, e, 2), BigInt(1));

    M.relations(0, 0) = 2, M.relations(1, 1) = 3;
    e = elementary_divisors(Z, M);
    EXPECT_EQ(e.divisors, std::vector<BigInt>{6});
    EXPECT_EQ(fitting_ideal(Z, e, 0), BigInt(6));

    ModulePresentation<Integers> F{1, mat::zero(Z, 1, 0)};
    e = elementary_divisors(Z, F);
    EXPECT_EQ(e.free_rank, 1u);
    EXPECT_EQ(fitting_ideal(Z, e, 0), BigInt(0));
    EXPECT_EQ(fitting_ideal(Z, e, 1), BigInt(1));
}

TEST(Modules, PrimePowerSmith) {
    const IntegersMod Z8(8);
    ModulePresentation<IntegersMod> M{2, mat::zero(Z8, 2, 2)};
    M.relations(0, 0) = 2, M.relations(0, 1) = 4, M.relations(1, 0) = 2, M.relations(1, 1) = 8;
    const auto e = elementary_divisors(Z8, 2, M);
    EXPECT_EQ(e.divisors, (std::vector<BigInt>{2, 4}));
}
