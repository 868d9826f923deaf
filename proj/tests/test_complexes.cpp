#include <gtest/gtest.h>

#include <etakit/etakit.hpp>

using namespace etakit;

namespace {

const Integers Z;

std::vector<BigInt> divisors_at(const CohomologyReport<Integers>& H, int n) { return H.at(n).divisors(); }

Mat<Integers> m1(std::int64_t x) { return mat::scalar(Z, 1, BigInt(x)); }

}  // namespace

TEST(Complexes, Validate) {
    EXPECT_TRUE(validate(Z, two_term(Z, BigInt(3))).ok);
    EXPECT_TRUE(validate(Z, CochainComplex<Integers>{}).ok);
    CochainComplex<Integers> bad{0, {1, 1, 1}, {m1(1), m1(1)}};
    const auto v = validate(Z, bad);
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.degree, 0);
    EXPECT_THROW(make_complex(Z, 0, {1, 1, 1}, {m1(1), m1(1)}), Error);
}

TEST(Complexes, TwoTermCohomology) {
    const auto H = cohomology(Z, two_term(Z, BigInt(5)));
    EXPECT_TRUE(H.at(0).is_zero());
    EXPECT_EQ(divisors_at(H, 1), std::vector<BigInt>{5});
    const auto H0 = cohomology(Z, two_term(Z, BigInt(0)));
    EXPECT_EQ(H0.at(0).free_rank(), 1u);
    EXPECT_EQ(H0.at(1).free_rank(), 1u);
}

TEST(Complexes, KoszulRegularSequence) {
    const auto K = koszul(Z, std::vector<BigInt>{2, 3});
    EXPECT_EQ(K.ranks, (std::vector<std::size_t>{1, 2, 1}));
    EXPECT_TRUE(cohomology(Z, K).acyclic());
    const auto K2 = koszul(Z, std::vector<BigInt>{2, 4});
    EXPECT_EQ(divisors_at(cohomology(Z, K2), 2), std::vector<BigInt>{2});
}

TEST(Complexes, TensorOfTwoTerms) {
    const auto T = tensor_product(Z, two_term(Z, BigInt(2)), two_term(Z, BigInt(3)));
    EXPECT_EQ(T.ranks, (std::vector<std::size_t>{1, 2, 1}));
    ASSERT_TRUE(validate(Z, T).ok);
    const auto& d0 = T.d[0];
    const auto& d1 = T.d[1];
    EXPECT_EQ(d0(0, 0), BigInt(2));
    EXPECT_EQ(d0(1, 0), BigInt(3));
    EXPECT_EQ(d1(0, 0), BigInt(-3));
    EXPECT_EQ(d1(0, 1), BigInt(2));
}

TEST(Complexes, ReductionModF) {
    const auto M = reduce_mod(Z, two_term(Z, BigInt(4)), BigInt(2));
    const auto H = cohomology(Z, M);
    EXPECT_EQ(divisors_at(H, 0), std::vector<BigInt>{2});
    EXPECT_EQ(divisors_at(H, 1), std::vector<BigInt>{2});

    const Poly<PrimeField> F2q(PrimeField(2), "q");
    const auto q2m1 = Poly<PrimeField>::value_type{1, 0, 1};
    const auto R = tensor_reduce(F2q, two_term(F2q, q2m1), Poly<PrimeField>::value_type{1, 1});
    EXPECT_TRUE(R.d[0](0, 0).empty());
}

TEST(Complexes, Cones) {
    const auto C = two_term(Z, BigInt(3));
    const ChainMap<Integers> id{0, {m1(1), m1(1)}};
    EXPECT_TRUE(cohomology(Z, cone(Z, C, C, id)).acyclic());

    // Z --2--> Z in degree 0 complexes: cone is [Z --2--> Z] in degrees -1, 0
    CochainComplex<Integers> X{0, {1}, {}}, Y{0, {1}, {}};
    const auto K = cone(Z, X, Y, ChainMap<Integers>{0, {m1(2)}});
    EXPECT_EQ(divisors_at(cohomology(Z, K), 0), std::vector<BigInt>{2});

    CochainComplex<Integers> zero{0, {0, 0}, {mat::zero(Z, 0, 0)}};
    const auto K2 = cone(Z, zero, C, ChainMap<Integers>{0, {mat::zero(Z, 1, 0), mat::zero(Z, 1, 0)}});
    EXPECT_EQ(divisors_at(cohomology(Z, K2), 1), std::vector<BigInt>{3});
}

TEST(Complexes, QuasiIsoModes) {
    const auto C = two_term(Z, BigInt(3));
    const ChainMap<Integers> id{0, {m1(1), m1(1)}};
    EXPECT_TRUE(quasi_iso_exact(Z, C, C, id).quasi_iso);

    const auto P = two_term(Z, BigInt(2));
    CochainComplex<Integers> zero{0, {0, 0}, {mat::zero(Z, 0, 0)}};
    const auto v = quasi_iso_exact(Z, P, zero, ChainMap<Integers>{0, {mat::zero(Z, 0, 1), mat::zero(Z, 0, 1)}});
    EXPECT_FALSE(v.quasi_iso);

    const FpTower A(PrimeField(2), 2, 1);
    const auto J = two_term(A, A.from_poly({1, 1, 1}));
    CochainComplex<FpTower> Azero{0, {0, 0}, {mat::zero(A, 0, 0)}};
    const ModuleMap<FpTower> f{0, {mat::zero(A, 0, 1), mat::zero(A, 0, 1)}};
    const auto w = quasi_iso_junk(A, as_module_complex(A, J), as_module_complex(A, Azero), f, 1, 8);
    EXPECT_TRUE(w.quasi_iso);
    ASSERT_EQ(w.witness.size(), 1u);
    EXPECT_EQ(w.witness[0].divisors, std::vector<std::string>{"q_1^2 + q_1 + 1"});
    EXPECT_TRUE(w.witness[0].junk_only);
}

TEST(Decalage, TwoTermExamples) {
    for (std::int64_t p : {2, 3}) {
        const auto E = eta(Z, two_term(Z, BigInt(p)), BigInt(p));
        EXPECT_EQ(abs(E.complex.d[0](0, 0)), BigInt(1));
        EXPECT_EQ(abs(E.inclusion.comps[1](0, 0)), BigInt(p));
        EXPECT_TRUE(cohomology(Z, E.complex).acyclic());

        const auto E2 = eta(Z, two_term(Z, BigInt(p * p)), BigInt(p));
        EXPECT_EQ(abs(E2.complex.d[0](0, 0)), BigInt(p));
        EXPECT_EQ(divisors_at(cohomology(Z, E2.complex), 1), std::vector<BigInt>{p});
    }
    const auto N = two_term(Z, BigInt(12));
    const auto E1 = eta(Z, N, BigInt(1));
    EXPECT_EQ(E1.complex.d, N.d);
    EXPECT_THROW(eta(Z, N, BigInt(0)), DomainError);
}

TEST(Decalage, LocalizationCertificate) {
    const auto N = two_term(Z, BigInt(3));
    const auto E = eta(Z, N, BigInt(3));
    const auto v = eta_nat_check(Z, N, E, BigInt(3));
    EXPECT_TRUE(v.ok);
    EXPECT_EQ(v.divisors, std::vector<std::string>{"3"});
    const auto u = eta_nat_check(Z, N, eta(Z, N, BigInt(-1)), BigInt(-1));
    EXPECT_TRUE(u.ok && u.divisors.empty());
}

TEST(Decalage, Bockstein) {
    const auto B = bockstein(Z, two_term(Z, BigInt(2)), BigInt(2));
    ASSERT_EQ(B.matrices.size(), 1u);
    EXPECT_EQ(abs(B.matrices[0](0, 0)), BigInt(1));
    const auto B2 = bockstein(Z, two_term(Z, BigInt(4)), BigInt(2));
    EXPECT_TRUE(mat::is_zero(Z, B2.matrices[0]));
    const auto B0 = bockstein(Z, two_term(Z, BigInt(0)), BigInt(5));
    EXPECT_TRUE(mat::is_zero(Z, B0.matrices[0]));

    for (std::int64_t c : {2, 4, 0, 6}) EXPECT_TRUE(eta_bockstein_compare(Z, two_term(Z, BigInt(c)), BigInt(2)).quasi_iso);
    EXPECT_TRUE(eta_bockstein_compare(Z, two_term(Z, BigInt(4)), BigInt(1)).quasi_iso);
}

TEST(Decalage, Multiplicativity) {
    const auto N = two_term(Z, BigInt(12));
    const auto E6 = eta(Z, N, BigInt(6));
    EXPECT_EQ(abs(E6.complex.d[0](0, 0)), BigInt(2));
    const auto r = eta_identities(Z, N, BigInt(2), BigInt(3));
    EXPECT_TRUE(r.composition);
    EXPECT_TRUE(r.base_change);

    const auto P = two_term(Z, BigInt(4));
    const auto s = eta_identities(Z, P, BigInt(2), BigInt(2));
    EXPECT_TRUE(s.composition);
    ASSERT_TRUE(s.base_change_skip);
    EXPECT_TRUE(cohomology(Z, eta(Z, P, BigInt(4)).complex).acyclic());

    const auto t = eta_identities(Z, N, BigInt(5), BigInt(1));
    EXPECT_TRUE(t.composition && t.base_change);
}

TEST(Decalage, PolynomialRing) {
    const FpTower A(PrimeField(3), 3, 1);
    const auto N = two_term(A, A.binomial(2));
    const auto E = eta(A, N, A.mu());
    EXPECT_TRUE(eta_nat_check(A, N, E, A.mu()).ok);
    EXPECT_TRUE(eta_bockstein_compare(A, N, A.mu()).quasi_iso);
}

TEST(Diagonal, ExactModeMatchesFieldMode) {
    const ZTower A(Integers{}, 2, 1);
    const auto N = two_term(A, A.binomial(3));
    const auto E = eta_diagonal(A, N, A.mu());
    const auto H = cohomology_diagonal(A, E.complex);
    ASSERT_EQ(H.size(), 2u);
    ASSERT_EQ(H[1].divisors.size(), 1u);
    EXPECT_EQ(A.to_string(H[1].divisors[0]), "q_1^2 + q_1 + 1");

    const auto Hq = cohomology_diagonal(A, two_term(A, A.q_int(2)));
    EXPECT_EQ(Hq[1].divisors.size(), 1u);
    EXPECT_TRUE(cohomology_diagonal(A, two_term(A, A.q_int(-1)))[1].is_zero());
}

TEST(Corpus, Reproducible) {
    CorpusParams P;
    P.cases = 25;
    const auto a = corpus_generate(CorpusKind::random_free_z, P, 11);
    const auto b = corpus_generate(CorpusKind::random_free_z, P, 11);
    ASSERT_EQ(a.size(), 25u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].ranks, b[i].ranks);
        EXPECT_EQ(a[i].d, b[i].d);
        EXPECT_TRUE(validate(Z, a[i]).ok);
        EXPECT_GE(a[i].lo, 0);
        EXPECT_LE(a[i].hi(), 3);
        for (auto r : a[i].ranks) EXPECT_LE(r, 5u);
    }
    const auto pw = corpus_generate(CorpusKind::two_term_p_power, P, 0);
    ASSERT_EQ(pw.size(), 7u);
    EXPECT_EQ(pw[6].d[0](0, 0), BigInt(64));
    EXPECT_EQ(corpus_kind("random-free-ℤ"), CorpusKind::random_free_z);
    EXPECT_THROW(corpus_kind("nope"), InputError);
}

TEST(Corpus, NontrivialTorsionOccurs) {
    CorpusParams P;
    const auto all = corpus_generate(CorpusKind::random_free_z, P, 7);
    std::size_t with_torsion = 0;
    for (const auto& C : all) {
        const auto H = cohomology(Z, C);
        for (int n = H.lo; n <= H.hi(); ++n)
            if (!H.at(n).divisors().empty()) {
                ++with_torsion;
                break;
            }
    }
    EXPECT_GT(with_torsion, all.size() / 2);
}
