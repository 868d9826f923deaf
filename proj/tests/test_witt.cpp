#include <gtest/gtest.h>

#include <etakit/etakit.hpp>

#include "oracles.hpp"

using namespace etakit;

namespace {

WittVector<Integers> wz(std::int64_t p, const std::vector<std::int64_t>& c) {
    WittVector<Integers> w{p, {}};
    for (auto x : c) w.components.push_back(x);
    return w;
}

}  // namespace

TEST(Witt, SumsAgainstGhostSolving) {
    for (const auto& c : oracle::kWittSums) {
        const WittRing<Integers> W(Integers{}, c.p);
        EXPECT_EQ(W.add(wz(c.p, c.x), wz(c.p, c.y)), wz(c.p, c.expected)) << "p=" << c.p;
    }
}

TEST(Witt, ProductsAgainstGhostSolving) {
    for (const auto& c : oracle::kWittProducts) {
        const WittRing<Integers> W(Integers{}, c.p);
        EXPECT_EQ(W.mul(wz(c.p, c.x), wz(c.p, c.y)), wz(c.p, c.expected)) << "p=" << c.p;
    }
}

TEST(Witt, GhostAndOperators) {
    const WittRing<Integers> W2(Integers{}, 2);
    const auto g = W2.ghost(wz(2, {3, 5}));
    EXPECT_EQ(g, (std::vector<BigInt>{oracle::kGhost35[0], oracle::kGhost35[1]}));
    EXPECT_EQ(W2.frobenius(wz(2, {3, 5, 7})), wz(2, oracle::kFrobenius357));
    EXPECT_EQ(W2.restriction(wz(2, {3, 5})), wz(2, {3}));
    EXPECT_EQ(W2.teichmuller(3, 3), wz(2, {3, 0, 0}));
    EXPECT_EQ(W2.ghost(W2.teichmuller(3, 3)), (std::vector<BigInt>{3, 9, 81}));
    EXPECT_EQ(W2.add(wz(2, {4, 1}), W2.zero(2)), wz(2, {4, 1}));

    const WittRing<Integers> W3(Integers{}, 3);
    EXPECT_EQ(W3.frobenius(W3.verschiebung(wz(3, {2}))), wz(3, {oracle::kFV2}));
    EXPECT_EQ(W3.mul(W3.teichmuller(2, 3), W3.teichmuller(-5, 3)), W3.teichmuller(-10, 3));
}

TEST(Witt, QuotientRingsAgreeWithIntegers) {
    const IntegersMod Z27(27);
    const WittRing<IntegersMod> W(Z27, 3);
    WittVector<IntegersMod> x{3, {Z27.reduce(2), Z27.reduce(1), Z27.reduce(3)}};
    WittVector<IntegersMod> y{3, {Z27.reduce(1), Z27.reduce(4), Z27.reduce(1)}};
    const auto s = W.add(x, y);
    const auto& want = oracle::kWittSums[1].expected;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.components[i], Z27.reduce(want[i]));
}

TEST(Witt, IdentitySuitesPass) {
    Rng rng(3);
    for (std::int64_t p : {2, 3}) {
        for (int r = 1; r <= 3; ++r) {
            EXPECT_TRUE(witt_identities(Integers{}, p, r, 15, rng).pass()) << "Z p=" << p << " r=" << r;
            EXPECT_TRUE(witt_identities(IntegersMod(BigInt(p * p * p)), p, r, 15, rng).pass());
            EXPECT_TRUE(witt_identities(Poly<PrimeField>(PrimeField(p), "t"), p, r, 10, rng).pass());
        }
    }
}

TEST(Witt, RejectsBadInput) {
    const WittRing<Integers> W(Integers{}, 2);
    EXPECT_THROW(W.add(wz(2, {1}), wz(2, {1, 2})), Error);
    EXPECT_THROW(W.add(wz(2, {1}), wz(3, {1})), Error);
    EXPECT_THROW(W.restriction(wz(2, {1})), Error);
}

TEST(ThetaModel, QuotientTower) {
    for (std::int64_t p : {2, 3}) {
        for (int r = 1; r <= 3; ++r) {
            const ThetaModel<PrimeField> T(PrimeField(p), p, r, r);
            Rng rng(static_cast<std::uint64_t>(p * 10 + r));
            const auto rep = T.verify(10, rng);
            EXPECT_TRUE(rep.pass()) << "p=" << p << " r=" << r;
        }
    }
    EXPECT_THROW(ThetaModel<PrimeField>(PrimeField(2), 2, 1, 2), DomainError);
}
