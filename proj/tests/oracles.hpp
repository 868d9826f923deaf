#pragma once

// Values computed outside this library: Witt sums and products by solving
// the ghost equations over Q, Smith forms and gcds with a CAS, and the rest
// by hand from the defining formulas. Do not regenerate these from etakit.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

struct WittCase {
    std::int64_t p;
    std::vector<std::int64_t> x, y, expected;
};

// x + y
inline const std::vector<WittCase> kWittSums{
    {2, {1, 0}, {1, 0}, {2, -1}},
    {3, {2, 1, 3}, {1, 4, 1}, {3, -1, -2104}},
    {5, {1, 2}, {3, 4}, {4, -150}},
};

// x * y
inline const std::vector<WittCase> kWittProducts{
    {3, {2, 1, 3}, {1, 4, 1}, {2, 45, -18267}},
    {2, {1, 1, 1}, {1, 1, 1}, {1, 4, 4}},
};

// ghost(3, 5) at p = 2
inline const std::vector<std::int64_t> kGhost35{3, 19};
// F(3, 5, 7) at p = 2 over Z
inline const std::vector<std::int64_t> kFrobenius357{19, -101};
// F(V(2)) at p = 3, length 1
inline constexpr std::int64_t kFV2 = 6;

// Smith form of [[2, 4], [6, 8]] over Z
inline const std::vector<std::int64_t> kSmith2468{2, 4};

// gcd(q^4 - 1, q^6 - 1) over Z[q], monic
inline const std::string kGcdQ4Q6 = "q^2 - 1";

// [j]_q reduced mod p for j = 2, 3, 4; identical strings for p = 2, 3, 5 as
// coefficients are 0 or 1
inline const std::vector<std::string> kQIntegers{"q + 1", "q^2 + q + 1", "q^3 + q^2 + q + 1"};

// Junk annihilator of the weight 3/2 block at d = 1, k = 1, p = 2
inline const std::string kJunkThreeHalves = "q_1^2 + q_1 + 1";

// Twisted product on the d = 2 torus, second factor of weight (3, 5):
// e_1 * e_2 = q^3 e_12 and e_2 * e_1 = -q^5 e_12
inline constexpr std::int64_t kTwistE1E2 = 3;
inline constexpr std::int64_t kTwistE2E1 = 5;

// dim_{F_2} H^1 of the q = 1 specialization, d = 1, B = 2: weights -2, 0, 2
inline constexpr std::size_t kClassicalH1DimP2B2 = 3;

}  // namespace oracle
