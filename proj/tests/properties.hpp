#pragma once

#include <cstdint>
#include <string>

namespace iif::props {

struct Outcome {
    int cases = 0;
    int failures = 0;
    /// First failing case, for the log.
    std::string first_failure;

    bool ok() const { return cases > 0 && failures == 0; }
};

inline constexpr int kDefaultCases = 200;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

// (A B) C == A (B C) for random operators of order <= 2.
Outcome ore_associativity(int cases = kDefaultCases, std::uint64_t seed = kDefaultSeed);
// gcrd(Q1 G, Q2 G) is right-divisible by a planted G.
Outcome gcrd_soundness(int cases = kDefaultCases, std::uint64_t seed = kDefaultSeed);
// V -> P V_x + Q V_y - alpha div V is linear.
Outcome residual_linearity(int cases = kDefaultCases, std::uint64_t seed = kDefaultSeed);
// residual(c^n) == n c^(n-1) (P c_x + Q c_y - div c / n) for n = 2 and 3.
Outcome powered_identity(int cases = kDefaultCases, std::uint64_t seed = kDefaultSeed);
// For P odd and Q even in y, an even V leaves only odd powers of y in the residual.
Outcome parity(int cases = kDefaultCases, std::uint64_t seed = kDefaultSeed);

}  // namespace iif::props
