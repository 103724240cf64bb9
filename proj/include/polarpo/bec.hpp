#pragma once
// Exact decision of the erasure-channel ordering between equal-length paths:
// alpha is worse than gamma iff Z_alpha(x) >= Z_gamma(x) on all of [0,1].
// Also the closed-form staircase fact (1 - 2^{-2^m})^{2^n} <= 1/2.

#include <optional>
#include <string>

#include "polarpo/path.hpp"
#include "polarpo/poly.hpp"

namespace polarpo {

enum class BecRel { LEQ, GEQ, EQUAL, INCOMPARABLE };

struct BecVerdict {
    BecRel relation = BecRel::INCOMPARABLE;
    // How the winning direction was certified (nonneg method), or for EQUAL
    // the marker "identical-polynomials".
    std::string certificate;
    // Exact counterexamples: a point where Z_alpha - Z_gamma < 0 rules out
    // LEQ; one where it is > 0 rules out GEQ. Both set iff INCOMPARABLE.
    std::optional<Rat> witness_low;
    std::optional<Rat> witness_high;
};

// relation LEQ means alpha ≼ gamma in the erasure order (alpha the worse
// channel, Z_alpha - Z_gamma certified nonnegative on [0,1]).
BecVerdict bec_leq(const Path& alpha, const Path& gamma);

// Truth of (1 - 2^{-2^m})^{2^n} <= 1/2: exact integer comparison when
// 2^m * 2^n <= 2^20, otherwise directed-rounding logarithms at escalating
// precision (256 bits up), falling back to exact integers if the margin ever
// stays inside the rounding slack.
bool staircase_fact(int m, int n);

}  // namespace polarpo
