#pragma once
// Certified enclosures of the Bhattacharyya parameter Z(W^alpha) and of
// T(W^alpha) = 2 P_e(W^alpha) valid for every binary-input memoryless
// symmetric channel, plus the polynomial-dominance provers for the induced
// path orderings. Every bound is rational: square roots are replaced by
// directed-rounded rational enclosures, never evaluated approximately inside
// a proof.

#include <optional>
#include <string>

#include "polarpo/path.hpp"
#include "polarpo/poly.hpp"

namespace polarpo {

struct Interval {
    Rat lo, hi;
    Interval() = default;
    Interval(Rat l, Rat h);  // validates 0 <= lo <= hi <= 1
};

// Rational r with r^2 <= v (resp. >= v); error below 2^-bits.
Rat sqrt_lower(const Rat& v, int bits = 128);
Rat sqrt_upper(const Rat& v, int bits = 128);

// Enclosure of Z(W^alpha) given an enclosure x of Z(W):
// [sqrt(Z_alpha(lo^2)), Z_alpha(hi)], the sqrt rounded down.
Interval z_interval(const Path& alpha, const Interval& x);

// Enclosure of T(W^alpha) given an enclosure t of T(W); intersects the
// per-bit recursion (exact through leading 0-steps), the generic composition
// bounds, the leading-zeros shape bound, and — when an enclosure of Z(W) is
// supplied — the Z-domain bound bridged through 1-sqrt(1-Z^2) <= T <= Z.
Interval t_interval(const Path& alpha, const Interval& t,
                    const std::optional<Interval>& x_hint = std::nullopt);

struct ProofResult {
    bool proven = false;      // false = undecided, never a disproof
    std::string strategy;     // which bound pair was used
    RatPoly residual;         // the certified-nonnegative difference
    std::string certificate;  // nonneg method that verified the residual
};

// Certifies alpha ≼_Z gamma (Z(W^alpha) >= Z(W^gamma) for every channel)
// via nonneg(Z_{1 alpha} - Z_{gamma 1}).
ProofResult prove_Z(const Path& alpha, const Path& gamma);

// Certifies alpha ≼_P gamma (P_e(W^alpha) >= P_e(W^gamma) for every channel).
// Strategy 1: nonneg(Z_{1 alpha} - Z_{gamma 0}). Strategy 2 (gamma = 0^q 1 tau):
// nonneg(Z_alpha - Z_{0^{q+1} tau}). Tried in that order; both residuals kept
// when both succeed (second one appended to strategy).
ProofResult prove_P(const Path& alpha, const Path& gamma);

// Staircase family certificates. Premises decided by bec_leq; EQUAL counts.
// true certifies 0^m 1^n ≼_Z 1^p 0^q (premise 0^m 1^{n-1} vs 1^{p-1} 0^q).
bool theorem1_check(int m, int n, int p, int q);
// true certifies 0^m 1^n ≼_P 1^p 0^q (premise 0^m 1^n vs 1^{p-1} 0^{q+1}).
bool theorem2_check(int m, int n, int p, int q);

// Counting-only sufficient condition certifying gamma ≼ alpha for the given
// kind ('Z' or 'P'). Default renders the log2 threshold through the integer
// chain 2^k + k <= n; real_log switches to the literal real-valued threshold
// n <= 2^{n - 2^k}.
bool corollary_check(const Path& alpha, const Path& gamma, char kind, bool real_log = false);

}  // namespace polarpo
