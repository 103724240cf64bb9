#pragma once

#include "polarpo/path.hpp"
#include "polarpo/poly.hpp"

#include <cstdint>
#include <vector>

namespace polarpo {

inline constexpr int kDomGridPoints = 257;

// A grid value below this certifies a true sign change: the doubles come from at
// most 12 steps of the Z recursion on [0,1], where each step at most doubles the
// accumulated error and adds one rounding, so |computed - exact| < 2^13 * 2^-52
// < 1e-12 per value and < 2e-12 for a difference -- three orders of magnitude
// inside the threshold.
inline constexpr double kDomGridRejectTol = -1e-9;

// Above this length one all-paths family of squared polynomials costs several
// gigabytes of coefficients; batch builders skip the generic certificates there
// and flag their output partial.
inline constexpr int kGenericLengthCap = 10;

// Scaled-Bernstein coefficient vectors for the Z-polynomials of *every* path of a
// fixed length, built once and compared pairwise.  Deciding a whole length-n layer
// pair-by-pair through RatPoly subtraction would redo the shared prefix work 2^n
// times; building the layer as one tree reuses every intermediate composite.
struct Family {
    int n = 0;       // width of the path index: vec.size() == 2^n
    int order = 0;   // Bernstein order of every vector
    // Indexed by pack_path() of the step string.
    std::vector<IntVec> vec;
    // Double approximations on chebyshev_grid(grid_points), used only to
    // *reject* dominance candidates (see kDomGridRejectTol).
    std::vector<std::vector<double>> grid;
};

// Z_path for all length-n paths (seed x).
Family z_family(int n, int grid_points = kDomGridPoints);

// Z_{1.path}(x) = Z_path(x^2) for all length-n paths (seed x^2).  Same indexing by
// the n-bit suffix; the leading 1 is baked into the seed.
Family z_family_prefix1(int n, int grid_points = kDomGridPoints);

// Apply one more transform step to every member: bit 1 appends a square step
// (Z_{path.1}), bit 0 appends the complement-square step (Z_{path.0}).
Family extend_by_bit(const Family& base, uint8_t bit);

struct DomStats {
    uint64_t pairs = 0;            // ordered pairs examined
    uint64_t grid_rejected = 0;    // settled negative by the float grid
    uint64_t componentwise = 0;    // settled nonneg by coefficient comparison
    uint64_t escalated = 0;        // needed the full nonneg decision on the difference
    uint64_t escalated_nonneg = 0; // ... of which came back nonnegative
};

// out[i * B.vec.size() + j] = 1 iff poly(A_i) - poly(B_j) >= 0 on all of [0,1],
// decided exactly.  A.order must equal B.order.  When &A == &B the diagonal is
// set without work.  grid_tol must be <= 0: the grid only ever rejects, so any
// nonpositive value keeps the stored verdicts exact.
std::vector<uint8_t> dominance(const Family& A, const Family& B, DomStats* stats = nullptr,
                               double grid_tol = kDomGridRejectTol);

// Shared evaluation grid: points (1 - cos(pi*j/(points-1)))/2, clustered toward
// the endpoints where the Z differences pinch to zero.
std::vector<double> chebyshev_grid(int points);

} // namespace polarpo
