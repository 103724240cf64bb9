#pragma once
// Beta-expansion path weights and the exact feasibility analysis they induce.
// Every derived ordering "worse comes before better" constrains the design
// parameter beta through B(better) - B(worse) >= 0, a polynomial with
// coefficients in {-1, 0, 1}.  The routines here isolate the real roots of
// those constraints with exact rational enclosures and intersect the feasible
// sets across a whole relation database.

#include <cstdint>
#include <optional>
#include <vector>

#include "polarpo/path.hpp"
#include "polarpo/podb.hpp"
#include "polarpo/poly.hpp"

namespace polarpo {

// B(alpha) = sum_i beta^(n-i) alpha_i: the first path bit carries the highest
// power of beta.
Rat beta_weight(const Path& alpha, const Rat& beta);
double beta_weight_d(const Path& alpha, double beta);

// Coefficients of B(better) - B(worse), ascending by degree, trailing zeros
// trimmed.  Entries lie in {-1, 0, 1}; the zero polynomial comes back as an
// empty vector (the two paths weigh the same for every beta).
std::vector<int> beta_constraint(const Path& worse, const Path& better);

// One real endpoint of a feasible interval, pinned between exact rationals
// with lo <= r <= hi.  lo == hi exactly when the endpoint is rational; the
// enclosure is otherwise narrower than 2^-60, so approx carries the full
// precision of a double midpoint.
struct BetaEndpoint {
    Rat lo, hi;
    double approx = 0.0;
};

// A maximal run of feasible beta.  A missing lo means the run starts at 0
// (exclusive: only beta > 0 is considered); a missing hi means it is
// unbounded above.  Finite endpoints are roots of the constraint and are
// themselves feasible, so runs are closed where they are finite.  lo == hi
// yields an isolated feasible point.
struct BetaInterval {
    std::optional<BetaEndpoint> lo;
    std::optional<BetaEndpoint> hi;
};

// Exact feasible set {beta > 0 : B(better) >= B(worse)} as disjoint maximal
// intervals in increasing order.  Empty result means no positive beta ranks
// the pair this way.
std::vector<BetaInterval> feasible_interval(const Path& worse, const Path& better);

struct BetaWindow {
    std::optional<BetaInterval> around_one;  // component containing beta = 1
    std::vector<BetaInterval> full;          // the entire feasible set
    uint64_t constraints = 0;                // distinct nonzero constraint polynomials
    uint64_t binding = 0;                    // constraints intersected exactly; the rest were
                                             // certified nonnegative across the running window
};

// Intersection of the feasible sets over every stored pair carrying the given
// relation kind.  Throws std::invalid_argument if the database holds no pair
// of that kind.
BetaWindow feasible_window(const PoDb& db, uint8_t kind);

}  // namespace polarpo
