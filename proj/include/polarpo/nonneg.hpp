#pragma once
// Exact decision of "p(x) >= 0 for all x in [0,1]" for rational polynomials.
//
// Pipeline, cheapest first:
//   1. float scan on a Chebyshev grid — can only *find* negativity; any
//      candidate witness is re-verified in exact arithmetic before use.
//   2. scaled-Bernstein coefficients at the polynomial's own degree — all
//      coefficients >= 0 certifies nonnegativity.
//   3. de Casteljau subdivision — adaptively refines the Bernstein test and
//      detects strictly negative values at interval endpoints.
//   4. Sturm-based recursion on the square-free part — complete decision for
//      the stubborn cases (e.g. interior tangencies like (x-1/3)^2).

#include <optional>
#include <string>

#include "polarpo/poly.hpp"

namespace polarpo {

enum class NonnegStatus { nonneg, negative_somewhere };

struct NonnegResult {
    NonnegStatus status = NonnegStatus::nonneg;
    // Which stage settled it: "zero", "grid-witness", "bernstein-coeffs",
    // "subdivision", "subdivision-witness", "sturm", "sturm-witness".
    std::string method;
    // Populated iff negative_somewhere; witness is in [0,1] and the value is
    // exactly p(witness) < 0 (always re-checked against p before returning).
    std::optional<Rat> witness;
    std::optional<Rat> witness_value;
};

NonnegResult nonneg_on_unit(const RatPoly& p);

// Same decision for a polynomial already held as integer scaled-Bernstein
// coefficients of the given order (as produced by z_bernstein); skips the
// conversion work when the caller has the vector anyway.
NonnegResult nonneg_scaled_bernstein(const IntVec& b, int order);

// Exact quotient/remainder over the rationals; divisor must be nonzero.
void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem);

// Square-free part p / gcd(p, p'), normalized to positive leading coefficient.
RatPoly squarefree_part(const RatPoly& p);

// Number of distinct real roots in the half-open interval (a, b].
int sturm_root_count(const RatPoly& squarefree, const Rat& a, const Rat& b);

}  // namespace polarpo
