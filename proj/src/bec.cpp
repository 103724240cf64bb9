#include "polarpo/bec.hpp"

#include <mpfr.h>

#include <stdexcept>

#include "polarpo/families.hpp"
#include "polarpo/nonneg.hpp"

namespace polarpo {
namespace {

// Exact sign of Z_alpha(x) - Z_gamma(x) at one rational point, by stepping the
// recursion -- O(n) ring operations, no polynomial build.
int exact_sign_at(const Path& alpha, const Path& gamma, const Rat& x) {
    const Rat va = z_eval(alpha, x), vg = z_eval(gamma, x);
    return mpq_cmp(va.q, vg.q);
}

}  // namespace

BecVerdict bec_leq(const Path& alpha, const Path& gamma) {
    if (alpha.size() != gamma.size())
        throw std::invalid_argument("bec order compares equal-length paths only");
    if (alpha.size() > 20)
        throw std::invalid_argument("bec order: path length out of range");
    BecVerdict v;
    if (alpha == gamma) {
        v.relation = BecRel::EQUAL;
        v.certificate = "identical-polynomials";
        return v;
    }

    // Pointwise scan first.  Counterexamples to either direction are cheap at
    // any length this way; only a surviving direction needs the full
    // polynomial.  Float hits are re-confirmed exactly, so no verdict ever
    // rests on rounding.
    std::optional<Rat> low, high;
    for (double x : chebyshev_grid(kDomGridPoints)) {
        if (low && high) break;
        const double d = z_eval_d(alpha, x) - z_eval_d(gamma, x);
        if ((!low && d < kDomGridRejectTol) || (!high && d > -kDomGridRejectTol)) {
            Rat rx;
            mpq_set_d(rx.q, x);  // doubles convert exactly
            const int s = exact_sign_at(alpha, gamma, rx);
            if (s < 0 && !low) low = std::move(rx);
            else if (s > 0 && !high) high = std::move(rx);
        }
    }
    if (low && high) {
        v.relation = BecRel::INCOMPARABLE;
        v.witness_low = std::move(low);
        v.witness_high = std::move(high);
        return v;
    }

    const IntVec za = z_bernstein(alpha), zg = z_bernstein(gamma);
    const int order = int(za.size()) - 1;
    IntVec diff;
    diff.v.resize(za.v.size());
    bool zero = true, allge = true, allle = true;
    for (size_t k = 0; k < za.v.size(); ++k) {
        mpz_sub(diff.v[k].z, za.v[k].z, zg.v[k].z);
        const int s = mpz_sgn(diff.v[k].z);
        if (s != 0) zero = false;
        if (s < 0) allge = false;
        if (s > 0) allle = false;
    }
    if (zero) {
        v.relation = BecRel::EQUAL;
        v.certificate = "identical-polynomials";
        return v;
    }

    if (!low) {
        if (allge) {
            v.relation = BecRel::LEQ;
            v.certificate = "bernstein-componentwise";
            return v;
        }
        NonnegResult r = nonneg_scaled_bernstein(diff, order);
        if (r.status == NonnegStatus::nonneg) {
            v.relation = BecRel::LEQ;
            v.certificate = r.method;
            return v;
        }
        low = r.witness;
    }
    v.witness_low = low;

    if (!high) {
        if (allle) {
            v.relation = BecRel::GEQ;
            v.certificate = "bernstein-componentwise";
            return v;
        }
        for (auto& c : diff.v) mpz_neg(c.z, c.z);
        NonnegResult r = nonneg_scaled_bernstein(diff, order);
        if (r.status == NonnegStatus::nonneg) {
            v.relation = BecRel::GEQ;
            v.certificate = r.method;
            return v;
        }
        high = r.witness;
    }
    v.witness_high = high;
    v.relation = BecRel::INCOMPARABLE;
    return v;
}

bool staircase_fact(int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("staircase exponents must be nonnegative");
    // Exact branch: 2 * (2^{2^m} - 1)^{2^n} <= 2^{2^m * 2^n}.
    auto exact = [](int m_, int n_) {
        unsigned long tm = 1ul << m_, tn = 1ul << n_;
        Int base;
        mpz_set_ui(base.z, 1);
        mpz_mul_2exp(base.z, base.z, tm);
        mpz_sub_ui(base.z, base.z, 1);
        Int lhs;
        mpz_pow_ui(lhs.z, base.z, tn);
        mpz_mul_2exp(lhs.z, lhs.z, 1);
        Int rhs;
        mpz_set_ui(rhs.z, 1);
        mpz_mul_2exp(rhs.z, rhs.z, tm * tn);
        return mpz_cmp(lhs.z, rhs.z) <= 0;
    };
    if (m + n <= 20) return exact(m, n);

    // Directed rounding: decide 2^n * log(1 - 2^{-2^m}) + log 2 <= 0 with a
    // certified enclosure, escalating precision while the sign is pinched.
    for (mpfr_prec_t prec = 256; prec <= 16384; prec *= 2) {
        mpfr_t t, arg, val, l2;
        mpfr_inits2(prec, t, arg, val, l2, static_cast<mpfr_ptr>(nullptr));
        bool decided = false, result = false;
        // upper end of the enclosure
        mpfr_set_ui_2exp(t, 1, -(static_cast<mpfr_exp_t>(1) << m), MPFR_RNDN);  // exact
        mpfr_ui_sub(arg, 1, t, MPFR_RNDU);
        mpfr_log(val, arg, MPFR_RNDU);
        mpfr_mul_2ui(val, val, static_cast<unsigned long>(n), MPFR_RNDU);  // exact shift
        mpfr_const_log2(l2, MPFR_RNDU);
        mpfr_add(val, val, l2, MPFR_RNDU);
        if (mpfr_sgn(val) <= 0) { decided = true; result = true; }
        if (!decided) {
            // lower end
            mpfr_ui_sub(arg, 1, t, MPFR_RNDD);
            mpfr_log(val, arg, MPFR_RNDD);
            mpfr_mul_2ui(val, val, static_cast<unsigned long>(n), MPFR_RNDD);
            mpfr_const_log2(l2, MPFR_RNDD);
            mpfr_add(val, val, l2, MPFR_RNDD);
            if (mpfr_sgn(val) > 0) { decided = true; result = false; }
        }
        mpfr_clears(t, arg, val, l2, static_cast<mpfr_ptr>(nullptr));
        if (decided) return result;
    }
    if (m + n <= 24) return exact(m, n);
    throw std::runtime_error("staircase comparison undecidable within precision budget");
}

}  // namespace polarpo
