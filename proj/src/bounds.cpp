#include "polarpo/bounds.hpp"

#include <stdexcept>

#include "polarpo/bec.hpp"
#include "polarpo/nonneg.hpp"

namespace polarpo {

Interval::Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    Rat zero(0), one(1);
    if (lo.sign() < 0 || one < hi || hi < lo)
        throw std::invalid_argument("interval must satisfy 0 <= lo <= hi <= 1");
}

Rat sqrt_lower(const Rat& v, int bits) {
    if (v.sign() < 0) throw std::invalid_argument("sqrt of negative value");
    Int m, s;
    mpz_mul_2exp(m.z, mpq_numref(v.q), 2 * static_cast<unsigned>(bits));
    mpz_fdiv_q(m.z, m.z, mpq_denref(v.q));
    mpz_sqrt(s.z, m.z);
    Rat r;
    mpz_set(mpq_numref(r.q), s.z);
    mpz_set_ui(mpq_denref(r.q), 1);
    mpq_div_2exp(r.q, r.q, static_cast<unsigned>(bits));
    return r;
}

Rat sqrt_upper(const Rat& v, int bits) {
    if (v.sign() < 0) throw std::invalid_argument("sqrt of negative value");
    Int m, s, rem;
    mpz_mul_2exp(m.z, mpq_numref(v.q), 2 * static_cast<unsigned>(bits));
    mpz_cdiv_q(m.z, m.z, mpq_denref(v.q));
    mpz_sqrtrem(s.z, rem.z, m.z);
    if (mpz_sgn(rem.z) != 0) mpz_add_ui(s.z, s.z, 1);
    Rat r;
    mpz_set(mpq_numref(r.q), s.z);
    mpz_set_ui(mpq_denref(r.q), 1);
    mpq_div_2exp(r.q, r.q, static_cast<unsigned>(bits));
    return r;
}

namespace {

Rat clamp01(const Rat& v) {
    Rat zero(0), one(1);
    if (v < zero) return zero;
    if (one < v) return one;
    return v;
}

Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

Rat z0_step(const Rat& v) {  // 1 - (1-v)^2
    Rat one(1), t = one - v;
    mpq_mul(t.q, t.q, t.q);
    return one - t;
}

Rat z1_step(const Rat& v) {  // v^2
    Rat t = v;
    mpq_mul(t.q, t.q, v.q);
    return t;
}

Path leading_zeros_split(const Path& alpha, int& p) {
    p = 0;
    while (p < static_cast<int>(alpha.size()) && alpha.b[p] == 0) ++p;
    Path tail;  // everything after the first 1
    if (p < static_cast<int>(alpha.size()))
        tail.b.assign(alpha.b.begin() + p + 1, alpha.b.end());
    return tail;
}

ProofResult prove_by_nonneg(const Path& left, const Path& right, const char* strategy) {
    ProofResult r;
    r.strategy = strategy;
    r.residual = poly_arith(z_poly(left), z_poly(right), PolyOp::sub);
    NonnegResult nn = nonneg_on_unit(r.residual);
    if (nn.status == NonnegStatus::nonneg) {
        r.proven = true;
        r.certificate = nn.method;
    }
    return r;
}

bool premise_holds(const Path& worse, const Path& better) {
    if (worse.empty() && better.empty()) return true;
    BecRel rel = bec_leq(worse, better).relation;
    return rel == BecRel::LEQ || rel == BecRel::EQUAL;
}

}  // namespace

Interval z_interval(const Path& alpha, const Interval& x) {
    Rat lo_sq = z1_step(x.lo);
    Interval out;
    out.lo = sqrt_lower(z_eval(alpha, lo_sq));
    out.hi = z_eval(alpha, x.hi);
    out.lo = clamp01(out.lo);
    out.hi = clamp01(out.hi);
    return out;
}

Interval t_interval(const Path& alpha, const Interval& t,
                    const std::optional<Interval>& x_hint) {
    // Per-bit recursion: exact for a 0-step, sandwiched for a 1-step.
    Rat lo = t.lo, hi = t.hi;
    for (uint8_t bit : alpha.b) {
        if (bit == 0) {
            lo = z0_step(lo);
            hi = z0_step(hi);
        } else {
            lo = z1_step(lo);
            hi = z0_step(hi);
        }
    }
    // Generic composition bounds: Z_alpha(t) <= T <= Z_alpha(sqrt(Z_0(t))).
    lo = rat_max(lo, z_eval(alpha, t.lo));
    hi = rat_min(hi, z_eval(alpha, clamp01(sqrt_upper(z0_step(t.hi)))));
    // Shape bound through the leading zeros: alpha = 0^p 1 tail gives the
    // upper composite 0^{p+1} tail.
    int p = 0;
    Path tail = leading_zeros_split(alpha, p);
    if (p < static_cast<int>(alpha.size())) {
        Path upper = concat(repeat(0, p + 1), tail);
        hi = rat_min(hi, z_eval(upper, t.hi));
    }
    // Z-domain bound bridged by 1 - sqrt(1 - Z^2) <= T <= Z.
    if (x_hint) {
        Path one_alpha = concat(Path{{1}}, alpha);
        Rat one(1);
        Rat zlo = z_eval(one_alpha, x_hint->lo);  // Z_alpha(x_lo^2)
        lo = rat_max(lo, one - sqrt_upper(one - zlo));
        hi = rat_min(hi, z_eval(alpha, x_hint->hi));
    }
    lo = clamp01(lo);
    hi = clamp01(hi);
    if (hi < lo) throw std::logic_error("enclosure intersection came out empty");
    Interval out;
    out.lo = std::move(lo);
    out.hi = std::move(hi);
    return out;
}

ProofResult prove_Z(const Path& alpha, const Path& gamma) {
    if (alpha.size() != gamma.size())
        throw std::invalid_argument("prove_Z compares equal-length paths only");
    return prove_by_nonneg(concat(Path{{1}}, alpha), concat(gamma, Path{{1}}),
                           "Z:1a-vs-g1");
}

ProofResult prove_P(const Path& alpha, const Path& gamma) {
    if (alpha.size() != gamma.size())
        throw std::invalid_argument("prove_P compares equal-length paths only");
    ProofResult s1 = prove_by_nonneg(concat(Path{{1}}, alpha), concat(gamma, Path{{0}}),
                                     "P:1a-vs-g0");
    int q = 0;
    Path tau = leading_zeros_split(gamma, q);
    bool has_one = q < static_cast<int>(gamma.size());
    if (!has_one) return s1;  // gamma all-zero: no shape strategy
    Path rhs = concat(repeat(0, q + 1), tau);
    if (s1.proven) {
        ProofResult s2 = prove_by_nonneg(alpha, rhs, "P:shape-0q1");
        if (s2.proven) s1.strategy += "+P:shape-0q1";
        return s1;
    }
    return prove_by_nonneg(alpha, rhs, "P:shape-0q1");
}

bool theorem1_check(int m, int n, int p, int q) {
    if (p < 1 || n < 1 || q < 0 || m < 0 || m + n != p + q)
        throw std::invalid_argument("staircase dimensions must satisfy p,n >= 1, q,m >= 0, m+n = p+q");
    return premise_holds(concat(repeat(0, m), repeat(1, n - 1)),
                         concat(repeat(1, p - 1), repeat(0, q)));
}

bool theorem2_check(int m, int n, int p, int q) {
    if (p < 1 || n < 0 || q < 0 || m < 0 || m + n != p + q)
        throw std::invalid_argument("staircase dimensions must satisfy p >= 1, m,n,q >= 0, m+n = p+q");
    return premise_holds(concat(repeat(0, m), repeat(1, n)),
                         concat(repeat(1, p - 1), repeat(0, q + 1)));
}

bool corollary_check(const Path& alpha, const Path& gamma, char kind, bool real_log) {
    if (alpha.size() != gamma.size())
        throw std::invalid_argument("corollary compares equal-length paths only");
    const int n = static_cast<int>(alpha.size());
    if (n < 2) throw std::invalid_argument("corollary needs length >= 2");
    Counts ca = counts(alpha);
    // Threshold n_0(alpha) <= log2(n - log2 n), shifted by one for kind P.
    int k = ca.n0 + (kind == 'P' ? 1 : 0);
    bool head;
    if (real_log) {
        // n - log2(n) >= 2^k  <=>  n <= 2^{n - 2^k}
        long shift = static_cast<long>(n) - (1L << std::min(k, 62));
        head = shift >= 0 && shift <= 62 ? (static_cast<long>(n) <= (1L << shift))
                                         : shift > 62;
    } else {
        head = (1L << std::min(k, 62)) + k <= n;
    }
    if (!head) return false;
    if (kind == 'Z') {
        Path tau = gamma;
        tau.b.pop_back();
        Counts ct = counts(tau);
        return ct.n0 >= ca.n1 && ct.n1 <= ca.n0 - 1;
    }
    if (kind == 'P') {
        Counts cg = counts(gamma);
        return cg.n0 >= ca.n1 - 1 && cg.n1 <= ca.n0 + 1;
    }
    throw std::invalid_argument("kind must be 'Z' or 'P'");
}

}  // namespace polarpo
