#include "polarpo/nonneg.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace polarpo {

namespace {

constexpr int kGridPoints = 257;
constexpr int kSubdivMaxDepth = 64;
constexpr int kSubdivMaxNodes = 20000;
constexpr long kSturmBudget = 2'000'000;

using EvalFn = std::function<Rat(const Rat&)>;

bool try_witness(const EvalFn& eval, const Rat& x, const char* method, NonnegResult& out) {
    Rat v = eval(x);
    if (v.sign() >= 0) return false;
    out.status = NonnegStatus::negative_somewhere;
    out.method = method;
    out.witness = x;
    out.witness_value = std::move(v);
    return true;
}

// Float scan; may produce an exact witness, never a nonnegativity claim.
bool grid_scan(const RatPoly& p, const EvalFn& eval, NonnegResult& out) {
    double best = 0.0, best_x = 0.0;
    for (int j = 0; j < kGridPoints; ++j) {
        double x = 0.5 * (1.0 - std::cos(M_PI * j / (kGridPoints - 1)));
        double v = eval_double(p, x);
        if (!std::isfinite(v)) return false;  // coefficients exceed double range
        if (v < best) { best = v; best_x = x; }
    }
    if (best >= -1e-9) return false;
    Rat w;  // the double is itself an exact rational
    mpq_set_d(w.q, best_x);
    return try_witness(eval, w, "grid-witness", out);
}

std::vector<Int> integerize(const RatPoly& p, Int& scale) {
    mpz_set_ui(scale.z, 1);
    for (const Rat& c : p.c) mpz_lcm(scale.z, scale.z, mpq_denref(c.q));
    std::vector<Int> a(p.c.size());
    Int t;
    for (size_t i = 0; i < p.c.size(); ++i) {
        mpz_divexact(t.z, scale.z, mpq_denref(p.c[i].q));
        mpz_mul(a[i].z, mpq_numref(p.c[i].q), t.z);
    }
    return a;
}

Rat rat_int(long v) { return Rat(v); }

Rat midpoint(const Rat& a, const Rat& b) {
    Rat m = a + b;
    mpq_div_2exp(m.q, m.q, 1);
    return m;
}

// ---- de Casteljau subdivision on classical Bernstein coefficients --------
//
// b holds p reparametrized to [a, a+width] in the classical basis, so
// b[0] = p(a) and b[d] = p(a+width); all-nonnegative b certifies p >= 0 there.

struct SubNode {
    std::vector<Rat> b;
    Rat a, width;
    int depth;
};

enum class SubOutcome { settled, depth_limit };

SubOutcome subdivide(std::vector<Rat> root, const EvalFn& eval, NonnegResult& out) {
    std::vector<SubNode> stack;
    stack.push_back({std::move(root), rat_int(0), rat_int(1), 0});
    int nodes = 0;
    bool hit_limit = false;
    while (!stack.empty()) {
        SubNode node = std::move(stack.back());
        stack.pop_back();
        const size_t d = node.b.size() - 1;
        if (node.b[0].sign() < 0 && try_witness(eval, node.a, "subdivision-witness", out))
            return SubOutcome::settled;
        if (node.b[d].sign() < 0 &&
            try_witness(eval, node.a + node.width, "subdivision-witness", out))
            return SubOutcome::settled;
        bool all_ok = true;
        for (const Rat& c : node.b)
            if (c.sign() < 0) { all_ok = false; break; }
        if (all_ok) continue;
        if (node.depth >= kSubdivMaxDepth || ++nodes > kSubdivMaxNodes) {
            hit_limit = true;
            continue;
        }
        std::vector<Rat> w = node.b;
        std::vector<Rat> left(d + 1), right(d + 1);
        left[0] = w[0];
        right[d] = w[d];
        for (size_t k = 1; k <= d; ++k) {
            for (size_t i = 0; i + k <= d; ++i) {
                mpq_add(w[i].q, w[i].q, w[i + 1].q);
                mpq_div_2exp(w[i].q, w[i].q, 1);
            }
            left[k] = w[0];
            right[d - k] = w[d - k];
        }
        Rat half = node.width;
        mpq_div_2exp(half.q, half.q, 1);
        stack.push_back({std::move(left), node.a, half, node.depth + 1});
        stack.push_back({std::move(right), node.a + half, half, node.depth + 1});
    }
    if (hit_limit) return SubOutcome::depth_limit;
    out.status = NonnegStatus::nonneg;
    out.method = "subdivision";
    return SubOutcome::settled;
}

// ---- Sturm-based complete decision ---------------------------------------

void scale_down(RatPoly& p) {
    if (p.is_zero()) return;
    Rat m;
    for (const Rat& c : p.c) {
        Rat a = c;
        mpq_abs(a.q, a.q);
        if (m < a) m = a;
    }
    for (Rat& c : p.c) mpq_div(c.q, c.q, m.q);
    p.trim();
}

std::vector<RatPoly> sturm_chain(const RatPoly& q) {
    std::vector<RatPoly> chain;
    chain.push_back(q);
    chain.push_back(derivative(q));
    scale_down(chain.back());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RatPoly quot, rem;
        poly_divmod(chain[chain.size() - 2], chain.back(), quot, rem);
        for (Rat& c : rem.c) mpq_neg(c.q, c.q);
        scale_down(rem);
        if (rem.is_zero()) break;
        chain.push_back(std::move(rem));
    }
    return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
    int var = 0, prev = 0;
    for (const RatPoly& p : chain) {
        int s = eval_rational(p, x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Roots of q strictly inside (a, b); q square-free.
int interior_roots(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b) {
    int cnt = sign_variations(chain, a) - sign_variations(chain, b);
    if (eval_rational(chain[0], b).sign() == 0) --cnt;
    return cnt;
}

// Decide p >= 0 on [a, b]; requires verified p(a) >= 0 (sign sa) and
// p(b) >= 0 (sign sb). Returns false after filling a witness into `out`.
bool sturm_rec(const RatPoly& p, const std::vector<RatPoly>& chain, const EvalFn& eval,
               const Rat& a, const Rat& b, int sa, int sb, NonnegResult& out, long& budget) {
    int inside = interior_roots(chain, a, b);
    if (inside == 0) {
        if (sa > 0 || sb > 0) return true;
        // Both endpoints exactly zero and no root between them: p keeps one
        // sign on the open interval, so one sample settles it.
        Rat m = midpoint(a, b);
        return !try_witness(eval, m, "sturm-witness", out);
    }
    // A dip below zero between two strictly positive endpoints needs at least
    // two distinct roots, so one root there can only be a tangency from above.
    if (inside == 1 && sa > 0 && sb > 0) return true;
    if (--budget < 0) throw std::runtime_error("sign decision: sturm recursion budget exhausted");
    Rat m = midpoint(a, b);
    if (try_witness(eval, m, "sturm-witness", out)) return false;
    int sm = eval(m).sign();
    return sturm_rec(p, chain, eval, a, m, sa, sm, out, budget) &&
           sturm_rec(p, chain, eval, m, b, sm, sb, out, budget);
}

bool sturm_decide(const RatPoly& p, const EvalFn& eval, NonnegResult& out) {
    Rat zero(0), one(1);
    if (try_witness(eval, zero, "sturm-witness", out)) return true;
    if (try_witness(eval, one, "sturm-witness", out)) return true;
    RatPoly q = squarefree_part(p);
    std::vector<RatPoly> chain = sturm_chain(q);
    long budget = kSturmBudget;
    int sa = eval(zero).sign(), sb = eval(one).sign();
    if (sturm_rec(p, chain, eval, zero, one, sa, sb, out, budget)) {
        out.status = NonnegStatus::nonneg;
        out.method = "sturm";
    }
    return true;
}

// Shared tail of both public entry points, starting from integer scaled
// Bernstein coefficients of (a positive multiple of) the target polynomial.
NonnegResult decide_from_bernstein(const IntVec& bern, const EvalFn& eval,
                                   const std::function<RatPoly()>& power_form) {
    NonnegResult out;
    const size_t d = bern.v.size() - 1;
    bool all_ok = true;
    for (const Int& c : bern.v)
        if (c.sign() < 0) { all_ok = false; break; }
    if (all_ok) {
        out.method = "bernstein-coeffs";
        return out;
    }
    if (bern.v[0].sign() < 0 && try_witness(eval, Rat(0), "subdivision-witness", out)) return out;
    if (bern.v[d].sign() < 0 && try_witness(eval, Rat(1), "subdivision-witness", out)) return out;
    IntVec row = binomial_row(static_cast<int>(d));
    std::vector<Rat> classical(d + 1);
    for (size_t i = 0; i <= d; ++i) {
        mpz_set(mpq_numref(classical[i].q), bern.v[i].z);
        mpz_set(mpq_denref(classical[i].q), row.v[i].z);
        mpq_canonicalize(classical[i].q);
    }
    if (subdivide(std::move(classical), eval, out) == SubOutcome::settled) return out;
    sturm_decide(power_form(), eval, out);
    return out;
}

}  // namespace

void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    rem = a;
    quot = RatPoly();
    if (a.degree() >= b.degree()) quot.c.resize(a.degree() - b.degree() + 1);
    Rat f, t;
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int k = rem.degree() - b.degree();
        mpq_div(f.q, rem.c.back().q, b.c.back().q);
        mpq_set(quot.c[k].q, f.q);
        for (int i = 0; i <= b.degree(); ++i) {
            mpq_mul(t.q, f.q, b.c[i].q);
            mpq_sub(rem.c[k + i].q, rem.c[k + i].q, t.q);
        }
        rem.trim();
    }
    quot.trim();
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 0) return p;
    // gcd(p, p') by the Euclidean algorithm, rescaling to tame growth.
    RatPoly a = p, b = derivative(p);
    scale_down(a);
    scale_down(b);
    while (!b.is_zero()) {
        RatPoly quot, rem;
        poly_divmod(a, b, quot, rem);
        scale_down(rem);
        a = std::move(b);
        b = std::move(rem);
    }
    RatPoly q, r;
    poly_divmod(p, a, q, r);
    if (!r.is_zero()) throw std::logic_error("square-free division left a remainder");
    if (q.c.back().sign() < 0)
        for (Rat& c : q.c) mpq_neg(c.q, c.q);
    scale_down(q);
    return q;
}

int sturm_root_count(const RatPoly& squarefree, const Rat& a, const Rat& b) {
    std::vector<RatPoly> chain = sturm_chain(squarefree);
    return sign_variations(chain, a) - sign_variations(chain, b);
}

NonnegResult nonneg_on_unit(const RatPoly& p) {
    NonnegResult out;
    if (p.is_zero()) {
        out.method = "zero";
        return out;
    }
    EvalFn eval = [&p](const Rat& x) { return eval_rational(p, x); };
    if (p.degree() == 0) {
        if (!try_witness(eval, Rat(0), "grid-witness", out)) out.method = "bernstein-coeffs";
        return out;
    }
    if (grid_scan(p, eval, out)) return out;
    Int scale;
    std::vector<Int> a = integerize(p, scale);
    IntVec bern = power_to_bernstein(a, p.degree());
    return decide_from_bernstein(bern, eval, [&p] { return p; });
}

NonnegResult nonneg_scaled_bernstein(const IntVec& b, int order) {
    if (static_cast<int>(b.v.size()) != order + 1)
        throw std::invalid_argument("bernstein vector size does not match order");
    NonnegResult out;
    bool zero = true;
    for (const Int& c : b.v)
        if (c.sign() != 0) { zero = false; break; }
    if (zero) {
        out.method = "zero";
        return out;
    }
    // Exact evaluation straight off the Bernstein form.
    EvalFn eval = [&b, order](const Rat& x) {
        Rat one(1), omx = one - x, acc, term;
        std::vector<Rat> xp(static_cast<size_t>(order) + 1);
        mpq_set_ui(xp[0].q, 1, 1);
        for (int i = 1; i <= order; ++i) mpq_mul(xp[i].q, xp[i - 1].q, x.q);
        Rat opow(1);
        for (int i = order; i >= 0; --i) {
            if (mpz_sgn(b.v[i].z) != 0) {
                mpq_set_z(term.q, b.v[i].z);
                mpq_mul(term.q, term.q, xp[i].q);
                mpq_mul(term.q, term.q, opow.q);
                mpq_add(acc.q, acc.q, term.q);
            }
            if (i > 0) mpq_mul(opow.q, opow.q, omx.q);
        }
        return acc;
    };
    // Power form only materializes if the Sturm fallback is reached.
    // Horner-style: Q_i = (1-x) Q_{i-1} + B_i x^i accumulates the basis sum.
    auto power_form = [&b, order] {
        RatPoly acc;
        RatPoly one_minus_x({Rat(1), Rat(-1)});
        for (int i = 0; i <= order; ++i) {
            acc = poly_arith(acc, one_minus_x, PolyOp::mul);
            if (mpz_sgn(b.v[i].z) == 0) continue;
            if (acc.c.size() < static_cast<size_t>(i) + 1) acc.c.resize(i + 1);
            Rat coeff;
            mpq_set_z(coeff.q, b.v[i].z);
            mpq_add(acc.c[i].q, acc.c[i].q, coeff.q);
            acc.trim();
        }
        return acc;
    };
    return decide_from_bernstein(b, eval, power_form);
}

}  // namespace polarpo
