#include "polarpo/poly.hpp"

#include <stdexcept>

namespace polarpo {

std::string Int::str() const {
    char* s = mpz_get_str(nullptr, 10, z);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    mpq_init(q);
    mpq_set_si(q, num, den > 0 ? static_cast<unsigned long>(den)
                               : static_cast<unsigned long>(-den));
    if (den < 0) mpq_neg(q, q);
    mpq_canonicalize(q);
}

Rat::Rat(const Int& num, const Int& den) {
    if (mpz_sgn(den.z) == 0) throw std::invalid_argument("rational with zero denominator");
    mpq_init(q);
    mpz_set(mpq_numref(q), num.z);
    mpz_set(mpq_denref(q), den.z);
    mpq_canonicalize(q);
}

std::string Rat::str() const {
    char* s = mpq_get_str(nullptr, 10, q);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

Rat operator+(const Rat& a, const Rat& b) { Rat r; mpq_add(r.q, a.q, b.q); return r; }
Rat operator-(const Rat& a, const Rat& b) { Rat r; mpq_sub(r.q, a.q, b.q); return r; }
Rat operator*(const Rat& a, const Rat& b) { Rat r; mpq_mul(r.q, a.q, b.q); return r; }
Rat operator/(const Rat& a, const Rat& b) {
    if (b.sign() == 0) throw std::invalid_argument("division by zero rational");
    Rat r;
    mpq_div(r.q, a.q, b.q);
    return r;
}

RatPoly::RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
    while (!c.empty() && c.back().sign() == 0) c.pop_back();
}

RatPoly RatPoly::constant(const Rat& v) {
    RatPoly p;
    if (v.sign() != 0) p.c.push_back(v);
    return p;
}

RatPoly RatPoly::identity() {
    RatPoly p;
    p.c.resize(2);
    mpq_set_si(p.c[1].q, 1, 1);
    return p;
}

static RatPoly add_sub(const RatPoly& a, const RatPoly& b, bool subtract) {
    RatPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) mpq_set(r.c[i].q, a.c[i].q);
        if (i < b.c.size()) {
            if (subtract)
                mpq_sub(r.c[i].q, r.c[i].q, b.c[i].q);
            else
                mpq_add(r.c[i].q, r.c[i].q, b.c[i].q);
        }
    }
    r.trim();
    return r;
}

static RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RatPoly r;
    r.c.resize(a.c.size() + b.c.size() - 1);
    Rat t;
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) {
            mpq_mul(t.q, a.c[i].q, b.c[j].q);
            mpq_add(r.c[i + j].q, r.c[i + j].q, t.q);
        }
    r.trim();
    return r;
}

// Horner in the polynomial ring: a(b(x)).
static RatPoly compose(const RatPoly& a, const RatPoly& b) {
    RatPoly acc;
    for (size_t k = a.c.size(); k-- > 0;) {
        acc = mul(acc, b);
        if (acc.c.empty()) acc.c.resize(1);
        mpq_add(acc.c[0].q, acc.c[0].q, a.c[k].q);
        acc.trim();
    }
    return acc;
}

RatPoly poly_arith(const RatPoly& a, const RatPoly& b, PolyOp kind) {
    switch (kind) {
        case PolyOp::add: return add_sub(a, b, false);
        case PolyOp::sub: return add_sub(a, b, true);
        case PolyOp::mul: return mul(a, b);
        case PolyOp::compose: return compose(a, b);
    }
    throw std::logic_error("unknown PolyOp");
}

RatPoly derivative(const RatPoly& p) {
    RatPoly r;
    if (p.c.size() <= 1) return r;
    r.c.resize(p.c.size() - 1);
    Rat k;
    for (size_t i = 1; i < p.c.size(); ++i) {
        mpq_set_si(k.q, static_cast<long>(i), 1);
        mpq_mul(r.c[i - 1].q, p.c[i].q, k.q);
    }
    r.trim();
    return r;
}

Rat eval_rational(const RatPoly& p, const Rat& x) {
    Rat acc;
    for (size_t k = p.c.size(); k-- > 0;) {
        mpq_mul(acc.q, acc.q, x.q);
        mpq_add(acc.q, acc.q, p.c[k].q);
    }
    return acc;
}

double eval_double(const RatPoly& p, double x) {
    double acc = 0.0;
    for (size_t k = p.c.size(); k-- > 0;) acc = acc * x + p.c[k].to_double();
    return acc;
}

RatPoly z_poly(const Path& alpha) {
    // Step in path order: bit 0 maps p -> 2p - p^2, bit 1 maps p -> p^2.
    RatPoly p = RatPoly::identity();
    Rat two(2);
    for (uint8_t bit : alpha.b) {
        RatPoly sq = mul(p, p);
        if (bit == 1) {
            p = std::move(sq);
        } else {
            RatPoly twop;
            twop.c.resize(p.c.size());
            for (size_t i = 0; i < p.c.size(); ++i) mpq_mul(twop.c[i].q, p.c[i].q, two.q);
            p = add_sub(twop, sq, true);
        }
    }
    return p;
}

IntVec binomial_row(int d) {
    IntVec row;
    row.v.resize(static_cast<size_t>(d) + 1);
    mpz_set_ui(row.v[0].z, 1);
    for (int i = 1; i <= d; ++i) {
        // C(d,i) = C(d,i-1) * (d-i+1) / i, always exact
        mpz_mul_ui(row.v[i].z, row.v[i - 1].z, static_cast<unsigned long>(d - i + 1));
        mpz_divexact_ui(row.v[i].z, row.v[i].z, static_cast<unsigned long>(i));
    }
    return row;
}

IntVec power_to_bernstein(const std::vector<Int>& power, int d) {
    if (static_cast<int>(power.size()) - 1 > d)
        throw std::invalid_argument("bernstein order below polynomial degree");
    // B_i = sum_{j<=i} a_j * C(d-j, i-j). Build C(d-j, .) rows on the fly.
    IntVec b;
    b.v.resize(static_cast<size_t>(d) + 1);
    Int t;
    for (size_t j = 0; j < power.size(); ++j) {
        if (mpz_sgn(power[j].z) == 0) continue;
        IntVec row = binomial_row(d - static_cast<int>(j));
        for (size_t k = 0; k < row.v.size(); ++k) {
            mpz_mul(t.z, power[j].z, row.v[k].z);
            mpz_add(b.v[j + k].z, b.v[j + k].z, t.z);
        }
    }
    return b;
}

IntVec conv(const IntVec& a, const IntVec& b) {
    IntVec r;
    if (a.v.empty() || b.v.empty()) return r;
    r.v.resize(a.v.size() + b.v.size() - 1);
    Int t;
    for (size_t i = 0; i < a.v.size(); ++i) {
        if (mpz_sgn(a.v[i].z) == 0) continue;
        for (size_t j = 0; j < b.v.size(); ++j) {
            if (mpz_sgn(b.v[j].z) == 0) continue;
            mpz_mul(t.z, a.v[i].z, b.v[j].z);
            mpz_add(r.v[i + j].z, r.v[i + j].z, t.z);
        }
    }
    return r;
}

IntVec bernstein_z_step(const IntVec& b, int d, uint8_t bit, const IntVec& row_d,
                        const IntVec& row_2d) {
    if (static_cast<int>(b.v.size()) != d + 1) throw std::invalid_argument("order mismatch");
    if (bit == 1) return conv(b, b);
    // 1 - (1-p)^2 in the scaled basis: complement against C(d,i), square, complement back.
    IntVec comp;
    comp.v.resize(b.v.size());
    for (size_t i = 0; i < b.v.size(); ++i) mpz_sub(comp.v[i].z, row_d.v[i].z, b.v[i].z);
    IntVec sq = conv(comp, comp);
    for (size_t i = 0; i < sq.v.size(); ++i) mpz_sub(sq.v[i].z, row_2d.v[i].z, sq.v[i].z);
    return sq;
}

IntVec z_bernstein(const Path& alpha) {
    // Identity x in order-1 scaled basis: x = 0*(1-x) + 1*x.
    IntVec b;
    b.v.resize(2);
    mpz_set_ui(b.v[1].z, 1);
    int d = 1;
    for (uint8_t bit : alpha.b) {
        IntVec row_d = binomial_row(d);
        IntVec row_2d = binomial_row(2 * d);
        b = bernstein_z_step(b, d, bit, row_d, row_2d);
        d *= 2;
    }
    return b;
}

Rat z_eval(const Path& alpha, const Rat& x) {
    Rat p = x, one(1), t;
    for (uint8_t bit : alpha.b) {
        if (bit == 1) {
            mpq_mul(p.q, p.q, p.q);
        } else {
            mpq_sub(t.q, one.q, p.q);
            mpq_mul(t.q, t.q, t.q);
            mpq_sub(p.q, one.q, t.q);
        }
    }
    return p;
}

double z_eval_d(const Path& alpha, double x) {
    double p = x;
    for (uint8_t bit : alpha.b) {
        if (bit == 1) {
            p = p * p;
        } else {
            double u = 1.0 - p;
            p = 1.0 - u * u;
        }
    }
    return p;
}

}  // namespace polarpo
