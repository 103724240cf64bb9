#pragma once
// Exact univariate polynomial arithmetic over arbitrary-precision rationals,
// the Bhattacharyya composition maps Z_0(x)=1-(1-x)^2 and Z_1(x)=x^2, and an
// integer scaled-Bernstein representation used for fast nonnegativity
// certificates:  p(x) = sum_i B_i x^i (1-x)^(d-i)  with integer B_i whenever
// p has integer power coefficients.

#include <gmp.h>

#include <cstdint>
#include <string>
#include <vector>

#include "polarpo/path.hpp"

namespace polarpo {

// Thin value wrappers over GMP so the rest of the code stays readable.
struct Int {
    mpz_t z;
    Int() { mpz_init(z); }
    Int(long v) { mpz_init_set_si(z, v); }
    Int(const Int& o) { mpz_init_set(z, o.z); }
    Int(Int&& o) noexcept { mpz_init(z); mpz_swap(z, o.z); }
    Int& operator=(const Int& o) { if (this != &o) mpz_set(z, o.z); return *this; }
    Int& operator=(Int&& o) noexcept { if (this != &o) mpz_swap(z, o.z); return *this; }
    ~Int() { mpz_clear(z); }

    int sign() const { return mpz_sgn(z); }
    bool operator==(const Int& o) const { return mpz_cmp(z, o.z) == 0; }
    bool operator<(const Int& o) const { return mpz_cmp(z, o.z) < 0; }
    std::string str() const;
    double to_double() const { return mpz_get_d(z); }
};

struct Rat {
    mpq_t q;
    Rat() { mpq_init(q); }
    Rat(long num, long den = 1);
    Rat(const Int& num, const Int& den);
    Rat(const Rat& o) { mpq_init(q); mpq_set(q, o.q); }
    Rat(Rat&& o) noexcept { mpq_init(q); mpq_swap(q, o.q); }
    Rat& operator=(const Rat& o) { if (this != &o) mpq_set(q, o.q); return *this; }
    Rat& operator=(Rat&& o) noexcept { if (this != &o) mpq_swap(q, o.q); return *this; }
    ~Rat() { mpq_clear(q); }

    int sign() const { return mpq_sgn(q); }
    bool operator==(const Rat& o) const { return mpq_equal(q, o.q) != 0; }
    bool operator<(const Rat& o) const { return mpq_cmp(q, o.q) < 0; }
    bool operator<=(const Rat& o) const { return mpq_cmp(q, o.q) <= 0; }
    std::string str() const;
    double to_double() const { return mpq_get_d(q); }
};

Rat operator+(const Rat& a, const Rat& b);
Rat operator-(const Rat& a, const Rat& b);
Rat operator*(const Rat& a, const Rat& b);
Rat operator/(const Rat& a, const Rat& b);

// Dense polynomial, coefficients ascending by degree, canonical (no trailing
// zeros; the zero polynomial has an empty coefficient vector).
struct RatPoly {
    std::vector<Rat> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c.empty(); }
    void trim();

    static RatPoly constant(const Rat& v);
    static RatPoly identity();  // x
};

enum class PolyOp { add, sub, mul, compose };
RatPoly poly_arith(const RatPoly& a, const RatPoly& b, PolyOp kind);
RatPoly derivative(const RatPoly& p);
Rat eval_rational(const RatPoly& p, const Rat& x);
double eval_double(const RatPoly& p, double x);  // plain Horner; caller owns overflow concerns

// Z_alpha = Z_{alpha_n} o ... o Z_{alpha_1}; empty path gives x.
RatPoly z_poly(const Path& alpha);

// ---- integer scaled-Bernstein machinery --------------------------------
//
// For integer-coefficient p of degree <= d the scaled Bernstein vector B of
// order d satisfies p(x) = sum B_i x^i (1-x)^(d-i), with
//   B_i = sum_j a_j * C(d-j, i-j).
// Products convolve the vectors; 1 has vector C(d,i). All Z-path polynomials
// stay integer throughout.

struct IntVec {
    std::vector<Int> v;
    size_t size() const { return v.size(); }
};

// Binomial row C(d, 0..d).
IntVec binomial_row(int d);

// Scaled Bernstein coefficients of order d for an integer power-basis poly.
IntVec power_to_bernstein(const std::vector<Int>& power, int d);

// Convolution (polynomial product in the scaled basis; orders add).
IntVec conv(const IntVec& a, const IntVec& b);

// One polarization step applied to a scaled-Bernstein vector of order d:
// bit 1: p -> p^2 (order 2d);  bit 0: p -> 1-(1-p)^2 = 2p - p^2 (order 2d).
IntVec bernstein_z_step(const IntVec& b, int d, uint8_t bit, const IntVec& row_d,
                        const IntVec& row_2d);

// Scaled Bernstein vector of Z_alpha (order 2^|alpha|), built by stepping.
IntVec z_bernstein(const Path& alpha);

// exact value helpers
Rat z_eval(const Path& alpha, const Rat& x);   // evaluates by stepping, no poly build
double z_eval_d(const Path& alpha, double x);

}  // namespace polarpo
