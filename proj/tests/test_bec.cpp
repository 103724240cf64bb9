#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmp.h>

#include "polarpo/bec.hpp"
#include "polarpo/degradation.hpp"
#include "polarpo/path.hpp"

using namespace polarpo;

namespace {

bool leq(const char* a, const char* g) {
    BecRel r = bec_leq(parse_path(a), parse_path(g)).relation;
    return r == BecRel::LEQ || r == BecRel::EQUAL;
}

// ground truth by exact rational evaluation of (1 - 2^{-2^m})^{2^n} <= 1/2:
// 2 * (2^{2^m} - 1)^{2^n} <= 2^{2^m * 2^n}
bool staircase_exact(int m, int n) {
    mpz_t lhs, base;
    mpz_inits(lhs, base, nullptr);
    mpz_set_ui(base, 1);
    mpz_mul_2exp(base, base, 1u << m);
    mpz_sub_ui(base, base, 1);             // 2^{2^m} - 1
    mpz_pow_ui(lhs, base, 1u << n);        // ^{2^n}
    mpz_mul_2exp(lhs, lhs, 1);             // * 2
    mpz_set_ui(base, 1);
    mpz_mul_2exp(base, base, (1u << m) * (1u << n));
    bool ok = mpz_cmp(lhs, base) <= 0;
    mpz_clears(lhs, base, nullptr);
    return ok;
}

}  // namespace

TEST_CASE("known small verdicts") {
    CHECK(leq("01", "10"));
    CHECK(!leq("10", "01"));
    CHECK(leq("1100", "0111"));
    CHECK(leq("0110", "1001"));
    CHECK(bec_leq(parse_path("011"), parse_path("011")).relation == BecRel::EQUAL);
    CHECK_THROWS_AS(bec_leq(parse_path("01"), parse_path("0")), std::invalid_argument);
}

TEST_CASE("incomparable pairs return witnesses for both directions") {
    BecVerdict v = bec_leq(parse_path("01100110"), parse_path("01101001"));
    if (v.relation == BecRel::INCOMPARABLE) {
        REQUIRE(v.witness_low.has_value());
        REQUIRE(v.witness_high.has_value());
        // witnesses have power-of-two denominators for reproducible reports
        for (const Rat* w : {&*v.witness_low, &*v.witness_high}) {
            mpz_srcptr den = mpq_denref(w->q);
            CHECK(mpz_scan1(den, 0) == mpz_sizeinbase(den, 2) - 1);
        }
        // and certify the sign change exactly
        Rat low = z_eval(parse_path("01100110"), *v.witness_low) -
                  z_eval(parse_path("01101001"), *v.witness_low);
        Rat high = z_eval(parse_path("01100110"), *v.witness_high) -
                   z_eval(parse_path("01101001"), *v.witness_high);
        CHECK(low.sign() < 0);
        CHECK(high.sign() > 0);
    } else {
        CHECK(v.relation == BecRel::LEQ);  // settled exactly either way
    }
}

TEST_CASE("verdicts are antisymmetric under argument swap") {
    const int n = 5;
    for (uint32_t a = 0; a < (1u << n); ++a)
        for (uint32_t g = a + 1; g < (1u << n); ++g) {
            BecRel fwd = bec_leq(unpack_path(a, n), unpack_path(g, n)).relation;
            BecRel bwd = bec_leq(unpack_path(g, n), unpack_path(a, n)).relation;
            switch (fwd) {
                case BecRel::LEQ: CHECK(bwd == BecRel::GEQ); break;
                case BecRel::GEQ: CHECK(bwd == BecRel::LEQ); break;
                case BecRel::EQUAL: CHECK(bwd == BecRel::EQUAL); break;
                case BecRel::INCOMPARABLE: CHECK(bwd == BecRel::INCOMPARABLE); break;
            }
        }
}

TEST_CASE("degradation implies erasure dominance (n <= 5)") {
    const int n = 5;
    for (uint32_t a = 0; a < (1u << n); ++a)
        for (uint32_t g = 0; g < (1u << n); ++g) {
            if (a == g) continue;
            if (deg_dominates_fast(unpack_path(a, n), unpack_path(g, n))) {
                BecRel r = bec_leq(unpack_path(a, n), unpack_path(g, n)).relation;
                CHECK((r == BecRel::LEQ || r == BecRel::EQUAL));
            }
        }
}

TEST_CASE("transitivity on the n=4 universe") {
    const int n = 4;
    auto holds = [&](uint32_t a, uint32_t g) {
        BecRel r = bec_leq(unpack_path(a, n), unpack_path(g, n)).relation;
        return r == BecRel::LEQ || r == BecRel::EQUAL;
    };
    for (uint32_t a = 0; a < (1u << n); ++a)
        for (uint32_t b = 0; b < (1u << n); ++b) {
            if (!holds(a, b)) continue;
            for (uint32_t c = 0; c < (1u << n); ++c)
                if (holds(b, c)) CHECK(holds(a, c));
        }
}

TEST_CASE("staircase_fact matches exact integer arithmetic") {
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 8; ++n) CHECK(staircase_fact(m, n) == staircase_exact(m, n));
    CHECK(staircase_fact(1, 2));   // (3/4)^4 = 81/256
    CHECK(!staircase_fact(1, 1));  // (3/4)^2 = 9/16
    // beyond the exact-integer regime the log comparison takes over
    CHECK(staircase_fact(3, 18));
    CHECK(!staircase_fact(10, 2));
}

TEST_CASE("staircase_fact decides the block-swap dominance") {
    // 1^m 0^n vs 0^m 1^n is erasure-decided exactly by the closed form
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 8; ++n) {
            Path w = concat(repeat(1, m), repeat(0, n));
            Path b = concat(repeat(0, m), repeat(1, n));
            BecRel r = bec_leq(w, b).relation;
            bool dominated = (r == BecRel::LEQ || r == BecRel::EQUAL);
            CHECK(dominated == staircase_fact(m, n));
        }
}
