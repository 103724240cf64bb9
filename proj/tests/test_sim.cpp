#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <vector>

#include "polarpo/bec.hpp"
#include "polarpo/path.hpp"
#include "polarpo/sim.hpp"

using namespace polarpo;

TEST_CASE("channel factories validate and report parameters") {
    CHECK_THROWS(BmsChannel::bec(-0.1));
    CHECK_THROWS(BmsChannel::bec(1.1));
    CHECK_THROWS(BmsChannel::bsc(0.6));
    CHECK_THROWS(BmsChannel::biawgn(0.0));

    CHECK(BmsChannel::bec(0.3).bhattacharyya() == doctest::Approx(0.3));
    CHECK(BmsChannel::bec(0.3).error_prob() == doctest::Approx(0.15));
    CHECK(BmsChannel::bsc(0.1).bhattacharyya() == doctest::Approx(2 * std::sqrt(0.09)));
    CHECK(BmsChannel::bsc(0.1).error_prob() == doctest::Approx(0.1));
    CHECK(BmsChannel::biawgn(1.0).bhattacharyya() == doctest::Approx(std::exp(-0.5)));
    // Q(1) ~ 0.158655
    CHECK(BmsChannel::biawgn(1.0).error_prob() == doctest::Approx(0.158655).epsilon(1e-4));
    // Z >= 2 P_e sqrt(...) sanity: Z always upper-bounds the error probability
    for (double p : {0.01, 0.1, 0.3}) CHECK(BmsChannel::bsc(p).bhattacharyya() >= p);
}

TEST_CASE("encoding is the Kronecker transform in natural order") {
    CHECK(polar_encode({0, 1}) == std::vector<uint8_t>{1, 1});
    CHECK(polar_encode({1, 0}) == std::vector<uint8_t>{1, 0});
    CHECK(polar_encode({1, 0, 0, 0}) == std::vector<uint8_t>{1, 0, 0, 0});
    CHECK(polar_encode({0, 0, 0, 1}) == std::vector<uint8_t>{1, 1, 1, 1});
    CHECK(polar_encode({0, 1, 1, 0}) == std::vector<uint8_t>{0, 0, 1, 1});
    CHECK_THROWS(polar_encode({1, 0, 1}));  // length must be a power of two

    // involution: encoding twice is the identity
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<uint8_t> u(16);
        for (auto& bit : u) bit = rng() & 1;
        CHECK(polar_encode(polar_encode(u)) == u);
    }
}

TEST_CASE("exact erasure parameters follow the doubling recursion") {
    auto ps = bec_exact_params(2, Rat(1, 2));
    REQUIRE(ps.size() == 4);
    CHECK(ps[0].first == Rat(15, 16));
    CHECK(ps[1].first == Rat(9, 16));
    CHECK(ps[2].first == Rat(7, 16));
    CHECK(ps[3].first == Rat(1, 16));
    for (auto& [z, t] : ps) CHECK(z == t);  // erasure channels: T = Z

    // index bits MSB-first name the path; dominance in the erasure order
    // forces the parameter order
    auto p3 = bec_exact_params(3, Rat(1, 3));
    for (uint32_t i = 0; i < 8; ++i)
        for (uint32_t j = 0; j < 8; ++j) {
            if (i == j) continue;
            Path wi = index_to_path({3, i}), wj = index_to_path({3, j});
            if (bec_leq(wi, wj).relation == BecRel::LEQ) CHECK(p3[j].first <= p3[i].first);
        }
}

TEST_CASE("successive cancellation equals exhaustive ML with nothing frozen") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int N : {2, 4, 8}) {
        std::vector<uint8_t> frozen(N, 0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> llr(N);
            for (auto& v : llr) v = gauss(rng);
            ScResult sc = sc_decode(llr, frozen);

            double best = -1e300;
            std::vector<uint8_t> ml;
            for (uint32_t m = 0; m < (1u << N); ++m) {
                std::vector<uint8_t> u(N);
                for (int k = 0; k < N; ++k) u[k] = (m >> k) & 1;
                auto x = polar_encode(u);
                double score = 0;
                for (int k = 0; k < N; ++k) score += x[k] ? -llr[k] : llr[k];
                if (score > best + 1e-12) {
                    best = score;
                    ml = u;
                }
            }
            double sc_score = 0;
            auto xs = polar_encode(sc.u);
            for (int k = 0; k < N; ++k) sc_score += xs[k] ? -llr[k] : llr[k];
            CHECK(sc_score == doctest::Approx(best).epsilon(1e-9));
        }
    }
}

TEST_CASE("frozen positions are forced and shape later decisions") {
    // N=2, freeze u0.  llr = (-1, +3): u0 sticks at 0 even though the channel
    // evidence favors 1; u1 then sees f-combined evidence from both outputs.
    ScResult r = sc_decode({-1.0, 3.0}, {1, 0});
    REQUIRE(r.u.size() == 2);
    CHECK(r.u[0] == 0);
    // u1 LLR with u0=0: g(l0, l1, 0) = l0 + l1 = 2 > 0
    CHECK(r.u[1] == 0);
    CHECK(r.llr[1] == doctest::Approx(2.0));

    // same channel, nothing frozen: u0 decides 1, u1 sees l1 - l0 = 4
    ScResult f = sc_decode({-1.0, 3.0}, {0, 0});
    CHECK(f.u[0] == 1);
    CHECK(f.llr[1] == doctest::Approx(4.0));

    CHECK_THROWS(sc_decode({1.0, 2.0}, {0}));  // mask length mismatch
}

TEST_CASE("infinite inputs model erasures without poisoning the tree") {
    const double inf = std::numeric_limits<double>::infinity();
    // one erased output of two: f(inf, +inf)=.. u0 LLR = f(l0,l1); erased l0=0
    ScResult r = sc_decode({0.0, inf}, {0, 0});
    CHECK(r.llr[0] == 0.0);  // erasure propagates as an exact tie
    CHECK(r.u[0] == 0);      // ties resolve to the zero decision
    CHECK(r.llr[1] == inf);
    CHECK(r.u[1] == 0);
}

TEST_CASE("genie estimates track exact erasure parameters") {
    // W^(0) from BEC(1/2): Z = T = 3/4
    GenieEstimate g = genie_estimate(BmsChannel::bec(0.5), parse_path("0"), 20000, 42);
    CHECK(g.trials == 20000);
    CHECK(std::abs(g.t_hat - 0.75) <= 3 * g.t_se);
    CHECK(std::abs(g.z_hat - 0.75) <= 3 * g.z_se);
    CHECK(g.t_se > 0);

    // degenerate path: the raw channel itself
    GenieEstimate raw = genie_estimate(BmsChannel::bsc(0.1), Path{}, 20000, 1);
    CHECK(std::abs(raw.t_hat - 0.2) <= 3 * raw.t_se);
    CHECK(std::abs(raw.z_hat - 0.6) <= 3 * raw.z_se);
}

TEST_CASE("genie streams are reproducible") {
    GenieEstimate a = genie_estimate(BmsChannel::biawgn(1.0), parse_path("10"), 5000, 9);
    GenieEstimate b = genie_estimate(BmsChannel::biawgn(1.0), parse_path("10"), 5000, 9);
    CHECK(a.t_hat == b.t_hat);
    CHECK(a.z_hat == b.z_hat);
    GenieEstimate c = genie_estimate(BmsChannel::biawgn(1.0), parse_path("10"), 5000, 10);
    CHECK(a.z_hat != c.z_hat);  // different seed, different stream
}

TEST_CASE("information sets pick the most reliable indices") {
    InfoSet s = build_info_set(2, 2, InfoMethod::from_bec(0.5));
    CHECK(s.indices == std::vector<uint32_t>{2, 3});
    InfoSet t = build_info_set(3, 4, InfoMethod::from_bec(0.5));
    CHECK(t.indices == std::vector<uint32_t>{3, 5, 6, 7});

    // beta expansion at beta=2 ranks by index value itself
    InfoSet b = build_info_set(3, 3, InfoMethod::from_beta(2.0));
    CHECK(b.indices == std::vector<uint32_t>{5, 6, 7});

    CHECK_THROWS(build_info_set(2, 5, InfoMethod::from_bec(0.5)));   // K > N
    CHECK_THROWS(build_info_set(2, -1, InfoMethod::from_bec(0.5)));
}

TEST_CASE("file method reads a reliability sequence and applies swaps") {
    {
        std::ofstream f("seq_test.txt");
        // least reliable first; entries beyond 2^n are skipped
        f << "0\n8\n1\n2\n4\n9\n3\n5\n6\n7\n";
    }
    InfoSet s = build_info_set(3, 4, InfoMethod::from_file("seq_test.txt"));
    CHECK(s.indices == std::vector<uint32_t>{3, 5, 6, 7});

    // swap 3 out, 4 in
    InfoSet m = build_info_set(3, 4, InfoMethod::from_file("seq_test.txt"), {{3, 4}});
    CHECK(m.indices == std::vector<uint32_t>{4, 5, 6, 7});

    // removing an absent index or doubling a present one is an error
    CHECK_THROWS_AS(build_info_set(3, 4, InfoMethod::from_file("seq_test.txt"), {{0, 4}}),
                    std::runtime_error);
    CHECK_THROWS_AS(build_info_set(3, 4, InfoMethod::from_file("seq_test.txt"), {{3, 5}}),
                    std::runtime_error);

    {
        std::ofstream f("seq_short.txt");
        f << "1\n2\n3\n";  // not enough entries for K=4 over n=3
    }
    CHECK_THROWS_AS(build_info_set(3, 4, InfoMethod::from_file("seq_short.txt")),
                    std::runtime_error);
    std::remove("seq_test.txt");
    std::remove("seq_short.txt");
}

TEST_CASE("link simulation matches the exact single-bit erasure rate") {
    // N=2, K=1, info index 3 is out of range for n=1... use n=2, info {3}:
    // frame fails exactly when the synthesized channel erases, Z = 1/16
    InfoSet info{2, 1, {3}};
    auto rows = simulate(BmsChannel::bec(0.5), {0.5}, info, 40000, 3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].frames == 40000);
    CHECK(rows[0].snr_db == doctest::Approx(0.5));
    // exact failure probability 1/16 = .0625; 3 sigma ~ 3*sqrt(p(1-p)/n)
    double se = std::sqrt(0.0625 * 0.9375 / 40000);
    CHECK(std::abs(rows[0].fer - 0.0625) <= 3.5 * se);
    CHECK(rows[0].ber == doctest::Approx(rows[0].fer));  // single info bit
    CHECK(rows[0].fer_ci95 > 0);
}

TEST_CASE("simulation streams are scheduling-independent and seed-keyed") {
    InfoSet info{3, 4, {3, 5, 6, 7}};
    auto a = simulate(BmsChannel::biawgn(1.0), {1.0, 2.0}, info, 2000, 7);
    auto b = simulate(BmsChannel::biawgn(1.0), {1.0, 2.0}, info, 2000, 7);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].frame_errors == b[i].frame_errors);
        CHECK(a[i].bit_errors == b[i].bit_errors);
        CHECK(a[i].fer == b[i].fer);
    }
    auto c = simulate(BmsChannel::biawgn(1.0), {1.0, 2.0}, info, 2000, 8);
    CHECK((a[0].frame_errors != c[0].frame_errors || a[1].frame_errors != c[1].frame_errors));

    // higher SNR point cannot be much worse
    CHECK(a[1].fer <= a[0].fer + 0.05);
}

TEST_CASE("csv layout is stable") {
    SimResult r;
    r.snr_db = 1.5;
    r.frames = 100;
    r.frame_errors = 10;
    r.fer = 0.1;
    r.fer_ci95 = 0.05;
    r.ber = 0.02;
    r.seed = 4;
    std::string text = sim_csv({r});
    CHECK(text.rfind("snr_db,frames,frame_errors,fer,fer_ci95,ber,seed\n", 0) == 0);
    CHECK(text.find("1.5,100,10,0.1") != std::string::npos);
    CHECK(text.find(",4\n") != std::string::npos);
}
