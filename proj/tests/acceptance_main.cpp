// Acceptance suite: one line per criterion on stdout, details appended,
// nonzero exit when any criterion fails.  Progress chatter goes to stderr so
// the stdout contract stays nine lines plus a summary.
//
// Every tolerance and expected value is pinned here as a named constant.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polarpo/bec.hpp"
#include "polarpo/beta.hpp"
#include "polarpo/bounds.hpp"
#include "polarpo/degradation.hpp"
#include "polarpo/path.hpp"
#include "polarpo/podb.hpp"
#include "polarpo/poly.hpp"
#include "polarpo/rules.hpp"
#include "polarpo/sim.hpp"

using namespace polarpo;

namespace {

// ---------------------------------------------------------------- plumbing

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

void progress(const std::string& msg) {
    std::fprintf(stderr, "  .. %s\n", msg.c_str());
    std::fflush(stderr);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

struct Criterion {
    bool pass = false;
    std::string detail;
};

// ------------------------------------------------------- shared expensive state

struct Nten {
    PoDb db{1};
    uint64_t deg_base = 0;       // two-generator closure
    uint64_t deg_promoted = 0;   // after the suffix-promotion pass
    uint64_t cert = 0;           // generic-certificate pairs (the P_b stand-in)
    uint64_t cert_beyond = 0;    // certificate pairs outside the closure
    uint64_t export_hash = 0;    // digest of the exported database bytes
    std::string stats_line;
};

Nten enumerate_n10() {
    Nten r;
    r.db = build(10);
    DbStats st = stats(r.db);

    // the builder records both closure counts in its configuration header
    auto grab = [&](const char* key) -> uint64_t {
        size_t at = r.db.config.find(key);
        if (at == std::string::npos) return 0;
        return std::strtoull(r.db.config.c_str() + at + std::strlen(key), nullptr, 10);
    };
    r.deg_base = grab("deg-closure=");
    r.deg_promoted = grab("deg-closure+promotion=");
    if (r.deg_promoted == 0) r.deg_promoted = r.deg_base;
    r.cert = grab("generic-z=");
    r.cert_beyond = st.z_beyond_deg;

    std::ostringstream os;
    os << "total=" << st.universe_pairs << " deg-base=" << r.deg_base
       << " deg-promoted=" << r.deg_promoted << " cert=" << r.cert
       << " cert-beyond-closure=" << r.cert_beyond;
    r.stats_line = os.str();

    export_db(r.db, DbFormat::binary, "acceptance_db10.bin");
    std::ifstream f("acceptance_db10.bin", std::ios::binary);
    std::ostringstream bytes;
    bytes << f.rdbuf();
    r.export_hash = fnv1a(bytes.str() + r.stats_line);
    return r;
}

// --------------------------------------------------------------- criterion 1

constexpr uint64_t kTotalPairs = 523776;
constexpr uint64_t kPaperPk = 328155;
constexpr uint64_t kPaperPb = 378796;
constexpr uint64_t kPaperGap = 50641;

Criterion criterion1(const Nten& r) {
    DbStats st = stats(r.db);
    bool total_ok = st.universe_pairs == kTotalPairs;
    bool pk_base = r.deg_base == kPaperPk;
    bool pk_item3 = r.deg_promoted == kPaperPk;
    bool pb_ok = r.cert == kPaperPb;
    bool gap_ok = r.cert_beyond == kPaperGap;

    std::string which = pk_base   ? "closure matches with the base generators"
                        : pk_item3 ? "closure matches only with suffix promotion"
                                   : "neither closure configuration matches";
    std::string detail =
        r.stats_line +
        fmt(" expected=(%llu,%llu,%llu,%llu); %s",
            (unsigned long long)kTotalPairs, (unsigned long long)kPaperPk,
            (unsigned long long)kPaperPb, (unsigned long long)kPaperGap, which.c_str());
    return {total_ok && (pk_base || pk_item3) && pb_ok && gap_ok, detail};
}

// --------------------------------------------------------------- criterion 2

Criterion criterion2(const PoDb& db10) {
    struct Conv {
        int offset;
        BitOrder order;
        const char* name;
    };
    const Conv convs[4] = {{1, BitOrder::msb_first, "1-based msb-first"},
                           {0, BitOrder::msb_first, "0-based msb-first"},
                           {1, BitOrder::lsb_first, "1-based lsb-first"},
                           {0, BitOrder::lsb_first, "0-based lsb-first"}};
    std::string holder;
    int hits = 0;
    for (const Conv& c : convs)
        if (contains_pu(db10, c.offset, c.order)) {
            ++hits;
            holder = c.name;
        }
    bool pass = hits == 1 && holder == "1-based msb-first";
    std::string detail = hits == 0 ? "no convention places all five pairs"
                                   : fmt("%d convention(s); recorded: %s", hits, holder.c_str());
    return {pass, detail};
}

// --------------------------------------------------------------- criterion 3

Criterion criterion3() {
    Path w = parse_path("100"), b = parse_path("011");
    bool fwd = deg_dominates_fast(w, b), rev = deg_dominates_fast(b, w);
    ProofResult pr = prove_Z(w, b);
    bool pass = !fwd && !rev && pr.proven;
    return {pass, fmt("degradation %s, certificate %s (%s)",
                      (!fwd && !rev) ? "incomparable" : "comparable",
                      pr.proven ? "proven" : "missing", pr.strategy.c_str())};
}

// --------------------------------------------------------------- criterion 4

struct Example {
    const char* label;
    const char* worse;
    const char* better;
    uint8_t kind;
    const char* premise;  // substring that must appear in the derivation
};

Criterion criterion4() {
    const Example catalogue[] = {
        {"1a", "11001", "10111", REL_Z, "1100 <= 0111"},
        {"1b", "110001", "101101", REL_Z, "11000 <= 01101"},
        {"2a", "100", "011", REL_Z, "1100 <= 0111"},
        {"2b", "1010", "0111", REL_Z, "11010 <= 01111"},
        {"3a", "11000", "10111", REL_P, "1100 <= 0111"},
        {"3b", "110100", "101111", REL_P, "11010 <= 01111"},
        {"4a", "1000", "0111", REL_P, "1000 <= 0011"},
        {"4b", "10010", "01111", REL_P, "10010 <= 00111"},
        {"5a", "101010011", "101001111", REL_Z, "100 <= 011"},
        {"5b", "01100001", "10011110", REL_P, "100001 <= 011110"},
        {"5c", "00111000111", "10100111110", REL_Z, "0110001 <= 1001110"},
        {"5d", "00101110000001", "10101001111000", REL_P, "01100001 <= 10011110"},
    };
    std::vector<std::string> bad;
    for (const Example& e : catalogue) {
        auto rel = derive_pair(parse_path(e.worse), parse_path(e.better), e.kind);
        if (!rel)
            bad.push_back(fmt("%s underived", e.label));
        else if (rel->provenance.find(e.premise) == std::string::npos)
            bad.push_back(fmt("%s premise missing", e.label));
    }

    // staircase families: item-c conclusions for k = 1, 2, 3, backed by the
    // block-swap fact 1^k 0^(2^k) vs 0^k 1^(2^k)
    for (int k = 1; k <= 3; ++k) {
        const int m = 1 << k;
        if (!staircase_fact(k, m)) bad.push_back(fmt("fact k=%d", k));
        Path ones = repeat(1, k), zeros = repeat(0, m);
        auto fam = [&](const char* tag, Path w, Path b, uint8_t kind) {
            if (!derive_pair(w, b, kind)) bad.push_back(fmt("%s k=%d underived", tag, k));
        };
        // 1c: 1^k 0^(2^k)  vs  1 0^k 1^(2^k - 1)
        fam("1c", concat(ones, zeros),
            concat(repeat(1, 1), concat(repeat(0, k), repeat(1, m - 1))), REL_Z);
        // 2c: 1^(k-1) 0^(2^k)  vs  0^k 1^(2^k - 1)
        fam("2c", concat(repeat(1, k - 1), zeros),
            concat(repeat(0, k), repeat(1, m - 1)), REL_Z);
        // 3c: 1^k 0^(2^k + 1)  vs  1 0^k 1^(2^k)
        fam("3c", concat(ones, repeat(0, m + 1)),
            concat(repeat(1, 1), concat(repeat(0, k), repeat(1, m))), REL_P);
        // 4c: 1^k 0^(2^k)  vs  0^(k-1) 1^(2^k + 1)
        fam("4c", concat(ones, zeros),
            concat(repeat(0, k - 1), repeat(1, m + 1)), REL_P);
    }

    if (bad.empty()) return {true, "12 catalogue examples + 4 families at k=1..3 derived with cited premises"};
    std::string detail = "failed:";
    for (const auto& s : bad) detail += " " + s;
    return {false, detail};
}

// --------------------------------------------------------------- criterion 5

constexpr double kGolden = 1.6180339887;
constexpr double kPlasticLike = 1.4655712319;  // real root of b^3 - b^2 - 1
constexpr double kEndpointTol = 1e-9;

bool window_covers(const BetaWindow& win, const Rat& lo_req, const Rat& hi_req) {
    if (!win.around_one) return false;
    const auto& run = *win.around_one;
    bool lo_ok = !run.lo || run.lo->hi <= lo_req;   // left root certified <= 1
    bool hi_ok = !run.hi || hi_req <= run.hi->lo;   // right root certified >= 1.2311
    return lo_ok && hi_ok;
}

Criterion criterion5(const PoDb& db10) {
    std::vector<std::string> bad;

    auto runs1 = feasible_interval(parse_path("1100"), parse_path("1011"));
    if (runs1.size() != 1 || !runs1[0].hi ||
        std::abs(runs1[0].hi->approx - kGolden) > kEndpointTol)
        bad.push_back("golden-ratio endpoint");
    auto runs2 = feasible_interval(parse_path("1010"), parse_path("0111"));
    if (runs2.size() != 1 || !runs2[0].hi ||
        std::abs(runs2[0].hi->approx - kPlasticLike) > kEndpointTol)
        bad.push_back("cubic-root endpoint");

    const Rat lo_req(1), hi_req(12311, 10000);
    double widest_hi = 0;
    for (int n = 1; n <= 10; ++n) {
        const PoDb* db = nullptr;
        PoDb local{1};
        if (n == 10) {
            db = &db10;
        } else {
            local = build(n);
            db = &local;
        }
        BetaWindow win = feasible_window(*db, REL_Z);
        if (!window_covers(win, lo_req, hi_req)) bad.push_back(fmt("window n=%d", n));
        if (n == 10 && win.around_one && win.around_one->hi)
            widest_hi = win.around_one->hi->approx;
        progress(fmt("beta window n=%d: constraints=%llu binding=%llu", n,
                     (unsigned long long)win.constraints, (unsigned long long)win.binding));
    }

    if (bad.empty())
        return {true, fmt("endpoints within 1e-9; every n<=10 window covers [1, 1.2311] "
                          "(n=10 upper end %.10f)", widest_hi)};
    std::string detail = "failed:";
    for (const auto& s : bad) detail += " " + s;
    return {false, detail};
}

// --------------------------------------------------------------- criterion 6

Criterion criterion6() {
    std::vector<std::string> bad;

    // staircase fact against the exact erasure decider
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 8; ++n) {
            Path w = concat(repeat(1, m), repeat(0, n));
            Path b = concat(repeat(0, m), repeat(1, n));
            BecRel rel = bec_leq(w, b).relation;
            bool holds = rel == BecRel::LEQ || rel == BecRel::EQUAL;
            if (holds != staircase_fact(m, n)) bad.push_back(fmt("staircase m=%d n=%d", m, n));
        }

    // the three certificate formulations agree with the generic prover on the
    // full universe, each on its own shape domain
    for (int n = 1; n <= 6; ++n)
        for (uint32_t a = 0; a < (1u << n); ++a)
            for (uint32_t g = 0; g < (1u << n); ++g) {
                if (a == g) continue;
                Path w = unpack_path(a, n), b = unpack_path(g, n);
                bool generic = prove_Z(w, b).proven;
                if (z_cert_wrap_ones(w, b) != generic) {
                    bad.push_back(fmt("wrap n=%d %u/%u", n, a, g));
                    continue;
                }
                if (b.b.front() == 1 && z_cert_head_one(w, b) != generic)
                    bad.push_back(fmt("head n=%d %u/%u", n, a, g));
                if (w.b.back() == 1 && b.b.front() == 1 && z_cert_edge_ones(w, b) != generic)
                    bad.push_back(fmt("edge n=%d %u/%u", n, a, g));
            }
    progress("rule equivalences done");

    // successive cancellation against exhaustive maximum likelihood
    std::mt19937 rng(20260816);
    std::normal_distribution<double> gauss(0.0, 2.0);
    int cases = 0;
    while (cases < 200) {
        for (int N : {2, 4, 8}) {
            if (cases >= 200) break;
            ++cases;
            std::vector<double> llr(N);
            for (auto& v : llr) v = gauss(rng);
            ScResult sc = sc_decode(llr, std::vector<uint8_t>(N, 0));
            double best = -1e300;
            for (uint32_t mask = 0; mask < (1u << N); ++mask) {
                std::vector<uint8_t> u(N);
                for (int k = 0; k < N; ++k) u[k] = (mask >> k) & 1;
                auto x = polar_encode(u);
                double score = 0;
                for (int k = 0; k < N; ++k) score += x[k] ? -llr[k] : llr[k];
                best = std::max(best, score);
            }
            auto xs = polar_encode(sc.u);
            double got = 0;
            for (int k = 0; k < N; ++k) got += xs[k] ? -llr[k] : llr[k];
            if (std::abs(got - best) > 1e-9 * std::max(1.0, std::abs(best)))
                bad.push_back(fmt("sc-vs-ml case %d N=%d", cases, N));
        }
    }

    if (bad.empty())
        return {true, "staircase m<=3 n<=8, rule equivalence n<=6, 200 sc-vs-ml cases"};
    std::string detail = fmt("%zu failures:", bad.size());
    for (size_t i = 0; i < bad.size() && i < 5; ++i) detail += " " + bad[i];
    return {false, detail};
}

// --------------------------------------------------------------- criterion 7

Criterion criterion7() {
    std::vector<std::string> bad;

    // exact erasure values against the universal enclosure
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < 64; ++t) {
        double e = uni(rng);
        Rat eps(0);
        mpq_set_d(eps.q, e);  // exact dyadic value of the sampled double
        Interval chan(eps, eps);
        for (int n = 1; n <= 8; ++n)
            for (uint32_t i = 0; i < (1u << n); ++i) {
                Path a = unpack_path(i, n);
                Rat exact = z_eval(a, eps);
                Interval enc = z_interval(a, chan);
                if (exact < enc.lo || enc.hi < exact) {
                    bad.push_back(fmt("bec eps#%d n=%d i=%u", t, n, i));
                    if (bad.size() > 4) goto bec_done;
                }
            }
    }
bec_done:
    progress("erasure sandwich done");

    // genie estimates inside the enclosures for the crossover channel
    {
        const BmsChannel ch = BmsChannel::bsc(0.1);
        const Interval z_chan(Rat(3, 5), Rat(3, 5));  // 2 sqrt(0.09)
        const Interval t_chan(Rat(1, 5), Rat(1, 5));  // 2 p
        const uint64_t kTrials = 100000;
        for (int n = 1; n <= 4; ++n)
            for (uint32_t i = 0; i < (1u << n); ++i) {
                Path a = unpack_path(i, n);
                GenieEstimate g = genie_estimate(ch, a, kTrials, 1000 + i + (uint64_t(n) << 32));
                Interval zi = z_interval(a, z_chan);
                Interval ti = t_interval(a, t_chan, z_chan);
                if (g.z_hat < zi.lo.to_double() - 3 * g.z_se ||
                    g.z_hat > zi.hi.to_double() + 3 * g.z_se)
                    bad.push_back(fmt("genie z n=%d i=%u", n, i));
                if (g.t_hat < ti.lo.to_double() - 3 * g.t_se ||
                    g.t_hat > ti.hi.to_double() + 3 * g.t_se)
                    bad.push_back(fmt("genie t n=%d i=%u", n, i));
            }
    }

    if (bad.empty()) return {true, "64 erasure rates x |a|<=8 exact, 30 genie paths within 3 SE"};
    std::string detail = fmt("%zu escapes:", bad.size());
    for (size_t i = 0; i < bad.size() && i < 5; ++i) detail += " " + bad[i];
    return {false, detail};
}

// --------------------------------------------------------------- criterion 8

// pulls the 1024-entry reliability table out of the bundled reference source
std::string extract_reliability_sequence() {
    const std::string src_path =
        std::string(SOURCE_DIR) +
        "/examples/channel_degradation_upgrading_polar_code_quantiz/"
        "r018__jackeysun233__Polar-IDMA__PolarCode.cpp";
    std::ifstream in(src_path);
    if (!in) throw std::runtime_error("reference source missing: " + src_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::vector<size_t> stack;
    std::vector<int> found;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '{') stack.push_back(i);
        if (text[i] == '}' && !stack.empty()) {
            size_t open = stack.back();
            stack.pop_back();
            std::string body = text.substr(open + 1, i - open - 1);
            if (body.find('{') != std::string::npos) continue;
            if (body.find_first_not_of("0123456789,+- \t\r\n") != std::string::npos) continue;
            std::vector<int> vals;
            std::istringstream is(body);
            std::string tok;
            bool ok = true;
            while (std::getline(is, tok, ',')) {
                try {
                    vals.push_back(std::stoi(tok));
                } catch (...) {
                    ok = false;
                    break;
                }
            }
            if (!ok || vals.size() != 1024) continue;
            std::vector<uint8_t> seen(1024, 0);
            for (int v : vals) {
                if (v < 0 || v > 1023 || seen[v]) {
                    ok = false;
                    break;
                }
                seen[v] = 1;
            }
            if (!ok) continue;
            if (!found.empty() && found != vals)
                throw std::runtime_error("conflicting reliability tables in reference source");
            found = vals;
        }
    }
    if (found.empty()) throw std::runtime_error("no reliability table found in reference source");

    std::ofstream out("acceptance_nr_seq.txt");
    for (int v : found) out << v << "\n";
    return "acceptance_nr_seq.txt";
}

// paper indices are 1-based (criterion 2 fixes the convention)
const std::vector<std::pair<uint32_t, uint32_t>> kA1Swap = {
    {719 - 1, 250 - 1}, {840 - 1, 372 - 1}, {907 - 1, 466 - 1},
    {909 - 1, 690 - 1}, {921 - 1, 482 - 1}};

double fer_at(const std::vector<SimResult>& rows, size_t i) {
    return rows[i].frame_errors == 0 ? 0.5 / double(rows[i].frames) : rows[i].fer;
}

// log-linear interpolation of the SNR where FER crosses the target
std::optional<double> snr_at_fer(const std::vector<SimResult>& rows, double target) {
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        double f1 = fer_at(rows, i), f2 = fer_at(rows, i + 1);
        if (f1 >= target && target >= f2 && f1 > f2) {
            double t = (std::log10(f1) - std::log10(target)) /
                       (std::log10(f1) - std::log10(f2));
            return rows[i].snr_db + t * (rows[i + 1].snr_db - rows[i].snr_db);
        }
    }
    return std::nullopt;
}

struct GapRun {
    std::optional<double> gap;
    std::string csv;  // production outputs, digested for the determinism rerun
    std::string note;
};

GapRun run_gap_experiment(const InfoSet& a5g, const InfoSet& a1, uint64_t seed) {
    const double kTargetFer = 1e-2;
    const uint64_t kProbeFrames = 4000, kFrames = 200000;
    const BmsChannel awgn = BmsChannel::biawgn(1.0);

    // coarse probe to find, for each set, the 0.25 dB cell containing the crossing
    auto probe = [&](const InfoSet& info) -> std::optional<double> {
        double prev_snr = 0, prev_fer = 1;
        for (double snr = -1.0; snr <= 4.01; snr += 0.25) {
            auto row = simulate(awgn, {snr}, info, kProbeFrames, seed + 77);
            double fer = fer_at(row, 0);
            progress(fmt("probe K=%d snr=%.2f fer=%.4f", info.K, snr, fer));
            if (fer < kTargetFer && prev_fer >= kTargetFer) return prev_snr;
            prev_snr = snr;
            prev_fer = fer;
        }
        return std::nullopt;
    };

    GapRun out;
    auto cell5g = probe(a5g), cell1 = probe(a1);
    if (!cell5g || !cell1) {
        out.note = "crossing not bracketed in [-1, 4] dB";
        return out;
    }

    // production: the probe's 0.25 dB cell at full depth, widened one step at
    // a time if the borderline probe put the crossing in a neighboring cell;
    // each point is simulated once as its own call so its stream never moves
    auto production = [&](const InfoSet& info, double cell,
                          uint64_t s) -> std::pair<std::optional<double>, std::string> {
        std::map<double, SimResult> cache;
        auto ensure = [&](double snr) {
            if (!cache.count(snr)) cache.emplace(snr, simulate(awgn, {snr}, info, kFrames, s)[0]);
        };
        auto rows_sorted = [&] {
            std::vector<SimResult> rows;
            for (const auto& [snr, row] : cache) rows.push_back(row);
            return rows;
        };
        double lo = cell, hi = cell + 0.25;
        ensure(lo);
        ensure(hi);
        for (int attempt = 0; attempt < 4; ++attempt) {
            auto rows = rows_sorted();
            auto hit = snr_at_fer(rows, kTargetFer);
            if (hit) return {hit, sim_csv(rows)};
            progress(fmt("widening production grid for K=%d", info.K));
            if (fer_at(rows, 0) < kTargetFer)
                ensure(lo -= 0.25);
            else
                ensure(hi += 0.25);
        }
        return {std::nullopt, sim_csv(rows_sorted())};
    };

    auto [s5g, csv5g] = production(a5g, *cell5g, seed);
    auto [s1, csv1] = production(a1, *cell1, seed + 1);
    out.csv = csv5g + csv1;
    if (!s5g || !s1) {
        out.note = "production grid missed the crossing";
        return out;
    }
    out.gap = *s1 - *s5g;
    out.note = fmt("snr@1e-2: %.4f vs %.4f dB at %llu frames/point", *s5g, *s1,
                   (unsigned long long)kFrames);
    return out;
}

// exact dyadic bracket of 2^(e20/20), width 2^-bits
std::pair<Rat, Rat> pow2_bracket(int e20, int bits) {
    Int radicand, root;
    mpz_ui_pow_ui(radicand.z, 2, unsigned(e20 + 20 * bits));
    mpz_root(root.z, radicand.z, 20);  // floor((2^(e20 + 20 bits))^(1/20))
    Int den, root1;
    mpz_ui_pow_ui(den.z, 2, unsigned(bits));
    mpz_add_ui(root1.z, root.z, 1);
    return {Rat(root, den), Rat(root1, den)};
}

// sign of B(better) - B(worse) at beta in [lo, hi], beta > 1; +1 / -1 / 0=unknown
int constraint_sign(const std::vector<int>& c, const std::vector<Rat>& pow_lo,
                    const std::vector<Rat>& pow_hi) {
    Rat val_lo(0), val_hi(0);
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 1) {
            val_lo = val_lo + pow_lo[k];
            val_hi = val_hi + pow_hi[k];
        } else if (c[k] == -1) {
            val_lo = val_lo - pow_hi[k];
            val_hi = val_hi - pow_lo[k];
        }
    }
    if (Rat(0) <= val_lo) return 1;
    if (val_hi < Rat(0)) return -1;
    return 0;
}

Criterion criterion8(const PoDb& db10, uint64_t* rerun_hash) {
    std::string seq = extract_reliability_sequence();
    std::vector<std::string> notes;

    // the literal configuration: K = 512 with the published swap
    std::string literal;
    try {
        build_info_set(10, 512, InfoMethod::from_file(seq), kA1Swap);
        literal = "K=512 literal swap unexpectedly consistent";
    } catch (const std::exception& e) {
        literal = fmt("K=512 literal swap rejected (%s)", e.what());
    }
    notes.push_back(literal);
    bool literal_rejected = literal.find("rejected") != std::string::npos;

    // documented fallback: K = 384 sits inside the consistent swap window
    const int kFallbackK = 384;
    InfoSet a5g = build_info_set(10, kFallbackK, InfoMethod::from_file(seq));
    InfoSet a1 = build_info_set(10, kFallbackK, InfoMethod::from_file(seq), kA1Swap);
    size_t differing = 0;
    for (uint32_t idx : a1.indices)
        if (!std::binary_search(a5g.indices.begin(), a5g.indices.end(), idx)) ++differing;
    bool swap_ok = differing == 5;
    notes.push_back(fmt("K=%d swap differs in %zu indices", kFallbackK, differing));

    const uint64_t kSeed = 20260816;
    GapRun gap = run_gap_experiment(a5g, a1, kSeed);
    notes.push_back(gap.note);
    bool gap_ok = gap.gap && *gap.gap >= 0.15 && *gap.gap <= 0.35;
    if (gap.gap) notes.push_back(fmt("gap=%.4f dB (want 0.25 +/- 0.10)", *gap.gap));
    if (rerun_hash) *rerun_hash = fnv1a(gap.csv);

    // expansion-ordering consistency with every certified pair; two-way
    // certified pairs are Z-equivalent and impose no ordering constraint
    bool beta_ok = true;
    uint64_t checked = 0;
    for (int e20 : {0, 3, 6}) {  // log2 beta = 0, 0.15, 0.30
        std::vector<Rat> pow_lo{Rat(1)}, pow_hi{Rat(1)}, pow_lo2{Rat(1)}, pow_hi2{Rat(1)};
        auto [blo, bhi] = pow2_bracket(e20, 64);
        auto [blo2, bhi2] = pow2_bracket(e20, 256);
        for (int k = 1; k <= 10; ++k) {
            pow_lo.push_back(pow_lo.back() * blo);
            pow_hi.push_back(pow_hi.back() * bhi);
            pow_lo2.push_back(pow_lo2.back() * blo2);
            pow_hi2.push_back(pow_hi2.back() * bhi2);
        }
        for (uint32_t w = 0; w < db10.size() && beta_ok; ++w)
            for (uint32_t b = 0; b < db10.size(); ++b) {
                if (w == b || !db10.has(w, b, REL_Z) || db10.has(b, w, REL_Z)) continue;
                auto c = beta_constraint(unpack_path(w, 10), unpack_path(b, 10));
                ++checked;
                int sign;
                if (e20 == 0) {
                    Rat at_one(0);  // base exactly 1: the value is the coefficient sum
                    for (int ck : c) at_one = at_one + Rat(ck);
                    sign = at_one < Rat(0) ? -1 : 1;
                } else {
                    // base 2^(e20/20) is algebraic of degree 20 > deg c, so a
                    // nonzero constraint cannot vanish there and the 256-bit
                    // bracket provably resolves the sign
                    sign = constraint_sign(c, pow_lo, pow_hi);
                    if (sign == 0) sign = constraint_sign(c, pow_lo2, pow_hi2);
                }
                if (sign <= 0 && !c.empty()) {
                    beta_ok = false;
                    notes.push_back(fmt("beta violation at e20=%d pair %u,%u (sign %d)", e20,
                                        w, b, sign));
                    break;
                }
            }
        progress(fmt("beta consistency log2=%d/20 done", e20));
    }
    notes.push_back(fmt("%llu pair-beta checks", (unsigned long long)checked));

    std::string detail;
    for (const auto& s : notes) detail += (detail.empty() ? "" : "; ") + s;
    return {literal_rejected && swap_ok && gap_ok && beta_ok, detail};
}

// --------------------------------------------------------------- criterion 9

Criterion criterion9(const Nten& first, uint64_t sim_hash_first) {
    progress("rerunning the enumeration for the determinism check");
    Nten second = enumerate_n10();
    bool enum_same = first.export_hash == second.export_hash;

    progress("rerunning the simulation for the determinism check");
    std::string seq = extract_reliability_sequence();
    InfoSet a5g = build_info_set(10, 384, InfoMethod::from_file(seq));
    InfoSet a1 = build_info_set(10, 384, InfoMethod::from_file(seq), kA1Swap);
    GapRun again = run_gap_experiment(a5g, a1, 20260816);
    bool sim_same = fnv1a(again.csv) == sim_hash_first;

    return {enum_same && sim_same,
            fmt("enumeration rerun %s, simulation rerun %s",
                enum_same ? "byte-identical" : "DIFFERS", sim_same ? "byte-identical" : "DIFFERS")};
}

}  // namespace

int main() {
    std::vector<std::pair<int, Criterion>> results;
    auto wall = std::chrono::steady_clock::now();

    auto record = [&](int num, Criterion c, double secs) {
        results.emplace_back(num, c);
        std::printf("criterion %d: %s — %s [%.1fs]\n", num, c.pass ? "PASS" : "FAIL",
                    c.detail.c_str(), secs);
        std::fflush(stdout);
    };

    try {
        auto t0 = std::chrono::steady_clock::now();
        progress("building the n=10 database (criteria 1, 2, 5, 8 share it)");
        Nten n10 = enumerate_n10();
        record(1, criterion1(n10), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        record(2, criterion2(n10.db), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        record(3, criterion3(), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        record(4, criterion4(), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        record(5, criterion5(n10.db), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        record(6, criterion6(), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        record(7, criterion7(), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        uint64_t sim_hash = 0;
        record(8, criterion8(n10.db, &sim_hash), seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        record(9, criterion9(n10, sim_hash), seconds_since(t0));
    } catch (const std::exception& e) {
        std::printf("criterion %zu: FAIL — unhandled: %s\n", results.size() + 1, e.what());
        std::printf("acceptance: aborted after %zu criteria [%.1fs total]\n", results.size(),
                    seconds_since(wall));
        return 1;
    }

    int passed = 0;
    for (const auto& [num, c] : results) passed += c.pass;
    std::printf("acceptance: %d/9 criteria pass [%.1fs total]\n", passed, seconds_since(wall));
    return passed == 9 ? 0 : 1;
}
