#include "polarpo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "polarpo/beta.hpp"

namespace polarpo {

namespace {

// splitmix64 finalizer; chained to key one independent stream per
// (seed, point, frame) so results do not depend on scheduling.
uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t stream_key(uint64_t seed, uint64_t point, uint64_t frame) {
    return mix64(mix64(mix64(seed) ^ point) ^ frame);
}

struct CounterRng {
    uint64_t state;
    double spare = 0;
    bool has_spare = false;

    explicit CounterRng(uint64_t key) : state(key) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() {  // (0, 1], safe under log
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    double gaussian() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double r = std::sqrt(-2.0 * std::log(uniform()));
        double a = 6.283185307179586477 * uniform();
        spare = r * std::sin(a);
        has_spare = true;
        return r * std::cos(a);
    }
};

// One channel LLR under the all-zero codeword (BPSK symbol +1).
double channel_llr(const BmsChannel& ch, CounterRng& rng) {
    switch (ch.model) {
        case ChannelModel::BEC:
            return rng.uniform() <= ch.param ? 0.0 : std::numeric_limits<double>::infinity();
        case ChannelModel::BSC: {
            double m = std::log((1.0 - ch.param) / ch.param);
            return rng.uniform() <= ch.param ? -m : m;
        }
        case ChannelModel::BiAWGN: {
            double y = 1.0 + ch.param * rng.gaussian();
            return 2.0 * y / (ch.param * ch.param);
        }
    }
    throw std::logic_error("unknown channel model");
}

// Check-node combine.  The exact rule is the Jacobian form of
// 2 atanh(tanh(a/2) tanh(b/2)); infinities short-circuit so erasure channels
// work without special casing downstream.
double f_op(double a, double b, bool min_sum) {
    if (std::isinf(a)) return a > 0 ? b : -b;
    if (std::isinf(b)) return b > 0 ? a : -a;
    double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    double m = std::min(std::fabs(a), std::fabs(b));
    if (min_sum) return sign * m;
    return sign * m + std::log1p(std::exp(-std::fabs(a + b))) -
           std::log1p(std::exp(-std::fabs(a - b)));
}

// Variable-node combine given the decoded upper branch bit; opposing
// certainties cancel to an erasure instead of producing inf - inf.
double g_op(double a, double b, uint8_t bit) {
    double s = bit ? -a : a;
    if (std::isinf(s) && std::isinf(b) && (s > 0) != (b > 0)) return 0.0;
    return s + b;
}

void encode_inplace(uint8_t* x, size_t n) {
    for (size_t len = 1; len < n; len <<= 1)
        for (size_t base = 0; base < n; base += 2 * len)
            for (size_t j = 0; j < len; ++j) x[base + j] ^= x[base + len + j];
}

void sc_recurse(const double* llr, size_t n, const uint8_t* frozen, bool min_sum,
                double* scratch, uint8_t* xbits, uint8_t* u, double* dec) {
    if (n == 1) {
        dec[0] = llr[0];
        u[0] = frozen[0] ? 0 : (llr[0] < 0.0 ? 1 : 0);
        return;
    }
    const size_t h = n / 2;
    double* child = scratch;
    for (size_t j = 0; j < h; ++j) child[j] = f_op(llr[j], llr[j + h], min_sum);
    sc_recurse(child, h, frozen, min_sum, scratch + h, xbits, u, dec);

    std::copy(u, u + h, xbits);
    encode_inplace(xbits, h);
    for (size_t j = 0; j < h; ++j) child[j] = g_op(llr[j], llr[j + h], xbits[j]);
    sc_recurse(child, h, frozen + h, min_sum, scratch + h, xbits, u + h, dec + h);
}

bool power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_param(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

BmsChannel BmsChannel::bec(double eps) {
    require_param(eps >= 0.0 && eps <= 1.0, "BmsChannel: erasure rate outside [0, 1]");
    return BmsChannel{ChannelModel::BEC, eps};
}

BmsChannel BmsChannel::bsc(double p) {
    require_param(p >= 0.0 && p <= 0.5, "BmsChannel: crossover outside [0, 1/2]");
    return BmsChannel{ChannelModel::BSC, p};
}

BmsChannel BmsChannel::biawgn(double sigma) {
    require_param(sigma > 0.0, "BmsChannel: sigma must be positive");
    return BmsChannel{ChannelModel::BiAWGN, sigma};
}

double BmsChannel::bhattacharyya() const {
    switch (model) {
        case ChannelModel::BEC: return param;
        case ChannelModel::BSC: return 2.0 * std::sqrt(param * (1.0 - param));
        case ChannelModel::BiAWGN: return std::exp(-1.0 / (2.0 * param * param));
    }
    throw std::logic_error("unknown channel model");
}

double BmsChannel::error_prob() const {
    switch (model) {
        case ChannelModel::BEC: return param / 2.0;
        case ChannelModel::BSC: return param;
        case ChannelModel::BiAWGN: return 0.5 * std::erfc(1.0 / (param * std::sqrt(2.0)));
    }
    throw std::logic_error("unknown channel model");
}

std::vector<uint8_t> polar_encode(std::vector<uint8_t> u) {
    if (!power_of_two(u.size())) throw std::invalid_argument("polar_encode: length not a power of two");
    for (uint8_t b : u)
        if (b > 1) throw std::invalid_argument("polar_encode: input is not a bit vector");
    encode_inplace(u.data(), u.size());
    return u;
}

ScResult sc_decode(const std::vector<double>& llr, const std::vector<uint8_t>& frozen,
                   bool min_sum) {
    const size_t n = llr.size();
    if (!power_of_two(n)) throw std::invalid_argument("sc_decode: length not a power of two");
    if (frozen.size() != n) throw std::invalid_argument("sc_decode: frozen mask size mismatch");
    for (double v : llr)
        if (std::isnan(v)) throw std::invalid_argument("sc_decode: NaN LLR");

    ScResult r;
    r.u.assign(n, 0);
    r.llr.assign(n, 0.0);
    if (n == 1) {
        r.llr[0] = llr[0];
        r.u[0] = frozen[0] ? 0 : (llr[0] < 0.0 ? 1 : 0);
        return r;
    }
    std::vector<double> scratch(n);  // level sizes sum to n - 1
    std::vector<uint8_t> xbits(n / 2);
    sc_recurse(llr.data(), n, frozen.data(), min_sum, scratch.data(), xbits.data(),
               r.u.data(), r.llr.data());
    return r;
}

std::vector<std::pair<Rat, Rat>> bec_exact_params(int n, const Rat& eps) {
    if (n < 0 || n > 12) throw std::invalid_argument("bec_exact_params: n outside [0, 12]");
    if (eps.sign() < 0 || Rat(1) < eps)
        throw std::invalid_argument("bec_exact_params: erasure rate outside [0, 1]");
    std::vector<Rat> z{eps};
    Rat two(2);
    for (int level = 0; level < n; ++level) {
        std::vector<Rat> nxt(z.size() * 2);
        for (size_t i = 0; i < z.size(); ++i) {
            Rat sq = z[i] * z[i];
            nxt[2 * i] = two * z[i] - sq;  // first path bit is the outer index bit
            nxt[2 * i + 1] = std::move(sq);
        }
        z = std::move(nxt);
    }
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(z.size());
    for (Rat& v : z) {
        Rat t = v;
        out.emplace_back(std::move(v), std::move(t));
    }
    return out;
}

GenieEstimate genie_estimate(const BmsChannel& ch, const Path& alpha, uint64_t trials,
                             uint64_t seed) {
    if (trials < 1000) throw std::invalid_argument("genie_estimate: need at least 1000 trials");
    if (alpha.size() > 20) throw std::invalid_argument("genie_estimate: path too long to sample");

    const size_t draws = size_t(1) << alpha.size();
    std::vector<double> buf(draws);
    double t_sum = 0, t_sq = 0, z_sum = 0, z_sq = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        CounterRng rng(stream_key(seed, 0, t));
        for (size_t i = 0; i < draws; ++i) buf[i] = channel_llr(ch, rng);
        size_t len = draws;
        for (size_t k = 0; k < alpha.size(); ++k) {
            len /= 2;
            if (alpha[k] == 0)
                for (size_t i = 0; i < len; ++i) buf[i] = f_op(buf[2 * i], buf[2 * i + 1], false);
            else
                for (size_t i = 0; i < len; ++i) buf[i] = g_op(buf[2 * i], buf[2 * i + 1], 0);
        }
        double l = buf[0];
        double ts = l < 0 ? 2.0 : (l == 0 ? 1.0 : 0.0);
        double zs = std::exp(-l / 2.0);
        t_sum += ts;
        t_sq += ts * ts;
        z_sum += zs;
        z_sq += zs * zs;
    }
    GenieEstimate g;
    g.trials = trials;
    const double m = static_cast<double>(trials);
    g.t_hat = t_sum / m;
    g.z_hat = z_sum / m;
    double t_var = std::max(0.0, (t_sq - m * g.t_hat * g.t_hat) / (m - 1));
    double z_var = std::max(0.0, (z_sq - m * g.z_hat * g.z_hat) / (m - 1));
    g.t_se = std::sqrt(t_var / m);
    g.z_se = std::sqrt(z_var / m);
    return g;
}

InfoSet build_info_set(int n, int K, const InfoMethod& method,
                       const std::vector<std::pair<uint32_t, uint32_t>>& mods) {
    if (n < 0 || n > 20) throw std::invalid_argument("build_info_set: n outside [0, 20]");
    const uint32_t size = uint32_t(1) << n;
    if (K < 0 || uint32_t(K) > size) throw std::invalid_argument("build_info_set: K outside [0, 2^n]");

    std::vector<uint32_t> picked;
    switch (method.kind) {
        case InfoMethod::bec: {
            Rat eps;
            mpq_set_d(eps.q, method.param);
            auto params = bec_exact_params(n, eps);
            std::vector<uint32_t> order(size);
            for (uint32_t i = 0; i < size; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
                if (!(params[a].first == params[b].first)) return params[a].first < params[b].first;
                return a > b;
            });
            picked.assign(order.begin(), order.begin() + K);
            break;
        }
        case InfoMethod::beta: {
            if (!(method.param > 0)) throw std::invalid_argument("build_info_set: beta must be positive");
            std::vector<double> w(size);
            for (uint32_t i = 0; i < size; ++i)
                w[i] = beta_weight_d(unpack_path(i, n), method.param);
            std::vector<uint32_t> order(size);
            for (uint32_t i = 0; i < size; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
                if (w[a] != w[b]) return w[a] > w[b];
                return a > b;
            });
            picked.assign(order.begin(), order.begin() + K);
            break;
        }
        case InfoMethod::file: {
            std::ifstream in(method.path);
            if (!in) throw std::runtime_error("build_info_set: cannot open " + method.path);
            std::vector<uint32_t> seq;
            std::vector<uint8_t> seen(size, 0);
            long v;
            while (in >> v) {
                if (v < 0) throw std::runtime_error("build_info_set: negative index in " + method.path);
                if (v >= long(size)) continue;  // longer universal sequence: keep the subsequence < 2^n
                if (seen[size_t(v)]) throw std::runtime_error("build_info_set: duplicate index in " + method.path);
                seen[size_t(v)] = 1;
                seq.push_back(uint32_t(v));
            }
            if (seq.size() < size)
                throw std::runtime_error("build_info_set: sequence shorter than 2^n after filtering");
            picked.assign(seq.end() - K, seq.end());  // most reliable entries come last
            break;
        }
        default:
            throw std::invalid_argument("build_info_set: unknown method");
    }

    std::sort(picked.begin(), picked.end());
    for (const auto& [out_idx, in_idx] : mods) {
        auto it = std::lower_bound(picked.begin(), picked.end(), out_idx);
        if (it == picked.end() || *it != out_idx)
            throw std::runtime_error("build_info_set: mod removes index " + std::to_string(out_idx) +
                                     " which is not in the set");
        picked.erase(it);
        if (in_idx >= size)
            throw std::invalid_argument("build_info_set: mod index " + std::to_string(in_idx) +
                                        " out of range");
        auto pos = std::lower_bound(picked.begin(), picked.end(), in_idx);
        if (pos != picked.end() && *pos == in_idx)
            throw std::runtime_error("build_info_set: duplicate index " + std::to_string(in_idx) +
                                     " after mods");
        picked.insert(pos, in_idx);
    }

    InfoSet s;
    s.n = n;
    s.K = K;
    s.indices = std::move(picked);
    return s;
}

std::vector<SimResult> simulate(const BmsChannel& base, const std::vector<double>& points,
                                const InfoSet& info, uint64_t frames, uint64_t seed,
                                bool min_sum) {
    if (frames < 1) throw std::invalid_argument("simulate: need at least one frame");
    if (info.n < 0 || info.n > 20) throw std::invalid_argument("simulate: bad info set");
    const size_t N = size_t(1) << info.n;

    std::vector<uint8_t> frozen(N, 1);
    for (uint32_t idx : info.indices) {
        if (idx >= N) throw std::invalid_argument("simulate: info index out of range");
        frozen[idx] = 0;
    }

    std::vector<SimResult> out;
    std::vector<double> llr(N);
    for (size_t p = 0; p < points.size(); ++p) {
        BmsChannel ch = base;
        if (base.model == ChannelModel::BiAWGN)
            ch.param = std::sqrt(1.0 / (2.0 * std::pow(10.0, points[p] / 10.0)));
        else
            ch = base.model == ChannelModel::BEC ? BmsChannel::bec(points[p])
                                                 : BmsChannel::bsc(points[p]);

        uint64_t fe = 0, be = 0;
        for (uint64_t f = 0; f < frames; ++f) {
            CounterRng rng(stream_key(seed, p, f));
            for (size_t i = 0; i < N; ++i) llr[i] = channel_llr(ch, rng);
            ScResult r = sc_decode(llr, frozen, min_sum);
            uint64_t bad = 0;
            for (uint32_t idx : info.indices)
                if (r.u[idx] != 0 || r.llr[idx] == 0.0) ++bad;
            if (bad) ++fe;
            be += bad;
        }
        SimResult res;
        res.snr_db = points[p];
        res.frames = frames;
        res.frame_errors = fe;
        res.bit_errors = be;
        res.fer = double(fe) / double(frames);
        res.ber = info.indices.empty() ? 0.0 : double(be) / (double(frames) * double(info.indices.size()));
        res.fer_ci95 = 1.96 * std::sqrt(res.fer * (1.0 - res.fer) / double(frames));
        res.seed = seed;
        out.push_back(res);
    }
    return out;
}

std::string sim_csv(const std::vector<SimResult>& rows) {
    std::string s = "snr_db,frames,frame_errors,fer,fer_ci95,ber,seed\n";
    char line[256];
    for (const SimResult& r : rows) {
        std::snprintf(line, sizeof line, "%.10g,%llu,%llu,%.10g,%.10g,%.10g,%llu\n", r.snr_db,
                      static_cast<unsigned long long>(r.frames),
                      static_cast<unsigned long long>(r.frame_errors), r.fer, r.fer_ci95, r.ber,
                      static_cast<unsigned long long>(r.seed));
        s += line;
    }
    return s;
}

}  // namespace polarpo
