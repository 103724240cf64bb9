#pragma once
// Polar encoding, successive-cancellation decoding, exact BEC synthesized
// parameters, genie-aided Monte Carlo parameter estimation, information-set
// construction, and an all-zero-codeword link simulation with a counter-based
// RNG for scheduling-independent reproducibility.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polarpo/path.hpp"
#include "polarpo/poly.hpp"

namespace polarpo {

enum class ChannelModel { BEC, BSC, BiAWGN };

struct BmsChannel {
    ChannelModel model;
    double param;  // BEC erasure rate / BSC crossover / BiAWGN noise sigma

    static BmsChannel bec(double eps);     // eps in [0, 1]
    static BmsChannel bsc(double p);       // p in [0, 1/2]
    static BmsChannel biawgn(double sigma);  // sigma > 0

    double bhattacharyya() const;  // BEC: eps; BSC: 2 sqrt(p(1-p)); BiAWGN: exp(-1/(2 sigma^2))
    double error_prob() const;     // BEC: eps/2; BSC: p; BiAWGN: Q(1/sigma)
};

// x = u G over GF(2) with G the n-fold Kronecker power of [[1,0],[1,1]] in
// natural index order (no bit reversal).  G is an involution, so the same
// call inverts the map.
std::vector<uint8_t> polar_encode(std::vector<uint8_t> u);

struct ScResult {
    std::vector<uint8_t> u;   // decisions; frozen positions forced to 0
    std::vector<double> llr;  // decision LLR for every index, before forcing
};

// Successive cancellation over channel LLRs (positive favors bit 0).  Check
// combines use the exact tanh rule by default, the min-sum approximation when
// the flag is set.  Infinite LLRs are legal (erasure channels); a zero
// decision LLR resolves to 0, and the caller can see the tie through
// ScResult::llr.  frozen is a 0/1 mask over all N indices.
ScResult sc_decode(const std::vector<double>& llr, const std::vector<uint8_t>& frozen,
                   bool min_sum = false);

// Per-index (Z, 2 P_e) of the 2^n channels synthesized from BEC(eps), exact.
// Both components equal the synthesized erasure rate — every fidelity
// parameter of an erasure channel collapses to it — computed by the
// length-doubling recursion z -> {2z - z^2, z^2} in index order.
std::vector<std::pair<Rat, Rat>> bec_exact_params(int n, const Rat& eps);

struct GenieEstimate {
    double t_hat = 0, t_se = 0;  // T = 2 P_e, sample mean and standard error
    double z_hat = 0, z_se = 0;  // Bhattacharyya, sample mean and standard error
    uint64_t trials = 0;
};

// Monte Carlo estimate of the parameters of W^alpha via genie-aided combining
// under the all-zero codeword: each trial folds 2^|alpha| independent channel
// LLRs through the path's transform steps.  The T estimator scores a sample 2
// on a sign error and 1 on a zero LLR, making it unbiased for 2 P_e under an
// optimal tie-splitting decision; the Z estimator is the mean of exp(-L/2),
// unbiased for the Bhattacharyya parameter.
GenieEstimate genie_estimate(const BmsChannel& ch, const Path& alpha, uint64_t trials,
                             uint64_t seed);

struct InfoSet {
    int n = 0;
    int K = 0;
    std::vector<uint32_t> indices;  // sorted ascending, all distinct, in [0, 2^n)
};

struct InfoMethod {
    enum Kind { bec, beta, file } kind;
    double param = 0;  // bec: erasure rate; beta: expansion base
    std::string path;  // file: one index per line, ascending reliability

    static InfoMethod from_bec(double eps) { return {bec, eps, {}}; }
    static InfoMethod from_beta(double b) { return {beta, b, {}}; }
    static InfoMethod from_file(std::string p) { return {file, 0, std::move(p)}; }
};

// Top-K most reliable indices: bec picks the K smallest exact synthesized
// erasure rates, beta the K largest expansion weights, file the K last
// entries of the reliability sequence (least reliable first; entries >= 2^n
// are skipped so a longer universal sequence works for any smaller n).
// Score ties break toward the higher index.  mods are (out, in) swaps applied
// verbatim afterwards; a swap that removes an absent index or duplicates a
// present one is an error.
InfoSet build_info_set(int n, int K, const InfoMethod& method,
                       const std::vector<std::pair<uint32_t, uint32_t>>& mods = {});

struct SimResult {
    double snr_db = 0;  // BiAWGN: Es/N0 in dB; BEC/BSC: the channel parameter
    uint64_t frames = 0, frame_errors = 0, bit_errors = 0;
    double fer = 0, ber = 0;
    double fer_ci95 = 0;  // 95% normal-approximation half-width
    uint64_t seed = 0;
};

// All-zero-codeword Monte Carlo (valid by channel symmetry) over a sweep of
// channel points: Es/N0 in dB for BiAWGN (sigma = sqrt(1 / (2 * 10^(snr/10)))
// with unit symbol energy, LLR = 2y/sigma^2), raw channel parameters for
// BEC/BSC.  A frame fails when any information index decodes nonzero or its
// decision LLR is exactly zero (failure to resolve an erasure); such bits
// also count as bit errors.  Each (seed, point, frame) keys an independent
// RNG stream, so results are bit-identical for a fixed seed regardless of
// scheduling.
std::vector<SimResult> simulate(const BmsChannel& base, const std::vector<double>& points,
                                const InfoSet& info, uint64_t frames, uint64_t seed,
                                bool min_sum = false);

// CSV with header: snr_db,frames,frame_errors,fer,fer_ci95,ber,seed
std::string sim_csv(const std::vector<SimResult>& rows);

}  // namespace polarpo
