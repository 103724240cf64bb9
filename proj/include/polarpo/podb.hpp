#pragma once
// Pairwise relation database over all 2^n length-n paths, keyed by channel
// index (MSB-first bit order). Stores, for every ordered pair (worse, better),
// a bitmask of the relation kinds that have been certified.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polarpo/path.hpp"

namespace polarpo {

enum RelKind : uint8_t {
    REL_DEG = 1,  // channel degradation (generator closure)
    REL_Z = 2,    // Bhattacharyya ordering over all BMSCs
    REL_P = 4,    // error-probability ordering over all BMSCs
    REL_BEC = 8,  // erasure-channel ordering
};

struct PoDb {
    int n = 0;
    bool partial = false;          // a resource budget cut the build short
    std::string config;            // human-readable build configuration
    std::vector<uint8_t> mask;     // (worse << n) | better -> kind bitmask

    PoDb() = default;
    explicit PoDb(int n_);

    uint32_t size() const { return 1u << n; }
    uint8_t get(uint32_t worse, uint32_t better) const {
        return mask[(static_cast<size_t>(worse) << n) | better];
    }
    void add(uint32_t worse, uint32_t better, uint8_t kinds) {
        mask[(static_cast<size_t>(worse) << n) | better] |= kinds;
    }
    bool has(uint32_t worse, uint32_t better, uint8_t kind) const {
        return (get(worse, better) & kind) != 0;
    }
    uint64_t count(uint8_t kind) const;                 // ordered pairs carrying `kind`
    uint64_t count_diff(uint8_t a, uint8_t b) const;    // pairs with a but not b

    bool operator==(const PoDb& o) const { return n == o.n && mask == o.mask; }
};

struct BuildConfig {
    bool deg_item3 = false;   // extra saturation pass over the suffix-promotion rule
    int grid_points = 257;
    double grid_tol = -1e-9;  // below this at any grid point => certified negative
    bool collect_method_stats = true;
};

// Degradation pairs (and their Z/P/BEC liftings) plus the generic
// bhattacharyya-dominance pairs, certified by the exact two-stage pipeline.
PoDb build(int n, const BuildConfig& cfg = {});

struct DbStats {
    uint64_t universe_pairs = 0;  // C(2^n, 2)
    uint64_t deg = 0;             // comparable under degradation
    uint64_t z = 0;               // ordered pairs with a Z certificate
    uint64_t z_beyond_deg = 0;    // Z-certified but degradation-incomparable
    uint64_t unknown = 0;         // unordered pairs with no relation either way
};
DbStats stats(const PoDb& db);

// The five index pairs singled out in the n=10 study, (better, worse) given
// 1-based; true iff under (offset, order) every pair is Z-certified but not
// degradation-comparable.
bool contains_pu(const PoDb& db, int index_offset = 1, BitOrder order = BitOrder::msb_first);

enum class DbFormat { json, binary, dot };
void export_db(const PoDb& db, DbFormat fmt, const std::string& path,
               uint8_t dot_kind = REL_DEG);
PoDb import_db(const std::string& path);  // json or binary, sniffed

}  // namespace polarpo
