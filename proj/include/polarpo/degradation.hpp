#pragma once
// The known channel-degradation partial order on equal-length paths: the
// closure of two rewrite moves, (g1) flip a 0 to 1, (g2) replace an adjacent
// "01" by "10". Decided by BFS over the 2^n universe; a closed-form
// prefix-count test is provided as a fast path and cross-checked in tests.

#include <cstdint>
#include <vector>

#include "polarpo/path.hpp"

namespace polarpo {

struct PoDb;

enum class DegDir { LEQ, GEQ, EQUAL, INCOMPARABLE };

struct RewriteStep {
    enum Kind : uint8_t { flip, swap } kind;  // flip: 0->1 at pos; swap: "01"->"10" at pos,pos+1
    int pos = 0;                              // 0-based
};

struct DegVerdict {
    bool comparable = false;
    DegDir direction = DegDir::INCOMPARABLE;
    std::vector<RewriteStep> trace;  // replays the smaller path into the larger
};

// Full verdict with trace. Lengths must match; n <= 20.
DegVerdict deg_leq(const Path& alpha, const Path& gamma);

// BFS reachability alpha -> gamma under {g1, g2}; the definitional oracle.
bool deg_leq_bfs(const Path& alpha, const Path& gamma);

// Closed form: alpha ≼ gamma iff every prefix of gamma has at least as many
// ones as the same-length prefix of alpha.
bool deg_dominates_fast(const Path& alpha, const Path& gamma);

// Bitset (one word per 64 indices) of all packed paths reachable from packed
// `alpha` by rewrite moves, including alpha itself. Used for bulk db builds.
std::vector<uint64_t> deg_upset(int n, uint32_t alpha_packed);

// Replays a trace from `start`; throws if any step is inapplicable.
Path apply_trace(const Path& start, const std::vector<RewriteStep>& trace);

// Opt-in saturation with the suffix-promotion rule: from premises
// a ≼ g and a·t·1^m ≼ g·t·0^m (shorter lengths), adds a·t·e·1^m ≼ g·t·e·0^m
// for every completion e. Returns a new database; degradation kind only.
PoDb deg_closure_rule3(const PoDb& db);

}  // namespace polarpo
