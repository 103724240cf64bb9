#pragma once
// Derivation closure over the path orders.  Generator facts (degradation BFS,
// exact polynomial certificates, block-shape facts) are combined with the
// structural rules — lifting, transitivity, common-affix extension, shared-block
// insertion — and iterated to a fixed point across every length up to n.
// Also a targeted backward search producing a replayable text proof for one pair.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarpo/path.hpp"
#include "polarpo/podb.hpp"

namespace polarpo {

struct Relation {
    uint8_t kind = 0;  // one RelKind bit
    Path worse, better;
    // One derivation step per line, premises indented under their conclusion.
    std::string provenance;
};

struct RuleConfig {
    // structural rules
    bool lift_deg = true;        // degradation pairs enter Z and P
    bool lift_into_bec = true;   // Z and P pairs enter BEC
    bool transitive = true;      // transitive closure within each kind
    bool suffix_rules = true;    // shared prefix + all-ones (Z) / all-zeros (P) suffix
    bool insertion_rules = true; // shared mid-block insertion (Z / P)
    int tau_budget = 3;          // longest inserted shared block
    // generator fact sources
    bool gen_deg = true;         // degradation BFS at every length
    bool gen_z = true;           // generic Z certificates (batch pipeline)
    bool gen_p = true;           // generic P certificates (batch pipeline)
    bool gen_staircase = true;   // block-shape facts for 0^m1^k vs 1^p0^q
    bool gen_counting = false;   // zero/one-count certificates
    // extra premises, e.g. to replay a single-rule closure from given facts
    std::vector<Relation> seeds;
    uint64_t max_relations = 80'000'000;  // guard; exceeding it flags the db partial
};

// Fixed-point closure at length n; derives through all shorter lengths
// internally.  n <= 12 (resource guard).
PoDb saturate(int n, const RuleConfig& cfg = {});

// Backward search for one pair, trying cheap specific rules before generic
// certificates before structural decompositions.  Returns the first derivation
// found in that canonical order, or nullopt (pair may still be true — the rule
// set is not complete).  kind is one RelKind bit; paths must have equal length.
std::optional<Relation> derive_pair(const Path& worse, const Path& better, uint8_t kind);

// The three one-step Z-certificate formulations, exposed for the equivalence
// tests.  Each decides its exact premise; a pair outside a rule's shape is false.
bool z_cert_edge_ones(const Path& worse, const Path& better);  // worse=g1, better=1a: g dominates a on the BEC
bool z_cert_wrap_ones(const Path& worse, const Path& better);  // 1.worse dominates better.1 (the generic criterion)
bool z_cert_head_one(const Path& worse, const Path& better);   // better=1a: worse dominates a1

}  // namespace polarpo
