#include "polarpo/degradation.hpp"

#include <queue>
#include <stdexcept>

#include "polarpo/podb.hpp"

namespace polarpo {

namespace {

void check_lengths(const Path& a, const Path& g) {
    if (a.size() != g.size())
        throw std::invalid_argument("degradation compares equal-length paths only");
    if (a.size() > 20) throw std::invalid_argument("path length above BFS limit of 20");
}

inline bool bit_of(uint32_t packed, int n, int pos) {  // pos is path position
    return (packed >> (n - 1 - pos)) & 1u;
}

// Greedy rewrite of `cur` into `g` (valid whenever cur ≼ g): at the leftmost
// mismatch g has a 1; pull cur's next 1 leftward by swaps, or flip if none.
std::vector<RewriteStep> make_trace(Path cur, const Path& g) {
    std::vector<RewriteStep> trace;
    const int n = static_cast<int>(cur.size());
    while (!(cur == g)) {
        int k = 0;
        while (cur.b[k] == g.b[k]) ++k;
        int j = -1;
        for (int t = k + 1; t < n; ++t)
            if (cur.b[t] == 1) { j = t; break; }
        if (j < 0) {
            cur.b[k] = 1;
            trace.push_back({RewriteStep::flip, k});
        } else {
            for (int t = j; t > k; --t) {
                cur.b[t - 1] = 1;
                cur.b[t] = 0;
                trace.push_back({RewriteStep::swap, t - 1});
            }
        }
    }
    return trace;
}

}  // namespace

std::vector<uint64_t> deg_upset(int n, uint32_t alpha_packed) {
    const uint32_t size = 1u << n;
    std::vector<uint64_t> seen((size + 63) / 64, 0);
    auto test = [&](uint32_t x) { return (seen[x >> 6] >> (x & 63)) & 1u; };
    auto set = [&](uint32_t x) { seen[x >> 6] |= uint64_t(1) << (x & 63); };
    std::queue<uint32_t> q;
    set(alpha_packed);
    q.push(alpha_packed);
    while (!q.empty()) {
        uint32_t x = q.front();
        q.pop();
        for (int b = 0; b < n; ++b) {
            if (!((x >> b) & 1u)) {
                uint32_t y = x | (1u << b);  // flip a 0 to 1
                if (!test(y)) { set(y); q.push(y); }
            }
            if (b + 1 < n && ((x >> b) & 1u) && !((x >> (b + 1)) & 1u)) {
                uint32_t y = x + (1u << (b + 1)) - (1u << b);  // move a 1 one step earlier
                if (!test(y)) { set(y); q.push(y); }
            }
        }
    }
    return seen;
}

bool deg_leq_bfs(const Path& alpha, const Path& gamma) {
    check_lengths(alpha, gamma);
    const int n = static_cast<int>(alpha.size());
    uint32_t a = pack_path(alpha), g = pack_path(gamma);
    std::vector<uint64_t> up = deg_upset(n, a);
    return (up[g >> 6] >> (g & 63)) & 1u;
}

bool deg_dominates_fast(const Path& alpha, const Path& gamma) {
    check_lengths(alpha, gamma);
    int ca = 0, cg = 0;
    for (size_t k = 0; k < alpha.size(); ++k) {
        ca += alpha.b[k];
        cg += gamma.b[k];
        if (ca > cg) return false;
    }
    return true;
}

DegVerdict deg_leq(const Path& alpha, const Path& gamma) {
    check_lengths(alpha, gamma);
    DegVerdict v;
    if (alpha == gamma) {
        v.comparable = true;
        v.direction = DegDir::EQUAL;
        return v;
    }
    if (deg_leq_bfs(alpha, gamma)) {
        v.comparable = true;
        v.direction = DegDir::LEQ;
        v.trace = make_trace(alpha, gamma);
    } else if (deg_leq_bfs(gamma, alpha)) {
        v.comparable = true;
        v.direction = DegDir::GEQ;
        v.trace = make_trace(gamma, alpha);
    }
    return v;
}

Path apply_trace(const Path& start, const std::vector<RewriteStep>& trace) {
    Path p = start;
    const int n = static_cast<int>(p.size());
    for (const RewriteStep& s : trace) {
        if (s.kind == RewriteStep::flip) {
            if (s.pos < 0 || s.pos >= n || p.b[s.pos] != 0)
                throw std::invalid_argument("flip step inapplicable at position " +
                                            std::to_string(s.pos));
            p.b[s.pos] = 1;
        } else {
            if (s.pos < 0 || s.pos + 1 >= n || p.b[s.pos] != 0 || p.b[s.pos + 1] != 1)
                throw std::invalid_argument("swap step inapplicable at position " +
                                            std::to_string(s.pos));
            p.b[s.pos] = 1;
            p.b[s.pos + 1] = 0;
        }
    }
    return p;
}

namespace {

// Dense DEG relation at one length: rel[i] = bitset of j with i ≼ j.
struct DenseRel {
    int n = 0;
    uint32_t size = 0;
    size_t words = 0;
    std::vector<uint64_t> rows;

    explicit DenseRel(int n_) : n(n_), size(1u << n_), words((size + 63) / 64) {
        rows.assign(static_cast<size_t>(size) * words, 0);
    }
    uint64_t* row(uint32_t i) { return rows.data() + static_cast<size_t>(i) * words; }
    const uint64_t* row(uint32_t i) const {
        return rows.data() + static_cast<size_t>(i) * words;
    }
    bool has(uint32_t i, uint32_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    void add(uint32_t i, uint32_t j) { row(i)[j >> 6] |= uint64_t(1) << (j & 63); }

    void close_transitive() {
        // Repeated row-OR sweep to a fixed point (relation is nearly closed on entry).
        bool changed = true;
        while (changed) {
            changed = false;
            for (uint32_t i = 0; i < size; ++i) {
                uint64_t* ri = row(i);
                for (uint32_t j = 0; j < size; ++j) {
                    if (j == i || !((ri[j >> 6] >> (j & 63)) & 1u)) continue;
                    const uint64_t* rj = row(j);
                    for (size_t w = 0; w < words; ++w) {
                        uint64_t nv = ri[w] | rj[w];
                        if (nv != ri[w]) { ri[w] = nv; changed = true; }
                    }
                }
            }
        }
    }
};

DenseRel base_deg(int n) {
    DenseRel r(n);
    for (uint32_t i = 0; i < r.size; ++i) {
        std::vector<uint64_t> up = deg_upset(n, i);
        uint64_t* ri = r.row(i);
        for (size_t w = 0; w < r.words; ++w) ri[w] = up[w];
    }
    return r;
}

int trailing_ones(uint32_t x, int n) {  // of the path, i.e. low bits of the packed form
    int c = 0;
    while (c < n && ((x >> c) & 1u)) ++c;
    return c;
}

int trailing_zeros_path(uint32_t x, int n) {
    int c = 0;
    while (c < n && !((x >> c) & 1u)) ++c;
    return c;
}

}  // namespace

PoDb deg_closure_rule3(const PoDb& db) {
    const int n = db.n;
    // Saturate lengths bottom-up: the rule's premises live at strictly
    // shorter lengths, so each level is finished before it is consumed.
    std::vector<DenseRel> levels;
    levels.reserve(n + 1);
    levels.emplace_back(0);  // unused placeholder for length 0
    for (int L = 1; L <= n; ++L) {
        DenseRel rel = base_deg(L);
        // Premise pair (u ≼ v) at length lb < L with u = a t 1^m, v = g t 0^m,
        // a ≼ g at some split: insert every completion e of length L - lb
        // ahead of the constant suffix.
        for (int lb = 2; lb < L; ++lb) {
            const DenseRel& prem = levels[lb];
            const int le = L - lb;
            for (uint32_t u = 0; u < prem.size; ++u) {
                for (uint32_t v = 0; v < prem.size; ++v) {
                    if (u == v || !prem.has(u, v)) continue;
                    int max_m = std::min(trailing_ones(u, lb), trailing_zeros_path(v, lb));
                    for (int m = 1; m <= max_m; ++m) {
                        bool split_ok = false;
                        for (int la = 1; la + m <= lb && !split_ok; ++la) {
                            // path prefix of length la = high bits of the packed form
                            uint32_t ua = u >> (lb - la), va = v >> (lb - la);
                            if (!levels[la].has(ua, va)) continue;
                            // middle parts (t) must coincide
                            uint32_t umid = (u >> m) & ((1u << (lb - m - la)) - 1u);
                            uint32_t vmid = (v >> m) & ((1u << (lb - m - la)) - 1u);
                            if (umid == vmid) split_ok = true;
                        }
                        if (!split_ok) continue;
                        uint32_t u_head = u >> m, v_head = v >> m;
                        uint32_t ones = (1u << m) - 1u;
                        for (uint32_t e = 0; e < (1u << le); ++e) {
                            uint32_t nu = (((u_head << le) | e) << m) | ones;
                            uint32_t nv = ((v_head << le) | e) << m;
                            rel.add(nu, nv);
                        }
                    }
                }
            }
        }
        rel.close_transitive();
        levels.push_back(std::move(rel));
    }
    PoDb out(n);
    out.config = db.config.empty() ? "deg+item3" : db.config + "+item3";
    const DenseRel& top = levels[n];
    for (uint32_t i = 0; i < top.size; ++i)
        for (uint32_t j = 0; j < top.size; ++j)
            if (i != j && top.has(i, j)) out.add(i, j, REL_DEG);
    return out;
}

}  // namespace polarpo
