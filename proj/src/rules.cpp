#include "polarpo/rules.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "polarpo/bec.hpp"
#include "polarpo/bounds.hpp"
#include "polarpo/degradation.hpp"
#include "polarpo/families.hpp"

namespace polarpo {
namespace {

constexpr int kSlotDeg = 0, kSlotZ = 1, kSlotP = 2, kSlotBec = 3;

int slot_of(uint8_t kind) {
    switch (kind) {
        case REL_DEG: return kSlotDeg;
        case REL_Z: return kSlotZ;
        case REL_P: return kSlotP;
        case REL_BEC: return kSlotBec;
    }
    throw std::invalid_argument("relation kind must be a single known bit");
}

const char* kind_name(uint8_t kind) {
    switch (kind) {
        case REL_DEG: return "DEG";
        case REL_Z: return "Z";
        case REL_P: return "P";
        case REL_BEC: return "BEC";
    }
    return "?";
}

uint32_t ones_mask(int k) { return k <= 0 ? 0u : (uint32_t(1) << k) - 1; }

// Leading/trailing run of `bit` in the len-bit MSB-first encoding of v.
int lead_run(uint32_t v, int len, int bit) {
    int k = 0;
    while (k < len && int((v >> (len - 1 - k)) & 1u) == bit) ++k;
    return k;
}
int trail_run(uint32_t v, int len, int bit) {
    int k = 0;
    while (k < len && int((v >> k) & 1u) == bit) ++k;
    return k;
}

struct BitMat {
    uint32_t dim = 0;
    uint32_t words = 0;
    std::vector<uint64_t> bits;

    void init(uint32_t d) {
        dim = d;
        words = (d + 63) >> 6;
        bits.assign(size_t(dim) * words, 0);
    }
    uint64_t* row(uint32_t i) { return &bits[size_t(i) * words]; }
    const uint64_t* row(uint32_t i) const { return &bits[size_t(i) * words]; }
    bool get(uint32_t i, uint32_t j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1;
    }
    bool set(uint32_t i, uint32_t j) {
        uint64_t& w = row(i)[j >> 6];
        const uint64_t m = uint64_t(1) << (j & 63);
        if (w & m) return false;
        w |= m;
        return true;
    }
    void clear(uint32_t i, uint32_t j) { row(i)[j >> 6] &= ~(uint64_t(1) << (j & 63)); }
    uint64_t count() const {
        uint64_t c = 0;
        for (uint64_t w : bits) c += std::popcount(w);
        return c;
    }
};

// dst |= src, elementwise; true if dst grew.
bool or_into(BitMat& dst, const BitMat& src) {
    bool changed = false;
    for (size_t i = 0; i < dst.bits.size(); ++i) {
        const uint64_t add = src.bits[i] & ~dst.bits[i];
        if (add) {
            dst.bits[i] |= add;
            changed = true;
        }
    }
    return changed;
}

// row[i] |= row[k] for every stored edge (i, k), repeated to fixpoint.
bool close_transitive(BitMat& m) {
    bool any = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (uint32_t i = 0; i < m.dim; ++i) {
            uint64_t* ri = m.row(i);
            for (uint32_t w = 0; w < m.words; ++w) {
                uint64_t word = ri[w];  // snapshot; bits added below are caught next pass
                while (word) {
                    const uint32_t k = (w << 6) + uint32_t(std::countr_zero(word));
                    word &= word - 1;
                    if (k == i) continue;
                    const uint64_t* rk = m.row(k);
                    for (uint32_t x = 0; x < m.words; ++x) {
                        const uint64_t add = rk[x] & ~ri[x];
                        if (add) {
                            ri[x] |= add;
                            changed = any = true;
                        }
                    }
                }
            }
        }
    }
    return any;
}

struct Engine {
    int n;
    const RuleConfig& cfg;
    std::vector<std::array<BitMat, 4>> at;  // at[L][slot], L = 1..n
    bool partial = false;

    Engine(int n_, const RuleConfig& c) : n(n_), cfg(c), at(size_t(n_) + 1) {
        for (int L = 1; L <= n; ++L)
            for (auto& m : at[L]) m.init(uint32_t(1) << L);
    }

    uint64_t total() const {
        uint64_t t = 0;
        for (int L = 1; L <= n; ++L)
            for (const auto& m : at[L]) t += m.count();
        return t;
    }

    void seed_generators();
    void seed_relations();
    bool emit_suffix(int L);
    bool emit_insertion(int L);
    bool sweep();
    void run();
};

void Engine::seed_generators() {
    for (int L = 1; L <= n; ++L) {
        const uint32_t dim = uint32_t(1) << L;

        if (cfg.gen_deg) {
            BitMat& deg = at[L][kSlotDeg];
            for (uint32_t i = 0; i < dim; ++i) {
                const auto up = deg_upset(L, i);
                uint64_t* r = deg.row(i);
                for (size_t w = 0; w < up.size(); ++w) r[w] |= up[w];
                deg.clear(i, i);
            }
        }

        if ((cfg.gen_z || cfg.gen_p) && L > kGenericLengthCap) {
            partial = true;
        } else if (cfg.gen_z || cfg.gen_p) {
            const Family base = z_family(L);
            const Family pre1 = z_family_prefix1(L);
            if (cfg.gen_z) {
                const Family suf1 = extend_by_bit(base, 1);
                const auto dom = dominance(pre1, suf1);
                BitMat& z = at[L][kSlotZ];
                for (uint32_t a = 0; a < dim; ++a)
                    for (uint32_t g = 0; g < dim; ++g)
                        if (a != g && dom[size_t(a) * dim + g]) z.set(a, g);
            }
            if (cfg.gen_p) {
                BitMat& p = at[L][kSlotP];
                {
                    const Family suf0 = extend_by_bit(base, 0);
                    const auto dom = dominance(pre1, suf0);
                    for (uint32_t a = 0; a < dim; ++a)
                        for (uint32_t g = 0; g < dim; ++g)
                            if (a != g && dom[size_t(a) * dim + g]) p.set(a, g);
                }
                // Second route: weaken the better path's first 1 to 0 and ask for
                // plain pointwise dominance.
                const auto bdom = dominance(base, base);
                for (uint32_t g = 1; g < dim; ++g) {
                    const int q = lead_run(g, L, 0);
                    const uint32_t weak = g ^ (uint32_t(1) << (L - 1 - q));
                    for (uint32_t a = 0; a < dim; ++a)
                        if (a != g && bdom[size_t(a) * dim + weak]) p.set(a, g);
                }
            }
        }

        if (cfg.gen_staircase) {
            BitMat& z = at[L][kSlotZ];
            BitMat& p = at[L][kSlotP];
            for (int m = 0; m <= L; ++m) {
                const int k = L - m;  // worse = 0^m 1^k
                for (int pp = 1; pp <= L; ++pp) {
                    const int q = L - pp;  // better = 1^pp 0^q
                    const uint32_t w = ones_mask(k);
                    const uint32_t b = ones_mask(pp) << q;
                    if (w == b) continue;
                    if (k >= 1 && theorem1_check(m, k, pp, q)) z.set(w, b);
                    if (theorem2_check(m, k, pp, q)) p.set(w, b);
                }
            }
        }

        if (cfg.gen_counting) {
            BitMat& z = at[L][kSlotZ];
            BitMat& p = at[L][kSlotP];
            for (uint32_t w = 0; w < dim; ++w) {
                const Path pw = unpack_path(w, L);
                for (uint32_t b = 0; b < dim; ++b) {
                    if (w == b) continue;
                    const Path pb = unpack_path(b, L);
                    if (corollary_check(pb, pw, 'Z')) z.set(w, b);
                    if (corollary_check(pb, pw, 'P')) p.set(w, b);
                }
            }
        }
    }
}

void Engine::seed_relations() {
    for (const Relation& s : cfg.seeds) {
        if (s.worse.size() != s.better.size())
            throw std::invalid_argument("seed relation: paths must have equal length");
        const int L = int(s.worse.size());
        if (L < 1 || L > n) throw std::invalid_argument("seed relation: length out of range");
        if (s.worse == s.better) continue;
        at[L][slot_of(s.kind)].set(pack_path(s.worse), pack_path(s.better));
    }
}

// tau1 a 1^pad <= tau2 g 1^pad from tau1 <= tau2 (degradation) and a <=Z g;
// the P variant pads with zeros.
bool Engine::emit_suffix(int L) {
    bool changed = false;
    for (int lt = 0; lt < L; ++lt) {
        const BitMat* deg = lt >= 1 ? &at[lt][kSlotDeg] : nullptr;
        for (int la = 1; lt + la <= L; ++la) {
            const int pad = L - lt - la;
            if (lt + pad == 0) continue;  // conclusion would equal the premise
            for (int slot : {kSlotZ, kSlotP}) {
                const BitMat& src = at[la][slot];
                BitMat& dst = at[L][slot];
                const uint32_t sdim = uint32_t(1) << la;
                const uint32_t suffix = slot == kSlotZ ? ones_mask(pad) : 0u;
                for (uint32_t a = 0; a < sdim; ++a) {
                    const uint64_t* ra = src.row(a);
                    for (uint32_t w = 0; w < src.words; ++w) {
                        uint64_t word = ra[w];
                        while (word) {
                            const uint32_t g = (w << 6) + uint32_t(std::countr_zero(word));
                            word &= word - 1;
                            // blocks: equal pair always; degraded pairs when stored
                            const auto emit = [&](uint32_t t1, uint32_t t2) {
                                const uint32_t cw = (((t1 << la) | a) << pad) | suffix;
                                const uint32_t cb = (((t2 << la) | g) << pad) | suffix;
                                if (cw != cb && dst.set(cw, cb)) changed = true;
                            };
                            if (lt == 0) {
                                emit(0, 0);
                                continue;
                            }
                            for (uint32_t t1 = 0; t1 < (uint32_t(1) << lt); ++t1) {
                                emit(t1, t1);
                                const uint64_t* rt = deg->row(t1);
                                for (uint32_t tw = 0; tw < deg->words; ++tw) {
                                    uint64_t tword = rt[tw];
                                    while (tword) {
                                        const uint32_t t2 =
                                            (tw << 6) + uint32_t(std::countr_zero(tword));
                                        tword &= tword - 1;
                                        emit(t1, t2);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return changed;
}

// From 0^p a 1^r <= 1^q g 0^s (Z), every 0^p tau a 1^t 1^r <= 1^q tau g 1^t 0^s;
// the P variant inserts 0^t.  All decompositions of the premise are taken.
bool Engine::emit_insertion(int L) {
    bool changed = false;
    for (int lp = 1; lp < L; ++lp) {
        const int extra = L - lp;  // inserted block + pad
        for (int slot : {kSlotZ, kSlotP}) {
            const BitMat& src = at[lp][slot];
            BitMat& dst = at[L][slot];
            const uint32_t sdim = uint32_t(1) << lp;
            for (uint32_t u = 0; u < sdim; ++u) {
                const uint64_t* ru = src.row(u);
                const int lzu = lead_run(u, lp, 0), tou = trail_run(u, lp, 1);
                for (uint32_t w = 0; w < src.words; ++w) {
                    uint64_t word = ru[w];
                    while (word) {
                        const uint32_t v = (w << 6) + uint32_t(std::countr_zero(word));
                        word &= word - 1;
                        const int lov = lead_run(v, lp, 1), tzv = trail_run(v, lp, 0);
                        for (int p = 0; p <= lzu; ++p)
                            for (int r = 0; r <= tou; ++r) {
                                if (p + r > lp) continue;
                                const uint32_t alpha = (u >> r) & ones_mask(lp - p - r);
                                for (int q = 0; q <= lov; ++q)
                                    for (int s = 0; s <= tzv; ++s) {
                                        if (q + s > lp) continue;
                                        const uint32_t gamma = (v >> s) & ones_mask(lp - q - s);
                                        const int wmax = std::min(cfg.tau_budget, extra);
                                        for (int tb = 0; tb <= wmax; ++tb) {
                                            const int t = extra - tb;
                                            for (uint32_t tau = 0; tau < (uint32_t(1) << tb);
                                                 ++tau) {
                                                uint32_t cw, cb;
                                                if (slot == kSlotZ) {
                                                    cw = (((tau << (lp - p - r)) | alpha)
                                                          << (t + r)) |
                                                         ones_mask(t + r);
                                                    cb = (((((ones_mask(q) << tb) | tau)
                                                            << (lp - q - s)) |
                                                           gamma)
                                                          << (t + s)) |
                                                         (ones_mask(t) << s);
                                                } else {
                                                    cw = (((tau << (lp - p - r)) | alpha)
                                                          << (t + r)) |
                                                         ones_mask(r);
                                                    cb = ((((ones_mask(q) << tb) | tau)
                                                           << (lp - q - s)) |
                                                          gamma)
                                                         << (t + s);
                                                }
                                                if (cw != cb && dst.set(cw, cb)) changed = true;
                                            }
                                        }
                                    }
                            }
                    }
                }
            }
        }
    }
    return changed;
}

bool Engine::sweep() {
    bool changed = false;
    for (int L = 1; L <= n; ++L) {
        auto& deg = at[L][kSlotDeg];
        auto& z = at[L][kSlotZ];
        auto& p = at[L][kSlotP];
        auto& bec = at[L][kSlotBec];
        if (cfg.lift_deg) {
            changed |= or_into(z, deg);
            changed |= or_into(p, deg);
        }
        if (cfg.suffix_rules) changed |= emit_suffix(L);
        if (cfg.insertion_rules) changed |= emit_insertion(L);
        if (cfg.transitive) {
            changed |= close_transitive(deg);
            changed |= close_transitive(z);
            changed |= close_transitive(p);
        }
        if (cfg.lift_into_bec) {
            changed |= or_into(bec, z);
            changed |= or_into(bec, p);
        }
        if (cfg.transitive) changed |= close_transitive(bec);
    }
    return changed;
}

void Engine::run() {
    seed_generators();
    seed_relations();
    while (sweep()) {
        if (total() > cfg.max_relations) {
            partial = true;
            break;
        }
    }
}

std::string describe(int n, const RuleConfig& cfg) {
    std::ostringstream os;
    os << "saturate n=" << n << " rules=[";
    const char* sep = "";
    const auto add = [&](bool on, const std::string& name) {
        if (on) {
            os << sep << name;
            sep = ",";
        }
    };
    add(cfg.lift_deg, "lift-deg");
    add(cfg.lift_into_bec, "lift-bec");
    add(cfg.transitive, "trans");
    add(cfg.suffix_rules, "suffix");
    add(cfg.insertion_rules, "insert(tau<=" + std::to_string(cfg.tau_budget) + ")");
    os << "] gen=[";
    sep = "";
    add(cfg.gen_deg, "deg");
    add(cfg.gen_z, "z");
    add(cfg.gen_p, "p");
    add(cfg.gen_staircase, "staircase");
    add(cfg.gen_counting, "counting");
    os << "]";
    if (!cfg.seeds.empty()) os << " seeds=" << cfg.seeds.size();
    return os.str();
}

}  // namespace

PoDb saturate(int n, const RuleConfig& cfg) {
    if (n < 1 || n > 12) throw std::invalid_argument("saturate: n out of range [1,12]");
    Engine eng(n, cfg);
    eng.run();

    PoDb db(n);
    db.partial = eng.partial;
    db.config = describe(n, cfg);
    static const uint8_t kinds[4] = {REL_DEG, REL_Z, REL_P, REL_BEC};
    const uint32_t dim = uint32_t(1) << n;
    for (int slot = 0; slot < 4; ++slot) {
        const BitMat& m = eng.at[n][slot];
        for (uint32_t i = 0; i < dim; ++i)
            for (uint32_t j = 0; j < dim; ++j)
                if (m.get(i, j)) db.add(i, j, kinds[slot]);
    }
    return db;
}

// ---------------------------------------------------------------------------
// single-step certificate formulations

namespace {

bool bec_holds(const Path& w, const Path& b) {
    const BecRel v = bec_leq(w, b).relation;
    return v == BecRel::LEQ || v == BecRel::EQUAL;
}

Path drop_first(const Path& p) { return Path(std::vector<uint8_t>(p.b.begin() + 1, p.b.end())); }
Path drop_last(const Path& p) { return Path(std::vector<uint8_t>(p.b.begin(), p.b.end() - 1)); }

}  // namespace

bool z_cert_edge_ones(const Path& worse, const Path& better) {
    if (worse.size() != better.size() || worse.empty()) return false;
    if (worse.b.back() != 1 || better.b.front() != 1) return false;
    return bec_holds(drop_last(worse), drop_first(better));
}

bool z_cert_wrap_ones(const Path& worse, const Path& better) {
    if (worse.size() != better.size()) return false;
    return bec_holds(concat(Path({1}), worse), concat(better, Path({1})));
}

bool z_cert_head_one(const Path& worse, const Path& better) {
    if (worse.size() != better.size() || better.empty() || better.b.front() != 1) return false;
    return bec_holds(worse, concat(drop_first(better), Path({1})));
}

// ---------------------------------------------------------------------------
// targeted backward search

namespace {

constexpr int kSearchDepth = 6;
// Longest premise a generic certificate leaf may decide: the exact polynomial
// check costs O(4^len) big-integer work, so past this the search must reach a
// short premise structurally or give up.
constexpr int kDeriveLeafCap = 12;

struct Memo {
    // (len, worse, better, kind) -> deepest budget at which the search failed
    std::map<std::tuple<int, uint32_t, uint32_t, uint8_t>, int> failed;
};

std::string head_line(uint8_t kind, const Path& w, const Path& b, const std::string& rule) {
    return std::string(kind_name(kind)) + ": " + w.str() + " <= " + b.str() + "   [" + rule + "]";
}

std::string indent(const std::string& block) {
    std::string out;
    size_t start = 0;
    while (start < block.size()) {
        size_t end = block.find('\n', start);
        if (end == std::string::npos) end = block.size();
        out += "  " + block.substr(start, end - start);
        if (end < block.size()) out += "\n";
        start = end + 1;
    }
    return out;
}

std::string conclude(uint8_t kind, const Path& w, const Path& b, const std::string& rule,
                     std::initializer_list<std::string> premises) {
    std::string s = head_line(kind, w, b, rule);
    for (const auto& p : premises)
        if (!p.empty()) s += "\n" + indent(p);
    return s;
}

std::optional<std::string> bec_leaf(const Path& w, const Path& b) {
    const BecVerdict v = bec_leq(w, b);
    if (v.relation == BecRel::LEQ)
        return head_line(REL_BEC, w, b, "polynomial dominance");
    if (v.relation == BecRel::EQUAL)
        return head_line(REL_BEC, w, b, "identical polynomials");
    return std::nullopt;
}

std::optional<std::string> deg_leaf(const Path& w, const Path& b) {
    const DegVerdict v = deg_leq(w, b);
    if (!v.comparable || (v.direction != DegDir::LEQ && v.direction != DegDir::EQUAL))
        return std::nullopt;
    return head_line(REL_DEG, w, b,
                     "rewrite closure, " + std::to_string(v.trace.size()) + " steps");
}

std::optional<std::string> search(const Path& w, const Path& b, uint8_t kind, int depth,
                                  Memo& memo);

// Shared prefix block + uniform suffix (ones for Z, zeros for P).
std::optional<std::string> search_affix(const Path& w, const Path& b, uint8_t kind, int depth,
                                        Memo& memo) {
    const int n = int(w.size());
    const uint8_t sfx = kind == REL_Z ? 1 : 0;
    int maxpad = 0;
    while (maxpad < n && w.b[n - 1 - maxpad] == sfx && b.b[n - 1 - maxpad] == sfx) ++maxpad;
    for (int pad = maxpad; pad >= 0; --pad) {
        const int rem = n - pad;
        if (rem < 1) continue;
        const Path wr(std::vector<uint8_t>(w.b.begin(), w.b.begin() + rem));
        const Path br(std::vector<uint8_t>(b.b.begin(), b.b.begin() + rem));
        for (int lt = pad == 0 ? 1 : 0; lt < rem; ++lt) {
            const Path t1(std::vector<uint8_t>(wr.b.begin(), wr.b.begin() + lt));
            const Path t2(std::vector<uint8_t>(br.b.begin(), br.b.begin() + lt));
            std::string block_premise;
            if (!(t1 == t2)) {
                auto d = deg_leaf(t1, t2);
                if (!d) continue;
                block_premise = *d;
            }
            const Path a(std::vector<uint8_t>(wr.b.begin() + lt, wr.b.end()));
            const Path g(std::vector<uint8_t>(br.b.begin() + lt, br.b.end()));
            if (a == g) continue;
            auto sub = search(a, g, kind, depth - 1, memo);
            if (!sub) continue;
            std::ostringstream rule;
            rule << "shared prefix + " << (sfx ? "ones" : "zeros") << " suffix, block="
                 << (lt ? t1.str() : "(empty)") << ", pad=" << pad;
            return conclude(kind, w, b, rule.str(), {block_premise, *sub});
        }
    }
    return std::nullopt;
}

// Remove an inserted shared block tau and a uniform pad (ones for Z, zeros for
// P) sitting between the extremal runs, and recurse on the shorter premise.
std::optional<std::string> search_insertion(const Path& w, const Path& b, uint8_t kind,
                                            int depth, Memo& memo) {
    const int n = int(w.size());
    const uint8_t padbit = kind == REL_Z ? 1 : 0;
    const uint32_t wp = pack_path(w), bp = pack_path(b);
    const int lzw = lead_run(wp, n, 0), tow = trail_run(wp, n, 1);
    const int lob = lead_run(bp, n, 1), tzb = trail_run(bp, n, 0);
    for (int p = 0; p <= lzw; ++p)
        for (int r = 0; r <= tow; ++r) {
            if (p + r >= n) continue;
            // w = 0^p  mid_w  1^r
            const std::vector<uint8_t> mid_w(w.b.begin() + p, w.b.end() - r);
            for (int q = 0; q <= lob; ++q)
                for (int s = 0; s <= tzb; ++s) {
                    if (q + s >= n) continue;
                    const std::vector<uint8_t> mid_b(b.b.begin() + q, b.b.end() - s);
                    // mid = tau  core  pad^t on both sides, shared tau and t
                    int maxtau = 0;
                    while (maxtau < int(std::min(mid_w.size(), mid_b.size())) &&
                           mid_w[maxtau] == mid_b[maxtau])
                        ++maxtau;
                    int maxt = 0;
                    while (maxt < int(std::min(mid_w.size(), mid_b.size())) &&
                           mid_w[mid_w.size() - 1 - maxt] == padbit &&
                           mid_b[mid_b.size() - 1 - maxt] == padbit)
                        ++maxt;
                    for (int lt = maxtau; lt >= 0; --lt)
                        for (int t = maxt; t >= 0; --t) {
                            if (lt + t == 0) continue;
                            if (lt + t > int(std::min(mid_w.size(), mid_b.size()))) continue;
                            std::vector<uint8_t> pw, pb;
                            pw.insert(pw.end(), size_t(p), 0);
                            pw.insert(pw.end(), mid_w.begin() + lt, mid_w.end() - t);
                            pw.insert(pw.end(), size_t(r), 1);
                            pb.insert(pb.end(), size_t(q), 1);
                            pb.insert(pb.end(), mid_b.begin() + lt, mid_b.end() - t);
                            pb.insert(pb.end(), size_t(s), 0);
                            if (pw.size() != pb.size() || pw == pb) continue;
                            const Path prem_w{std::move(pw)}, prem_b{std::move(pb)};
                            auto sub = search(prem_w, prem_b, kind, depth - 1, memo);
                            if (!sub) continue;
                            std::ostringstream rule;
                            rule << "remove inserted block, tau="
                                 << (lt ? Path(std::vector<uint8_t>(mid_w.begin(),
                                                                    mid_w.begin() + lt))
                                              .str()
                                        : "(empty)")
                                 << ", pad=" << t;
                            return conclude(kind, w, b, rule.str(), {*sub});
                        }
                }
        }
    return std::nullopt;
}

std::optional<std::string> search(const Path& w, const Path& b, uint8_t kind, int depth,
                                  Memo& memo) {
    if (w == b) return head_line(kind, w, b, "reflexive");
    if (depth <= 0) return std::nullopt;
    const int n = int(w.size());
    const auto key = std::make_tuple(n, pack_path(w), pack_path(b), kind);
    if (auto it = memo.failed.find(key); it != memo.failed.end() && it->second >= depth)
        return std::nullopt;

    auto done = [&](std::optional<std::string> r) { return r; };

    if (kind == REL_BEC) {
        if (n <= kDeriveLeafCap)
            if (auto r = bec_leaf(w, b)) return r;
        // the lifted orders imply erasure dominance
        if (auto r = search(w, b, REL_Z, depth - 1, memo))
            return done(conclude(REL_BEC, w, b, "erasure instance of Z order", {*r}));
        if (auto r = search(w, b, REL_P, depth - 1, memo))
            return done(conclude(REL_BEC, w, b, "erasure instance of P order", {*r}));
        memo.failed[key] = depth;
        return std::nullopt;
    }
    if (kind == REL_DEG) {
        if (auto r = deg_leaf(w, b)) return r;
        memo.failed[key] = depth;
        return std::nullopt;
    }

    // degradation lift
    if (auto d = deg_leaf(w, b))
        return conclude(kind, w, b, "degradation lift", {*d});

    const Counts cw = counts(w), cb = counts(b);

    if (kind == REL_Z) {
        // staircase blocks 0^m 1^k vs 1^p 0^q
        if (n - 1 <= kDeriveLeafCap && cw.n1 >= 1 && cb.n1 >= 1 &&
            trail_run(pack_path(w), n, 1) == cw.n1 &&
            lead_run(pack_path(b), n, 1) == cb.n1 &&
            theorem1_check(cw.n0, cw.n1, cb.n1, cb.n0)) {
            const Path pw = concat(repeat(0, cw.n0), repeat(1, cw.n1 - 1));
            const Path pb = concat(repeat(1, cb.n1 - 1), repeat(0, cb.n0));
            auto leaf = bec_leaf(pw, pb);
            return conclude(REL_Z, w, b, "staircase blocks", {leaf ? *leaf : std::string()});
        }
        // edge ones: w = g.1, b = 1.a
        if (n - 1 <= kDeriveLeafCap && w.b.back() == 1 && b.b.front() == 1) {
            if (auto leaf = bec_leaf(drop_last(w), drop_first(b)))
                return conclude(REL_Z, w, b, "edge ones", {*leaf});
        }
        // wrapped ones: the generic certificate
        if (n + 1 <= kDeriveLeafCap) {
            if (auto leaf = bec_leaf(concat(Path({1}), w), concat(b, Path({1}))))
                return conclude(REL_Z, w, b, "wrapped ones (generic certificate)", {*leaf});
        }
        // count dominance
        if (corollary_check(b, w, 'Z'))
            return conclude(REL_Z, w, b, "count dominance", {});
        if (auto r = search_affix(w, b, REL_Z, depth, memo)) return r;
        if (auto r = search_insertion(w, b, REL_Z, depth, memo)) return r;
    } else if (kind == REL_P) {
        // staircase blocks
        if (n <= kDeriveLeafCap && cb.n1 >= 1 && trail_run(pack_path(w), n, 1) == cw.n1 &&
            lead_run(pack_path(b), n, 1) == cb.n1 &&
            theorem2_check(cw.n0, cw.n1, cb.n1, cb.n0)) {
            const Path pw = concat(repeat(0, cw.n0), repeat(1, cw.n1));
            const Path pb = concat(repeat(1, cb.n1 - 1), repeat(0, cb.n0 + 1));
            auto leaf = bec_leaf(pw, pb);
            return conclude(REL_P, w, b, "staircase blocks", {leaf ? *leaf : std::string()});
        }
        // edge zero/one: w = g.0, b = 1.a
        if (n - 1 <= kDeriveLeafCap && w.b.back() == 0 && b.b.front() == 1) {
            if (auto leaf = bec_leaf(drop_last(w), drop_first(b)))
                return conclude(REL_P, w, b, "edge zero-one", {*leaf});
        }
        // head-bit upgrade: b = 0^q 1 tau, premise w <= 0^{q+1} tau
        if (n <= kDeriveLeafCap && cb.n1 >= 1) {
            Path weak = b;
            weak.b[size_t(lead_run(pack_path(b), n, 0))] = 0;
            if (auto leaf = bec_leaf(w, weak))
                return conclude(REL_P, w, b, "head-bit upgrade", {*leaf});
        }
        // wrapped one-zero: the generic certificate
        if (n + 1 <= kDeriveLeafCap) {
            if (auto leaf = bec_leaf(concat(Path({1}), w), concat(b, Path({0}))))
                return conclude(REL_P, w, b, "wrapped one-zero (generic certificate)", {*leaf});
        }
        if (corollary_check(b, w, 'P'))
            return conclude(REL_P, w, b, "count dominance", {});
        if (auto r = search_affix(w, b, REL_P, depth, memo)) return r;
        if (auto r = search_insertion(w, b, REL_P, depth, memo)) return r;
    }

    memo.failed[key] = depth;
    return std::nullopt;
}

}  // namespace

std::optional<Relation> derive_pair(const Path& worse, const Path& better, uint8_t kind) {
    if (worse.size() != better.size())
        throw std::invalid_argument("derive_pair: paths must have equal length");
    if (worse.empty() || worse.size() > 24)
        throw std::invalid_argument("derive_pair: path length out of range");
    slot_of(kind);  // validates
    Memo memo;
    auto proof = search(worse, better, kind, kSearchDepth, memo);
    if (!proof) return std::nullopt;
    Relation rel;
    rel.kind = kind;
    rel.worse = worse;
    rel.better = better;
    rel.provenance = std::move(*proof);
    return rel;
}

}  // namespace polarpo
