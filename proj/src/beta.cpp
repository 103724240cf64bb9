#include "polarpo/beta.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polarpo/nonneg.hpp"

namespace polarpo {

namespace {

RatPoly poly_from_ints(const std::vector<int>& c) {
    std::vector<Rat> v;
    v.reserve(c.size());
    for (int x : c) v.push_back(Rat(static_cast<long>(x)));
    return RatPoly(std::move(v));
}

// A factor of x^k is positive for every beta > 0, so dropping it keeps the
// sign of the constraint on the whole domain while making the constant term
// nonzero.
void strip_low_zeros(std::vector<int>& c) {
    size_t k = 0;
    while (k < c.size() && c[k] == 0) ++k;
    c.erase(c.begin(), c.begin() + static_cast<long>(k));
}

// A real root r of a squarefree polynomial, bracketed as lo < r <= hi.
// lo == hi once the root is known to be rational; sf is unused from then on.
struct RootPin {
    Rat lo, hi;
    RatPoly sf;

    bool exact() const { return !(lo < hi); }
};

void bisect_once(RootPin& p) {
    if (p.exact()) return;
    Rat m = (p.lo + p.hi) / Rat(2);
    if (eval_rational(p.sf, m).sign() == 0) {
        p.lo = m;
        p.hi = std::move(m);
        p.sf = RatPoly{};
        return;
    }
    if (sturm_root_count(p.sf, p.lo, m) == 1)
        p.hi = std::move(m);
    else
        p.lo = std::move(m);
}

void refine_width(RootPin& p, const Rat& width) {
    while (!p.exact() && width < p.hi - p.lo) bisect_once(p);
}

// True when the pinned root lies strictly below x; the caller guarantees the
// root is not x itself.
bool pin_below_value(RootPin& pin, const Rat& x) {
    if (pin.exact()) return pin.lo < x;
    if (pin.hi <= x) return true;
    if (!(pin.lo < x)) return false;
    return sturm_root_count(pin.sf, pin.lo, x) == 1;
}

// All roots of a squarefree polynomial in (a, b], each in its own bracket,
// sorted ascending.  Bisection never splits on a root: a midpoint that hits
// one is nudged toward the left end until the value is nonzero.
std::vector<RootPin> isolate_roots(const RatPoly& sf, Rat a, Rat b) {
    std::vector<RootPin> out;
    if (sf.degree() < 1) return out;
    int total = sturm_root_count(sf, a, b);
    if (total == 0) return out;

    struct Seg {
        Rat a, b;
        int count;
    };
    std::vector<Seg> work;
    work.push_back(Seg{std::move(a), std::move(b), total});
    while (!work.empty()) {
        Seg s = std::move(work.back());
        work.pop_back();
        if (s.count == 1) {
            out.push_back(RootPin{s.a, s.b, sf});
            continue;
        }
        Rat m = (s.a + s.b) / Rat(2);
        while (eval_rational(sf, m).sign() == 0) m = (s.a + m) / Rat(2);
        int left = sturm_root_count(sf, s.a, m);
        if (left > 0) work.push_back(Seg{s.a, m, left});
        if (s.count > left) work.push_back(Seg{m, s.b, s.count - left});
    }
    std::sort(out.begin(), out.end(),
              [](const RootPin& x, const RootPin& y) { return x.lo < y.lo; });
    return out;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Exact three-way comparison of two pinned roots, refining the brackets until
// they separate.  Equality is decided exactly: a shared value inside both
// brackets must be a common root, which the gcd of the two squarefree
// witnesses exposes.
int compare_pins(RootPin& a, RootPin& b) {
    RatPoly g;
    bool have_g = false;
    for (int round = 0; round < 512; ++round) {
        if (a.hi < b.lo) return -1;
        if (b.hi < a.lo) return 1;
        if (a.exact() && b.exact()) return 0;
        if (a.exact()) {
            if (eval_rational(b.sf, a.lo).sign() == 0 && b.lo < a.lo && a.lo <= b.hi) return 0;
            bisect_once(b);
            continue;
        }
        if (b.exact()) {
            if (eval_rational(a.sf, b.lo).sign() == 0 && a.lo < b.lo && b.lo <= a.hi) return 0;
            bisect_once(a);
            continue;
        }
        if (!have_g) {
            g = poly_gcd(a.sf, b.sf);
            have_g = true;
        }
        if (g.degree() >= 1) {
            const Rat& lo = a.lo < b.lo ? b.lo : a.lo;
            const Rat& hi = a.hi < b.hi ? a.hi : b.hi;
            if (lo < hi && sturm_root_count(g, lo, hi) >= 1) return 0;
        }
        bisect_once(a);
        bisect_once(b);
    }
    throw std::logic_error("compare_pins: brackets failed to separate");
}

// A maximal feasible run.  Missing lo starts at 0 (exclusive), missing hi is
// unbounded; finite ends are closed.
struct Run {
    std::optional<RootPin> lo, hi;
};

int cmp_lo(std::optional<RootPin>& a, std::optional<RootPin>& b) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    return compare_pins(*a, *b);
}

int cmp_hi(std::optional<RootPin>& a, std::optional<RootPin>& b) {
    if (!a && !b) return 0;
    if (!a) return 1;
    if (!b) return -1;
    return compare_pins(*a, *b);
}

// Feasible set of one constraint on beta > 0, as sorted disjoint runs.
// Expects the low zeros stripped and at least one nonzero coefficient.
std::vector<Run> feasible_runs(const std::vector<int>& c) {
    if (c.size() == 1)
        return c[0] > 0 ? std::vector<Run>{Run{}} : std::vector<Run>{};

    RatPoly p = poly_from_ints(c);
    RatPoly sf = squarefree_part(p);

    // With coefficients in {-1, 0, 1} and unit constant/lead terms, the only
    // possible rational roots are +-1.  Peeling +1 keeps such endpoints exact
    // (beta = 1 shows up constantly); -1 is outside the domain anyway.
    std::optional<RootPin> one;
    if (eval_rational(sf, Rat(1)).sign() == 0) {
        std::vector<Rat> lin;
        lin.push_back(Rat(-1));
        lin.push_back(Rat(1));
        RatPoly q, r;
        poly_divmod(sf, RatPoly(std::move(lin)), q, r);
        sf = std::move(q);
        one = RootPin{Rat(1), Rat(1), RatPoly{}};
    }

    // For x >= 2 the leading term dominates: |sum_{i<d} c_i x^i| <= x^d - 1.
    // So every positive root lies in (0, 2) and scanning (0, 4] is exhaustive.
    std::vector<RootPin> pins = isolate_roots(sf, Rat(0), Rat(4));
    if (one) {
        size_t pos = 0;
        while (pos < pins.size() && pin_below_value(pins[pos], Rat(1))) ++pos;
        pins.insert(pins.begin() + static_cast<long>(pos), std::move(*one));
    }

    if (pins.empty()) {
        // No positive roots at all: one sample fixes the sign everywhere.
        return eval_rational(p, Rat(1)).sign() > 0 ? std::vector<Run>{Run{}}
                                                   : std::vector<Run>{};
    }

    // Shrink brackets until consecutive ones are strictly separated and the
    // first sits above 0, so each gap owns a rational sample point.
    while (!pins[0].exact() && !(Rat(0) < pins[0].lo)) bisect_once(pins[0]);
    for (size_t i = 1; i < pins.size(); ++i) {
        int guard = 0;
        while (!(pins[i - 1].hi < pins[i].lo)) {
            bisect_once(pins[i - 1]);
            bisect_once(pins[i]);
            if (++guard > 512) throw std::logic_error("feasible_runs: roots failed to separate");
        }
    }

    // Sign of the constraint on each gap between consecutive roots; roots
    // themselves are always feasible (the constraint is exactly zero there).
    std::vector<int> gap(pins.size() + 1);
    for (size_t g = 0; g <= pins.size(); ++g) {
        Rat s;
        if (g == 0)
            s = pins[0].lo / Rat(2);
        else if (g == pins.size())
            s = pins.back().hi + Rat(1);
        else
            s = (pins[g - 1].hi + pins[g].lo) / Rat(2);
        gap[g] = eval_rational(p, s).sign();
        if (gap[g] == 0) throw std::logic_error("feasible_runs: sample hit a root");
    }

    std::vector<Run> runs;
    bool open = false;
    Run cur;
    for (size_t g = 0; g <= pins.size(); ++g) {
        if (gap[g] > 0) {
            if (!open) {
                open = true;
                if (g > 0) cur.lo = pins[g - 1];
            }
        } else if (open) {
            cur.hi = pins[g - 1];
            runs.push_back(std::move(cur));
            cur = Run{};
            open = false;
        } else if (g > 0) {
            runs.push_back(Run{pins[g - 1], pins[g - 1]});  // isolated feasible point
        }
    }
    if (open) runs.push_back(std::move(cur));
    return runs;
}

std::vector<Run> intersect_runs(std::vector<Run>& a, std::vector<Run>& b) {
    std::vector<Run> out;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        Run& x = a[i];
        Run& y = b[j];
        std::optional<RootPin>& lo = cmp_lo(x.lo, y.lo) >= 0 ? x.lo : y.lo;
        std::optional<RootPin>& hi = cmp_hi(x.hi, y.hi) <= 0 ? x.hi : y.hi;
        if (!lo || !hi || compare_pins(*lo, *hi) <= 0) out.push_back(Run{lo, hi});
        int ch = cmp_hi(x.hi, y.hi);
        if (ch <= 0) ++i;
        if (ch >= 0) ++j;
    }
    return out;
}

// Is the constraint nonnegative on [lo, hi]?  When the window is unbounded
// the caller passes hi = 4; since no constraint has a root at or beyond 2,
// nonnegativity at the right end extends to all larger beta.
bool covers(const std::vector<int>& c, const Rat& lo, const Rat& hi) {
    std::vector<Rat> lin;
    lin.push_back(lo);
    lin.push_back(hi - lo);
    RatPoly mapped = poly_arith(poly_from_ints(c), RatPoly(std::move(lin)), PolyOp::compose);
    return nonneg_on_unit(mapped).status == NonnegStatus::nonneg;
}

Rat endpoint_width() {
    return Rat(1, 1152921504606846976L);  // 2^-60
}

BetaEndpoint pin_endpoint(RootPin& p) {
    refine_width(p, endpoint_width());
    BetaEndpoint e;
    e.approx = ((p.lo + p.hi) / Rat(2)).to_double();
    e.lo = p.lo;
    e.hi = p.hi;
    return e;
}

BetaInterval to_interval(Run& r) {
    BetaInterval out;
    if (r.lo) out.lo = pin_endpoint(*r.lo);
    if (r.hi) out.hi = pin_endpoint(*r.hi);
    return out;
}

}  // namespace

Rat beta_weight(const Path& alpha, const Rat& beta) {
    Rat w(0);
    for (size_t i = 0; i < alpha.size(); ++i)
        w = w * beta + Rat(static_cast<long>(alpha[i]));
    return w;
}

double beta_weight_d(const Path& alpha, double beta) {
    double w = 0.0;
    for (size_t i = 0; i < alpha.size(); ++i) w = w * beta + alpha[i];
    return w;
}

std::vector<int> beta_constraint(const Path& worse, const Path& better) {
    if (worse.size() != better.size())
        throw std::invalid_argument("beta_constraint: path lengths differ");
    const int n = static_cast<int>(worse.size());
    std::vector<int> c(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        c[static_cast<size_t>(n - 1 - i)] +=
            static_cast<int>(better[static_cast<size_t>(i)]) -
            static_cast<int>(worse[static_cast<size_t>(i)]);
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

std::vector<BetaInterval> feasible_interval(const Path& worse, const Path& better) {
    std::vector<int> c = beta_constraint(worse, better);
    strip_low_zeros(c);
    if (c.empty()) return {BetaInterval{}};  // equal weights for every beta
    std::vector<Run> runs = feasible_runs(c);
    std::vector<BetaInterval> out;
    out.reserve(runs.size());
    for (Run& r : runs) out.push_back(to_interval(r));
    return out;
}

BetaWindow feasible_window(const PoDb& db, uint8_t kind) {
    const int n = db.n;
    std::set<std::vector<int>> distinct;
    bool any = false;
    const uint32_t size = static_cast<uint32_t>(db.size());
    for (uint32_t w = 0; w < size; ++w)
        for (uint32_t b = 0; b < size; ++b) {
            if (w == b || (db.get(w, b) & kind) == 0) continue;
            any = true;
            std::vector<int> c = beta_constraint(unpack_path(w, n), unpack_path(b, n));
            strip_low_zeros(c);
            if (!c.empty()) distinct.insert(std::move(c));
        }
    if (!any) throw std::invalid_argument("feasible_window: no pairs of the requested kind");

    // Fold constraints into a running intersection.  Most constraints hold on
    // the whole current window; a cheap nonnegativity certificate over a
    // rational enclosure skips them, and only the rest pay for root isolation.
    std::vector<Run> window{Run{}};
    uint64_t binding = 0;
    for (const std::vector<int>& c : distinct) {
        if (window.empty()) break;
        Rat enc_lo = window.front().lo ? window.front().lo->lo : Rat(0);
        Rat enc_hi = window.back().hi ? window.back().hi->hi : Rat(4);
        if (covers(c, enc_lo, enc_hi)) continue;
        ++binding;
        std::vector<Run> runs = feasible_runs(c);
        window = intersect_runs(window, runs);
    }

    BetaWindow out;
    out.constraints = distinct.size();
    out.binding = binding;
    for (Run& r : window) {
        RootPin one{Rat(1), Rat(1), RatPoly{}};
        bool lo_ok = !r.lo || compare_pins(*r.lo, one) <= 0;
        bool hi_ok = !r.hi || compare_pins(one, *r.hi) <= 0;
        if (lo_ok && hi_ok) {
            out.around_one = to_interval(r);
            break;
        }
    }
    out.full.reserve(window.size());
    for (Run& r : window) out.full.push_back(to_interval(r));
    return out;
}

}  // namespace polarpo
