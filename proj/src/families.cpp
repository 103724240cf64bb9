#include "polarpo/families.hpp"

#include <cmath>
#include <stdexcept>

#include "polarpo/nonneg.hpp"

namespace polarpo {

std::vector<double> chebyshev_grid(int points) {
    if (points < 2) throw std::invalid_argument("chebyshev_grid: need at least 2 points");
    std::vector<double> xs(points);
    for (int j = 0; j < points; ++j)
        xs[j] = (1.0 - std::cos(M_PI * j / (points - 1))) / 2.0;
    xs.front() = 0.0;
    xs.back() = 1.0;
    return xs;
}

namespace {

// Depth-first so that only one root-to-leaf chain of intermediates is alive at
// a time; the finished leaves dominate memory, not the scratch.
void build_rec(std::vector<IntVec>& out, const std::vector<IntVec>& rows, int seed_order,
               IntVec cur, int depth, int n, uint64_t prefix) {
    if (depth == n) {
        out[prefix] = std::move(cur);
        return;
    }
    const int d = seed_order << depth;
    build_rec(out, rows, seed_order, bernstein_z_step(cur, d, 0, rows[depth], rows[depth + 1]),
              depth + 1, n, prefix << 1);
    build_rec(out, rows, seed_order, bernstein_z_step(cur, d, 1, rows[depth], rows[depth + 1]),
              depth + 1, n, (prefix << 1) | 1);
}

Family build_family(int n, IntVec seed, int seed_order, bool lead1, int grid_points) {
    if (n < 0 || n > 16) throw std::invalid_argument("family: path length out of range");
    Family f;
    f.n = n;
    f.order = seed_order << n;
    f.vec.resize(uint64_t(1) << n);
    std::vector<IntVec> rows(n + 1);
    for (int k = 0; k <= n; ++k) rows[k] = binomial_row(seed_order << k);
    build_rec(f.vec, rows, seed_order, std::move(seed), 0, n, 0);

    const auto xs = chebyshev_grid(grid_points);
    f.grid.resize(f.vec.size());
    for (uint64_t i = 0; i < f.vec.size(); ++i) {
        Path p = unpack_path(static_cast<uint32_t>(i), n);
        if (lead1) p = concat(Path({1}), p);
        f.grid[i].resize(xs.size());
        for (size_t k = 0; k < xs.size(); ++k) f.grid[i][k] = z_eval_d(p, xs[k]);
    }
    return f;
}

}  // namespace

Family z_family(int n, int grid_points) {
    IntVec seed;  // x at order 1: B = (0, 1)
    seed.v.resize(2);
    mpz_set_ui(seed.v[1].z, 1);
    return build_family(n, std::move(seed), 1, false, grid_points);
}

Family z_family_prefix1(int n, int grid_points) {
    IntVec seed;  // x^2 at order 2: B = (0, 0, 1)
    seed.v.resize(3);
    mpz_set_ui(seed.v[2].z, 1);
    return build_family(n, std::move(seed), 2, true, grid_points);
}

Family extend_by_bit(const Family& base, uint8_t bit) {
    Family f;
    f.n = base.n;
    f.order = 2 * base.order;
    f.vec.resize(base.vec.size());
    const IntVec row_d = binomial_row(base.order);
    const IntVec row_2d = binomial_row(f.order);
    for (size_t i = 0; i < base.vec.size(); ++i)
        f.vec[i] = bernstein_z_step(base.vec[i], base.order, bit, row_d, row_2d);

    f.grid.resize(base.grid.size());
    for (size_t i = 0; i < base.grid.size(); ++i) {
        f.grid[i].resize(base.grid[i].size());
        for (size_t k = 0; k < base.grid[i].size(); ++k) {
            const double g = base.grid[i][k];
            f.grid[i][k] = bit ? g * g : 2.0 * g - g * g;
        }
    }
    return f;
}

std::vector<uint8_t> dominance(const Family& A, const Family& B, DomStats* stats,
                               double grid_tol) {
    if (A.order != B.order) throw std::logic_error("dominance: mismatched Bernstein orders");
    if (grid_tol > 0.0) throw std::invalid_argument("dominance: grid_tol must be <= 0");
    if (!A.grid.empty() && !B.grid.empty() && A.grid[0].size() != B.grid[0].size())
        throw std::logic_error("dominance: mismatched evaluation grids");
    const size_t na = A.vec.size(), nb = B.vec.size();
    std::vector<uint8_t> out(na * nb, 0);
    DomStats st;

    for (size_t i = 0; i < na; ++i) {
        const auto& ga = A.grid[i];
        const auto& va = A.vec[i].v;
        for (size_t j = 0; j < nb; ++j) {
            if (&A == &B && i == j) {
                out[i * nb + j] = 1;
                continue;
            }
            ++st.pairs;
            const auto& gb = B.grid[j];
            bool rejected = false;
            for (size_t k = 0; k < ga.size(); ++k) {
                if (ga[k] - gb[k] < grid_tol) {
                    rejected = true;
                    break;
                }
            }
            if (rejected) {
                ++st.grid_rejected;
                continue;
            }
            const auto& vb = B.vec[j].v;
            bool allge = true;
            for (size_t k = 0; k < va.size(); ++k) {
                if (mpz_cmp(va[k].z, vb[k].z) < 0) {
                    allge = false;
                    break;
                }
            }
            if (allge) {
                ++st.componentwise;
                out[i * nb + j] = 1;
                continue;
            }
            // Coefficients of the difference change sign: fall back to the full
            // exact decision on the difference polynomial.
            ++st.escalated;
            IntVec diff;
            diff.v.resize(va.size());
            for (size_t k = 0; k < va.size(); ++k) mpz_sub(diff.v[k].z, va[k].z, vb[k].z);
            if (nonneg_scaled_bernstein(diff, A.order).status == NonnegStatus::nonneg) {
                ++st.escalated_nonneg;
                out[i * nb + j] = 1;
            }
        }
    }
    if (stats) *stats = st;
    return out;
}

}  // namespace polarpo
