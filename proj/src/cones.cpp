#include "copos/cones.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <limits>

#include "copos/dense.hpp"

namespace copos {

using dense::kMaxOrder;

PsdCheck is_psd(const SymMatrix& a, double tol) {
    std::array<double, kMaxOrder * kMaxOrder> full{};
    if (a.order() > kMaxOrder) throw std::invalid_argument("is_psd: order above dense kernel cap");
    a.to_full(full.data());
    const double lmin = dense::min_eigenvalue(full.data(), a.order());
    return {lmin >= -tol, lmin};
}

NonnegCheck is_nonneg(const SymMatrix& a, double tol) {
    const double m = a.min_entry();
    return {m >= -tol, m};
}

bool validate_certificate(const SymMatrix& a, const SpnCertificate& cert) {
    if (cert.p.order() != a.order() || cert.n.order() != a.order()) return false;
    const double residual = max_abs_diff(a, cert.p + cert.n);
    if (residual > cert.tol) return false;
    if (!is_psd(cert.p, cert.tol).psd) return false;
    if (!is_nonneg(cert.n, cert.tol).nonneg) return false;
    return true;
}

const char* to_string(CopositivityStatus s) {
    switch (s) {
        case CopositivityStatus::Copositive: return "COPOSITIVE";
        case CopositivityStatus::NotCopositive: return "NOT_COPOSITIVE";
        case CopositivityStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Dykstra projections on flat buffers (shared by check_spn and the
// per-cell SPN certificate inside the subdivision).

namespace {

struct DykstraState {
    int n = 0;
    std::array<double, kMaxOrder * kMaxOrder> x{}, y{}, p{}, q{}, tmp{};

    void init(const double* a, int n_) {
        n = n_;
        const int nn = n * n;
        std::copy(a, a + nn, x.begin());
        std::fill(p.begin(), p.begin() + nn, 0.0);
        std::fill(q.begin(), q.begin() + nn, 0.0);
    }

    // One round: PSD projection then down-set projection against bound[].
    // Returns the current infinity-norm gap |x - y|.
    double step(const double* bound) {
        const int nn = n * n;
        for (int k = 0; k < nn; ++k) tmp[k] = x[k] + p[k];
        dense::psd_clip(tmp.data(), n, y.data());
        for (int k = 0; k < nn; ++k) p[k] = tmp[k] - y[k];
        for (int k = 0; k < nn; ++k) tmp[k] = y[k] + q[k];
        for (int k = 0; k < nn; ++k) x[k] = std::min(tmp[k], bound[k]);
        for (int k = 0; k < nn; ++k) q[k] = tmp[k] - x[k];
        double gap = 0.0;
        for (int k = 0; k < nn; ++k) gap = std::max(gap, std::abs(x[k] - y[k]));
        return gap;
    }

    // P = y is PSD by construction; feasible when y <= bound + tol.
    bool psd_side_feasible(const double* bound, double tol) const {
        for (int k = 0; k < n * n; ++k)
            if (y[k] > bound[k] + tol) return false;
        return true;
    }

    // P = x satisfies x <= bound exactly; feasible when x is almost PSD.
    bool down_side_feasible(double tol) const {
        return dense::min_eigenvalue(x.data(), n) >= -tol;
    }
};

SymMatrix full_to_sym(const double* f, int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, 0.5 * (f[i * n + j] + f[j * n + i]));
    return m;
}

} // namespace

SpnSearch check_spn(const SymMatrix& a, int max_iter, double tol) {
    const int n = a.order();
    if (n > kMaxOrder) throw std::invalid_argument("check_spn: order above dense kernel cap");
    if (max_iter < 1) throw std::invalid_argument("check_spn: max_iter must be >= 1");

    std::array<double, kMaxOrder * kMaxOrder> bound{};
    a.to_full(bound.data());

    DykstraState st;
    st.init(bound.data(), n);

    auto make_cert = [&](const double* p_full) {
        SymMatrix p = full_to_sym(p_full, n);
        SymMatrix nn = SymMatrix(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) nn.set(i, j, a(i, j) - p(i, j));
        return SpnCertificate{std::move(p), std::move(nn), tol};
    };

    // Immediate candidates before iterating: B = A (A itself PSD) and B = 0
    // (A entrywise nonnegative).
    if (dense::min_eigenvalue(bound.data(), n) >= -tol)
        return {make_cert(bound.data()), 0.0, 0};
    if (a.min_entry() >= -tol) {
        std::array<double, kMaxOrder * kMaxOrder> zero{};
        return {make_cert(zero.data()), 0.0, 0};
    }

    double gap = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        gap = st.step(bound.data());
        if (st.psd_side_feasible(bound.data(), tol))
            return {make_cert(st.y.data()), gap, it};
        if ((it % 25 == 0 || it == max_iter) && st.down_side_feasible(tol))
            return {make_cert(st.x.data()), gap, it};
    }
    return {std::nullopt, gap, max_iter};
}

// ---------------------------------------------------------------------------
// Simplicial subdivision.

namespace {

// A subdivision cell: n simplex vertices (rows of `vert`), their Gram matrix
// under A, and pairwise squared distances. Gram and distances are updated in
// O(n) when one vertex moves to an edge midpoint.
struct Cell {
    int n = 0;
    std::array<std::array<double, kMaxOrder>, kMaxOrder> vert{};
    std::array<std::array<double, kMaxOrder>, kMaxOrder> gram{};
    std::array<std::array<double, kMaxOrder>, kMaxOrder> dist2{};

    void replace_with_midpoint(int r, int k, int l) {
        // New vertex m = (vert[k] + vert[l]) / 2 goes into slot r (r is k or l).
        const int other = (r == k) ? l : k;
        std::array<double, kMaxOrder> m{};
        for (int c = 0; c < n; ++c) m[c] = 0.5 * (vert[k][c] + vert[l][c]);

        // Gram row: m'Av_x = (v_k'Av_x + v_l'Av_x)/2; m'Am via the expansion.
        std::array<double, kMaxOrder> grow{};
        for (int x = 0; x < n; ++x) grow[x] = 0.5 * (gram[k][x] + gram[l][x]);
        const double gmm = 0.25 * (gram[k][k] + 2.0 * gram[k][l] + gram[l][l]);

        // Median length formula for the new squared distances.
        std::array<double, kMaxOrder> drow{};
        for (int x = 0; x < n; ++x)
            drow[x] = 0.25 * (2.0 * dist2[k][x] + 2.0 * dist2[l][x] - dist2[k][l]);

        vert[r] = m;
        for (int x = 0; x < n; ++x) {
            gram[r][x] = gram[x][r] = grow[x];
            dist2[r][x] = dist2[x][r] = std::max(0.0, drow[x]);
        }
        gram[r][r] = gmm;
        dist2[r][r] = 0.0;
        // The edge to the surviving endpoint has a quarter of the old length.
        dist2[r][other] = dist2[other][r] = 0.25 * dist2[k][l];
    }
};

enum class CellOutcome { Certified, Witness, Unresolved, Abort };

// Exact minimum of x'Qx over the standard simplex for tiny m, by enumerating
// KKT supports: Q_S x = mu 1, 1'x = 1, x >= 0. Skipping singular supports is
// sound because the form is constant along kernel directions, so the same
// value reappears on a sub-support. Returns the minimizer through argmin.
double simplex_quad_min(const double* q, int m, double* argmin) {
    double best = q[0];
    if (argmin) {
        std::fill(argmin, argmin + m, 0.0);
        argmin[0] = 1.0;
    }
    std::array<int, kMaxOrder> sup{};
    for (int mask = 1; mask < (1 << m); ++mask) {
        int sz = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (1 << i)) sup[sz++] = i;
        // Assemble [Q_S  1; 1' 0] [x; -mu] = [0; 1].
        double mat[(kMaxOrder + 1) * (kMaxOrder + 1)];
        double rhs[kMaxOrder + 1];
        const int d = sz + 1;
        for (int r = 0; r < sz; ++r) {
            for (int c = 0; c < sz; ++c) mat[r * d + c] = q[sup[r] * m + sup[c]];
            mat[r * d + sz] = 1.0;
            rhs[r] = 0.0;
        }
        for (int c = 0; c < sz; ++c) mat[sz * d + c] = 1.0;
        mat[sz * d + sz] = 0.0;
        rhs[sz] = 1.0;
        // Gaussian elimination with partial pivoting.
        bool singular = false;
        int piv_order[kMaxOrder + 1];
        for (int r = 0; r < d; ++r) piv_order[r] = r;
        for (int col = 0; col < d && !singular; ++col) {
            int piv = col;
            for (int r = col + 1; r < d; ++r)
                if (std::abs(mat[piv_order[r] * d + col]) > std::abs(mat[piv_order[piv] * d + col]))
                    piv = r;
            std::swap(piv_order[col], piv_order[piv]);
            const double pval = mat[piv_order[col] * d + col];
            if (std::abs(pval) < 1e-13) {
                singular = true;
                break;
            }
            for (int r = col + 1; r < d; ++r) {
                const double f = mat[piv_order[r] * d + col] / pval;
                if (f == 0.0) continue;
                for (int c = col; c < d; ++c) mat[piv_order[r] * d + c] -= f * mat[piv_order[col] * d + c];
                rhs[piv_order[r]] -= f * rhs[piv_order[col]];
            }
        }
        if (singular) continue;
        double sol[kMaxOrder + 1];
        for (int r = d - 1; r >= 0; --r) {
            double s = rhs[piv_order[r]];
            for (int c = r + 1; c < d; ++c) s -= mat[piv_order[r] * d + c] * sol[c];
            sol[r] = s / mat[piv_order[r] * d + r];
        }
        bool feasible = true;
        for (int r = 0; r < sz; ++r)
            if (!(sol[r] >= -1e-12) || !(sol[r] <= 1.0 + 1e-9)) feasible = false;
        if (!feasible) continue;
        // Re-evaluate the form at the (clamped, renormalized) solution point
        // rather than trusting the multiplier: stationarity makes the value
        // second-order accurate even when the system was ill-conditioned.
        double lam[kMaxOrder] = {};
        double lsum = 0.0;
        for (int r = 0; r < sz; ++r) {
            lam[sup[r]] = std::max(0.0, sol[r]);
            lsum += lam[sup[r]];
        }
        if (!(lsum > 0.0)) continue;
        double val = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) val += lam[i] * q[i * m + j] * lam[j];
        val /= lsum * lsum;
        if (val < best) {
            best = val;
            if (argmin)
                for (int i = 0; i < m; ++i) argmin[i] = lam[i] / lsum;
        }
    }
    return best;
}

struct Subdivider {
    int n = 0;
    const SymMatrix* a = nullptr;
    CopositivityOptions opt;
    double eps_cert = 0.0;  // certificate slack (cell_tol * scale)

    std::int64_t cells = 0;
    int max_depth_seen = 0;
    bool unresolved = false;
    std::vector<double> witness;
    double witness_value = 0.0;

    // Certified / Witness / Unresolved (= subdivide further).
    CellOutcome try_certify(const Cell& c) {
        // Entrywise-nonnegative Gram: the form is a convex combination of its
        // entries on the cell, so min form >= min entry.
        double qmin = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) qmin = std::min(qmin, c.gram[i][j]);
        if (qmin >= -eps_cert) return CellOutcome::Certified;

        // A row that is entirely nonnegative only borders the rest: peel all
        // such rows and certify the remaining core. (A negative entry never
        // hides in a peeled column because the Gram is symmetric.)
        std::array<int, kMaxOrder> keep{};
        int m = 0;
        for (int i = 0; i < n; ++i) {
            double row_min = 0.0;
            for (int j = 0; j < n; ++j) row_min = std::min(row_min, c.gram[i][j]);
            if (row_min < -eps_cert) keep[m++] = i;
        }
        std::array<double, kMaxOrder * kMaxOrder> q{};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) q[i * m + j] = c.gram[keep[i]][keep[j]];

        // Cores of order <= 4 are SPN exactly when copositive, so the exact
        // simplex minimum decides them outright (and can surface a witness).
        if (m <= 4) {
            std::array<double, kMaxOrder> lam{};
            const double cmin = simplex_quad_min(q.data(), m, lam.data());
            if (cmin >= -eps_cert) return CellOutcome::Certified;
            std::vector<double> x(static_cast<std::size_t>(n), 0.0);
            for (int i = 0; i < m; ++i)
                for (int col = 0; col < n; ++col) x[col] += lam[i] * c.vert[keep[i]][col];
            double s = 0.0;
            for (double v : x) s += v;
            for (double& v : x) v = std::max(0.0, v / s);
            const double val = a->quad_form(x);
            if (val < -opt.witness_tol) {
                witness = std::move(x);
                witness_value = val;
                return CellOutcome::Witness;
            }
            return CellOutcome::Unresolved;
        }

        // PSD core certifies the cell outright.
        const auto eig = dense::jacobi_eig(q.data(), m);
        if (eig.values[0] >= -eps_cert) return CellOutcome::Certified;

        // Greedy split against the PSD projection: Q = clip(Q) + rest.
        std::array<double, kMaxOrder * kMaxOrder> proj{};
        dense::psd_clip(q.data(), m, proj.data());
        double rest_min = 0.0;
        for (int k = 0; k < m * m; ++k) rest_min = std::min(rest_min, q[k] - proj[k]);
        if (rest_min >= -eps_cert) return CellOutcome::Certified;

        // Split off the positive off-diagonal part; PSD remainder certifies.
        std::array<double, kMaxOrder * kMaxOrder> neg{};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                neg[i * m + j] = (i != j && q[i * m + j] > 0.0) ? 0.0 : q[i * m + j];
        if (dense::min_eigenvalue(neg.data(), m) >= -eps_cert) return CellOutcome::Certified;

        // Dykstra run for a PSD + nonnegative split of the core. Feasible
        // Grams converge fast; a stalled violation means the core is likely
        // exceptional, so bail out and subdivide instead.
        DykstraState st;
        st.init(q.data(), m);
        double prev_viol = std::numeric_limits<double>::infinity();
        for (int it = 1; it <= 640; ++it) {
            st.step(q.data());
            double viol = 0.0;
            for (int k = 0; k < m * m; ++k) viol = std::max(viol, st.y[k] - q[k]);
            if (viol <= eps_cert) return CellOutcome::Certified;
            if (it % 32 == 0 && st.down_side_feasible(eps_cert)) return CellOutcome::Certified;
            if (it % 64 == 0) {
                if (viol > 1e3 * eps_cert && viol > 0.5 * prev_viol) break;
                prev_viol = viol;
            }
        }
        return CellOutcome::Unresolved;
    }

    CellOutcome explore(Cell& c, int depth) {
        ++cells;
        max_depth_seen = std::max(max_depth_seen, depth);
        if (cells > opt.max_cells) {
            unresolved = true;
            return CellOutcome::Abort;
        }

        for (int k = 0; k < n; ++k) {
            if (c.gram[k][k] < -opt.witness_tol) {
                witness.assign(c.vert[k].begin(), c.vert[k].begin() + n);
                double s = 0.0;
                for (double v : witness) s += v;
                for (double& v : witness) v /= s;
                witness_value = a->quad_form(witness);
                return CellOutcome::Witness;
            }
        }

        const CellOutcome leaf = try_certify(c);
        if (leaf != CellOutcome::Unresolved) return leaf;

        if (depth >= opt.max_depth) {
            unresolved = true;
            return CellOutcome::Unresolved;
        }

        // Bisect the longest edge among those with a negative Gram entry.
        int bk = -1, bl = -1;
        double best = -1.0;
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
                if (c.gram[k][l] < 0.0 && c.dist2[k][l] > best) {
                    best = c.dist2[k][l];
                    bk = k;
                    bl = l;
                }
        if (bk < 0) {
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    if (c.dist2[k][l] > best) {
                        best = c.dist2[k][l];
                        bk = k;
                        bl = l;
                    }
        }

        Cell right = c;
        c.replace_with_midpoint(bk, bk, bl);
        right.replace_with_midpoint(bl, bk, bl);

        const CellOutcome a1 = explore(c, depth + 1);
        if (a1 == CellOutcome::Witness || a1 == CellOutcome::Abort) return a1;
        const CellOutcome a2 = explore(right, depth + 1);
        if (a2 == CellOutcome::Witness || a2 == CellOutcome::Abort) return a2;
        return (a1 == CellOutcome::Certified && a2 == CellOutcome::Certified)
                   ? CellOutcome::Certified
                   : CellOutcome::Unresolved;
    }
};

} // namespace

CopositivityVerdict check_copositive(const SymMatrix& a, const CopositivityOptions& opt) {
    const int n = a.order();
    if (n > kMaxOrder) throw std::invalid_argument("check_copositive: order above 8");
    if (opt.max_depth < 1) throw std::invalid_argument("check_copositive: max_depth must be >= 1");

    Subdivider sub;
    sub.n = n;
    sub.a = &a;
    sub.opt = opt;
    const double scale = std::max(1.0, a.max_abs());
    sub.eps_cert = opt.cell_tol * scale;

    Cell root;
    root.n = n;
    for (int k = 0; k < n; ++k) {
        root.vert[k][k] = 1.0;
        for (int l = 0; l < n; ++l) {
            root.gram[k][l] = a(k, l);
            root.dist2[k][l] = (k == l) ? 0.0 : 2.0;
        }
    }

    const CellOutcome out = sub.explore(root, 0);

    CopositivityVerdict v;
    v.depth = sub.max_depth_seen;
    v.cells = sub.cells;
    if (out == CellOutcome::Witness) {
        v.status = CopositivityStatus::NotCopositive;
        v.witness = sub.witness;
        v.witness_value = sub.witness_value;
    } else if (out == CellOutcome::Certified && !sub.unresolved) {
        v.status = CopositivityStatus::Copositive;
    } else {
        v.status = CopositivityStatus::Inconclusive;
    }
    return v;
}

CopositivityVerdict check_copositive(const SymMatrix& a, int max_depth, double witness_tol) {
    CopositivityOptions opt;
    opt.max_depth = max_depth;
    opt.witness_tol = witness_tol;
    return check_copositive(a, opt);
}

} // namespace copos
