#include "copos/dense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace copos::dense {

namespace {

// Off-diagonal Frobenius mass, used as the Jacobi convergence measure.
double offdiag_norm2(const std::array<std::array<double, kMaxOrder>, kMaxOrder>& a, int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) s += 2.0 * a[p][q] * a[p][q];
    return s;
}

} // namespace

EigResult jacobi_eig(const double* a_in, int n) {
    if (n < 1 || n > kMaxOrder) throw std::invalid_argument("jacobi_eig: order out of range");

    std::array<std::array<double, kMaxOrder>, kMaxOrder> a{};
    std::array<std::array<double, kMaxOrder>, kMaxOrder> v{};
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i][i] = 1.0;
        for (int j = 0; j < n; ++j) {
            a[i][j] = a_in[i * n + j];
            scale = std::max(scale, std::abs(a[i][j]));
        }
    }
    if (scale == 0.0) scale = 1.0;

    const double stop = 1e-30 * scale * scale * n * n;
    for (int sweep = 0; sweep < 64 && offdiag_norm2(a, n) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) <= 1e-300) continue;
                const double phi = 0.5 * std::atan2(2.0 * apq, a[q][q] - a[p][p]);
                const double c = std::cos(phi), s = std::sin(phi);

                const double app = a[p][p], aqq = a[q][q];
                a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p][q] = a[q][p] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a[r][p], arq = a[r][q];
                        a[r][p] = a[p][r] = c * arp - s * arq;
                        a[r][q] = a[q][r] = s * arp + c * arq;
                    }
                    const double vrp = v[r][p], vrq = v[r][q];
                    v[r][p] = c * vrp - s * vrq;
                    v[r][q] = s * vrp + c * vrq;
                }
            }
        }
    }

    EigResult res;
    res.n = n;
    std::array<int, kMaxOrder> idx{};
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.begin() + n,
              [&](int x, int y) { return a[x][x] < a[y][y]; });
    for (int k = 0; k < n; ++k) {
        res.values[k] = a[idx[k]][idx[k]];
        for (int r = 0; r < n; ++r) res.vectors[k][r] = v[r][idx[k]];
    }
    return res;
}

void psd_clip(const double* a, int n, double* out) {
    const EigResult e = jacobi_eig(a, n);
    std::array<std::array<double, kMaxOrder>, kMaxOrder> b{};
    for (int k = 0; k < n; ++k) {
        const double lam = e.values[k] > 0.0 ? e.values[k] : 0.0;
        if (lam == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const double w = lam * e.vectors[k][i];
            for (int j = i; j < n; ++j) b[i][j] += w * e.vectors[k][j];
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out[i * n + j] = out[j * n + i] = b[i][j];
}

double min_eigenvalue(const double* a, int n) {
    const EigResult e = jacobi_eig(a, n);
    return e.values[0];
}

} // namespace copos::dense
