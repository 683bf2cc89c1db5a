#ifndef COPOS_DENSE_HPP
#define COPOS_DENSE_HPP

#include <array>
#include <cstddef>

namespace copos::dense {

// Hard cap on matrix order for the fixed-size kernels below.
inline constexpr int kMaxOrder = 8;

// Eigendecomposition of a small dense symmetric matrix.
// values are sorted ascending; vectors[k] is the eigenvector for values[k].
struct EigResult {
    int n = 0;
    std::array<double, kMaxOrder> values{};
    std::array<std::array<double, kMaxOrder>, kMaxOrder> vectors{};
};

// Cyclic Jacobi rotations on a row-major n x n symmetric matrix.
// Deterministic: fixed sweep order, fixed convergence threshold.
EigResult jacobi_eig(const double* a, int n);

// Euclidean projection onto the PSD cone: eigenvalues below zero are
// clamped to zero (ties at zero stay at zero), then recomposed.
// Writes the row-major result into `out` (may alias `a`).
void psd_clip(const double* a, int n, double* out);

// Smallest eigenvalue only (runs the full Jacobi solve; n is tiny).
double min_eigenvalue(const double* a, int n);

} // namespace copos::dense

#endif
