#ifndef COPOS_CONES_HPP
#define COPOS_CONES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "copos/sym_matrix.hpp"

namespace copos {

struct PsdCheck {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

struct NonnegCheck {
    bool nonneg = false;
    double min_entry = 0.0;
};

// true iff lambda_min(A) >= -tol.
PsdCheck is_psd(const SymMatrix& a, double tol = 1e-9);

// true iff every entry of A is >= -tol.
NonnegCheck is_nonneg(const SymMatrix& a, double tol = 1e-12);

// A = P + N with P positive semidefinite and N entrywise nonnegative,
// each invariant enforced up to tol.
struct SpnCertificate {
    SymMatrix p{1};
    SymMatrix n{1};
    double tol = 1e-8;
};

bool validate_certificate(const SymMatrix& a, const SpnCertificate& cert);

enum class CopositivityStatus { Copositive, NotCopositive, Inconclusive };

const char* to_string(CopositivityStatus s);

struct CopositivityVerdict {
    CopositivityStatus status = CopositivityStatus::Inconclusive;
    // Present iff NotCopositive: x >= 0, |x|_1 = 1, x'Ax < -witness_tol.
    std::optional<std::vector<double>> witness;
    double witness_value = 0.0;
    int depth = 0;            // deepest subdivision level reached
    std::int64_t cells = 0;   // simplices examined
};

struct CopositivityOptions {
    int max_depth = 24;
    double witness_tol = 1e-10;  // vertex form value below -witness_tol is a witness
    double cell_tol = 1e-8;      // slack allowed in leaf certificates, scaled by |A|
    std::int64_t max_cells = 4'000'000;
};

// Recursive simplicial subdivision of the standard simplex. A leaf simplex
// with vertex matrix V is certified when the Gram matrix Q = V'AV is seen
// to be copositive by an easy sufficient condition (entrywise nonnegative,
// PSD, or PSD-plus-nonnegative); otherwise its longest negative edge is
// bisected. Copositive is reported only when every leaf is certified;
// a vertex v with v'Av < -witness_tol yields a NotCopositive witness.
CopositivityVerdict check_copositive(const SymMatrix& a, const CopositivityOptions& opt = {});
CopositivityVerdict check_copositive(const SymMatrix& a, int max_depth, double witness_tol = 1e-10);

struct SpnSearch {
    std::optional<SpnCertificate> certificate;  // empty: no decomposition found
    double gap = 0.0;  // final distance between the PSD and down-set iterates
    int iterations = 0;
};

// Dykstra alternating projections between the PSD cone and the entrywise
// down-set {B : B <= A}. Success gives A = P + N with P = B; failure reports
// the residual gap, which is numerical evidence (not proof) of non-SPN-ness.
SpnSearch check_spn(const SymMatrix& a, int max_iter = 50'000, double tol = 1e-8);

} // namespace copos

#endif
