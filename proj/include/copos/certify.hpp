#ifndef COPOS_CERTIFY_HPP
#define COPOS_CERTIFY_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "copos/cones.hpp"
#include "copos/graphs.hpp"
#include "copos/s_family.hpp"
#include "copos/sym_matrix.hpp"

namespace copos {

enum class CertifyRoute { Bordered, SchurReduce, ThetaCompletion, ProjectionFallback };

const char* to_string(CertifyRoute r);

struct CertifyStep {
    std::string op;
    std::string detail;
};

struct CertifyTrace {
    CertifyRoute route = CertifyRoute::ProjectionFallback;
    std::vector<CertifyStep> steps;
    SpnCertificate certificate;
};

// Certification failure carrying per-branch diagnostics.
class certify_error : public std::runtime_error {
public:
    explicit certify_error(const std::string& what, std::vector<std::string> diagnostics = {})
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

// Thrown by certify_k2n when n exceeds the proved range.
class out_of_proved_range : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// acos with the argument clamped to [-1, 1]; clamping beyond 1e-9 throws.
double clamped_acos(double x);

// Inversion of the family entry formulas on the seven edges of a matrix in
// the cyclic frame whose zero triangle is {0,1,4} (completion index 0) or
// {0,3,4} (completion index 3). Direct edges give three angles by arccos,
// two more come from the cosine-sum entries, and the remaining two edges are
// consistency-checked (mismatch beyond 1e-7 rejects the input).
ThetaVector recover_theta(const SymMatrix& b_cyclic);
// Convenience: permute into the cyclic frame via a T5 pattern match first.
ThetaVector recover_theta(const SymMatrix& b, const PatternMatch& match);

// Raises component l so the angle sum becomes exactly pi (as summed by
// ThetaVector::sum()). Requires sum(theta) < pi and the sum of the other
// four components >= pi/2; the completed component stays within pi/2.
ThetaVector theta_completion(const ThetaVector& theta, int l);

struct Normalized {
    SymMatrix matrix;           // unit diagonal
    std::vector<double> scale;  // original = diag(scale) * matrix * diag(scale)
};

Normalized normalize_diag(const SymMatrix& a);

// Undo normalize_diag on a certificate (congruence by diag(scale)).
SpnCertificate denormalize_certificate(const SpnCertificate& cert, std::span<const double> scale);

// Reassembles a certificate for A from one for the pivot reduction A/A[k]:
// the PSD part gets the pivot row/column and b b'/a_kk back, the nonnegative
// part embeds with zeros in row/column k.
SpnCertificate lift_schur(const SymMatrix& a, int k, const SpnCertificate& inner);

// Reassembles a certificate for A from one for A with row/column k deleted,
// valid when row k is entrywise nonnegative (the row goes into the
// nonnegative part).
SpnCertificate lift_bordered(const SymMatrix& a, int k, const SpnCertificate& inner);

// Constructive decomposition of a copositive order-5 matrix whose graph is
// T5 (or a subgraph reachable by the reductions): bordered rows, pivot
// reductions, completion of a recovered angle vector, simplex search for a
// dominated boundary member, then projections as a last resort.
CertifyTrace certify_t5(const SymMatrix& a);

// Inductive certification for K_{2,n} graphs, n <= 4 proved; larger n only
// with allow_unproved (heuristic projections, clearly labeled in the trace).
CertifyTrace certify_k2n(const SymMatrix& a, bool allow_unproved = false);

} // namespace copos

#endif
