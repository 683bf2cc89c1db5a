#ifndef COPOS_S_FAMILY_HPP
#define COPOS_S_FAMILY_HPP

#include <array>

#include "copos/sym_matrix.hpp"

namespace copos {

// Five nonnegative angles (radians) with sum at most pi. Values are stored
// exactly as given; validation happens at construction, never by clamping.
class ThetaVector {
public:
    static constexpr double kSumSlack = 1e-12;

    explicit ThetaVector(const std::array<double, 5>& t);
    ThetaVector(double t0, double t1, double t2, double t3, double t4)
        : ThetaVector(std::array<double, 5>{t0, t1, t2, t3, t4}) {}

    double operator[](int i) const { return theta_.at(static_cast<std::size_t>(i)); }
    const std::array<double, 5>& values() const { return theta_; }

    // Left-to-right sum; completion relies on this fixed association order.
    double sum() const;
    bool is_zero(double tol = 1e-12) const;
    double min_component() const;

private:
    std::array<double, 5> theta_;
};

enum class SFamilyClass { Horn, PsdBoundary, Hildebrand, NIrreducible };

const char* to_string(SFamilyClass c);

// Cosine/sine column pair with c c' + s s' = S(theta) when the angle sum is pi.
struct Rank2Factors {
    std::array<double, 5> c{};
    std::array<double, 5> s{};

    SymMatrix compose() const;
};

// Cyclic successor on {0..4}.
inline int cyc(int i, int k) { return (i + k) % 5; }

// The 5x5 family member: unit diagonal, (i, i+1) = -cos(theta_i),
// (i, i+2) = cos(theta_i + theta_{i+1}), indices cyclic.
SymMatrix build_s(const ThetaVector& theta);

// S(0): rows cycle (1, -1, 1, 1, -1).
SymMatrix horn_matrix();

// Requires |sum(theta) - pi| <= 1e-9.
Rank2Factors rank2_factors(const ThetaVector& theta);

SFamilyClass classify_s(const ThetaVector& theta);

// Order-1 pivot reduction A/A[k]: drop row/column k, subtract b b'/a_kk.
// Requires a_kk > 1e-12.
SymMatrix schur_complement(const SymMatrix& a, int k);

} // namespace copos

#endif
