#include "copos/s_family.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace copos {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kClassTol = 1e-12;
constexpr double kPivotTol = 1e-12;
} // namespace

ThetaVector::ThetaVector(const std::array<double, 5>& t) : theta_(t) {
    for (int i = 0; i < 5; ++i) {
        if (!(theta_[i] >= 0.0))
            throw std::invalid_argument("ThetaVector: component " + std::to_string(i) +
                                        " is negative");
    }
    if (sum() > kPi + kSumSlack)
        throw std::invalid_argument("ThetaVector: component sum exceeds pi");
}

double ThetaVector::sum() const {
    double s = 0.0;
    for (double v : theta_) s += v;
    return s;
}

bool ThetaVector::is_zero(double tol) const {
    for (double v : theta_)
        if (v > tol) return false;
    return true;
}

double ThetaVector::min_component() const {
    double m = theta_[0];
    for (double v : theta_) m = std::min(m, v);
    return m;
}

const char* to_string(SFamilyClass c) {
    switch (c) {
        case SFamilyClass::Horn: return "HORN";
        case SFamilyClass::PsdBoundary: return "PSD_BOUNDARY";
        case SFamilyClass::Hildebrand: return "HILDEBRAND";
        case SFamilyClass::NIrreducible: return "N_IRREDUCIBLE";
    }
    return "?";
}

SymMatrix Rank2Factors::compose() const {
    SymMatrix m(5);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) m.set(i, j, c[i] * c[j] + s[i] * s[j]);
    return m;
}

SymMatrix build_s(const ThetaVector& theta) {
    SymMatrix m(5);
    for (int i = 0; i < 5; ++i) {
        m.set(i, i, 1.0);
        m.set(i, cyc(i, 1), -std::cos(theta[i]));
        m.set(i, cyc(i, 2), std::cos(theta[i] + theta[cyc(i, 1)]));
    }
    return m;
}

SymMatrix horn_matrix() { return build_s(ThetaVector(0, 0, 0, 0, 0)); }

Rank2Factors rank2_factors(const ThetaVector& theta) {
    if (std::abs(theta.sum() - kPi) > 1e-9)
        throw std::invalid_argument("rank2_factors: requires sum(theta) = pi within 1e-9");
    Rank2Factors f;
    f.c = {1.0, -std::cos(theta[0]), std::cos(theta[0] + theta[1]),
           std::cos(theta[3] + theta[4]), -std::cos(theta[4])};
    f.s = {0.0, std::sin(theta[0]), -std::sin(theta[0] + theta[1]),
           std::sin(theta[3] + theta[4]), -std::sin(theta[4])};
    return f;
}

SFamilyClass classify_s(const ThetaVector& theta) {
    // Boundary ties resolve toward the boundary class.
    if (theta.is_zero(kClassTol)) return SFamilyClass::Horn;
    if (theta.sum() >= kPi - kClassTol) return SFamilyClass::PsdBoundary;
    if (theta.min_component() <= kClassTol) return SFamilyClass::NIrreducible;
    return SFamilyClass::Hildebrand;
}

SymMatrix schur_complement(const SymMatrix& a, int k) {
    const int n = a.order();
    if (k < 0 || k >= n) throw std::out_of_range("schur_complement: pivot index");
    const double pivot = a(k, k);
    if (!(pivot > kPivotTol))
        throw std::domain_error("schur_complement: pivot entry not positive");
    SymMatrix c = a.without_index(k);
    std::vector<double> b;
    b.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i)
        if (i != k) b.push_back(a(i, k));
    for (int i = 0; i < n - 1; ++i)
        for (int j = i; j < n - 1; ++j) c.add_at(i, j, -b[i] * b[j] / pivot);
    return c;
}

} // namespace copos
