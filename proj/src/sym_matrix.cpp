#include "copos/sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace copos {

SymMatrix::SymMatrix(int order) : order_(order) {
    if (order < 1) throw std::invalid_argument("SymMatrix: order must be >= 1");
    upper_.assign(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0);
}

int SymMatrix::idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= order_ || j >= order_)
        throw std::out_of_range("SymMatrix: index out of range");
    if (i > j) std::swap(i, j);
    return i * order_ - i * (i - 1) / 2 + (j - i);
}

SymMatrix SymMatrix::from_upper(int order, std::vector<double> upper) {
    SymMatrix m(order);
    if (upper.size() != m.upper_.size())
        throw std::invalid_argument("SymMatrix: upper-triangle size mismatch");
    m.upper_ = std::move(upper);
    return m;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    SymMatrix m(n);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("SymMatrix: ragged row list");
        int j = 0;
        for (double v : row) {
            if (j >= i)
                m.set(i, j, v);
            else if (v != m(i, j))
                throw std::invalid_argument("SymMatrix: asymmetric initializer");
            ++j;
        }
        ++i;
    }
    return m;
}

SymMatrix SymMatrix::identity(int order) {
    SymMatrix m(order);
    for (int i = 0; i < order; ++i) m.set(i, i, 1.0);
    return m;
}

double SymMatrix::quad_form(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != order_)
        throw std::invalid_argument("quad_form: size mismatch");
    double s = 0.0;
    for (int i = 0; i < order_; ++i) {
        s += (*this)(i, i) * x[i] * x[i];
        for (int j = i + 1; j < order_; ++j) s += 2.0 * (*this)(i, j) * x[i] * x[j];
    }
    return s;
}

std::vector<double> SymMatrix::matvec(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != order_)
        throw std::invalid_argument("matvec: size mismatch");
    std::vector<double> y(order_, 0.0);
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

void SymMatrix::to_full(double* out) const {
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) out[i * order_ + j] = (*this)(i, j);
}

SymMatrix SymMatrix::without_index(int k) const {
    if (k < 0 || k >= order_) throw std::out_of_range("without_index");
    if (order_ == 1) throw std::invalid_argument("without_index: order-1 matrix");
    SymMatrix m(order_ - 1);
    for (int i = 0, ii = 0; i < order_; ++i) {
        if (i == k) continue;
        for (int j = i, jj = ii; j < order_; ++j) {
            if (j == k) continue;
            m.set(ii, jj, (*this)(i, j));
            ++jj;
        }
        ++ii;
    }
    return m;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : upper_) m = std::max(m, std::abs(v));
    return m;
}

double SymMatrix::min_entry() const {
    double m = upper_[0];
    for (double v : upper_) m = std::min(m, v);
    return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
    if (o.order_ != order_) throw std::invalid_argument("SymMatrix: order mismatch");
    for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] += o.upper_[k];
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
    if (o.order_ != order_) throw std::invalid_argument("SymMatrix: order mismatch");
    for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] -= o.upper_[k];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    for (double& v : upper_) v *= s;
    return *this;
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    if (a.order() != b.order()) throw std::invalid_argument("max_abs_diff: order mismatch");
    double m = 0.0;
    for (int i = 0; i < a.order(); ++i)
        for (int j = i; j < a.order(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

SymMatrix apply_permutation(const SymMatrix& a, std::span<const int> perm) {
    const int n = a.order();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("apply_permutation: size mismatch");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("apply_permutation: not a permutation");
        seen[p] = true;
    }
    SymMatrix b(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) b.set(i, j, a(perm[i], perm[j]));
    return b;
}

} // namespace copos
