#ifndef COPOS_SYM_MATRIX_HPP
#define COPOS_SYM_MATRIX_HPP

#include <initializer_list>
#include <span>
#include <vector>

namespace copos {

// Dense real symmetric matrix. The upper triangle (row-major) is the
// authoritative storage; (i,j) and (j,i) read the same cell, so symmetry
// is exact by construction. Indices are 0-based throughout.
class SymMatrix {
public:
    explicit SymMatrix(int order);
    static SymMatrix from_upper(int order, std::vector<double> upper);
    static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static SymMatrix identity(int order);

    int order() const { return order_; }
    double operator()(int i, int j) const { return upper_[idx(i, j)]; }
    void set(int i, int j, double v) { upper_[idx(i, j)] = v; }
    void add_at(int i, int j, double v) { upper_[idx(i, j)] += v; }

    std::span<const double> upper() const { return upper_; }

    // x' A x for a vector of length order().
    double quad_form(std::span<const double> x) const;
    // y = A x.
    std::vector<double> matvec(std::span<const double> x) const;
    // Row-major order() x order() expansion into caller storage (size n*n).
    void to_full(double* out) const;

    // Principal submatrix with row/column k deleted.
    SymMatrix without_index(int k) const;

    double max_abs() const;
    double min_entry() const;

    SymMatrix& operator+=(const SymMatrix& o);
    SymMatrix& operator-=(const SymMatrix& o);
    SymMatrix& operator*=(double s);
    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    bool operator==(const SymMatrix& o) const = default;

private:
    int idx(int i, int j) const;
    int order_;
    std::vector<double> upper_;
};

// Largest absolute entrywise difference.
double max_abs_diff(const SymMatrix& a, const SymMatrix& b);

// B with B(i,j) = A(perm[i], perm[j]); perm must be a permutation of 0..n-1.
SymMatrix apply_permutation(const SymMatrix& a, std::span<const int> perm);

} // namespace copos

#endif
