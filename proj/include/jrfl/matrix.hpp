#pragma once

#include <string>
#include <vector>

#include "jrfl/series.hpp"

namespace jrfl {

// Dense matrix of Laurent series sharing one coefficient ring.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const SeriesRing* ring);

    static Matrix identity(int n, const SeriesRing* ring);
    static Matrix diagonal(const std::vector<Series>& d);
    static Matrix column(const std::vector<Series>& v);
    static Matrix row(const std::vector<Series>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SeriesRing* ring() const { return ring_; }
    Series& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Series& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Series& s, const Matrix& m);

    Matrix transpose() const;
    Matrix frobenius() const;
    Matrix truncated(int prec) const;
    Matrix shifted(int k) const;  // multiply every entry by pi^k
    Matrix block(int r0, int c0, int nr, int nc) const;
    Matrix column_at(int j) const { return block(0, j, rows_, 1); }
    Matrix row_at(int i) const { return block(i, 0, 1, cols_); }
    void set_column(int j, const Matrix& v);

    Series trace() const;
    // Division-free determinant (subset expansion); exact precision tracking.
    Series det() const;
    // Determinant of the submatrix on the given rows and columns.
    Series minor(const std::vector<int>& rows, const std::vector<int>& cols) const;
    // Inverse by Gauss-Jordan with minimal-valuation pivots.
    Matrix inverse() const;
    // Solve A X = B.
    Matrix solve(const Matrix& rhs) const;

    // Smallest valuation among entries (kInfinitePrec if all exact zero);
    // throws if some entry is zero to a precision below every known value.
    int min_valuation() const;
    bool is_integral() const;
    // Integral with unit determinant.
    bool in_gl_integral() const;
    bool agrees(const Matrix& o) const;
    bool identical(const Matrix& o) const;
    int min_prec() const;

    std::vector<std::vector<std::string>> serialize() const;
    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    const SeriesRing* ring_ = nullptr;
    std::vector<Series> data_;
};

// Matrix of the i-th exterior power in the lexicographically ordered basis
// e_S, |S| = i; entries are the i x i minors.
Matrix wedge_matrix(const Matrix& m, int i);
// Subsets of {0..n-1} of size i in lexicographic order.
const std::vector<std::vector<int>>& wedge_basis(int n, int i);

struct SmithForm {
    std::vector<int> exponents;  // descending
    Matrix u, v;                 // u * m * v = diag(pi^{e}) in ascending pivot order
};

// Elementary divisor exponents, descending.  Only exponents are computed.
std::vector<int> smith_exponents(const Matrix& m);
SmithForm smith_normal_form(const Matrix& m);

}  // namespace jrfl
