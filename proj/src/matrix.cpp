#include "jrfl/matrix.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "jrfl/errors.hpp"

namespace jrfl {

Matrix::Matrix(int rows, int cols, const SeriesRing* ring)
    : rows_(rows), cols_(cols), ring_(ring), data_(static_cast<std::size_t>(rows) * cols, Series(ring)) {}

Matrix Matrix::identity(int n, const SeriesRing* ring) {
    Matrix m(n, n, ring);
    for (int i = 0; i < n; ++i) m(i, i) = Series::one(ring);
    return m;
}

Matrix Matrix::diagonal(const std::vector<Series>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()), d.at(0).ring());
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

Matrix Matrix::column(const std::vector<Series>& v) {
    Matrix m(static_cast<int>(v.size()), 1, v.at(0).ring());
    for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
    return m;
}

Matrix Matrix::row(const std::vector<Series>& v) {
    Matrix m(1, static_cast<int>(v.size()), v.at(0).ring());
    for (std::size_t i = 0; i < v.size(); ++i) m(0, static_cast<int>(i)) = v[i];
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in +");
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in -");
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in *");
    Matrix r(a.rows_, b.cols_, a.ring_ ? a.ring_ : b.ring_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Series& aik = a(i, k);
            if (aik.is_exact_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                const Series& bkj = b(k, j);
                if (bkj.is_exact_zero()) continue;
                r(i, j) += aik * bkj;
            }
        }
    return r;
}

Matrix operator*(const Series& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.data_) x = s * x;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, ring_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::frobenius() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x.frobenius();
    return r;
}

Matrix Matrix::truncated(int prec) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x.truncated(prec);
    return r;
}

Matrix Matrix::shifted(int k) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x.shifted(k);
    return r;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    Matrix r(nr, nc, ring_);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

void Matrix::set_column(int j, const Matrix& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
}

Series Matrix::trace() const {
    Series t(ring_);
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

Series Matrix::minor(const std::vector<int>& rws, const std::vector<int>& cls) const {
    const int k = static_cast<int>(rws.size());
    if (k != static_cast<int>(cls.size())) throw std::invalid_argument("minor needs a square selection");
    if (k == 0) return Series::one(ring_);
    if (k > 20) throw std::invalid_argument("minor too large for subset expansion");
    std::vector<Series> d(std::size_t{1} << k, Series(ring_));
    d[0] = Series::one(ring_);
    for (unsigned s = 1; s < (1u << k); ++s) {
        const int r = __builtin_popcount(s) - 1;
        Series acc(ring_);
        int greater = __builtin_popcount(s) - 1;
        for (int j = 0; j < k; ++j) {
            if (!(s & (1u << j))) continue;
            const Series& entry = (*this)(rws[r], cls[j]);
            if (!entry.is_exact_zero() && !d[s & ~(1u << j)].is_exact_zero()) {
                Series term = entry * d[s & ~(1u << j)];
                if (greater % 2) acc -= term;
                else acc += term;
            }
            --greater;
        }
        d[s] = acc;
    }
    return d[(1u << k) - 1];
}

Series Matrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    std::vector<int> idx(rows_);
    for (int i = 0; i < rows_; ++i) idx[i] = i;
    return minor(idx, idx);
}

namespace {

// Row index in [from, n) of the entry in column `col` with minimal known
// valuation, or -1 if every candidate is an exact zero.
int pivot_row(const Matrix& a, int col, int from) {
    int best = -1;
    int best_val = kInfinitePrec;
    int unknown_floor = kInfinitePrec;
    for (int i = from; i < a.rows(); ++i) {
        const Series& x = a(i, col);
        if (x.is_exact_zero()) continue;
        if (x.known_zero()) {
            unknown_floor = std::min(unknown_floor, x.prec());
            continue;
        }
        if (x.valuation() < best_val) {
            best_val = x.valuation();
            best = i;
        }
    }
    if (best < 0) {
        if (unknown_floor < kInfinitePrec) throw PrecisionExhausted("pivot undetermined: column zero to precision");
        return -1;
    }
    if (unknown_floor <= best_val) throw PrecisionExhausted("pivot valuation not certified by precision");
    return best;
}

void swap_rows(Matrix& a, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(Matrix& a, int i, int j) {
    if (i == j) return;
    for (int r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

}  // namespace

Matrix Matrix::solve(const Matrix& rhs) const {
    if (rows_ != cols_ || rhs.rows_ != rows_) throw std::invalid_argument("solve: shape mismatch");
    const int n = rows_;
    Matrix a = *this;
    Matrix b = rhs;
    for (int k = 0; k < n; ++k) {
        int p = pivot_row(a, k, k);
        if (p < 0) throw SingularMatrix("matrix is singular");
        swap_rows(a, k, p);
        swap_rows(b, k, p);
        Series inv = a(k, k).inverse();
        for (int j = k; j < n; ++j) a(k, j) = a(k, j) * inv;
        for (int j = 0; j < b.cols_; ++j) b(k, j) = b(k, j) * inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_exact_zero()) continue;
            Series f = a(i, k);
            for (int j = k; j < n; ++j)
                if (!a(k, j).is_exact_zero()) a(i, j) -= f * a(k, j);
            for (int j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_exact_zero()) b(i, j) -= f * b(k, j);
        }
    }
    return b;
}

Matrix Matrix::inverse() const { return solve(identity(rows_, ring_)); }

int Matrix::min_valuation() const {
    int best = kInfinitePrec;
    int unknown_floor = kInfinitePrec;
    for (const auto& x : data_) {
        if (x.is_exact_zero()) continue;
        if (x.known_zero()) unknown_floor = std::min(unknown_floor, x.prec());
        else best = std::min(best, x.valuation());
    }
    if (unknown_floor <= best && unknown_floor < kInfinitePrec)
        throw PrecisionExhausted("minimal valuation not certified by precision");
    return best;
}

bool Matrix::is_integral() const {
    for (const auto& x : data_)
        if (!x.is_integral()) return false;
    return true;
}

bool Matrix::in_gl_integral() const {
    if (rows_ != cols_ || !is_integral()) return false;
    Series d = det();
    if (d.known_zero()) {
        if (d.is_exact_zero() || d.prec() > 0) return false;
        throw PrecisionExhausted("determinant unit test undecidable");
    }
    return d.valuation() == 0;
}

bool Matrix::agrees(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!data_[k].agrees(o.data_[k])) return false;
    return true;
}

bool Matrix::identical(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!data_[k].identical(o.data_[k])) return false;
    return true;
}

int Matrix::min_prec() const {
    int p = kInfinitePrec;
    for (const auto& x : data_) p = std::min(p, x.prec());
    return p;
}

std::vector<std::vector<std::string>> Matrix::serialize() const {
    std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).serialize();
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream s;
    for (int i = 0; i < rows_; ++i) {
        s << '[';
        for (int j = 0; j < cols_; ++j) s << (j ? ", " : "") << (*this)(i, j).serialize();
        s << "]\n";
    }
    return s.str();
}

const std::vector<std::vector<int>>& wedge_basis(int n, int i) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, i);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == i) {
            subsets.push_back(cur);
            return;
        }
        for (int k = start; k < n; ++k) {
            cur.push_back(k);
            self(self, k + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return cache.emplace(key, std::move(subsets)).first->second;
}

Matrix wedge_matrix(const Matrix& m, int i) {
    const int n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("wedge of a non-square matrix");
    if (i < 0 || i > n) throw std::invalid_argument("wedge degree out of range");
    const auto& basis = wedge_basis(n, i);
    const int dim = static_cast<int>(basis.size());
    Matrix w(dim, dim, m.ring());
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) w(r, c) = m.minor(basis[r], basis[c]);
    return w;
}

namespace {

// Position of the minimal-valuation entry of the trailing submatrix.
std::pair<int, int> smith_pivot(const Matrix& a, int k) {
    int best_val = kInfinitePrec, bi = -1, bj = -1;
    int unknown_floor = kInfinitePrec;
    for (int i = k; i < a.rows(); ++i)
        for (int j = k; j < a.cols(); ++j) {
            const Series& x = a(i, j);
            if (x.is_exact_zero()) continue;
            if (x.known_zero()) {
                unknown_floor = std::min(unknown_floor, x.prec());
                continue;
            }
            if (x.valuation() < best_val) {
                best_val = x.valuation();
                bi = i;
                bj = j;
            }
        }
    if (bi < 0) {
        if (unknown_floor < kInfinitePrec) throw PrecisionExhausted("Smith pivot undetermined");
        throw SingularMatrix("Smith form of a singular matrix");
    }
    if (unknown_floor <= best_val) throw PrecisionExhausted("Smith pivot not certified by precision");
    return {bi, bj};
}

}  // namespace

std::vector<int> smith_exponents(const Matrix& m) {
    Matrix a = m;
    const int n = std::min(a.rows(), a.cols());
    std::vector<int> exps;
    for (int k = 0; k < n; ++k) {
        auto [pi, pj] = smith_pivot(a, k);
        swap_rows(a, k, pi);
        swap_cols(a, k, pj);
        exps.push_back(a(k, k).valuation());
        if (k + 1 == n) break;
        Series inv = a(k, k).inverse();
        for (int i = k + 1; i < a.rows(); ++i) {
            if (a(i, k).is_exact_zero()) continue;
            Series f = a(i, k) * inv;
            for (int j = k + 1; j < a.cols(); ++j)
                if (!a(k, j).is_exact_zero()) a(i, j) -= f * a(k, j);
        }
    }
    std::sort(exps.rbegin(), exps.rend());
    return exps;
}

SmithForm smith_normal_form(const Matrix& m) {
    Matrix a = m;
    const int rows = a.rows(), cols = a.cols();
    Matrix u = Matrix::identity(rows, m.ring());
    Matrix v = Matrix::identity(cols, m.ring());
    const int n = std::min(rows, cols);
    std::vector<int> exps;
    for (int k = 0; k < n; ++k) {
        auto [pi, pj] = smith_pivot(a, k);
        swap_rows(a, k, pi);
        swap_rows(u, k, pi);
        swap_cols(a, k, pj);
        swap_cols(v, k, pj);
        const int e = a(k, k).valuation();
        exps.push_back(e);
        // Normalize the pivot to pi^e by scaling row k with the unit part.
        Series unit_inv = a(k, k).shifted(-e).inverse();
        for (int j = 0; j < cols; ++j) a(k, j) = a(k, j) * unit_inv;
        for (int j = 0; j < rows; ++j) u(k, j) = u(k, j) * unit_inv;
        a(k, k) = Series::uniformizer_power(m.ring(), e);
        Series inv = Series::uniformizer_power(m.ring(), -e);
        for (int i = k + 1; i < rows; ++i) {
            if (a(i, k).is_exact_zero()) continue;
            Series f = a(i, k) * inv;
            for (int j = 0; j < cols; ++j)
                if (!a(k, j).is_exact_zero()) a(i, j) -= f * a(k, j);
            for (int j = 0; j < rows; ++j)
                if (!u(k, j).is_exact_zero()) u(i, j) -= f * u(k, j);
            a(i, k) = Series(m.ring());
        }
        for (int j = k + 1; j < cols; ++j) {
            if (a(k, j).is_exact_zero()) continue;
            Series f = a(k, j) * inv;
            for (int i = 0; i < cols; ++i)
                if (!v(i, k).is_exact_zero()) v(i, j) -= f * v(i, k);
            a(k, j) = Series(m.ring());
        }
    }
    std::vector<int> sorted = exps;
    std::sort(sorted.rbegin(), sorted.rend());
    return {sorted, u, v};
}

}  // namespace jrfl
