#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jrfl/matrix.hpp"

namespace jrfl {

// Full-rank lattice given by its column Hermite normal form: upper
// triangular, diagonal entries exactly pi^{d_i}, and entry (i, k), k > i,
// a Laurent polynomial with exponents below d_i.
class LatticeRep {
public:
    LatticeRep() = default;

    const Matrix& basis() const { return basis_; }
    const std::vector<int>& diagonal() const { return diag_; }
    int rank() const { return basis_.rows(); }
    // Smith exponents of the basis relative to the standard lattice.
    std::vector<int> cartan() const { return smith_exponents(basis_); }
    // Valuation of det(basis), i.e. the relative index [Lambda_0 : Lambda].
    int volume() const;
    const std::string& key() const { return key_; }

    bool operator==(const LatticeRep& o) const { return key_ == o.key_; }
    bool operator<(const LatticeRep& o) const { return key_ < o.key_; }

    // True if v (column) lies in the lattice.
    bool contains(const Matrix& v) const;
    // True if the lattice contains `other`.
    bool contains_lattice(const LatticeRep& other) const;

    static LatticeRep standard(int n, const SeriesRing* ring);
    static LatticeRep from_hnf(Matrix basis);

private:
    Matrix basis_;
    std::vector<int> diag_;
    std::string key_;
};

// Canonical HNF of the O-span of the columns of `generators` (n x m, m >= n).
LatticeRep hermite_lattice(const Matrix& generators);
LatticeRep dual_lattice(const LatticeRep& lattice);
// Gram matrix sigma(B)^t h^{-1} B lies in GL_n(O').
bool is_selfdual_hermitian(const LatticeRep& lattice, const Matrix& h);
// Same test with the inverse form already computed.
bool is_selfdual_for_inverse_form(const Matrix& basis, const Matrix& h_inverse);

// Incremental filter on candidate lattices expressed in the coordinates of
// the upper lattice.  `partial` sees the first j+1 HNF columns and must only
// reject when no completion can pass; `full` sees the complete basis.
// `entry` sees single HNF entries (row, column) as soon as they are chosen
// and may reject only when every lattice with that entry fails.
struct LatticeFilter {
    std::function<bool(const Matrix& columns, int j)> partial;
    std::function<bool(const Matrix& basis)> full;
    std::function<bool(const Series& value, int row, int col)> entry;
};

struct EnumerationStats {
    long long candidates = 0;
    long long pruned = 0;
    long long emitted = 0;
};

// All lattices M with lower <= M <= upper, reported as HNF bases in upper's
// coordinates (i.e. as sublattices of O^n containing upper^{-1} lower).
// The callback receives each lattice exactly once.
void enumerate_between(const Matrix& upper_basis, const Matrix& lower_generators, const LatticeFilter& filter,
                       const std::function<void(const Matrix& local_basis)>& emit,
                       EnumerationStats* stats = nullptr);

// Window pi^N Lambda_0 <= Lambda <= pi^{-N} Lambda_0 in standard coordinates.
std::vector<LatticeRep> enumerate_lattices(int n, int bound, const SeriesRing* ring,
                                           const LatticeFilter& filter = {}, EnumerationStats* stats = nullptr);

}  // namespace jrfl
