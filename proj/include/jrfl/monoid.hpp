#pragma once

#include <optional>
#include <vector>

#include "jrfl/matrix.hpp"
#include "jrfl/place.hpp"
#include "jrfl/random.hpp"

namespace jrfl {

// Monoid element through its fundamental representations: abelianization
// coordinates z_1..z_{n-1} and matrices x_i on V_i = wedge^i, i = 1..n-1.
struct MonoidPoint {
    int n = 0;
    std::vector<Series> z;  // z[i-1] = z_i
    std::vector<Matrix> x;  // x[i-1] = x_i

    const Matrix& x1() const { return x.at(0); }
    const SeriesRing* ring() const { return x.at(0).ring(); }
};

struct DeformedPoint {
    MonoidPoint point;
    Matrix e;      // n x 1
    Matrix edual;  // 1 x n
};

// Plain coordinates (z, a, b, b0) of the deformed invariant space.
struct InvariantCoords {
    std::vector<Series> z, a, b;
    Series b0;
};

struct PureTensors {
    std::vector<Matrix> f;      // f[i-1] = f_i, column in V_i
    std::vector<Matrix> fdual;  // fdual[i-1] = f_i^vee, row on V_i
};

Matrix delta_scaling(const std::vector<Series>& z, int n, int i);
// Simple-root coordinates c_j(S) of varpi_i - wt(e_S), j = 1..n-1.
std::vector<int> delta_exponents(int n, int i, const std::vector<int>& subset);
Matrix companion_matrix(const std::vector<Series>& a, int n);
MonoidPoint companion_section(const std::vector<Series>& z, const std::vector<Series>& a);
// Invariants a_i = Tr(x_i).
std::vector<Series> chi(const MonoidPoint& m);
MonoidPoint section_MH(const std::vector<Series>& z, const std::vector<Series>& a_prime,
                       const std::vector<Series>& a_second);
// (chi'_i, chi''_i): traces of x_i over basis vectors e_S with n not in S,
// resp. n in S.
std::pair<std::vector<Series>, std::vector<Series>> chi_MH(const MonoidPoint& m);
DeformedPoint deformed_section(const InvariantCoords& c);
InvariantCoords deformed_invariants(const DeformedPoint& m);

// Wedge products with the fixed ordering of wedge_basis.
Matrix wedge_vector_left(const Matrix& v, const Matrix& w, int n, int deg_w);    // v ^ w, v in V_1
Matrix wedge_covector_right(const Matrix& phi, const Matrix& psi, int n, int deg_phi);  // phi ^ psi, psi in V_1^vee
// Contraction of a vector of V_i against a covector of V_1.
Matrix contract(const Matrix& covector, const Matrix& v, int n, int deg_v);
PureTensors pure_tensors(const DeformedPoint& m);
// Dimension of the kernel of w -> f ^ w (V_1 -> V_{i+1}) over the fraction
// field, from exact minors.  Equals i exactly when f in V_i is pure and
// nonzero.
int matrix_rank(const Matrix& m);
int wedge_kernel_dimension(const Matrix& f, int n, int deg_f);
int covector_wedge_kernel_dimension(const Matrix& phi, int n, int deg_phi);

// Extended discriminant f_n^vee f_n.
Series disc(const DeformedPoint& m);
Series disc(const InvariantCoords& c);
// disc of the characteristic polynomial of x_1 divided by
// prod_j z_j^{(n-j)(n-j-1)}.
Series disc_plus(const std::vector<Series>& z, const std::vector<Series>& a);
// Characteristic polynomial coefficients of x_1 for the section point:
// t^n - c_1 t^{n-1} + c_2 t^{n-2} - ..., c_i = a_i prod_{j<i} z_j^{i-j}
// (a_n = 1).
std::vector<Series> charpoly_coefficients(const std::vector<Series>& z, const std::vector<Series>& a);
Series polynomial_discriminant(const std::vector<Series>& monic_coeffs_high_to_low);

// Rebuild x_i from (z, x_1) on the invertible locus.
MonoidPoint reconstruct_from_x1(const std::vector<Series>& z, const Matrix& x1);
MonoidPoint involution_iota(const MonoidPoint& m);
MonoidPoint involution_tau(const MonoidPoint& m);

// Point of the Galois-twisted invariant space over a place.  At inert
// places the coordinates are series over F_{q^2}; at split places (z, a, b)
// hold the left components and (z_r, a_r, b_r) the right ones.
struct InvariantPoint {
    PlaceData place;
    InvariantCoords coords;
    InvariantCoords right;  // split places only
    int val_disc = 0;
    int val_disc_plus = 0;
    bool srs = false;

    int n() const { return place.n(); }
    // Fills val_disc, val_disc_plus, srs (requires determinable valuations).
    void refresh();
};

// Apply the twisted relations: given free coordinates (inert: i < n/2 plus
// the middle index and b0; split: the left components), fill the rest.
InvariantPoint complete_twisted(const PlaceData& place, const InvariantCoords& free_part);
bool check_twisted(const InvariantPoint& a);
bool check_twisted_coords(const PlaceData& place, const InvariantCoords& left, const InvariantCoords& right);

struct TwistedConstraints {
    std::optional<std::vector<int>> boundary;  // val z_i, i = 1..n-1
    std::optional<int> disc_parity;            // 0 even, 1 odd
    int min_val_disc = 0;
    int max_val_disc = 1 << 20;
    int max_val_disc_plus = 1 << 20;
    bool require_srs = true;
    int degree = 2;          // sampled coefficients pi^0..pi^degree beyond the valuation
    int zero_bias = 1;       // each coefficient is zero with probability zero_bias/(zero_bias+2)
    int retries = 20000;
};

InvariantPoint random_twisted(const PlaceData& place, const TwistedConstraints& constraints, CounterRng& rng);

// Random exact series helpers.
Series random_series(const SeriesRing* ring, int lowest, int degree, CounterRng& rng, int zero_bias = 0,
                     bool base_only = false);
Series random_unit(const SeriesRing* ring, int degree, CounterRng& rng, int zero_bias = 0, bool base_only = false);
// Element w of F_{q^2} with frobenius(w) = -w, w != 0.
Elem imaginary_unit(const FiniteField& ext);

}  // namespace jrfl
