#pragma once

#include <vector>

#include "jrfl/lattice.hpp"
#include "jrfl/matching.hpp"
#include "jrfl/satake.hpp"

namespace jrfl {

// Lattice of an affine Jacquet-Rallis fiber.  The lattice is stored in
// Krylov coordinates: Lambda = U * lattice, where U^{-1} has rows
// e^vee gamma_1^k (k = 0..n-1).  These coordinates keep every fiber lattice
// exact and make e^vee the first coordinate functional.
struct FiberPoint {
    LatticeRep lattice;
    int eta_exponent = 0;  // val of f_n^vee(m~) on a generator of wedge^n Lambda
    Coweight mu;           // Cartan invariant of Ad_g^{-1}(gamma_1), Lambda = g Lambda_0
};

// Precomputed data for one side of one fiber.  At split places the
// symmetric side uses the left component and the unitary side the right
// component of the invariant point, each without a Frobenius filter.
struct FiberModel {
    explicit FiberModel(const PlaceData& where) : place(where) {}

    PlaceData place;
    Side side = Side::symmetric;
    bool frobenius_filter = true;  // false: all lattices over the residue extension
    DeformedPoint point;
    Matrix gamma;          // gamma_1 in standard coordinates
    Matrix krylov_dual;    // rows e^vee gamma^k
    Matrix krylov_inv;     // U = krylov_dual^{-1}
    Matrix gram;           // krylov_dual * krylov(gamma, e) = (e^vee gamma^{i+j} e)
    Matrix companion;      // U^{-1} gamma U, exact
    Matrix cocycle;        // s or h in standard coordinates (inert only)
    Matrix frobenius_form; // symmetric: U^{-1} s Ubar; unitary: Ubar^t h^{-1} U (inert only)
    std::vector<int> minor_floor;  // val of prod_{j<i} z_j^{i-j}, i = 1..n-1
    Series fdual_n;
    int val_det_krylov_inv = 0;
    Coweight lambda;       // boundary coweight of the fiber, total val det gamma_1

    int n() const { return gamma.rows(); }
    bool inert() const { return place.inert(); }
    bool twisted() const { return place.inert() && frobenius_filter; }
    Matrix standard_basis(const FiberPoint& fp) const { return krylov_inv * fp.lattice.basis(); }
};

FiberModel make_fiber_model(const InvariantPoint& a, Side side);
// Model of (gamma^t, e^{vee t}, e^t) without Frobenius filter: Lambda lies in
// the fiber of the original data iff its dual lies in this one.
FiberModel transposed_model(const FiberModel& model);

// Sound bound: every fiber lattice satisfies pi^N Lambda_0 <= Lambda <= pi^{-N} Lambda_0.
int fiber_bounds(const FiberModel& model);
int fiber_bounds(const InvariantPoint& a);

struct FiberEnumeration {
    std::vector<FiberPoint> points;
    EnumerationStats stats;
    int widen = 0;
};

// Enumerate the fiber inside the Krylov window gram O^n <= M <= O^n, with the
// upper end widened to pi^{-widen} O^n.  For widen > 0 the condition
// e^vee in Lambda^vee is tested explicitly instead of being implied by the
// window.  Every emitted lattice is re-validated in standard coordinates.
FiberEnumeration enumerate_fiber(const FiberModel& model, int widen = 0);
std::vector<FiberPoint> enumerate_symmetric(const InvariantPoint& a);
std::vector<FiberPoint> enumerate_unitary(const InvariantPoint& a);

// Non-incremental check of all defining conditions in standard coordinates.
bool validate_fiber_lattice(const FiberModel& model, const Matrix& standard_basis);

int eta_weight(const FiberModel& model, const FiberPoint& fp);
// satake_value(lambda, mu(Lambda), q) where lambda is re-centred to the
// fiber's total; lambda must lie in the adjoint class of the boundary.
Rational ic_weight(const FiberModel& model, const FiberPoint& fp, const Coweight& lambda);
// Lambda* = d^{-1} B^{-t} O, computed in Krylov coordinates as gram * M^{-t}.
FiberPoint involution_star(const FiberModel& model, const FiberPoint& fp);

// How IC weights are normalized: the Satake value q^{-<rho,lambda>} P(q), or
// the bare stalk polynomial value P(q), which stays integral when
// <2rho,lambda> is odd and differs from the Satake value by a factor common to
// both sides.
enum class IcNormalization { satake, stalk };

Rational stalk_weight(const FiberModel& model, const FiberPoint& fp, const Coweight& lambda);

// Sum over the fiber of (eta-weight on the symmetric side) * IC weight.
Rational weighted_sum(const FiberModel& model, const std::vector<FiberPoint>& points, const Coweight& lambda,
                      IcNormalization norm = IcNormalization::satake);

struct CertifiedCount {
    Rational value;
    std::size_t points = 0;
    int bound = 0;      // fiber_bounds of the model
    EnumerationStats stats;
};

// Weighted count certified at bound + 1: the window is widened above, and
// below through the transposed model; any change raises Unstable.
CertifiedCount certified_count(const FiberModel& model, const Coweight& lambda,
                               IcNormalization norm = IcNormalization::satake);
Rational weighted_count(const InvariantPoint& a, const Coweight& lambda, Side side,
                        IcNormalization norm = IcNormalization::satake);

}  // namespace jrfl
