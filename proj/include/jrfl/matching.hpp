#pragma once

#include <optional>
#include <vector>

#include "jrfl/monoid.hpp"
#include "jrfl/satake.hpp"

namespace jrfl {

// O'-point over an invariant point: the deformed section read over O'.  At
// split places `point` is the left component and `right` the right one.
struct BasePoint {
    DeformedPoint point;
    std::optional<DeformedPoint> right;
    const Matrix& gamma1() const { return point.point.x1(); }
};

enum class Side { symmetric, unitary };
std::string to_string(Side side);

BasePoint lift_basepoint(const InvariantPoint& a);

// Krylov matrices [e, x e, ..., x^{n-1} e] and rows e^vee x^k.
Matrix krylov(const Matrix& x, const Matrix& e);
Matrix covector_krylov(const Matrix& x, const Matrix& edual);

// Image of (x_1, e, e^vee) under coefficientwise Frobenius followed by the
// side's outer twist: symmetric (Z xbar^{-1}, ebar, ebar^vee), unitary
// (Z xbar^{-t}, ebar^{vee t}, ebar^t), Z the product of the conjugated z_i.
DeformedPoint twisted_frobenius(const DeformedPoint& m, Side side);

// The unique M with Ad_M(twisted_frobenius(m)) = m:  M x' M^{-1} = x,
// M e' = e, e'^vee = e^vee M.  On the symmetric side M = s with s sbar = 1;
// on the unitary side M = h is Hermitian.  Fiber lattices satisfy
// Lambda = s Lambdabar, resp. are self-dual for (x, y) = xbar^t h^{-1} y.
// Split places return the identity.
Matrix solve_cocycle(const InvariantPoint& a, Side side);
Matrix solve_cocycle(const BasePoint& base, Side side);

enum class Obstruction { trivial, nontrivial };
std::string to_string(Obstruction o);
Obstruction obstruction(const InvariantPoint& a);
bool is_matching_pair(const InvariantPoint& a);

// Dominant coweight with <alpha_i, lambda> = val z_i and last part 0.
Coweight boundary_coweight(const InvariantPoint& a);
// The GL-level coweight bounding the Cartan invariants of gamma_1 in the
// fiber: pairings val z_{n-i}, total val det gamma_1.  Coincides with
// boundary_coweight when the boundary is sigma_Out-fixed.
Coweight fiber_boundary_coweight(const std::vector<Series>& z);

// Slopes of the Newton polygon of the characteristic polynomial of gamma_1,
// recentred to mean zero and sorted decreasingly.
std::vector<Rational> newton_point(const InvariantPoint& a);
std::vector<Rational> newton_slopes(const std::vector<Series>& monic_high_to_low);

// Group-side data for A in S_n(F_v) (A sigma(A) = 1); the standard vector
// e = e_n and co-vector e^vee = e_n^vee.  At split places A is the left
// component and membership is automatic.
struct GroupInvariants {
    Series det;
    std::vector<Series> a;     // Tr wedge^i A
    std::vector<Series> b;     // e^vee A^i e
    Series disc;               // det(e^vee A^{i+j} e)
    Series disc_n;             // det(A)^{1-n} disc
    bool srs = false;
};
GroupInvariants group_invariants(const PlaceData& place, const Matrix& A);
void require_symmetric_space(const PlaceData& place, const Matrix& A);

void require_unitary(const PlaceData& place, const Matrix& A);

// Monoid lift of A with boundary lambda (n = 2): x_1 = c A, c / cbar = 1 /
// det A, val c = lambda_1 - lambda_2 over 2, standard e, e^vee.  On the
// symmetric side A sigma(A) = 1; on the unitary side A is unitary for the
// identity hermitian form, and the twisted Frobenius of the lift is trivial
// in both cases.
InvariantPoint lift_to_monoid(const PlaceData& place, const Matrix& A, const Coweight& lambda,
                              Side side = Side::symmetric);

enum class CartanGroup { symmetric_space, unitary, general_linear };
// Descending Smith exponents; membership of x in the stated group is
// validated (unitary for the identity Hermitian form).
Coweight cartan_invariant(const PlaceData& place, const Matrix& x, CartanGroup group);

// (-1)^{val(e^vee ^ e^vee A ^ ... ^ e^vee A^{n-1})} at inert places.
int transfer_factor(const PlaceData& place, const Matrix& A);

// The unique d with (x_1^t, e^{vee t}, e^t) = (Ad_d x_1, d e, e^vee d^{-1}).
Matrix involution_element(const BasePoint& base);

}  // namespace jrfl
