#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jrfl/fibers.hpp"

namespace jrfl {

enum class FLVerdict { equal, unequal, skipped_odd_disc };
std::string to_string(FLVerdict verdict);

// Both sides of the point-count identity for one invariant point.  When a
// side is not computed (odd discriminant valuation with skipping enabled)
// it is empty; verdict == equal exactly when both sides are present and equal.
struct FLReport {
    std::string a_digest;
    Coweight lambda;
    std::optional<Rational> lhs;  // transfer factor * eta/IC-weighted symmetric count
    std::optional<Rational> rhs;  // IC-weighted unitary count
    FLVerdict verdict = FLVerdict::unequal;
    int transfer_factor = 1;
    // (-1)^{<rho, lambda>}: the group-level count Delta(A) * OI equals this
    // sign times the fiber count of the monoid lift (inert places).
    int lift_sign = 1;
    double seconds_symmetric = 0.0;
    double seconds_unitary = 0.0;
    int bound_symmetric = 0;
    int bound_unitary = 0;
    std::size_t points_symmetric = 0;
    std::size_t points_unitary = 0;
};

struct FLOptions {
    IcNormalization norm = IcNormalization::satake;
    bool skip_odd_disc = false;
    bool certify = true;  // widen every enumeration by one step and require agreement
};

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& text);

// Stable digest of an invariant point: hex SHA-256 of its serialized coordinates.
std::string invariant_digest(const InvariantPoint& a);

// Compares the two weighted fiber counts.  lambda must lie in the adjoint
// class of the point's boundary coweight.
FLReport fl_check(const InvariantPoint& a, const Coweight& lambda, const FLOptions& options = {});
// Group form (n = 2): lhs = transfer_factor(A) * direct symmetric orbital
// integral of A, rhs = unitary fiber count of the monoid lift of A.  The
// verdict compares exactly these two numbers; lift_sign is reported alongside.
FLReport fl_check_group(const PlaceData& place, const Matrix& A, const Coweight& lambda,
                        const FLOptions& options = {});

// Cosets h = diag(pi^k, 1) of H = GL_1 in GL_2 with |k| <= bound.
struct OrbitalTerm {
    int k = 0;
    Coweight mu;
    Rational weight;  // f_lambda(Ad_h^{-1} A) * eta(det h)
};

struct OrbitalIntegral {
    Rational value;
    int bound = 0;
    std::vector<OrbitalTerm> terms;  // nonzero terms only
};

// sum over H(F)/H(O) of f_lambda(Ad_h^{-1} A) eta(det h) at n = 2.  The
// default search bound is val(disc) + <2 rho, lambda> + 2; the sum is
// recomputed at bound + 1 and any change raises Unstable.
OrbitalIntegral direct_oi_symmetric(const PlaceData& place, const Matrix& A, const Coweight& lambda,
                                    std::optional<int> search_bound = std::nullopt,
                                    IcNormalization norm = IcNormalization::satake);
// Unitary orbital integral at n = 2.  At inert places H' = U_1 is compact
// and the integral is the single value f'_lambda(A'); at split places
// H' = GL_1 and the coset sum runs without the character.
OrbitalIntegral direct_oi_unitary(const PlaceData& place, const Matrix& A, const Coweight& lambda,
                                  std::optional<int> search_bound = std::nullopt,
                                  IcNormalization norm = IcNormalization::satake);

// Random group elements at n = 2: A sigma(A) = 1 (left component at split
// places), resp. unitary for the identity hermitian form.  `spread` bounds
// the valuations of the non-compact part.
Matrix random_symmetric_element(const PlaceData& place, int spread, CounterRng& rng);
Matrix random_unitary_element(const PlaceData& place, int spread, CounterRng& rng);

// Case A: gamma has a 2x2 block on indices 1 and n whose eigenvalues differ
// by a square root of pi (a unit scalar plus an anti-diagonal pi-block), and
// middle units permuted by an involution w of {2, ..., n-1}.  Case B: gamma
// is diagonal over O' and w is an involution of {1, ..., n}.  Valuation
// vectors e, e_dual are indexed 1..n (entry 0 is index 1).  In Case A, e[0]
// is the valuation of the first coordinate of e, e_dual[n-1] that of the
// last coordinate of e^vee, and the other corner coordinates vanish.
struct ScenarioParams {
    int n = 3;
    int q = 5;
    int prec = 30;
    std::vector<int> involution;  // 0-based image of each index, size n
    std::vector<int> e, e_dual;
    Coweight lambda;              // Case B only; zero by default
    std::uint64_t seed = 1;
};

struct Scenario {
    InvariantPoint a;
    Coweight lambda;
    IcNormalization norm = IcNormalization::satake;
    long long expected = 0;  // closed-form count, shared by both sides
    std::string description;
};

Scenario case_a_scenario(const ScenarioParams& params);
Scenario case_b_scenario(const ScenarioParams& params);

// Involution pairing on the symmetric fiber: Lambda* lies in the fiber,
// keeps mu, flips eta by eta(Disc(a)), and ** = id; in addition the
// weighted count equals eta(Disc(a)) times itself.
struct FunctionalEquationResult {
    bool holds = false;
    std::size_t pairs_checked = 0;
    Rational count;
};
FunctionalEquationResult functional_equation_check(const InvariantPoint& a, const Coweight& lambda,
                                                   IcNormalization norm = IcNormalization::satake);

}  // namespace jrfl
