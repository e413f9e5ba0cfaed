#include "jrfl/orbital.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>

#include "jrfl/errors.hpp"

namespace jrfl {

std::string to_string(FLVerdict verdict) {
    switch (verdict) {
        case FLVerdict::equal: return "equal";
        case FLVerdict::unequal: return "unequal";
        case FLVerdict::skipped_odd_disc: return "skipped_odd_disc";
    }
    return "unknown";
}

std::string sha256_hex(const std::string& text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < length; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void append_coords(std::string& out, const InvariantCoords& c) {
    for (const auto* v : {&c.z, &c.a, &c.b}) {
        for (const auto& s : *v) out += s.serialize() + ";";
        out += "|";
    }
    out += c.b0.serialize();
}

Rational stratum_weight(const Coweight& lambda, const Coweight& mu, long long q, IcNormalization norm) {
    if (norm == IcNormalization::satake) return satake_value(lambda, mu, q);
    return evaluate(stalk_polynomial(lambda, mu), Rational(q));
}

void require_rank_two(const Matrix& A) {
    if (A.rows() != 2 || A.cols() != 2) throw RankUnsupported("direct orbital integrals are implemented for n = 2");
}

// Ad_h^{-1}(A) for h = diag(pi^k, 1).
Matrix conjugate_by_coset(const Matrix& A, int k) {
    Matrix r = A;
    if (!r(0, 1).is_exact_zero()) r(0, 1) = r(0, 1).shifted(-k);
    if (!r(1, 0).is_exact_zero()) r(1, 0) = r(1, 0).shifted(k);
    return r;
}

int default_search_bound(const Matrix& A, const Coweight& lambda) {
    // val(disc) for n = 2 is val(A_12 A_21); entries of negative valuation
    // widen the support by the same amount.
    const Series b = A(0, 1), c = A(1, 0);
    if (b.known_zero() || c.known_zero()) throw NotSRS("the element is not regular semisimple relative to H");
    const int vb = b.valuation(), vc = c.valuation();
    const int spread = std::max({0, -vb, -vc, -A.min_valuation()});
    return std::max(0, vb + vc) + static_cast<int>(std::abs(lambda.two_rho_pairing())) + 2 + 2 * spread;
}

// sum_{|k| <= bound} f_lambda(Ad_{h_k}^{-1} A) chi(k), certified at bound + 1.
OrbitalIntegral coset_sum(const PlaceData& place, const Matrix& A, const Coweight& lambda,
                          std::optional<int> search_bound, IcNormalization norm, CartanGroup group,
                          bool with_eta) {
    require_rank_two(A);
    if (!lambda.is_dominant() || lambda.rank() != 2) throw std::invalid_argument("lambda must be a dominant rank-2 coweight");
    const int bound = search_bound ? *search_bound : default_search_bound(A, lambda);
    OrbitalIntegral out;
    out.bound = bound;
    auto term = [&](int k) -> std::optional<OrbitalTerm> {
        Coweight mu = cartan_invariant(place, conjugate_by_coset(A, k), group);
        if (mu.total() != lambda.total() || !dominance_leq(mu, lambda)) return std::nullopt;
        Rational w = stratum_weight(lambda, mu, place.q(), norm);
        if (with_eta) w *= eta_of_valuation(k, place.kind());
        return OrbitalTerm{k, mu, w};
    };
    for (int k = -bound; k <= bound; ++k) {
        if (auto t = term(k)) {
            out.value += t->weight;
            out.terms.push_back(*t);
        }
    }
    // The support in k is an interval, so empty terms at +-(bound+1) certify it.
    if (term(bound + 1) || term(-bound - 1))
        throw Unstable("orbital integral changed at search bound " + std::to_string(bound + 1));
    return out;
}

Series base_unit(const SeriesRing* ring, CounterRng& rng) { return random_unit(ring, 2, rng, 1, true); }
Series cover_unit(const SeriesRing* ring, CounterRng& rng) { return random_unit(ring, 2, rng, 1, false); }

// Element of norm one: beta / betabar.
Series norm_one(const SeriesRing* ring, CounterRng& rng) {
    Series beta = cover_unit(ring, rng);
    return beta / beta.frobenius();
}

// Abelianization coordinates of a symmetric-side point with x xbar-type
// relation constant Z (the product of the conjugated z_i) and det x = det.
std::vector<Series> solve_abelianization(const PlaceData& place, const Series& det, const Series& Z) {
    const int n = place.n();
    const SeriesRing* ring = det.ring();
    switch (n) {
        case 2:
            if (!det.agrees(Z)) throw ConstraintUnsatisfiable("n = 2 requires det x = Z");
            return {det};
        case 3: {
            Series z1 = det / Z;
            return {z1, z1.frobenius()};
        }
        case 4: {
            // z_1 / z_1bar = det / Z^2 (norm one), solved as kappa + y kappabar.
            Series y = det / (Z * Z);
            const FiniteField& f = *ring->field;
            for (int u = 1; u < f.size(); ++u) {
                Series kappa = Series::constant(ring, static_cast<Elem>(u));
                Series z1 = kappa + y * kappa.frobenius();
                if (z1.known_zero() || z1.valuation() != 0) continue;
                Series z2 = Z / (z1 * z1.frobenius());
                return {z1, z2, z1.frobenius()};
            }
            throw ConstraintUnsatisfiable("no unit solution of z / zbar = det / Z^2");
        }
        default: throw RankUnsupported("scenario construction is implemented for n <= 4");
    }
}

InvariantPoint point_from_data(const PlaceData& place, const Matrix& x1, const Matrix& e, const Matrix& edual,
                               const Series& Z) {
    std::vector<Series> z = solve_abelianization(place, x1.det(), Z);
    DeformedPoint m{reconstruct_from_x1(z, x1), e, edual};
    InvariantCoords coords = deformed_invariants(m);
    InvariantPoint pt = complete_twisted(place, coords);
    pt.coords = coords;
    if (!check_twisted(pt)) throw ConstraintUnsatisfiable("constructed invariants violate the twisted relations");
    pt.refresh();
    if (!pt.srs) throw ConstraintUnsatisfiable("constructed point is not strongly regular semisimple");
    return pt;
}

void validate_involution(const std::vector<int>& w, int n, int first, int last) {
    if (static_cast<int>(w.size()) != n) throw ConstraintUnsatisfiable("involution must have one entry per index");
    for (int i = 0; i < n; ++i) {
        const int j = w[static_cast<std::size_t>(i)];
        if (j < 0 || j >= n || w[static_cast<std::size_t>(j)] != i)
            throw ConstraintUnsatisfiable("w is not an involution");
        if ((i < first || i > last) && j != i) throw ConstraintUnsatisfiable("w must fix the corner indices");
        if (i >= first && i <= last && (j < first || j > last))
            throw ConstraintUnsatisfiable("w must preserve the permuted block");
    }
}

// Closed-form count over the permuted indices, validating the parity and
// symmetry constraints of the valuation data.
long long closed_form(const ScenarioParams& p, int first, int last) {
    long long expected = 1;
    for (int i = first; i <= last; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const int j = p.involution[iu];
        const int ei = p.e[iu], di = p.e_dual[iu];
        if (ei < 0 || di < 0) throw ConstraintUnsatisfiable("valuations of e and e^vee must be non-negative");
        if (j == i) {
            if ((ei + di) % 2 != 0)
                throw ConstraintUnsatisfiable("a fixed index needs e_i + e_i^vee even (else the obstruction is nontrivial)");
        } else {
            const auto ju = static_cast<std::size_t>(j);
            if (p.e[ju] != ei || p.e_dual[ju] != di)
                throw ConstraintUnsatisfiable("swapped indices carry equal valuations");
            if (i < j) expected *= ei + di + 1;
        }
    }
    return expected;
}

// Entries of e, e^vee on the permuted block: fixed indices get F-rational
// values, swapped pairs conjugate values.
void fill_permuted(const ScenarioParams& p, int first, int last, const SeriesRing* ring, CounterRng& rng, Matrix& e,
                   Matrix& edual) {
    for (int i = first; i <= last; ++i) {
        const int j = p.involution[static_cast<std::size_t>(i)];
        if (j < i) continue;
        const int ei = p.e[static_cast<std::size_t>(i)], di = p.e_dual[static_cast<std::size_t>(i)];
        if (j == i) {
            e(i, 0) = base_unit(ring, rng).shifted(ei);
            edual(0, i) = base_unit(ring, rng).shifted(di);
        } else {
            Series y = cover_unit(ring, rng), yd = cover_unit(ring, rng);
            e(i, 0) = y.shifted(ei);
            e(j, 0) = y.frobenius().shifted(ei);
            edual(0, i) = yd.shifted(di);
            edual(0, j) = yd.frobenius().shifted(di);
        }
    }
}

bool distinct_residues(const std::vector<Series>& values) {
    std::set<Elem> seen;
    for (const auto& v : values)
        if (!seen.insert(v.coeff(v.valuation())).second) return false;
    return true;
}

void validate_scenario(const Scenario& s, bool case_a) {
    const InvariantPoint& a = s.a;
    if (!boundary_coweight(a).same_adjoint_class(s.lambda))
        throw ConstraintUnsatisfiable("scenario boundary " + boundary_coweight(a).to_string() + " differs from " +
                                      s.lambda.to_string());
    std::vector<Rational> nu = newton_point(a);
    const std::vector<long long> target = s.lambda.recentred_scaled();
    for (std::size_t i = 0; i < nu.size(); ++i)
        if (nu[i] * Rational(a.n()) != Rational(target[i]))
            throw ConstraintUnsatisfiable("scenario Newton point differs from lambda");
    if (case_a && a.val_disc_plus != 1) throw ConstraintUnsatisfiable("Case A needs val Disc_+ = 1");
    if (a.val_disc % 2 != 0) throw ConstraintUnsatisfiable("scenario has odd discriminant valuation");
}

int swap_count(const std::vector<int>& w) {
    int swaps = 0;
    for (std::size_t i = 0; i < w.size(); ++i) swaps += w[i] > static_cast<int>(i);
    return swaps;
}

std::string describe(const char* name, const ScenarioParams& p) {
    std::string out = std::string(name) + " n=" + std::to_string(p.n) + " q=" + std::to_string(p.q) + " w=";
    for (int j : p.involution) out += std::to_string(j + 1);
    out += " e=";
    for (int v : p.e) out += std::to_string(v);
    out += " e_dual=";
    for (int v : p.e_dual) out += std::to_string(v);
    out += " swaps=" + std::to_string(swap_count(p.involution));
    if (!p.lambda.parts.empty()) out += " lambda=" + p.lambda.to_string();
    return out;
}

constexpr int kScenarioRetries = 200;

}  // namespace

std::string invariant_digest(const InvariantPoint& a) {
    std::string text = a.place.describe() + "#";
    append_coords(text, a.coords);
    if (!a.place.inert()) {
        text += "#";
        append_coords(text, a.right);
    }
    return sha256_hex(text);
}

OrbitalIntegral direct_oi_symmetric(const PlaceData& place, const Matrix& A, const Coweight& lambda,
                                    std::optional<int> search_bound, IcNormalization norm) {
    require_symmetric_space(place, A);
    return coset_sum(place, A, lambda, search_bound, norm, CartanGroup::symmetric_space, true);
}

OrbitalIntegral direct_oi_unitary(const PlaceData& place, const Matrix& A, const Coweight& lambda,
                                  std::optional<int> search_bound, IcNormalization norm) {
    require_rank_two(A);
    if (!place.inert()) return coset_sum(place, A, lambda, search_bound, norm, CartanGroup::unitary, false);
    OrbitalIntegral out;
    Coweight mu = cartan_invariant(place, A, CartanGroup::unitary);
    if (mu.total() == lambda.total() && dominance_leq(mu, lambda)) {
        Rational w = stratum_weight(lambda, mu, place.q(), norm);
        out.value = w;
        out.terms.push_back(OrbitalTerm{0, mu, w});
    }
    return out;
}

FLReport fl_check(const InvariantPoint& a, const Coweight& lambda, const FLOptions& options) {
    if (!sigma_out_fixed(lambda)) throw NotSigmaOutFixed("fl_check needs a sigma_Out-fixed lambda");
    if (!boundary_coweight(a).same_adjoint_class(lambda))
        throw std::invalid_argument("lambda " + lambda.to_string() + " is not the boundary " +
                                    boundary_coweight(a).to_string() + " of the invariant point");
    FLReport report;
    report.a_digest = invariant_digest(a);
    report.lambda = lambda;
    if (options.skip_odd_disc && a.place.inert() && a.val_disc % 2 != 0) {
        report.verdict = FLVerdict::skipped_odd_disc;
        return report;
    }
    auto run = [&](Side side, double& seconds, int& bound, std::size_t& points) {
        const auto start = Clock::now();
        FiberModel model = make_fiber_model(a, side);
        Rational value;
        if (options.certify) {
            CertifiedCount c = certified_count(model, lambda, options.norm);
            value = c.value;
            bound = c.bound;
            points = c.points;
        } else {
            auto fiber = enumerate_fiber(model).points;
            value = weighted_sum(model, fiber, lambda, options.norm);
            bound = fiber_bounds(model);
            points = fiber.size();
        }
        seconds = seconds_since(start);
        return value;
    };
    report.lhs = run(Side::symmetric, report.seconds_symmetric, report.bound_symmetric, report.points_symmetric);
    report.rhs = run(Side::unitary, report.seconds_unitary, report.bound_unitary, report.points_unitary);
    report.verdict = *report.lhs == *report.rhs ? FLVerdict::equal : FLVerdict::unequal;
    return report;
}

FLReport fl_check_group(const PlaceData& place, const Matrix& A, const Coweight& lambda, const FLOptions& options) {
    require_rank_two(A);
    InvariantPoint a = lift_to_monoid(place, A, lambda, Side::symmetric);
    FLReport report;
    report.a_digest = invariant_digest(a);
    report.lambda = lambda;
    report.transfer_factor = transfer_factor(place, A);
    if (place.inert()) {
        long long rho_pairing = lambda.two_rho_pairing();
        if (rho_pairing % 2 != 0) throw std::invalid_argument("<rho, lambda> must be an integer");
        report.lift_sign = (rho_pairing / 2) % 2 == 0 ? 1 : -1;
    }
    if (options.skip_odd_disc && place.inert() && a.val_disc % 2 != 0) {
        report.verdict = FLVerdict::skipped_odd_disc;
        return report;
    }
    auto start = Clock::now();
    OrbitalIntegral oi = direct_oi_symmetric(place, A, lambda, std::nullopt, options.norm);
    report.lhs = Rational(report.transfer_factor) * oi.value;
    report.bound_symmetric = oi.bound;
    report.points_symmetric = oi.terms.size();
    report.seconds_symmetric = seconds_since(start);

    start = Clock::now();
    FiberModel model = make_fiber_model(a, Side::unitary);
    const Coweight fiber_lambda = model.lambda;
    CertifiedCount c = options.certify ? certified_count(model, fiber_lambda, options.norm)
                                       : CertifiedCount{weighted_sum(model, enumerate_fiber(model).points,
                                                                     fiber_lambda, options.norm),
                                                        0, fiber_bounds(model), {}};
    report.rhs = c.value;
    report.bound_unitary = c.bound;
    report.points_unitary = c.points;
    report.seconds_unitary = seconds_since(start);
    report.verdict = *report.lhs == *report.rhs ? FLVerdict::equal : FLVerdict::unequal;
    return report;
}

Matrix random_symmetric_element(const PlaceData& place, int spread, CounterRng& rng) {
    const SeriesRing* ring = place.cover_ring();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // Hilbert 90: every A with A sigma(A) = 1 is g sigma(g)^{-1}.
        Matrix g(2, 2, ring);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g(i, j) = random_series(ring, 0, 2, rng, 1, !place.inert());
        const int k = spread > 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * spread + 1))) - spread : 0;
        g(0, 0) = g(0, 0).shifted(k);
        g(0, 1) = g(0, 1).shifted(k);
        if (!place.inert()) {
            g(1, 0) = g(1, 0).shifted(-k);
            g(1, 1) = g(1, 1).shifted(-k);
        }
        Series d = g.det();
        if (d.known_zero()) continue;
        // At split places the left component has unit determinant, so its
        // Cartan invariants share the total of a centred lambda.
        if (!place.inert() && d.valuation() != 0) continue;
        Matrix A = place.inert() ? g * g.frobenius().inverse() : g;
        if (A(0, 1).known_zero() || A(1, 0).known_zero()) continue;
        return A;
    }
    throw ConstraintUnsatisfiable("no random symmetric-space element found");
}

Matrix random_unitary_element(const PlaceData& place, int spread, CounterRng& rng) {
    const SeriesRing* ring = place.cover_ring();
    if (!place.inert()) return random_symmetric_element(place, spread, rng);
    const FiniteField& f = *ring->field;
    // Isotropic vectors (1, zeta), (1, -zeta) with N(zeta) = -1.
    Elem zeta = 0;
    for (int u = 1; u < f.size() && zeta == 0; ++u) {
        Series s = Series::constant(ring, static_cast<Elem>(u));
        if ((s * s.frobenius()).agrees(-Series::one(ring))) zeta = static_cast<Elem>(u);
    }
    if (zeta == 0) throw NoSolution("no element of norm -1 in the residue extension");
    Series zs = Series::constant(ring, zeta);
    Matrix P(2, 2, ring);
    P(0, 0) = Series::one(ring);
    P(0, 1) = Series::one(ring);
    P(1, 0) = zs;
    P(1, 1) = -zs;
    const Series w = Series::constant(ring, imaginary_unit(f));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int k = spread > 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * spread + 1))) - spread : 0;
        Series t = cover_unit(ring, rng).shifted(k);
        Matrix torus = P * Matrix::diagonal({t, t.frobenius().inverse()}) * P.inverse();
        // Cayley transform of a skew-hermitian X: (1 - X)(1 + X)^{-1}.
        Matrix X(2, 2, ring);
        X(0, 0) = w * random_series(ring, 0, 2, rng, 1, true);
        X(1, 1) = w * random_series(ring, 0, 2, rng, 1, true);
        X(0, 1) = random_series(ring, 0, 2, rng, 1, false);
        X(1, 0) = -X(0, 1).frobenius();
        Matrix one = Matrix::identity(2, ring);
        Matrix plus = one + X;
        if (plus.det().known_zero() || plus.det().valuation() != 0) continue;
        Matrix A = torus * ((one - X) * plus.inverse());
        if (A(0, 1).known_zero() || A(1, 0).known_zero()) continue;
        return A;
    }
    throw ConstraintUnsatisfiable("no random unitary element found");
}

Scenario case_b_scenario(const ScenarioParams& p) {
    const int n = p.n;
    if (n < 2 || n > 4) throw RankUnsupported("Case B scenarios are implemented for 2 <= n <= 4");
    validate_involution(p.involution, n, 0, n - 1);
    if (static_cast<int>(p.e.size()) != n || static_cast<int>(p.e_dual.size()) != n)
        throw ConstraintUnsatisfiable("valuation vectors need one entry per index");
    Coweight lambda = p.lambda.parts.empty() ? Coweight{std::vector<int>(static_cast<std::size_t>(n), 0)} : p.lambda;
    if (lambda.rank() != n || !lambda.is_dominant() || !sigma_out_fixed(lambda))
        throw ConstraintUnsatisfiable("lambda must be a sigma_Out-fixed dominant coweight of rank n");
    const bool minuscule_pair = lambda.parts.front() - lambda.parts.back() == 1;
    if (!(lambda.parts.front() == lambda.parts.back() || (n == 2 && minuscule_pair)))
        throw RankUnsupported("Case B scenarios support lambda = 0, and the minuscule coweight at n = 2");
    const long long expected = closed_form(p, 0, n - 1);

    PlaceData place(p.q, 1, n, PlaceKind::inert, p.prec);
    const SeriesRing* ring = place.cover_ring();
    const int shift = lambda.parts.front() - lambda.parts.back();
    for (int attempt = 0; attempt < kScenarioRetries; ++attempt) {
        CounterRng rng(p.seed, static_cast<std::uint64_t>(attempt));
        std::vector<Series> g(static_cast<std::size_t>(n));
        Series Z;
        if (n == 2) {
            // det x = Z forces F-rational eigenvalues for the swap and
            // conjugate eigenvalues when both indices are fixed.
            if (p.involution[0] == 1) {
                g[0] = base_unit(ring, rng).shifted(shift);
                g[1] = base_unit(ring, rng);
            } else {
                if (shift != 0) throw ConstraintUnsatisfiable("the minuscule coweight needs the swap at n = 2");
                g[0] = cover_unit(ring, rng);
                g[1] = g[0].frobenius();
            }
            Z = g[0] * g[1];
        } else {
            Series rho = cover_unit(ring, rng);
            Z = rho * rho.frobenius();
            for (int i = 0; i < n; ++i) {
                const int j = p.involution[static_cast<std::size_t>(i)];
                if (j < i) continue;
                if (j == i) {
                    g[static_cast<std::size_t>(i)] = rho * norm_one(ring, rng);
                } else {
                    g[static_cast<std::size_t>(i)] = cover_unit(ring, rng);
                    g[static_cast<std::size_t>(j)] = Z / g[static_cast<std::size_t>(i)].frobenius();
                }
            }
        }
        // Unit parts must have distinct residues (regular semisimple, unramified).
        std::vector<Series> units;
        for (const auto& gi : g) units.push_back(gi.shifted(-gi.valuation()));
        if (shift == 0 && !distinct_residues(units)) continue;
        Matrix e(n, 1, ring), edual(1, n, ring);
        fill_permuted(p, 0, n - 1, ring, rng, e, edual);
        try {
            Scenario s{point_from_data(place, Matrix::diagonal(g), e, edual, Z), lambda,
                       lambda.two_rho_pairing() % 2 != 0 ? IcNormalization::stalk : IcNormalization::satake, expected,
                       describe("case B", p)};
            validate_scenario(s, false);
            return s;
        } catch (const ConstraintUnsatisfiable&) {
            continue;
        }
    }
    throw ConstraintUnsatisfiable("no Case B point found within the retry budget");
}

Scenario case_a_scenario(const ScenarioParams& p) {
    const int n = p.n;
    if (n < 3 || n > 4) throw RankUnsupported("Case A scenarios are implemented for n = 3, 4");
    validate_involution(p.involution, n, 1, n - 2);
    if (static_cast<int>(p.e.size()) != n || static_cast<int>(p.e_dual.size()) != n)
        throw ConstraintUnsatisfiable("valuation vectors need one entry per index");
    const long long expected = closed_form(p, 1, n - 2);
    if (p.e.front() < 0 || p.e_dual.back() < 0) throw ConstraintUnsatisfiable("corner valuations must be non-negative");

    PlaceData place(p.q, 1, n, PlaceKind::inert, p.prec);
    const SeriesRing* ring = place.cover_ring();
    const FiniteField& f = *ring->field;
    const Series w = Series::constant(ring, imaginary_unit(f));
    const Series delta = w * w;
    for (int attempt = 0; attempt < kScenarioRetries; ++attempt) {
        CounterRng rng(p.seed, static_cast<std::uint64_t>(attempt));
        // r = 1 + c pi has norm 1 - delta a pi with a = -(Tr c + N(c) pi) / delta in F.
        Series c = Series::constant(ring, static_cast<Elem>(1 + rng.below(static_cast<std::uint64_t>(f.size() - 1))));
        Series tr = c + c.frobenius();
        if (tr.known_zero()) continue;
        Series pi = Series::uniformizer_power(ring, 1);
        Series r = Series::one(ring) + c * pi;
        Series a = -(tr + c * c.frobenius() * pi) / delta;
        Series u = cover_unit(ring, rng);
        Series Z = u * u.frobenius() * r * r.frobenius();

        Matrix x(n, n, ring);
        x(0, 0) = u;
        x(0, n - 1) = u * w * a * pi;
        x(n - 1, 0) = u * w;
        x(n - 1, n - 1) = u;
        std::vector<Series> residues{u};
        for (int i = 1; i <= n - 2; ++i) {
            const int j = p.involution[static_cast<std::size_t>(i)];
            if (j < i) continue;
            if (j == i) {
                x(i, i) = u * r * norm_one(ring, rng);
            } else {
                x(i, i) = cover_unit(ring, rng);
                x(j, j) = Z / x(i, i).frobenius();
                residues.push_back(x(j, j));
            }
            residues.push_back(x(i, i));
        }
        if (!distinct_residues(residues)) continue;
        Matrix e(n, 1, ring), edual(1, n, ring);
        e(0, 0) = Series::uniformizer_power(ring, p.e.front());
        edual(0, n - 1) = Series::uniformizer_power(ring, p.e_dual.back());
        fill_permuted(p, 1, n - 2, ring, rng, e, edual);
        try {
            Scenario s{point_from_data(place, x, e, edual, Z), Coweight{std::vector<int>(static_cast<std::size_t>(n), 0)},
                       IcNormalization::satake, expected, describe("case A", p)};
            validate_scenario(s, true);
            return s;
        } catch (const ConstraintUnsatisfiable&) {
            continue;
        }
    }
    throw ConstraintUnsatisfiable("no Case A point found within the retry budget");
}

FunctionalEquationResult functional_equation_check(const InvariantPoint& a, const Coweight& lambda,
                                                   IcNormalization norm) {
    if (!a.place.inert()) throw std::invalid_argument("the functional equation is stated at inert places");
    FiberModel model = make_fiber_model(a, Side::symmetric);
    std::vector<FiberPoint> points = enumerate_fiber(model).points;
    FunctionalEquationResult out;
    out.count = weighted_sum(model, points, lambda, norm);
    const int sign = eta_of_valuation(a.val_disc);
    bool ok = true;
    auto by_lattice = [](const FiberPoint& x, const FiberPoint& y) { return x.lattice < y.lattice; };
    for (const auto& fp : points) {
        FiberPoint star = involution_star(model, fp);
        auto it = std::lower_bound(points.begin(), points.end(), star, by_lattice);
        const bool member = it != points.end() && it->lattice == star.lattice;
        const bool involutive = involution_star(model, star).lattice == fp.lattice;
        const bool keeps_mu = star.mu == fp.mu;
        const bool flips = eta_weight(model, star) == sign * eta_weight(model, fp);
        ok = ok && member && involutive && keeps_mu && flips;
        ++out.pairs_checked;
    }
    out.holds = ok && out.count == Rational(sign) * out.count;
    return out;
}

}  // namespace jrfl
