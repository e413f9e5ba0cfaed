#pragma once

#include <boost/rational.hpp>

#include <string>
#include <vector>

namespace jrfl {

using Rational = boost::rational<long long>;

// Dominant GL_n-coweight (weakly decreasing integer parts).  Adjoint classes
// are compared after recentring modulo the all-ones vector.
struct Coweight {
    std::vector<int> parts;

    int rank() const { return static_cast<int>(parts.size()); }
    long long total() const;
    bool is_dominant() const;
    // <2 rho, lambda> = sum (n + 1 - 2i) lambda_i.
    long long two_rho_pairing() const;
    // Simple-root pairings lambda_i - lambda_{i+1}.
    std::vector<int> root_pairings() const;
    // Representative of the adjoint class scaled by n: n * parts - total.
    std::vector<long long> recentred_scaled() const;
    bool same_adjoint_class(const Coweight& o) const { return recentred_scaled() == o.recentred_scaled(); }
    std::string to_string() const;

    bool operator==(const Coweight& o) const { return parts == o.parts; }
    bool operator<(const Coweight& o) const { return parts < o.parts; }

    // Dominant coweight with prescribed simple-root pairings and last part 0.
    static Coweight from_root_pairings(const std::vector<int>& pairings);
    static Coweight parse(const std::string& text);  // "1,0,-1"
};

// Polynomial with integer coefficients, coefficient k of t^k.
using IntPolynomial = std::vector<long long>;

Rational evaluate(const IntPolynomial& p, const Rational& t);

// Partial sums of mu bounded by those of lambda; totals must agree.
bool dominance_leq(const Coweight& mu, const Coweight& lambda);
// lambda = -w_0 lambda up to the centre: lambda_i + lambda_{n+1-i} constant.
bool sigma_out_fixed(const Coweight& lambda);
// Kostka-Foulkes polynomial K_{lambda mu}(t) by the charge statistic on
// semistandard tableaux of shape lambda and content mu (both shifted to
// partitions by a common constant).  Zero unless mu <= lambda.
IntPolynomial kostka_foulkes(const Coweight& lambda, const Coweight& mu);
// Charge of a word whose content is a partition (letters 1..k).
int charge(const std::vector<int>& word);
// Semistandard tableaux of the given shape and content, as reading words
// (rows bottom to top, each left to right).
std::vector<std::vector<int>> tableau_reading_words(const std::vector<int>& shape, const std::vector<int>& content);
// Poincare polynomial of the IC stalk of Gr^{<=lambda} at mu (open stratum
// in degree 0): t^{<rho, lambda - mu>} K_{lambda mu}(1/t).
IntPolynomial stalk_polynomial(const Coweight& lambda, const Coweight& mu);
// Trace of Frobenius on the normalized IC^lambda at mu:
// q^{-<rho, lambda>} stalk_polynomial(lambda, mu)(q); throws NotIntegral when
// <rho, lambda> is not an integer.
Rational satake_value(const Coweight& lambda, const Coweight& mu, long long q);
Coweight spherical_transfer(const Coweight& lambda);

// All dominant mu <= lambda with the same total.
std::vector<Coweight> dominant_below(const Coweight& lambda);

}  // namespace jrfl
