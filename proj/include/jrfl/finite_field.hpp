#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace jrfl {

using Elem = std::uint16_t;

// Finite field with full addition/multiplication tables.  A field is either
// F_q = F_p[x]/(f) (elements encoded as base-p digit strings of the
// coefficients) or a quadratic extension F_q[u]/(m) of such a field (element
// c0 + c1*u encoded as c0 + q*c1).  The defining polynomials are the first
// irreducible monic ones in lexicographic order of their coefficient lists
// read from the highest non-leading coefficient down.
class FiniteField {
public:
    static constexpr int kMaxSize = 1024;

    static std::shared_ptr<const FiniteField> prime_power(int p, int d);
    static std::shared_ptr<const FiniteField> quadratic_extension(
        std::shared_ptr<const FiniteField> base);

    int characteristic() const { return p_; }
    int size() const { return size_; }
    // Degree over the prime field.
    int absolute_degree() const { return abs_degree_; }
    // nullptr for F_q itself; the subfield F_q for a quadratic extension.
    const FiniteField* base() const { return base_.get(); }
    // Coefficients (constant term first, monic leading term omitted) of the
    // defining polynomial over the prime field or over base().
    const std::vector<Elem>& modulus() const { return modulus_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * size_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add_[a * size_ + neg_[b]]; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, long long e) const;
    Elem from_integer(long long v) const;

    // a -> a^{|base|} for a quadratic extension; identity on F_q.
    Elem frobenius(Elem a) const { return frob_[a]; }
    bool in_base(Elem a) const { return base_ == nullptr || a < base_->size(); }
    Elem embed(Elem base_elem) const { return base_elem; }
    // Components (c0, c1) of c0 + c1*u in a quadratic extension.
    std::pair<Elem, Elem> components(Elem a) const;
    Elem compose(Elem c0, Elem c1) const;
    // Generator of the multiplicative group.
    Elem primitive() const { return primitive_; }
    bool is_square(Elem a) const;

private:
    FiniteField() = default;
    void build_tables(const std::vector<std::vector<Elem>>& products);

    int p_ = 0;
    int size_ = 0;
    int abs_degree_ = 0;
    std::shared_ptr<const FiniteField> base_;
    std::vector<Elem> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_, frob_;
    Elem primitive_ = 1;
};

}  // namespace jrfl
