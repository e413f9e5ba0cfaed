#include "jrfl/finite_field.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace jrfl {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<int> prime_factors(int m) {
    std::vector<int> out;
    for (int d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

// Arithmetic of a coefficient field used while building an extension.
struct CoeffOps {
    int size;
    std::function<Elem(Elem, Elem)> add, mul;
    std::function<Elem(Elem)> neg;
};

using Poly = std::vector<Elem>;  // constant term first

// Remainder of `num` modulo the monic polynomial `den`.
Poly poly_mod(Poly num, const Poly& den, const CoeffOps& ops) {
    const std::size_t dd = den.size() - 1;
    while (num.size() > dd) {
        Elem lead = num.back();
        if (lead != 0) {
            std::size_t shift = num.size() - 1 - dd;
            for (std::size_t i = 0; i <= dd; ++i)
                num[shift + i] = ops.add(num[shift + i], ops.neg(ops.mul(lead, den[i])));
        }
        num.pop_back();
    }
    return num;
}

bool has_factor_of_degree(const Poly& f, int deg, const CoeffOps& ops) {
    long long count = 1;
    for (int i = 0; i < deg; ++i) count *= ops.size;
    for (long long idx = 0; idx < count; ++idx) {
        Poly g(deg + 1);
        long long t = idx;
        for (int i = 0; i < deg; ++i) {
            g[i] = static_cast<Elem>(t % ops.size);
            t /= ops.size;
        }
        g[deg] = 1;
        Poly r = poly_mod(f, g, ops);
        bool zero = true;
        for (Elem c : r) zero = zero && c == 0;
        if (zero) return true;
    }
    return false;
}

// First monic irreducible of degree k over the coefficient field.
Poly first_irreducible(int k, const CoeffOps& ops) {
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= ops.size;
    for (long long idx = 0; idx < count; ++idx) {
        Poly f(k + 1);
        long long t = idx;
        for (int i = 0; i < k; ++i) {
            f[i] = static_cast<Elem>(t % ops.size);
            t /= ops.size;
        }
        f[k] = 1;
        bool irreducible = true;
        for (int deg = 1; deg <= k / 2 && irreducible; ++deg)
            irreducible = !has_factor_of_degree(f, deg, ops);
        if (irreducible) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

// Multiplication table of coeff[x]/(f) on digit-encoded elements.
std::vector<std::vector<Elem>> extension_products(const Poly& f, const CoeffOps& ops) {
    const int k = static_cast<int>(f.size()) - 1;
    int q = 1;
    for (int i = 0; i < k; ++i) q *= ops.size;
    auto decode = [&](int v) {
        Poly c(k);
        for (int i = 0; i < k; ++i) {
            c[i] = static_cast<Elem>(v % ops.size);
            v /= ops.size;
        }
        return c;
    };
    std::vector<Poly> digits(q);
    for (int v = 0; v < q; ++v) digits[v] = decode(v);
    std::vector<std::vector<Elem>> table(q, std::vector<Elem>(q));
    for (int a = 0; a < q; ++a) {
        for (int b = a; b < q; ++b) {
            Poly prod(2 * k - 1, 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    prod[i + j] = ops.add(prod[i + j], ops.mul(digits[a][i], digits[b][j]));
            Poly r = poly_mod(prod, f, ops);
            int code = 0;
            for (int i = k - 1; i >= 0; --i)
                code = code * ops.size + (i < static_cast<int>(r.size()) ? r[i] : 0);
            table[a][b] = table[b][a] = static_cast<Elem>(code);
        }
    }
    return table;
}

}  // namespace

void FiniteField::build_tables(const std::vector<std::vector<Elem>>& products) {
    const int q = size_;
    mul_.assign(static_cast<std::size_t>(q) * q, 0);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) mul_[a * q + b] = products[a][b];
    inv_.assign(q, 0);
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) {
                inv_[a] = static_cast<Elem>(b);
                break;
            }
    neg_.assign(q, 0);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            if (add_[a * q + b] == 0) {
                neg_[a] = static_cast<Elem>(b);
                break;
            }
    auto factors = prime_factors(q - 1);
    for (int g = 1; g < q; ++g) {
        bool generator = true;
        for (int r : factors) generator = generator && pow(static_cast<Elem>(g), (q - 1) / r) != 1;
        if (generator) {
            primitive_ = static_cast<Elem>(g);
            break;
        }
    }
    frob_.resize(q);
    for (int a = 0; a < q; ++a)
        frob_[a] = base_ ? pow(static_cast<Elem>(a), base_->size()) : static_cast<Elem>(a);
}

std::shared_ptr<const FiniteField> FiniteField::prime_power(int p, int d) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (d < 1) throw std::invalid_argument("extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < d; ++i) q *= p;
    if (q > kMaxSize) throw std::invalid_argument("field too large for table arithmetic");
    std::shared_ptr<FiniteField> field(new FiniteField());
    field->p_ = p;
    field->size_ = static_cast<int>(q);
    field->abs_degree_ = d;
    CoeffOps ops{p, [p](Elem a, Elem b) { return static_cast<Elem>((a + b) % p); },
                 [p](Elem a, Elem b) { return static_cast<Elem>((a * b) % p); },
                 [p](Elem a) { return static_cast<Elem>((p - a) % p); }};
    Poly f = d == 1 ? Poly{0, 1} : first_irreducible(d, ops);
    field->modulus_.assign(f.begin(), f.end() - 1);
    field->add_.assign(static_cast<std::size_t>(q) * q, 0);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            int x = a, y = b, code = 0, scale = 1;
            for (int i = 0; i < d; ++i) {
                code += ((x % p + y % p) % p) * scale;
                x /= p;
                y /= p;
                scale *= p;
            }
            field->add_[a * q + b] = static_cast<Elem>(code);
        }
    field->build_tables(extension_products(f, ops));
    return field;
}

std::shared_ptr<const FiniteField> FiniteField::quadratic_extension(
    std::shared_ptr<const FiniteField> base) {
    if (base->base_) throw std::invalid_argument("quadratic extension of an extension is not supported");
    const int bq = base->size();
    if (bq * bq > kMaxSize) throw std::invalid_argument("field too large for table arithmetic");
    std::shared_ptr<FiniteField> field(new FiniteField());
    field->p_ = base->p_;
    field->size_ = bq * bq;
    field->abs_degree_ = 2 * base->abs_degree_;
    field->base_ = base;
    const FiniteField* b = base.get();
    CoeffOps ops{bq, [b](Elem x, Elem y) { return b->add(x, y); },
                 [b](Elem x, Elem y) { return b->mul(x, y); }, [b](Elem x) { return b->neg(x); }};
    Poly m = first_irreducible(2, ops);
    field->modulus_.assign(m.begin(), m.end() - 1);
    const int q = field->size_;
    field->add_.assign(static_cast<std::size_t>(q) * q, 0);
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
            field->add_[x * q + y] = static_cast<Elem>(
                b->add(static_cast<Elem>(x % bq), static_cast<Elem>(y % bq)) +
                bq * b->add(static_cast<Elem>(x / bq), static_cast<Elem>(y / bq)));
    field->build_tables(extension_products(m, ops));
    return field;
}

Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in finite field");
    return inv_[a];
}

Elem FiniteField::pow(Elem a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Elem result = 1;
    while (e > 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

Elem FiniteField::from_integer(long long v) const {
    long long r = ((v % p_) + p_) % p_;
    return static_cast<Elem>(r);
}

std::pair<Elem, Elem> FiniteField::components(Elem a) const {
    if (!base_) return {a, 0};
    return {static_cast<Elem>(a % base_->size()), static_cast<Elem>(a / base_->size())};
}

Elem FiniteField::compose(Elem c0, Elem c1) const {
    if (!base_) {
        if (c1 != 0) throw std::invalid_argument("second component in a non-extension field");
        return c0;
    }
    return static_cast<Elem>(c0 + base_->size() * c1);
}

bool FiniteField::is_square(Elem a) const {
    if (a == 0 || p_ == 2) return true;
    return pow(a, (size_ - 1) / 2) == 1;
}

}  // namespace jrfl
