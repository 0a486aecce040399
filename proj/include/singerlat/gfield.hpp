#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace singerlat {

// Field elements are indices: the little-endian digits (base = order of the
// base field) are the coordinates in the power basis of the generator.
// Index 0 is zero, index 1 is one, and a subfield element keeps its index
// inside an extension.
using Elem = std::uint32_t;

class FiniteField {
public:
    static std::shared_ptr<const FiniteField> prime(std::uint32_t p);

    // `modulus` is monic, little-endian over `base`, and must be primitive.
    static std::shared_ptr<const FiniteField> extension(
        std::shared_ptr<const FiniteField> base, std::vector<Elem> modulus);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t order() const { return order_; }
    std::uint32_t degree() const { return degree_; }  // over the base field
    std::uint32_t base_order() const { return base_order_; }
    const FiniteField* base() const { return base_.get(); }
    const std::vector<Elem>& modulus() const { return modulus_; }

    // Generator of the multiplicative group (index of y, or the least
    // primitive root for a prime field).
    Elem generator() const { return exp_[1 % (order_ - 1)]; }

    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
    Elem neg(Elem x) const;
    Elem mul(Elem x, Elem y) const {
        if (x == 0 || y == 0) return 0;
        return exp_[log_[x] + log_[y]];
    }
    Elem inv(Elem x) const;
    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
    Elem pow(Elem x, std::int64_t e) const;
    Elem from_int(std::int64_t n) const;  // image of n in the prime field

    // Discrete log to the generator; throws ZeroElement on 0.
    std::uint32_t log(Elem x) const;
    Elem exp(std::int64_t k) const;

    Elem digit(Elem x, std::uint32_t i) const { return (x / powers_[i]) % base_order_; }
    std::vector<Elem> digits(Elem x) const;
    Elem from_digits(const std::vector<Elem>& digits) const;

private:
    FiniteField() = default;
    void build_tables(Elem gen_index);

    std::uint32_t p_ = 0;
    std::uint32_t order_ = 0;
    std::uint32_t degree_ = 1;
    std::uint32_t base_order_ = 0;
    std::shared_ptr<const FiniteField> base_;
    std::vector<Elem> modulus_;
    std::vector<std::uint32_t> powers_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;  // doubled so mul needs no reduction
    std::vector<Elem> add_table_;
    std::vector<Elem> neg_table_;
    std::vector<std::int32_t> zech_;
    std::uint32_t log_minus_one_ = 0;
};

// Checks that the monic polynomial `modulus` over `base` has the generator of
// the quotient ring of multiplicative order |base|^n - 1.
bool is_primitive_polynomial(const FiniteField& base, const std::vector<Elem>& modulus);

std::optional<std::vector<Elem>> conway_polynomial(std::uint32_t p, std::uint32_t n);

// Lexicographically least primitive polynomial, comparing (c_{n-1},...,c_0).
std::vector<Elem> least_primitive_polynomial(const FiniteField& base, std::uint32_t n);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 20;

// The pair K = F_q (q = p^a) and E = F_{q^d} built as a tower.
class FieldParams {
public:
    static FieldParams make(std::uint32_t p, std::uint32_t a, std::uint32_t d,
                            std::optional<std::vector<Elem>> k_modulus = std::nullopt,
                            std::optional<std::vector<Elem>> e_modulus = std::nullopt,
                            std::uint64_t size_cap = kDefaultSizeCap);
    // Accepts q as a prime power.
    static FieldParams from_q(std::uint64_t q, std::uint32_t d, std::uint64_t size_cap = kDefaultSizeCap);

    std::uint32_t p() const { return p_; }
    std::uint32_t a() const { return a_; }
    std::uint32_t d() const { return d_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t ext_order() const { return E_->order(); }
    // (q^d - 1)/(q - 1), the order of E^x/K^x.
    std::uint32_t singer_order() const { return (E_->order() - 1) / (q_ - 1); }

    const FiniteField& K() const { return *K_; }
    const FiniteField& E() const { return *E_; }
    std::shared_ptr<const FiniteField> K_ptr() const { return K_; }
    std::shared_ptr<const FiniteField> E_ptr() const { return E_; }

    Elem omega() const { return E_->generator(); }
    Elem frobenius(Elem x, std::int64_t k = 1) const;
    Elem norm(Elem x) const;
    Elem trace(Elem x) const;
    std::uint32_t discrete_log(Elem x) const { return E_->log(x); }

    // True iff c is a d-th power in K^x.
    bool is_dth_power_in_K(Elem c) const;

private:
    std::uint32_t p_ = 0, a_ = 0, d_ = 0, q_ = 0;
    std::shared_ptr<const FiniteField> K_, E_;
};

}  // namespace singerlat
