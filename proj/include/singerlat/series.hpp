#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "singerlat/gfield.hpp"

namespace singerlat {

// Truncated Laurent series sum_{n >= v} c_n Y^n known modulo Y^prec.
// A series flagged exact is a Laurent polynomial; exactness survives ring
// operations between exact operands.
class Series {
public:
    static constexpr int kExact = INT_MAX;

    Series() = default;  // exact zero without a field; adopts the other operand's field
    explicit Series(const FiniteField& f) : field_(&f) {}

    static Series constant(const FiniteField& f, Elem c, int prec = kExact);
    static Series monomial(const FiniteField& f, Elem c, int exponent, int prec = kExact);
    // c[i] is the coefficient of Y^(val+i); prec is absolute.
    static Series from_coeffs(const FiniteField& f, int val, std::vector<Elem> c, int prec = kExact);
    static Series zero(const FiniteField& f, int prec = kExact);

    const FiniteField* field() const { return field_; }
    Series with_field(const FiniteField& f) const;  // reinterpret over a field sharing these indices

    bool is_exact() const { return prec_ == kExact; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact_zero() const { return coeffs_.empty() && prec_ == kExact; }
    // Valuation; a zero series reports its absolute precision (kExact if exact).
    int valuation() const { return coeffs_.empty() ? prec_ : val_; }
    int absolute_precision() const { return prec_; }
    int relative_precision() const;
    // Highest exponent with a nonzero coefficient (exact nonzero series only).
    int degree() const;
    Elem coeff(int n) const;  // throws PrecisionExhausted outside the window
    Elem leading() const { return coeffs_.empty() ? 0 : coeffs_[0]; }
    const std::vector<Elem>& raw_coeffs() const { return coeffs_; }

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    Series operator*(const Series& o) const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scale(Elem c) const;
    Series shift(int k) const;  // times Y^k
    Series truncate(int prec) const;
    Series pow(unsigned e) const;
    // Inverse; an exact non-monomial input is expanded to `max_rel_prec`
    // relative precision.
    Series inverse(int max_rel_prec) const;
    // Quotient when exact and divisible as Laurent polynomials.
    std::optional<Series> exact_quotient(const Series& divisor) const;
    // Applies f coefficient-wise (used for the Frobenius on E-series).
    template <class F>
    Series map(F&& f) const {
        Series out = *this;
        for (auto& c : out.coeffs_) c = f(c);
        out.normalize();
        return out;
    }

    // Zero within the common window.
    bool equals_to_precision(const Series& o) const { return (*this - o).is_zero(); }
    bool operator==(const Series& o) const {
        return val_ == o.val_ && prec_ == o.prec_ && coeffs_ == o.coeffs_;
    }

    std::string to_string() const;

private:
    void normalize();
    const FiniteField* adopt(const Series& o) const;

    const FiniteField* field_ = nullptr;
    int val_ = 0;
    int prec_ = kExact;
    std::vector<Elem> coeffs_;
};

// r with r^m = s, or nullopt when no root exists (s must be a unit).
std::optional<Series> dth_root(const Series& s, unsigned m);

// X = 1 + x_1 Y + ... over E with N(X) = 1 + Y modulo Y^prec.
Series solve_norm_unit(const FieldParams& params, int prec);

// Coefficient-wise Frobenius sigma^k and norm prod_k sigma^k of an E-series.
Series series_frobenius(const FieldParams& params, const Series& s, int k = 1);
Series series_norm(const FieldParams& params, const Series& s);

}  // namespace singerlat
