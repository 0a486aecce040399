#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "singerlat/context.hpp"
#include "singerlat/matrix.hpp"
#include "singerlat/series.hpp"

namespace singerlat {

// sum_j a_j tau^j in the cyclic algebra over E((Y)) with tau^d = 1 + Y and
// tau b = sigma(b) tau.
class AlgElem {
public:
    explicit AlgElem(const Context& ctx);  // zero

    static AlgElem one(const Context& ctx);
    static AlgElem tau(const Context& ctx, unsigned k = 1);
    static AlgElem constant(const Context& ctx, Elem a);
    static AlgElem h(const Context& ctx, Elem a, unsigned k);  // a tau^k
    static AlgElem from_coeffs(const Context& ctx, std::vector<Series> coeffs);

    const Context& context() const { return *ctx_; }
    unsigned d() const { return static_cast<unsigned>(coeffs_.size()); }
    const Series& coeff(unsigned j) const { return coeffs_[j]; }
    Series& coeff(unsigned j) { return coeffs_[j]; }
    const std::vector<Series>& coeffs() const { return coeffs_; }
    bool is_exact() const;
    bool is_zero() const;

    AlgElem operator+(const AlgElem& o) const;
    AlgElem operator-(const AlgElem& o) const;
    AlgElem operator*(const AlgElem& o) const;
    AlgElem scale(const Series& central) const;  // central K((Y)) or E((Y)) left scalar
    bool equals_to_precision(const AlgElem& o) const;
    bool operator==(const AlgElem& o) const { return coeffs_ == o.coeffs_; }

private:
    const Context* ctx_;
    std::vector<Series> coeffs_;
};

AlgElem alg_mul(const AlgElem& x, const AlgElem& y);
// Matrix of right multiplication by x on the left E((Y))-basis 1..tau^(d-1):
// row j holds the coefficients of tau^j x.
SeriesMatrix right_regular_matrix(const AlgElem& x);
Series reduced_norm(const AlgElem& x);
// Nrd(x) x^{-1}, computed by cofactors; exact for exact x.
AlgElem alg_adjoint(const AlgElem& x);
AlgElem alg_inv(const AlgElem& x);

// The K((Y))-linear map b -> sum_j a_j (X sigma)^j (b) on E((Y)) in the power basis.
SeriesMatrix psi(const AlgElem& x, int prec);
inline SeriesMatrix psi(const AlgElem& x) { return psi(x, x.context().precision()); }

// Coordinates in the basis omega^i tau^j, index j*d + i.
std::vector<Series> basis_coordinates(const AlgElem& y);
AlgElem basis_element(const Context& ctx, unsigned i, unsigned j);

// Matrix of y -> x y x^{-1} in the basis omega^i tau^j (columns are images).
SeriesMatrix phi(const AlgElem& x);
// Y^0 part of phi.
ConstMatrix theta(const AlgElem& x);
ConstMatrix theta_of_phi(const SeriesMatrix& phi_matrix);

// Answers certified within a window; precision == Series::kExact means the
// computation was exact.
struct Membership {
    bool value = false;
    int precision = Series::kExact;
};
Membership in_gamma_tilde(const AlgElem& x);
Membership in_gamma(const AlgElem& x);
Membership in_gamma_from_phi(const SeriesMatrix& phi_matrix, unsigned d);
bool theta_is_unitriangular(const ConstMatrix& theta_matrix, unsigned d);

// Element of Aut = A^x / K(Y)^x, stored as a canonical representative in
// E[Y]-span of 1..tau^(d-1): K[Y]-content removed and the top coefficient of
// the first nonzero K-component equal to 1.
class GroupElem {
public:
    static GroupElem identity(const Context& ctx);
    static GroupElem from_alg(const AlgElem& x);  // x must be exact and invertible
    static GroupElem h(const Context& ctx, Elem a, unsigned k) { return from_alg(AlgElem::h(ctx, a, k)); }

    const AlgElem& rep() const { return rep_; }
    const Context& context() const { return rep_.context(); }
    GroupElem operator*(const GroupElem& o) const;
    GroupElem inverse() const;
    GroupElem pow(long e) const;
    bool is_identity() const;
    bool operator==(const GroupElem& o) const { return rep_ == o.rep_; }
    std::size_t hash() const;
    // Y-degree of the representative, a measure of word length.
    int degree() const;

private:
    explicit GroupElem(AlgElem rep) : rep_(std::move(rep)) {}
    AlgElem rep_;
};

struct GroupElemHash {
    std::size_t operator()(const GroupElem& g) const { return g.hash(); }
};

// Projective class of an invertible d x d matrix over K((Y)), scaled so its
// entries have minimal valuation 0 and the first unit entry (row-major) is 1.
class ProjMat {
public:
    ProjMat() = default;
    explicit ProjMat(SeriesMatrix m);

    const SeriesMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    int precision() const { return min_absolute_precision(m_); }
    Series det() const;
    int det_valuation() const;
    int type_shift() const;  // nu(det) mod d
    ProjMat operator*(const ProjMat& o) const { return ProjMat(m_ * o.m_); }
    bool equivalent(const ProjMat& o) const;

private:
    SeriesMatrix m_;
};

ProjMat to_projmat(const GroupElem& g, int prec);
inline ProjMat to_projmat(const GroupElem& g) { return to_projmat(g, g.context().precision()); }

ProjMat h_element(const Context& ctx, Elem a, unsigned k);
// z^d N(a) (1+Y)^k (-1)^((d-1)k)
Series det_h_formula(const Context& ctx, Elem a, unsigned k, const Series& z);
// PSL criterion for a tau^k; the sign (-1)^((d-1)k) from the Frobenius
// determinant is included.
bool h_in_psl(const FieldParams& params, Elem a, unsigned k);
// gcd(d, q-1) times the p-part of d.
unsigned h_psl_index(const FieldParams& params);
// Largest power of p dividing n; 0 stands for infinity.
unsigned long p_part(unsigned long n, unsigned p);

// Representatives a tau^k of H, a running over E^x/K^x as omega^m.
std::vector<std::pair<Elem, unsigned>> h_representatives(const FieldParams& params);

}  // namespace singerlat
