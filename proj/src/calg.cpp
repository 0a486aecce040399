#include "singerlat/calg.hpp"

#include <algorithm>
#include <numeric>

#include "singerlat/error.hpp"
#include "singerlat/poly.hpp"

namespace singerlat {

namespace {

Series one_plus_y(const Context& ctx) { return Series::from_coeffs(ctx.K(), 0, {1, 1}); }

// Quotient s / n: exact when both are exact and n divides s, otherwise by
// series inversion at the context's working limit.
Series divide(const Context& ctx, const Series& s, const Series& n) {
    if (s.is_exact_zero()) return s;
    if (auto q = s.exact_quotient(n)) return *q;
    return s * n.inverse(ctx.max_precision());
}

}  // namespace

AlgElem::AlgElem(const Context& ctx) : ctx_(&ctx), coeffs_(ctx.d(), Series(ctx.E())) {}

AlgElem AlgElem::one(const Context& ctx) { return constant(ctx, 1); }

AlgElem AlgElem::tau(const Context& ctx, unsigned k) { return h(ctx, 1, k); }

AlgElem AlgElem::constant(const Context& ctx, Elem a) { return h(ctx, a, 0); }

AlgElem AlgElem::h(const Context& ctx, Elem a, unsigned k) {
    const unsigned d = ctx.d();
    AlgElem x(ctx);
    Series c = Series::constant(ctx.E(), a);
    for (unsigned w = 0; w < k / d; ++w) c = c * one_plus_y(ctx);
    x.coeffs_[k % d] = c;
    return x;
}

AlgElem AlgElem::from_coeffs(const Context& ctx, std::vector<Series> coeffs) {
    if (coeffs.size() != ctx.d()) throw Error(ErrorCode::InvalidArgument, "need d coefficients");
    AlgElem x(ctx);
    for (unsigned j = 0; j < ctx.d(); ++j) x.coeffs_[j] = (Series(ctx.E()) + coeffs[j]).with_field(ctx.E());
    return x;
}

bool AlgElem::is_exact() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Series& s) { return s.is_exact(); });
}

bool AlgElem::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Series& s) { return s.is_zero(); });
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
    AlgElem out(*ctx_);
    for (unsigned j = 0; j < d(); ++j) out.coeffs_[j] = coeffs_[j] + o.coeffs_[j];
    return out;
}

AlgElem AlgElem::operator-(const AlgElem& o) const {
    AlgElem out(*ctx_);
    for (unsigned j = 0; j < d(); ++j) out.coeffs_[j] = coeffs_[j] - o.coeffs_[j];
    return out;
}

AlgElem AlgElem::operator*(const AlgElem& o) const {
    const unsigned n = d();
    const auto& params = ctx_->params();
    const Series wrap = one_plus_y(*ctx_);
    AlgElem out(*ctx_);
    for (unsigned i = 0; i < n; ++i) {
        if (o.coeffs_[i].is_exact_zero()) continue;
        for (unsigned j = 0; j < n; ++j) {
            if (coeffs_[j].is_exact_zero()) continue;
            Series term = coeffs_[j] * series_frobenius(params, o.coeffs_[i], static_cast<int>(j));
            unsigned idx = i + j;
            if (idx >= n) {
                term = term * wrap;
                idx -= n;
            }
            out.coeffs_[idx] += term;
        }
    }
    return out;
}

AlgElem AlgElem::scale(const Series& central) const {
    AlgElem out(*ctx_);
    for (unsigned j = 0; j < d(); ++j) out.coeffs_[j] = (coeffs_[j] * central).with_field(ctx_->E());
    return out;
}

bool AlgElem::equals_to_precision(const AlgElem& o) const {
    for (unsigned j = 0; j < d(); ++j)
        if (!coeffs_[j].equals_to_precision(o.coeffs_[j])) return false;
    return true;
}

AlgElem alg_mul(const AlgElem& x, const AlgElem& y) { return x * y; }

SeriesMatrix right_regular_matrix(const AlgElem& x) {
    const Context& ctx = x.context();
    const unsigned n = x.d();
    const Series wrap = one_plus_y(ctx);
    SeriesMatrix r(n, n, Series(ctx.E()));
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i) {
            Series c = series_frobenius(ctx.params(), x.coeff(i), static_cast<int>(j));
            if (i + j >= n) c = c * wrap;
            r(j, (i + j) % n) = c;
        }
    return r;
}

Series reduced_norm(const AlgElem& x) {
    const Series n = det_expansion(right_regular_matrix(x));
    for (Elem c : n.raw_coeffs())
        if (c >= x.context().params().q())
            throw Error(ErrorCode::InvalidArgument, "reduced norm left the base field");
    return n.field() ? n.with_field(x.context().K()) : Series(x.context().K());
}

AlgElem alg_adjoint(const AlgElem& x) {
    const SeriesMatrix r = right_regular_matrix(x);
    AlgElem out(x.context());
    for (unsigned k = 0; k < x.d(); ++k) {
        Series c = det_expansion(minor_matrix(r, k, 0));
        if (x.d() == 1) c = Series::constant(x.context().E(), 1);
        out.coeff(k) = ((k % 2) ? -c : c).with_field(x.context().E());
    }
    return out;
}

AlgElem alg_inv(const AlgElem& x) {
    const Series n = reduced_norm(x);
    if (n.is_exact_zero()) throw Error(ErrorCode::NotInvertible, "reduced norm is zero");
    if (n.is_zero()) throw Error(ErrorCode::PrecisionExhausted, "reduced norm vanishes in its window");
    AlgElem adj = alg_adjoint(x);
    AlgElem out(x.context());
    for (unsigned k = 0; k < x.d(); ++k) out.coeff(k) = divide(x.context(), adj.coeff(k), n).with_field(x.context().E());
    return out;
}

SeriesMatrix psi(const AlgElem& x, int prec) {
    const Context& ctx = x.context();
    if (prec > ctx.max_precision()) throw Error(ErrorCode::PrecisionExhausted, "precision above the context limit");
    const unsigned n = x.d();
    const FiniteField& K = ctx.K();
    const FiniteField& E = ctx.E();
    SeriesMatrix out(n, n, Series(K));
    for (unsigned j = 0; j < n; ++j) {
        if (x.coeff(j).is_exact_zero()) continue;
        const Series c = (x.coeff(j) * ctx.X_power(j).truncate(prec)).truncate(std::max(prec, 0));
        // Multiplication by c, column i = coordinates of c * omega^i.
        SeriesMatrix mc(n, n, Series(K));
        const auto& cs = c.raw_coeffs();
        for (unsigned i = 0; i < n; ++i) {
            std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(cs.size(), 0));
            const Elem w = E.exp(i);
            for (std::size_t t = 0; t < cs.size(); ++t) {
                const Elem img = E.mul(cs[t], w);
                for (unsigned r = 0; r < n; ++r) rows[r][t] = E.digit(img, r);
            }
            for (unsigned r = 0; r < n; ++r)
                mc(r, i) = Series::from_coeffs(K, c.valuation(), std::move(rows[r]), c.absolute_precision());
        }
        out = out + mul_const(K, mc, ctx.frobenius_matrix(j));
    }
    return out;
}

std::vector<Series> basis_coordinates(const AlgElem& y) {
    const Context& ctx = y.context();
    const unsigned n = y.d();
    std::vector<Series> out(n * n, Series(ctx.K()));
    for (unsigned j = 0; j < n; ++j) {
        const Series& s = y.coeff(j);
        const auto& cs = s.raw_coeffs();
        for (unsigned i = 0; i < n; ++i) {
            std::vector<Elem> digits(cs.size());
            for (std::size_t t = 0; t < cs.size(); ++t) digits[t] = ctx.E().digit(cs[t], i);
            out[j * n + i] = Series::from_coeffs(ctx.K(), s.valuation(), std::move(digits), s.absolute_precision());
        }
    }
    return out;
}

AlgElem basis_element(const Context& ctx, unsigned i, unsigned j) { return AlgElem::h(ctx, ctx.E().exp(i), j); }

SeriesMatrix phi(const AlgElem& x) {
    const Context& ctx = x.context();
    const unsigned n = x.d();
    const Series nrd = reduced_norm(x);
    if (nrd.is_exact_zero()) throw Error(ErrorCode::NotInvertible, "reduced norm is zero");
    if (nrd.is_zero()) throw Error(ErrorCode::PrecisionExhausted, "reduced norm vanishes in its window");
    const AlgElem xbar = alg_adjoint(x);
    SeriesMatrix out(n * n, n * n, Series(ctx.K()));
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i) {
            const AlgElem img = x * basis_element(ctx, i, j) * xbar;
            const auto coords = basis_coordinates(img);
            for (unsigned r = 0; r < n * n; ++r) out(r, j * n + i) = divide(ctx, coords[r], nrd);
        }
    return out;
}

ConstMatrix theta_of_phi(const SeriesMatrix& m) {
    ConstMatrix out(m.rows(), m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).coeff(0);
    return out;
}

ConstMatrix theta(const AlgElem& x) { return theta_of_phi(phi(x)); }

bool theta_is_unitriangular(const ConstMatrix& t, unsigned d) {
    for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < t.cols(); ++c) {
            const std::size_t rb = r / d, cb = c / d;
            if (rb > cb && t(r, c) != 0) return false;
            if (rb == cb && t(r, c) != (r == c ? 1u : 0u)) return false;
        }
    return true;
}

Membership in_gamma_from_phi(const SeriesMatrix& m, unsigned d) {
    Membership out;
    out.value = true;
    for (const auto& s : m.data()) {
        out.precision = std::min(out.precision, s.absolute_precision());
        if (s.is_zero()) continue;
        const auto& cs = s.raw_coeffs();
        for (std::size_t t = 0; t < cs.size(); ++t)
            if (cs[t] != 0 && s.valuation() + static_cast<int>(t) > 0) out.value = false;
    }
    if (out.value && d > 0) out.value = theta_is_unitriangular(theta_of_phi(m), d);
    return out;
}

Membership in_gamma_tilde(const AlgElem& x) {
    const SeriesMatrix m = phi(x);
    return in_gamma_from_phi(m, 0);
}

Membership in_gamma(const AlgElem& x) { return in_gamma_from_phi(phi(x), x.d()); }

GroupElem GroupElem::identity(const Context& ctx) { return GroupElem(AlgElem::one(ctx)); }

GroupElem GroupElem::from_alg(const AlgElem& x) {
    if (!x.is_exact()) throw Error(ErrorCode::InvalidArgument, "group elements need exact representatives");
    if (x.is_zero()) throw Error(ErrorCode::NotInvertible, "zero is not invertible");
    const Context& ctx = x.context();
    const FiniteField& K = ctx.K();
    const FiniteField& E = ctx.E();
    const unsigned n = x.d();
    int m = Series::kExact;
    for (const auto& c : x.coeffs())
        if (!c.is_zero()) m = std::min(m, c.valuation());
    // K-components as polynomials after removing Y^m.
    std::vector<poly::Poly> comps;
    comps.reserve(n * n);
    for (unsigned j = 0; j < n; ++j) {
        const Series& c = x.coeff(j);
        for (unsigned i = 0; i < n; ++i) {
            poly::Poly pc;
            if (!c.is_zero()) {
                pc.assign(c.valuation() - m, 0);
                for (Elem e : c.raw_coeffs()) pc.push_back(E.digit(e, i));
                poly::trim(pc);
            }
            comps.push_back(std::move(pc));
        }
    }
    poly::Poly g;
    for (const auto& pc : comps) {
        if (pc.empty()) continue;
        g = g.empty() ? poly::gcd(K, pc, pc) : poly::gcd(K, g, pc);
        if (g.size() == 1) break;
    }
    AlgElem out(ctx);
    std::size_t first = comps.size();
    for (std::size_t t = 0; t < comps.size(); ++t)
        if (!comps[t].empty()) {
            first = t;
            break;
        }
    const poly::Poly& fc = comps[first];
    const poly::Poly lead_poly = g.size() > 1 ? poly::divmod(K, fc, g).first : fc;
    const Elem lead_inv = K.inv(lead_poly.back());
    for (unsigned j = 0; j < n; ++j) {
        const Series& c = x.coeff(j);
        if (c.is_zero()) continue;
        poly::Poly pe(c.valuation() - m, 0);
        pe.insert(pe.end(), c.raw_coeffs().begin(), c.raw_coeffs().end());
        if (g.size() > 1) {
            auto [q, r] = poly::divmod(E, pe, g);
            if (!r.empty()) throw Error(ErrorCode::InvalidArgument, "content does not divide a coefficient");
            pe = std::move(q);
        }
        out.coeff(j) = Series::from_coeffs(E, 0, poly::scale(E, pe, lead_inv));
    }
    return GroupElem(std::move(out));
}

GroupElem GroupElem::operator*(const GroupElem& o) const { return from_alg(rep_ * o.rep_); }

GroupElem GroupElem::inverse() const { return from_alg(alg_adjoint(rep_)); }

GroupElem GroupElem::pow(long e) const {
    GroupElem base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    GroupElem result = identity(context());
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

bool GroupElem::is_identity() const { return *this == identity(context()); }

std::size_t GroupElem::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (const auto& c : rep_.coeffs()) {
        mix(static_cast<std::size_t>(c.valuation()));
        for (Elem e : c.raw_coeffs()) mix(e);
        mix(0xfeed);
    }
    return h;
}

int GroupElem::degree() const {
    int deg = 0;
    for (const auto& c : rep_.coeffs())
        if (!c.is_zero()) deg = std::max(deg, c.degree());
    return deg;
}

ProjMat::ProjMat(SeriesMatrix m) {
    int v = Series::kExact;
    for (const auto& s : m.data())
        if (!s.is_zero()) v = std::min(v, s.valuation());
    if (v == Series::kExact) throw Error(ErrorCode::Singular, "zero matrix");
    const FiniteField* f = nullptr;
    bool exact = true;
    for (auto& s : m.data()) {
        s = s.shift(-v);
        if (s.field()) f = s.field();
        exact = exact && s.is_exact();
    }
    if (exact) {
        // Polynomial entries: remove the K[Y]-content, then make the top
        // coefficient of the first nonzero entry 1.
        poly::Poly g;
        for (const auto& s : m.data())
            if (!s.is_zero()) {
                poly::Poly pc(s.valuation(), 0);
                pc.insert(pc.end(), s.raw_coeffs().begin(), s.raw_coeffs().end());
                g = g.empty() ? poly::gcd(*f, pc, pc) : poly::gcd(*f, g, pc);
            }
        const Series content = Series::from_coeffs(*f, 0, g);
        Elem lead = 0;
        for (auto& s : m.data()) {
            if (s.is_zero()) continue;
            s = *s.exact_quotient(content);
            if (lead == 0) lead = s.raw_coeffs().back();
        }
        const Elem lead_inv = f->inv(lead);
        for (auto& s : m.data()) s = s.scale(lead_inv);
    } else {
        for (const auto& s : m.data()) {
            if (!s.is_zero() && s.valuation() == 0) {
                const Series inv = s.inverse(s.is_exact() ? min_absolute_precision(m) : s.relative_precision());
                for (auto& e : m.data()) e = e * inv;
                break;
            }
        }
    }
    m_ = std::move(m);
}

Series ProjMat::det() const { return determinant(m_, precision()); }

int ProjMat::det_valuation() const {
    const Series d = det();
    if (d.is_zero()) throw Error(d.is_exact() ? ErrorCode::Singular : ErrorCode::PrecisionExhausted,
                                 "determinant vanishes in its window");
    return d.valuation();
}

int ProjMat::type_shift() const {
    const int n = static_cast<int>(dim());
    return ((det_valuation() % n) + n) % n;
}

bool ProjMat::equivalent(const ProjMat& o) const {
    if (dim() != o.dim()) return false;
    // Cross-multiply against an entry of minimal valuation.
    std::size_t ref = 0;
    int best = Series::kExact;
    for (std::size_t t = 0; t < m_.data().size(); ++t) {
        const Series& s = m_.data()[t];
        if (!s.is_zero() && s.valuation() < best) {
            best = s.valuation();
            ref = t;
        }
    }
    const Series& a_ref = m_.data()[ref];
    const Series& b_ref = o.m_.data()[ref];
    if (b_ref.is_zero()) return false;
    for (std::size_t t = 0; t < m_.data().size(); ++t)
        if (!(m_.data()[t] * b_ref).equals_to_precision(o.m_.data()[t] * a_ref)) return false;
    return true;
}

ProjMat to_projmat(const GroupElem& g, int prec) { return ProjMat(psi(g.rep(), prec)); }

ProjMat h_element(const Context& ctx, Elem a, unsigned k) { return ProjMat(psi(AlgElem::h(ctx, a, k))); }

Series det_h_formula(const Context& ctx, Elem a, unsigned k, const Series& z) {
    const auto& params = ctx.params();
    const FiniteField& K = ctx.K();
    Elem c = params.norm(a);
    if (((params.d() - 1) * k) % 2 == 1) c = K.neg(c);
    return z.pow(params.d()).with_field(K) * one_plus_y(ctx).pow(k) * Series::constant(K, c);
}

unsigned long p_part(unsigned long n, unsigned p) {
    if (n == 0) return 0;
    unsigned long r = 1;
    while (n % p == 0) {
        n /= p;
        r *= p;
    }
    return r;
}

bool h_in_psl(const FieldParams& params, Elem a, unsigned k) {
    if (a == 0) throw Error(ErrorCode::ZeroElement, "a must be nonzero");
    Elem c = params.norm(a);
    if (((params.d() - 1) * k) % 2 == 1) c = params.K().neg(c);
    if (!params.is_dth_power_in_K(c)) return false;
    if (k == 0) return true;
    return p_part(k, params.p()) >= p_part(params.d(), params.p());
}

unsigned h_psl_index(const FieldParams& params) {
    return std::gcd(params.d(), params.q() - 1) * static_cast<unsigned>(p_part(params.d(), params.p()));
}

std::vector<std::pair<Elem, unsigned>> h_representatives(const FieldParams& params) {
    std::vector<std::pair<Elem, unsigned>> out;
    for (unsigned k = 0; k < params.d(); ++k)
        for (std::uint32_t m = 0; m < params.singer_order(); ++m) out.emplace_back(params.E().exp(m), k);
    return out;
}

}  // namespace singerlat
