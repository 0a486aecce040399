#include "singerlat/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "singerlat/error.hpp"
#include "singerlat/poly.hpp"

namespace singerlat {

namespace {

int sat_add(int a, int b) {
    if (a == Series::kExact || b == Series::kExact) return Series::kExact;
    return a + b;
}

}  // namespace

Series Series::constant(const FiniteField& f, Elem c, int prec) { return monomial(f, c, 0, prec); }

Series Series::monomial(const FiniteField& f, Elem c, int exponent, int prec) {
    return from_coeffs(f, exponent, {c}, prec);
}

Series Series::from_coeffs(const FiniteField& f, int val, std::vector<Elem> c, int prec) {
    Series s(f);
    s.val_ = val;
    s.prec_ = prec;
    s.coeffs_ = std::move(c);
    s.normalize();
    return s;
}

Series Series::zero(const FiniteField& f, int prec) {
    Series s(f);
    s.prec_ = prec;
    s.val_ = prec == kExact ? 0 : prec;
    return s;
}

Series Series::with_field(const FiniteField& f) const {
    Series s = *this;
    s.field_ = &f;
    return s;
}

void Series::normalize() {
    if (prec_ != kExact) {
        const long keep = static_cast<long>(prec_) - val_;
        if (keep <= 0) coeffs_.clear();
        else if (static_cast<long>(coeffs_.size()) > keep) coeffs_.resize(keep);
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        val_ = prec_ == kExact ? 0 : prec_;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        val_ += static_cast<int>(lead);
    }
    while (coeffs_.back() == 0) coeffs_.pop_back();
}

const FiniteField* Series::adopt(const Series& o) const {
    if (field_ && o.field_ && field_ != o.field_ && field_->order() != o.field_->order() &&
        field_->base() != o.field_ && o.field_->base() != field_)
        throw Error(ErrorCode::InvalidArgument, "series over unrelated fields");
    // Prefer the larger field so K-series embed into E-series.
    if (!field_) return o.field_;
    if (!o.field_) return field_;
    return field_->order() >= o.field_->order() ? field_ : o.field_;
}

int Series::relative_precision() const {
    if (prec_ == kExact) return kExact;
    return coeffs_.empty() ? 0 : prec_ - val_;
}

int Series::degree() const {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "degree of zero series");
    return val_ + static_cast<int>(coeffs_.size()) - 1;
}

Elem Series::coeff(int n) const {
    if (n >= prec_) throw Error(ErrorCode::PrecisionExhausted, "coefficient beyond the tracked window");
    if (coeffs_.empty() || n < val_) return 0;
    const long i = static_cast<long>(n) - val_;
    return i < static_cast<long>(coeffs_.size()) ? coeffs_[i] : 0;
}

Series Series::operator+(const Series& o) const {
    const FiniteField* f = adopt(o);
    if (!f) return Series();
    if (is_exact_zero()) return o.field_ ? o : o.with_field(*f);
    if (o.is_exact_zero()) return field_ ? *this : with_field(*f);
    Series out(*f);
    out.prec_ = std::min(prec_, o.prec_);
    const int lo = std::min(valuation(), o.valuation());
    if (lo >= out.prec_) return zero(*f, out.prec_);
    long hi = std::max(coeffs_.empty() ? lo : val_ + static_cast<long>(coeffs_.size()),
                       o.coeffs_.empty() ? lo : o.val_ + static_cast<long>(o.coeffs_.size()));
    if (out.prec_ != kExact) hi = std::min<long>(hi, out.prec_);
    out.val_ = lo;
    out.coeffs_.assign(std::max<long>(hi - lo, 0), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const long k = val_ + static_cast<long>(i) - lo;
        if (k < static_cast<long>(out.coeffs_.size())) out.coeffs_[k] = coeffs_[i];
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        const long k = o.val_ + static_cast<long>(i) - lo;
        if (k < static_cast<long>(out.coeffs_.size())) out.coeffs_[k] = f->add(out.coeffs_[k], o.coeffs_[i]);
    }
    out.normalize();
    return out;
}

Series Series::operator-() const {
    Series out = *this;
    if (field_)
        for (auto& c : out.coeffs_) c = field_->neg(c);
    return out;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
    const FiniteField* f = adopt(o);
    if (!f) return Series();
    if (is_exact_zero() || o.is_exact_zero()) return Series(*f);
    // Y^v times a unit known to relative precision r; zero has r = 0.
    const int rel = std::min(relative_precision(), o.relative_precision());
    const int v = valuation() + o.valuation();
    Series out(*f);
    out.prec_ = sat_add(v, rel);
    if (coeffs_.empty() || o.coeffs_.empty()) return zero(*f, out.prec_);
    out.val_ = v;
    std::size_t n = coeffs_.size() + o.coeffs_.size() - 1;
    if (rel != kExact) n = std::min<std::size_t>(n, rel);
    out.coeffs_.assign(n, 0);
    for (std::size_t i = 0; i < coeffs_.size() && i < n; ++i) {
        const Elem a = coeffs_[i];
        if (a == 0) continue;
        const std::size_t jmax = std::min(o.coeffs_.size(), n - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            const Elem b = o.coeffs_[j];
            if (b != 0) out.coeffs_[i + j] = f->add(out.coeffs_[i + j], f->mul(a, b));
        }
    }
    out.normalize();
    return out;
}

Series Series::scale(Elem c) const {
    if (!field_) return *this;
    if (c == 0) return zero(*field_, prec_ == kExact ? kExact : prec_);
    Series out = *this;
    for (auto& x : out.coeffs_) x = field_->mul(x, c);
    return out;
}

Series Series::shift(int k) const {
    Series out = *this;
    if (!out.coeffs_.empty() || prec_ != kExact) out.val_ += k;
    if (prec_ != kExact) out.prec_ += k;
    return out;
}

Series Series::truncate(int prec) const {
    if (prec >= prec_) return *this;
    Series out = *this;
    out.prec_ = prec;
    out.normalize();
    return out;
}

Series Series::pow(unsigned e) const {
    Series result = field_ ? constant(*field_, 1) : Series();
    Series base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Series Series::inverse(int max_rel_prec) const {
    if (is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero series");
    if (coeffs_.empty()) throw Error(ErrorCode::PrecisionExhausted, "inverse of a series that vanishes in its window");
    const FiniteField& f = *field_;
    if (is_exact() && coeffs_.size() == 1) return monomial(f, f.inv(coeffs_[0]), -val_);
    const int rel = is_exact() ? max_rel_prec : std::min(relative_precision(), max_rel_prec);
    if (rel <= 0) throw Error(ErrorCode::PrecisionExhausted, "empty window for inverse");
    std::vector<Elem> b(rel, 0);
    const Elem a0_inv = f.inv(coeffs_[0]);
    b[0] = a0_inv;
    for (int n = 1; n < rel; ++n) {
        Elem s = 0;
        const int kmax = std::min<int>(n, static_cast<int>(coeffs_.size()) - 1);
        for (int k = 1; k <= kmax; ++k)
            if (coeffs_[k] != 0 && b[n - k] != 0) s = f.add(s, f.mul(coeffs_[k], b[n - k]));
        b[n] = f.neg(f.mul(s, a0_inv));
    }
    return from_coeffs(f, -val_, std::move(b), -val_ + rel);
}

std::optional<Series> Series::exact_quotient(const Series& divisor) const {
    if (!is_exact() || !divisor.is_exact()) return std::nullopt;
    if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "exact division by zero");
    if (is_zero()) return Series(*divisor.field_);
    const FiniteField& f = *adopt(divisor);
    auto [q, r] = poly::divmod(f, coeffs_, divisor.coeffs_);
    if (!r.empty()) return std::nullopt;
    return from_coeffs(f, val_ - divisor.val_, std::move(q));
}

std::string Series::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        os << coeffs_[i] << "*Y^" << (val_ + static_cast<int>(i));
        first = false;
    }
    if (prec_ != kExact) {
        if (!first) os << " + ";
        os << "O(Y^" << prec_ << ")";
    } else if (first) {
        os << "0";
    }
    return os.str();
}

namespace {

// m-th root of a 1-unit when p does not divide m: r_n from [Y^n] r^m = u_n.
Series unit_root_coprime(const Series& u, unsigned m) {
    const FiniteField& f = *u.field();
    if (u.is_exact() && u.raw_coeffs().size() == 1) return Series::constant(f, 1);
    // An exact input has an exact root only if it is a polynomial of degree deg/m.
    const int n_max = u.is_exact() ? u.degree() / static_cast<int>(m) + 1 : u.relative_precision();
    const Elem m_inv = f.inv(f.from_int(m));
    std::vector<Elem> r(n_max, 0);
    r[0] = 1;
    for (int n = 1; n < n_max; ++n) {
        // [Y^n] of (r_0 + ... + r_{n-1} Y^{n-1})^m; the unknown r_n enters linearly with factor m.
        const Series partial = Series::from_coeffs(f, 0, std::vector<Elem>(r.begin(), r.begin() + n), n + 1);
        const Elem c = partial.pow(m).coeff(n);
        r[n] = f.mul(f.sub(u.coeff(n), c), m_inv);
    }
    if (u.is_exact()) {
        Series exact = Series::from_coeffs(f, 0, std::move(r));
        if (!(exact.pow(m) == u)) throw Error(ErrorCode::PrecisionExhausted, "exact input is not an exact power; truncate it first");
        return exact;
    }
    return Series::from_coeffs(f, 0, std::move(r), n_max);
}

}  // namespace

std::optional<Series> dth_root(const Series& s, unsigned m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "root of order zero");
    if (s.is_zero()) throw Error(ErrorCode::PrecisionExhausted, "root of a vanishing series");
    if (s.valuation() != 0) throw Error(ErrorCode::InvalidArgument, "dth_root expects a unit");
    const FiniteField& f = *s.field();
    const std::uint32_t p = f.characteristic();
    const std::int64_t group = f.order() - 1;

    unsigned ps = 1, mp = m;
    while (mp % p == 0) {
        mp /= p;
        ps *= p;
    }
    // Constant term: c^(1/m) exists iff log c is divisible by gcd(m, q-1).
    const Elem c0 = s.leading();
    const std::int64_t lg = f.log(c0);
    const std::int64_t g = std::gcd<std::int64_t>(m, group);
    if (lg % g != 0) return std::nullopt;
    // Solve m*k = lg mod group.
    std::int64_t k = 0;
    {
        const std::int64_t mg = (static_cast<std::int64_t>(m) / g) % (group / g);
        const std::int64_t target = (lg / g) % (group / g);
        const std::int64_t mod = group / g;
        if (mod == 1) {
            k = 0;
        } else {
            // modular inverse by extended Euclid
            std::int64_t a = mg, b = mod, x0 = 1, x1 = 0;
            while (b != 0) {
                const std::int64_t qq = a / b;
                std::tie(a, b) = std::make_tuple(b, a - qq * b);
                std::tie(x0, x1) = std::make_tuple(x1, x0 - qq * x1);
            }
            k = ((x0 % mod + mod) % mod) * target % mod;
        }
    }
    const Elem root0 = f.exp(k);
    Series u = s.scale(f.inv(c0));

    // p-power stage: u must lie in F[[Y^ps]].
    if (ps > 1) {
        // ps^(-1) mod (q-1) exists since gcd(p, q-1) = 1.
        std::int64_t inv_ps = 1;
        while ((inv_ps * ps) % group != 1 % group) ++inv_ps;
        const auto& c = u.raw_coeffs();
        std::vector<Elem> down;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i % ps != 0) {
                if (c[i] != 0) return std::nullopt;
                continue;
            }
            // p-th roots are unique in a finite field: c^(1/ps) via logs.
            if (c[i] == 0) {
                down.push_back(0);
                continue;
            }
            down.push_back(f.exp(static_cast<std::int64_t>(f.log(c[i])) * inv_ps % group));
        }
        int prec = Series::kExact;
        if (!u.is_exact()) prec = (u.absolute_precision() + static_cast<int>(ps) - 1) / static_cast<int>(ps);
        u = Series::from_coeffs(f, 0, std::move(down), prec);
    }
    Series r = mp > 1 ? unit_root_coprime(u, mp) : u;
    return r.scale(root0);
}

Series series_frobenius(const FieldParams& params, const Series& s, int k) {
    return s.map([&](Elem c) { return params.frobenius(c, k); });
}

Series series_norm(const FieldParams& params, const Series& s) {
    Series out = Series::constant(params.E(), 1);
    for (std::uint32_t k = 0; k < params.d(); ++k) out = out * series_frobenius(params, s, static_cast<int>(k));
    return out;
}

Series solve_norm_unit(const FieldParams& params, int prec) {
    if (prec < 1) throw Error(ErrorCode::PrecisionExhausted, "precision must be positive");
    const FiniteField& E = params.E();
    const Series one_plus_y = Series::from_coeffs(params.K(), 0, {1, 1}, prec);
    if (std::gcd(params.p(), params.d()) == 1) {
        auto r = dth_root(one_plus_y, params.d());
        return r->with_field(E);
    }
    // Solve T(x_n) = [n == 1] - f_n one coefficient at a time, where f_n is
    // the Y^n coefficient of N(X) with x_n set to zero.
    std::vector<Elem> x(prec, 0);
    x[0] = 1;
    // Trace preimages, chosen with least discrete log.
    std::vector<Elem> preimage(params.q(), 0);
    std::vector<bool> found(params.q(), false);
    found[0] = true;
    for (std::uint32_t k = 0; k + 1 < E.order(); ++k) {
        const Elem y = E.exp(k);
        const Elem t = params.trace(y);
        if (!found[t]) {
            found[t] = true;
            preimage[t] = y;
        }
    }
    for (int n = 1; n < prec; ++n) {
        const Series partial = Series::from_coeffs(E, 0, std::vector<Elem>(x.begin(), x.begin() + n), n + 1);
        const Elem fn = series_norm(params, partial).coeff(n);
        const Elem target = E.sub(n == 1 ? 1 : 0, fn);
        if (target >= params.q()) throw Error(ErrorCode::InvalidArgument, "norm coefficient outside the base field");
        x[n] = preimage[target];
    }
    return Series::from_coeffs(E, 0, std::move(x), prec);
}

}  // namespace singerlat
