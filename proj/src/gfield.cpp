#include "singerlat/gfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "singerlat/error.hpp"

namespace singerlat {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroElement: return "ZeroElement";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::NotInStabilizer: return "NotInStabilizer";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorCode::SearchExhausted: return "SearchExhausted";
        case ErrorCode::WordSearchExhausted: return "WordSearchExhausted";
        case ErrorCode::NotUnipotent: return "NotUnipotent";
        case ErrorCode::WrongDimension: return "WrongDimension";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

// Dense polynomials over a field, little-endian, used only while choosing
// and validating moduli.
using Poly = std::vector<Elem>;

Poly mulmod(const FiniteField& f, const Poly& x, const Poly& y, const Poly& monic) {
    const std::size_t n = monic.size() - 1;
    Poly prod(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            prod[i + j] = f.add(prod[i + j], f.mul(x[i], y[j]));
    }
    for (std::size_t k = prod.size(); k-- > n;) {
        const Elem c = prod[k];
        if (c == 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            prod[k - n + i] = f.sub(prod[k - n + i], f.mul(c, monic[i]));
        prod[k] = 0;
    }
    prod.resize(n, 0);
    return prod;
}

Poly powmod_y(const FiniteField& f, std::uint64_t e, const Poly& monic) {
    const std::size_t n = monic.size() - 1;
    Poly result(n, 0), base(n, 0);
    result[0] = 1;
    if (n == 1) {
        base[0] = f.neg(monic[0]);
    } else {
        base[1] = 1;
    }
    while (e > 0) {
        if (e & 1) result = mulmod(f, result, base, monic);
        base = mulmod(f, base, base, monic);
        e >>= 1;
    }
    return result;
}

bool is_one(const Poly& x) {
    if (x.empty() || x[0] != 1) return false;
    return std::all_of(x.begin() + 1, x.end(), [](Elem c) { return c == 0; });
}

std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        r *= b;
        if (r > (std::uint64_t{1} << 40)) throw Error(ErrorCode::SizeCapExceeded, "field too large");
    }
    return r;
}

}  // namespace

bool is_primitive_polynomial(const FiniteField& base, const std::vector<Elem>& modulus) {
    if (modulus.size() < 2 || modulus.back() != 1 || modulus[0] == 0) return false;
    const std::uint64_t order = checked_pow(base.order(), static_cast<std::uint32_t>(modulus.size() - 1)) - 1;
    if (!is_one(powmod_y(base, order, modulus))) return false;
    for (std::uint64_t r : prime_factors(order))
        if (is_one(powmod_y(base, order / r, modulus))) return false;
    return true;
}

std::optional<std::vector<Elem>> conway_polynomial(std::uint32_t p, std::uint32_t n) {
    static const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Elem>> table = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 4, 4, 0, 1}},
        {{7, 1}, {4, 1}},
        {{7, 2}, {3, 6, 1}},
        {{7, 3}, {4, 0, 6, 1}},
    };
    auto it = table.find({p, n});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::vector<Elem> least_primitive_polynomial(const FiniteField& base, std::uint32_t n) {
    const std::uint64_t b = base.order();
    const std::uint64_t count = checked_pow(b, n);
    Poly f(n + 1, 0);
    f[n] = 1;
    // Counter digits: most significant is c_{n-1}.
    for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t rest = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            f[i] = static_cast<Elem>(rest % b);
            rest /= b;
        }
        if (is_primitive_polynomial(base, f)) return f;
    }
    throw Error(ErrorCode::InvalidArgument, "no primitive polynomial found");
}

std::shared_ptr<const FiniteField> FiniteField::prime(std::uint32_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    std::shared_ptr<FiniteField> f(new FiniteField());
    f->p_ = p;
    f->order_ = p;
    f->degree_ = 1;
    f->base_order_ = p;
    f->powers_ = {1};
    Elem g = 1;
    if (p > 2) {
        const auto factors = prime_factors(p - 1);
        for (g = 2; g < p; ++g) {
            bool ok = true;
            for (auto r : factors) {
                std::uint64_t x = 1, base = g, e = (p - 1) / r;
                while (e) {
                    if (e & 1) x = x * base % p;
                    base = base * base % p;
                    e >>= 1;
                }
                if (x == 1) { ok = false; break; }
            }
            if (ok) break;
        }
    }
    f->modulus_ = {static_cast<Elem>((p - g) % p), 1};
    f->build_tables(g);
    return f;
}

std::shared_ptr<const FiniteField> FiniteField::extension(std::shared_ptr<const FiniteField> base,
                                                          std::vector<Elem> modulus) {
    if (!is_primitive_polynomial(*base, modulus))
        throw Error(ErrorCode::InvalidArgument, "modulus is not a primitive polynomial");
    std::shared_ptr<FiniteField> f(new FiniteField());
    f->p_ = base->characteristic();
    f->degree_ = static_cast<std::uint32_t>(modulus.size() - 1);
    f->base_order_ = base->order();
    f->order_ = static_cast<std::uint32_t>(checked_pow(base->order(), f->degree_));
    f->base_ = std::move(base);
    f->modulus_ = std::move(modulus);
    f->powers_.resize(f->degree_);
    for (std::uint32_t i = 0; i < f->degree_; ++i)
        f->powers_[i] = static_cast<std::uint32_t>(checked_pow(f->base_order_, i));
    f->build_tables(f->degree_ == 1 ? f->base_->neg(f->modulus_[0]) : f->base_order_);
    return f;
}

void FiniteField::build_tables(Elem gen_index) {
    const std::uint32_t m = order_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(m), 0);
    log_.assign(order_, 0);
    if (base_) {
        // Walk powers of the generator as coordinate vectors.
        const std::uint32_t n = degree_;
        std::vector<Elem> cur(n, 0), next(n, 0);
        cur[0] = 1;
        const std::vector<Elem> gen = [&] {
            std::vector<Elem> g(n, 0);
            Elem rest = gen_index;
            for (std::uint32_t i = 0; i < n; ++i) {
                g[i] = rest % base_order_;
                rest /= base_order_;
            }
            return g;
        }();
        for (std::uint32_t k = 0; k < m; ++k) {
            Elem idx = 0;
            for (std::uint32_t i = n; i-- > 0;) idx = idx * base_order_ + cur[i];
            exp_[k] = exp_[k + m] = idx;
            log_[idx] = k;
            if (n == 1) {
                cur[0] = base_->mul(cur[0], gen[0]);
                continue;
            }
            // cur *= y  (the generator of an extension of degree > 1 is y)
            const Elem top = cur[n - 1];
            for (std::uint32_t i = n - 1; i > 0; --i)
                next[i] = base_->sub(cur[i - 1], base_->mul(top, modulus_[i]));
            next[0] = base_->neg(base_->mul(top, modulus_[0]));
            std::swap(cur, next);
        }
    } else {
        std::uint64_t x = 1;
        for (std::uint32_t k = 0; k < m; ++k) {
            exp_[k] = exp_[k + m] = static_cast<Elem>(x);
            log_[x] = k;
            x = x * gen_index % p_;
        }
    }
    if (order_ > 1024) {
        // Zech logarithms: 1 + g^k = g^zech[k], or zero when zech[k] < 0.
        std::vector<std::int32_t> zech(m, -1);
        for (std::uint32_t k = 0; k < m; ++k) {
            const Elem s = add(1, exp_[k]);
            zech[k] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
        }
        zech_ = std::move(zech);
        log_minus_one_ = p_ == 2 ? 0 : m / 2;
    }
    if (order_ <= 1024) {
        std::vector<Elem> sums(static_cast<std::size_t>(order_) * order_), negs(order_);
        for (Elem x = 0; x < order_; ++x) {
            negs[x] = neg(x);
            for (Elem y = 0; y < order_; ++y) sums[x * order_ + y] = add(x, y);
        }
        add_table_ = std::move(sums);
        neg_table_ = std::move(negs);
    }
}

Elem FiniteField::add(Elem x, Elem y) const {
    if (!add_table_.empty()) return add_table_[x * order_ + y];
    if (!zech_.empty()) {
        if (x == 0) return y;
        if (y == 0) return x;
        const std::uint32_t m = order_ - 1;
        std::uint32_t k = log_[y] + m - log_[x];
        if (k >= m) k -= m;
        const std::int32_t z = zech_[k];
        return z < 0 ? 0 : exp_[log_[x] + static_cast<std::uint32_t>(z)];
    }
    if (!base_) {
        const Elem s = x + y;
        return s >= p_ ? s - p_ : s;
    }
    Elem out = 0;
    for (std::uint32_t i = degree_; i-- > 0;) {
        out = out * base_order_ + base_->add((x / powers_[i]) % base_order_, (y / powers_[i]) % base_order_);
    }
    return out;
}

Elem FiniteField::neg(Elem x) const {
    if (!neg_table_.empty()) return neg_table_[x];
    if (!zech_.empty()) return x == 0 ? 0 : exp_[log_[x] + log_minus_one_];
    if (!base_) return x == 0 ? 0 : p_ - x;
    Elem out = 0;
    for (std::uint32_t i = degree_; i-- > 0;) out = out * base_order_ + base_->neg((x / powers_[i]) % base_order_);
    return out;
}

Elem FiniteField::inv(Elem x) const {
    if (x == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    const std::uint32_t m = order_ - 1;
    return exp_[(m - log_[x]) % m];
}

Elem FiniteField::pow(Elem x, std::int64_t e) const {
    if (e == 0) return 1;
    if (x == 0) {
        if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
        return 0;
    }
    const std::int64_t m = order_ - 1;
    std::int64_t k = (static_cast<std::int64_t>(log_[x]) * (e % m)) % m;
    if (k < 0) k += m;
    return exp_[k];
}

Elem FiniteField::from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

std::uint32_t FiniteField::log(Elem x) const {
    if (x == 0) throw Error(ErrorCode::ZeroElement, "discrete log of zero");
    return log_[x];
}

Elem FiniteField::exp(std::int64_t k) const {
    const std::int64_t m = order_ - 1;
    std::int64_t r = k % m;
    if (r < 0) r += m;
    return exp_[r];
}

std::vector<Elem> FiniteField::digits(Elem x) const {
    std::vector<Elem> out(degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) {
        out[i] = x % base_order_;
        x /= base_order_;
    }
    return out;
}

Elem FiniteField::from_digits(const std::vector<Elem>& digits) const {
    Elem out = 0;
    for (std::size_t i = digits.size(); i-- > 0;) out = out * base_order_ + digits[i];
    return out;
}

FieldParams FieldParams::make(std::uint32_t p, std::uint32_t a, std::uint32_t d,
                              std::optional<std::vector<Elem>> k_modulus,
                              std::optional<std::vector<Elem>> e_modulus, std::uint64_t size_cap) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
    if (a < 1) throw Error(ErrorCode::InvalidArgument, "a must be positive");
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "d must be at least 2");
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(a) * d; ++i) {
        size *= p;
        if (size > size_cap)
            throw Error(ErrorCode::SizeCapExceeded,
                        "q^d exceeds the supported size cap " + std::to_string(size_cap));
    }
    FieldParams fp;
    fp.p_ = p;
    fp.a_ = a;
    fp.d_ = d;
    auto prime_field = FiniteField::prime(p);
    if (a == 1) {
        if (k_modulus) throw Error(ErrorCode::InvalidArgument, "K modulus given for a prime field");
        fp.K_ = prime_field;
    } else {
        std::vector<Elem> km;
        if (k_modulus) km = *k_modulus;
        else if (auto c = conway_polynomial(p, a)) km = *c;
        else km = least_primitive_polynomial(*prime_field, a);
        fp.K_ = FiniteField::extension(prime_field, km);
    }
    fp.q_ = fp.K_->order();
    std::vector<Elem> em;
    if (e_modulus) em = *e_modulus;
    else if (auto c = (a == 1 ? conway_polynomial(p, d) : std::nullopt)) em = *c;
    else em = least_primitive_polynomial(*fp.K_, d);
    fp.E_ = FiniteField::extension(fp.K_, em);
    return fp;
}

FieldParams FieldParams::from_q(std::uint64_t q, std::uint32_t d, std::uint64_t size_cap) {
    if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be at least 2");
    std::uint64_t qd = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        qd *= q;
        if (qd > size_cap)
            throw Error(ErrorCode::SizeCapExceeded,
                        "q^d exceeds the supported size cap " + std::to_string(size_cap));
    }
    const auto factors = prime_factors(q);
    if (factors.size() != 1) throw Error(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
    std::uint32_t a = 0;
    for (std::uint64_t r = q; r > 1; r /= factors[0]) ++a;
    return make(static_cast<std::uint32_t>(factors[0]), a, d, std::nullopt, std::nullopt, size_cap);
}

Elem FieldParams::frobenius(Elem x, std::int64_t k) const {
    if (x == 0) return 0;
    const std::int64_t m = E_->order() - 1;
    std::int64_t e = 1;
    std::int64_t kk = ((k % d_) + d_) % d_;
    for (std::int64_t i = 0; i < kk; ++i) e = e * q_ % m;
    return E_->exp(static_cast<std::int64_t>(E_->log(x)) * e % m);
}

Elem FieldParams::norm(Elem x) const {
    if (x == 0) return 0;
    const std::int64_t m = E_->order() - 1;
    return E_->exp(static_cast<std::int64_t>(E_->log(x)) * singer_order() % m);
}

Elem FieldParams::trace(Elem x) const {
    Elem s = 0, y = x;
    for (std::uint32_t k = 0; k < d_; ++k) {
        s = E_->add(s, y);
        y = frobenius(y);
    }
    return s;
}

bool FieldParams::is_dth_power_in_K(Elem c) const {
    if (c == 0) return false;
    const std::uint32_t g = std::gcd(d_, q_ - 1);
    return K_->log(c) % g == 0;
}

}  // namespace singerlat
