#include "singerlat/poly.hpp"

#include "singerlat/error.hpp"

namespace singerlat::poly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != 0) return static_cast<int>(i);
    return -1;
}

Poly add(const FiniteField& f, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(out);
    return out;
}

Poly sub(const FiniteField& f, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(out);
    return out;
}

Poly mul(const FiniteField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

Poly scale(const FiniteField& f, const Poly& a, Elem c) {
    if (c == 0) return {};
    Poly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], c);
    trim(out);
    return out;
}

std::pair<Poly, Poly> divmod(const FiniteField& f, const Poly& a, const Poly& b) {
    const int db = degree(b);
    if (db < 0) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    Poly r = a;
    trim(r);
    const int da = degree(r);
    if (da < db) return {Poly{}, r};
    Poly q(da - db + 1, 0);
    const Elem lead_inv = f.inv(b[db]);
    for (int k = da; k >= db; --k) {
        const Elem c = r[k];
        if (c == 0) continue;
        const Elem m = f.mul(c, lead_inv);
        q[k - db] = m;
        for (int i = 0; i <= db; ++i) r[k - db + i] = f.sub(r[k - db + i], f.mul(m, b[i]));
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly gcd(const FiniteField& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(f, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = scale(f, a, f.inv(a.back()));
    return a;
}

}  // namespace singerlat::poly
