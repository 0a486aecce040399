#pragma once

// Table-free reference arithmetic used to check the library: schoolbook
// polynomial arithmetic over F_p, then over F_q, reduced by the moduli.

#include <cstdint>
#include <vector>

namespace oracle {

using Vec = std::vector<std::uint32_t>;

struct PrimeField {
    std::uint32_t p;
    std::uint32_t add(std::uint32_t x, std::uint32_t y) const { return (x + y) % p; }
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return (x + p - y) % p; }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p);
    }
};

// Field F[y]/(m) over a base field B with elements given as integer codes.
template <class B>
struct Ext {
    B base;
    std::uint32_t b;  // base order
    Vec modulus;      // monic, little endian, base codes
    std::uint32_t n() const { return static_cast<std::uint32_t>(modulus.size() - 1); }

    Vec split(std::uint32_t x) const {
        Vec v(n());
        for (auto& c : v) {
            c = x % b;
            x /= b;
        }
        return v;
    }
    std::uint32_t join(const Vec& v) const {
        std::uint32_t x = 0;
        for (std::size_t i = v.size(); i-- > 0;) x = x * b + v[i];
        return x;
    }
    std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
        Vec a = split(x), c = split(y);
        for (std::uint32_t i = 0; i < n(); ++i) a[i] = base.add(a[i], c[i]);
        return join(a);
    }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        Vec a = split(x), c = split(y);
        Vec prod(2 * n(), 0);
        for (std::uint32_t i = 0; i < n(); ++i)
            for (std::uint32_t j = 0; j < n(); ++j) prod[i + j] = base.add(prod[i + j], base.mul(a[i], c[j]));
        for (std::size_t k = prod.size(); k-- > n();) {
            const std::uint32_t t = prod[k];
            if (t == 0) continue;
            for (std::uint32_t i = 0; i < n(); ++i)
                prod[k - n() + i] = base.sub(prod[k - n() + i], base.mul(t, modulus[i]));
            prod[k] = 0;
        }
        prod.resize(n());
        return join(prod);
    }
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const {
        // x - y = x + (p-1) y, with p-1 = -1 in the prime field
        Vec a = split(x), c = split(y);
        for (std::uint32_t i = 0; i < n(); ++i) a[i] = base.sub(a[i], c[i]);
        return join(a);
    }
    std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
        std::uint32_t r = 1;
        for (std::uint64_t i = 0; i < e; ++i) r = mul(r, x);
        return r;
    }
};

}  // namespace oracle
