#include "singerlat/pgeom.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "singerlat/error.hpp"

namespace singerlat {

std::size_t FinMatHash::operator()(const FinMat& f) const {
    std::size_t h = f.projective ? 0x51ed27u : 0x2545f4u;
    for (Elem e : f.m.data()) h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

FinMat fin_normalize(const FiniteField& K, FinMat f) {
    if (!f.projective) return f;
    for (Elem e : f.m.data())
        if (e != 0) {
            const Elem inv = K.inv(e);
            for (auto& x : f.m.data()) x = K.mul(x, inv);
            break;
        }
    return f;
}

FinMat fin_mul(const FiniteField& K, const FinMat& a, const FinMat& b) {
    return fin_normalize(K, FinMat{const_mul(K, a.m, b.m), a.projective || b.projective});
}

FinMat fin_identity(std::size_t n, bool projective) { return FinMat{const_identity(n), projective}; }

Elem fin_det(const FiniteField& K, const ConstMatrix& m_in) {
    ConstMatrix m = m_in;
    const std::size_t n = m.rows();
    Elem det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
            det = K.neg(det);
        }
        det = K.mul(det, m(c, c));
        const Elem inv = K.inv(m(c, c));
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            const Elem f = K.mul(m(r, c), inv);
            for (std::size_t k = c; k < n; ++k) m(r, k) = K.sub(m(r, k), K.mul(f, m(c, k)));
        }
    }
    return det;
}

FinMat fin_inverse(const FiniteField& K, const FinMat& a) {
    const std::size_t n = a.m.rows();
    ConstMatrix m = a.m;
    ConstMatrix inv = const_identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) throw Error(ErrorCode::Singular, "matrix is not invertible");
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(m(piv, k), m(c, k));
            std::swap(inv(piv, k), inv(c, k));
        }
        const Elem s = K.inv(m(c, c));
        for (std::size_t k = 0; k < n; ++k) {
            m(c, k) = K.mul(m(c, k), s);
            inv(c, k) = K.mul(inv(c, k), s);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Elem f = m(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                m(r, k) = K.sub(m(r, k), K.mul(f, m(c, k)));
                inv(r, k) = K.sub(inv(r, k), K.mul(f, inv(c, k)));
            }
        }
    }
    return fin_normalize(K, FinMat{inv, a.projective});
}

std::uint64_t fin_order(const FiniteField& K, const FinMat& a, std::uint64_t cap) {
    const FinMat id = fin_identity(a.m.rows(), a.projective);
    FinMat x = fin_normalize(K, a);
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (x == id) return k;
        x = fin_mul(K, x, a);
    }
    throw Error(ErrorCode::SizeCapExceeded, "element order above the cap");
}

std::vector<FinMat> fin_closure(const FiniteField& K, const std::vector<FinMat>& gens, std::size_t cap) {
    if (gens.empty()) return {};
    const bool proj = gens.front().projective;
    std::vector<FinMat> norm_gens;
    for (const auto& g : gens) norm_gens.push_back(fin_normalize(K, g));
    std::vector<FinMat> out{fin_identity(gens.front().m.rows(), proj)};
    std::unordered_set<FinMat, FinMatHash> seen(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : norm_gens) {
            FinMat y = fin_mul(K, out[i], g);
            if (seen.insert(y).second) {
                if (out.size() >= cap) throw Error(ErrorCode::SizeCapExceeded, "group closure above the cap");
                out.push_back(std::move(y));
            }
        }
    return out;
}

ConstMatrix rref(const FiniteField& K, ConstMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        for (std::size_t k = 0; k < cols; ++k) std::swap(m(piv, k), m(r, k));
        const Elem s = K.inv(m(r, c));
        for (std::size_t k = 0; k < cols; ++k) m(r, k) = K.mul(m(r, k), s);
        for (std::size_t o = 0; o < rows; ++o) {
            if (o == r || m(o, c) == 0) continue;
            const Elem f = m(o, c);
            for (std::size_t k = 0; k < cols; ++k) m(o, k) = K.sub(m(o, k), K.mul(f, m(r, k)));
        }
        ++r;
    }
    // Drop zero rows.
    ConstMatrix out(r, cols, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < cols; ++k) out(i, k) = m(i, k);
    return out;
}

std::vector<ConstMatrix> subspaces(const FiniteField& K, unsigned d, unsigned k) {
    std::vector<ConstMatrix> out;
    if (k > d) return out;
    const Elem q = K.order();
    // Pivot sets in lexicographic order, then free entries as base-q counters.
    std::vector<unsigned> piv(k);
    for (unsigned i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        std::vector<std::pair<unsigned, unsigned>> free;
        for (unsigned i = 0; i < k; ++i)
            for (unsigned c = piv[i] + 1; c < d; ++c) {
                bool is_piv = false;
                for (unsigned j = i + 1; j < k; ++j) is_piv = is_piv || piv[j] == c;
                if (!is_piv) free.emplace_back(i, c);
            }
        std::vector<Elem> digits(free.size(), 0);
        while (true) {
            ConstMatrix m(k, d, 0);
            for (unsigned i = 0; i < k; ++i) m(i, piv[i]) = 1;
            for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = digits[t];
            out.push_back(std::move(m));
            std::size_t t = free.size();
            while (t > 0) {
                if (++digits[t - 1] < q) break;
                digits[t - 1] = 0;
                --t;
            }
            if (t == 0) break;
        }
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && piv[i] == d - k + static_cast<unsigned>(i)) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

ConstMatrix act_on_subspace(const FiniteField& K, const ConstMatrix& g, const ConstMatrix& basis) {
    // Rows w of the basis map to (g w^T)^T = w g^T.
    ConstMatrix gt(g.cols(), g.rows(), 0);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) gt(c, r) = g(r, c);
    return rref(K, const_mul(K, basis, gt));
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
    if (k > n) return 0;
    std::uint64_t num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        std::uint64_t a = 1, b = 1;
        for (unsigned j = 0; j < n - i; ++j) a *= q;
        for (unsigned j = 0; j < i + 1; ++j) b *= q;
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

namespace {

FinMat linear_map_matrix(const FieldParams& params, const auto& f) {
    const unsigned d = params.d();
    ConstMatrix m(d, d, 0);
    for (unsigned i = 0; i < d; ++i) {
        const Elem img = f(params.E().exp(i));
        for (unsigned r = 0; r < d; ++r) m(r, i) = params.E().digit(img, r);
    }
    return FinMat{m, false};
}

FinMat projective(const FiniteField& K, FinMat f) {
    f.projective = true;
    return fin_normalize(K, std::move(f));
}

}  // namespace

FinMat singer_gl(const FieldParams& params) {
    return linear_map_matrix(params, [&](Elem x) { return params.E().mul(params.omega(), x); });
}

FinMat frobenius_gl(const FieldParams& params) {
    return linear_map_matrix(params, [&](Elem x) { return params.frobenius(x); });
}

std::vector<FinMat> singer_pgl(const FieldParams& params) {
    return fin_closure(params.K(), {projective(params.K(), singer_gl(params))});
}

std::vector<FinMat> normalizer_singer(const FieldParams& params) {
    return fin_closure(params.K(),
                       {projective(params.K(), singer_gl(params)), projective(params.K(), frobenius_gl(params))});
}

bool fin_in_psl(const FieldParams& params, const FinMat& g) {
    return params.is_dth_power_in_K(fin_det(params.K(), g.m));
}

TransitivityResult check_transitivity(const FiniteField& K, const std::vector<FinMat>& group,
                                      const std::vector<ConstMatrix>& objects) {
    TransitivityResult res;
    if (objects.empty()) {
        res.transitive = res.free = true;
        return res;
    }
    std::unordered_set<FinMat, FinMatHash> orbit;
    const ConstMatrix& base = objects.front();
    for (const auto& g : group) {
        ConstMatrix img = act_on_subspace(K, g.m, base);
        if (img == base) ++res.stabilizer_size;
        orbit.insert(FinMat{std::move(img), false});
    }
    res.orbit_size = orbit.size();
    std::unordered_set<FinMat, FinMatHash> all;
    for (const auto& o : objects) all.insert(FinMat{o, false});
    res.transitive = orbit.size() == all.size();
    for (const auto& o : orbit) res.transitive = res.transitive && all.count(o);
    res.free = res.stabilizer_size == 1;
    return res;
}

bool verify_simple_transitivity(const FiniteField& K, const std::vector<FinMat>& group,
                                const std::vector<ConstMatrix>& objects) {
    return check_transitivity(K, group, objects).simply_transitive();
}

std::vector<std::uint64_t> maximal_pprime_orders(std::uint64_t p, std::uint64_t q) {
    const std::uint64_t split = (q - 1) * (q - 1), singer = q * q + q + 1, levi = 2 * (q * q - 1);
    if (p == 2) return {3 * split, 3 * singer};
    if (p == 3) return {2 * split, singer, levi};
    return {6 * split, 3 * singer, levi};
}

}  // namespace singerlat
