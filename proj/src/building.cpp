#include "singerlat/building.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"
#include "singerlat/error.hpp"

namespace singerlat {

namespace {

// Elements of K[t]/(t^N) as dense coefficient vectors of length N.
using Trunc = std::vector<Elem>;

int tval(const Trunc& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) return static_cast<int>(i);
    return static_cast<int>(a.size());
}

Trunc tmul(const FiniteField& K, const Trunc& a, const Trunc& b) {
    const std::size_t n = a.size();
    Trunc out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (b[j] != 0) out[i + j] = K.add(out[i + j], K.mul(a[i], b[j]));
    }
    return out;
}

// a / t^e with the unknown top coefficients set to zero.
Trunc tshift_down(const Trunc& a, int e) {
    Trunc out(a.size(), 0);
    for (std::size_t i = static_cast<std::size_t>(e); i < a.size(); ++i) out[i - e] = a[i];
    return out;
}

Trunc tunit_inverse(const FiniteField& K, const Trunc& u) {
    const std::size_t n = u.size();
    Trunc inv(n, 0);
    const Elem c0 = K.inv(u[0]);
    inv[0] = c0;
    for (std::size_t k = 1; k < n; ++k) {
        Elem s = 0;
        for (std::size_t j = 1; j <= k; ++j)
            if (u[j] != 0 && inv[k - j] != 0) s = K.add(s, K.mul(u[j], inv[k - j]));
        inv[k] = K.neg(K.mul(s, c0));
    }
    return inv;
}

// col_c -= f * col_p
void column_axpy(const FiniteField& K, std::vector<std::vector<Trunc>>& cols, std::size_t c, const Trunc& f,
                 std::size_t p) {
    for (std::size_t r = 0; r < cols[c].size(); ++r) {
        const Trunc prod = tmul(K, f, cols[p][r]);
        for (std::size_t k = 0; k < prod.size(); ++k)
            if (prod[k] != 0) cols[c][r][k] = K.sub(cols[c][r][k], prod[k]);
    }
}

Series poly_series(const FiniteField& K, const std::vector<Elem>& c) { return Series::from_coeffs(K, 0, c); }

}  // namespace

int Vertex::depth() const { return 1 + (exps_.empty() ? 0 : *std::max_element(exps_.begin(), exps_.end())); }

SeriesMatrix Vertex::matrix(const FiniteField& K) const {
    SeriesMatrix m(d_, d_, Series(K));
    for (unsigned i = 0; i < d_; ++i) {
        m(i, i) = Series::monomial(K, 1, exps_[i]);
        for (unsigned j = i + 1; j < d_; ++j) m(i, j) = poly_series(K, off_[i * d_ + j]);
    }
    return m;
}

std::string Vertex::to_string() const {
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < d_; ++i) {
        if (i) os << "; ";
        for (unsigned j = 0; j < d_; ++j) {
            if (j) os << ", ";
            if (j < i) {
                os << "0";
            } else if (j == i) {
                os << "t^" << exps_[i];
            } else {
                const auto& c = off_[i * d_ + j];
                bool any = false;
                for (std::size_t k = 0; k < c.size(); ++k)
                    if (c[k] != 0) {
                        if (any) os << "+";
                        os << c[k] << "t^" << k;
                        any = true;
                    }
                if (!any) os << "0";
            }
        }
    }
    os << "]";
    return os.str();
}

bool Vertex::operator<(const Vertex& o) const {
    if (d_ != o.d_) return d_ < o.d_;
    if (exps_ != o.exps_) return exps_ < o.exps_;
    return off_ < o.off_;
}

Vertex Vertex::from_hermite(unsigned d, std::vector<int> exps, std::vector<std::vector<Elem>> off) {
    Vertex v;
    v.d_ = d;
    v.exps_ = std::move(exps);
    v.off_ = std::move(off);
    v.off_.resize(static_cast<std::size_t>(d) * d);
    int sum = 0;
    for (unsigned i = 0; i < d; ++i) {
        sum += v.exps_[i];
        for (unsigned j = 0; j < d; ++j) {
            auto& c = v.off_[i * d + j];
            if (j <= i) c.clear();
            else c.resize(static_cast<std::size_t>(v.exps_[i]), 0);
        }
    }
    v.type_ = static_cast<unsigned>(sum % static_cast<int>(d));
    std::size_t h = 0x84222325cbf29ce4ULL ^ d;
    auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (int e : v.exps_) mix(static_cast<std::size_t>(e));
    for (const auto& c : v.off_)
        for (Elem e : c) mix(e);
    v.hash_ = h;
    return v;
}

Vertex canonicalize(const FiniteField& K, const SeriesMatrix& m) {
    const std::size_t d = m.rows(), ncols = m.cols();
    if (d == 0 || ncols < d) throw Error(ErrorCode::InvalidArgument, "need a d x m matrix with m >= d");
    int v = Series::kExact;
    bool exact = true;
    for (const auto& s : m.data()) {
        if (!s.is_zero()) v = std::min(v, s.valuation());
        exact = exact && s.is_exact();
    }
    if (v == Series::kExact) {
        if (exact) throw Error(ErrorCode::Singular, "zero matrix");
        throw Error(ErrorCode::PrecisionExhausted, "matrix vanishes in its window");
    }
    // Working precision N after the homothety by t^-v.
    int n_prec;
    if (exact) {
        int maxdeg = 0;
        for (const auto& s : m.data())
            if (!s.is_zero()) maxdeg = std::max(maxdeg, s.degree() - v);
        n_prec = static_cast<int>(d) * maxdeg + 1;
    } else {
        n_prec = min_absolute_precision(m) - v;
    }
    if (n_prec <= 0) throw Error(ErrorCode::PrecisionExhausted, "no coefficients in the window");
    const std::size_t N = static_cast<std::size_t>(n_prec);
    std::vector<std::vector<Trunc>> cols(ncols, std::vector<Trunc>(d, Trunc(N, 0)));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < ncols; ++c) {
            const Series& s = m(r, c);
            if (s.is_zero()) continue;
            const auto& cs = s.raw_coeffs();
            for (std::size_t k = 0; k < cs.size(); ++k) {
                const int e = s.valuation() - v + static_cast<int>(k);
                if (e < n_prec) cols[c][r][e] = cs[k];
            }
        }
    std::vector<bool> active(ncols, true);
    std::vector<std::size_t> pivot(d);
    std::vector<int> exps(d);
    int sum = 0;
    for (std::size_t i = d; i-- > 0;) {
        std::size_t p = ncols;
        int best = n_prec;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (!active[c]) continue;
            const int val = tval(cols[c][i]);
            if (val < best) {
                best = val;
                p = c;
            }
        }
        if (p == ncols) {
            if (exact) throw Error(ErrorCode::Singular, "matrix has rank below d");
            throw Error(ErrorCode::PrecisionExhausted, "pivot vanishes in the window");
        }
        const Trunc unit_inv = tunit_inverse(K, tshift_down(cols[p][i], best));
        for (std::size_t r = 0; r < d; ++r) cols[p][r] = tmul(K, cols[p][r], unit_inv);
        for (std::size_t c = 0; c < ncols; ++c) {
            if (!active[c] || c == p) continue;
            if (tval(cols[c][i]) >= n_prec) continue;
            column_axpy(K, cols, c, tshift_down(cols[c][i], best), p);
        }
        active[p] = false;
        pivot[i] = p;
        exps[i] = best;
        sum += best;
    }
    if (sum >= n_prec) throw Error(ErrorCode::PrecisionExhausted, "lattice index exceeds the window");
    // Hermite columns and reduction of off-diagonal entries below the pivot degree.
    std::vector<std::vector<Trunc>> h(d);
    for (std::size_t i = 0; i < d; ++i) h[i] = cols[pivot[i]];
    for (std::size_t i = d; i-- > 0;)
        for (std::size_t j = i + 1; j < d; ++j) {
            if (tval(h[j][i]) >= n_prec) continue;
            Trunc f = tshift_down(h[j][i], exps[i]);
            if (tval(f) >= n_prec) continue;
            for (std::size_t r = 0; r <= i; ++r) {
                const Trunc prod = tmul(K, f, h[i][r]);
                for (std::size_t k = 0; k < N; ++k)
                    if (prod[k] != 0) h[j][r][k] = K.sub(h[j][r][k], prod[k]);
            }
        }
    std::vector<std::vector<Elem>> off(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) off[i * d + j].assign(h[j][i].begin(), h[j][i].begin() + exps[i]);
    return Vertex::from_hermite(static_cast<unsigned>(d), std::move(exps), std::move(off));
}

Vertex standard_vertex(const FiniteField& K, unsigned d, unsigned i) {
    std::vector<int> exps(d, 0);
    for (unsigned k = 0; k < i % d; ++k) exps[k] = 1;
    (void)K;
    return Vertex::from_hermite(d, std::move(exps), {});
}

std::vector<Neighbor> neighbors_with_subspaces(const FiniteField& K, const Vertex& v) {
    const unsigned d = v.dim();
    const SeriesMatrix mv = v.matrix(K);
    std::vector<Neighbor> out;
    for (unsigned k = d - 1; k >= 1; --k) {
        for (const auto& w : subspaces(K, d, k)) {
            // Columns: a basis of W, then t e_j for the non-pivot coordinates.
            SeriesMatrix b(d, d, Series(K));
            std::vector<bool> is_pivot(d, false);
            for (unsigned r = 0; r < k; ++r) {
                for (unsigned c = 0; c < d; ++c) {
                    if (w(r, c) != 0) b(c, r) = Series::constant(K, w(r, c));
                }
                for (unsigned c = 0; c < d; ++c)
                    if (w(r, c) != 0) {
                        is_pivot[c] = true;
                        break;
                    }
            }
            unsigned col = k;
            for (unsigned c = 0; c < d; ++c)
                if (!is_pivot[c]) b(c, col++) = Series::monomial(K, 1, 1);
            out.push_back(Neighbor{canonicalize(K, mv * b), w, d - k});
        }
        if (k == 1) break;
    }
    return out;
}

std::vector<Vertex> neighbors(const FiniteField& K, const Vertex& v) {
    std::vector<Vertex> out;
    for (auto& n : neighbors_with_subspaces(K, v)) out.push_back(std::move(n.vertex));
    return out;
}

std::size_t neighbor_count(unsigned d, std::uint64_t q) {
    std::size_t n = 0;
    for (unsigned i = 1; i < d; ++i) n += gaussian_binomial(d, i, q);
    return n;
}

namespace {

const FiniteField& matrix_field(const SeriesMatrix& m) {
    for (const auto& s : m.data())
        if (s.field()) return *s.field();
    throw Error(ErrorCode::InvalidArgument, "matrix without a field");
}

}  // namespace

Vertex act(const ProjMat& g, const Vertex& v) {
    const FiniteField& K = matrix_field(g.matrix());
    return canonicalize(K, g.matrix() * v.matrix(K));
}

Vertex act(const GroupElem& g, const Vertex& v) {
    CachedAction a(g);
    return a.apply(v);
}

unsigned type_shift(const ProjMat& g) { return static_cast<unsigned>(g.type_shift()); }

CachedAction::CachedAction(GroupElem g) : g_(std::move(g)) {}

void CachedAction::refresh(int prec) {
    prec_ = prec;
    m_ = ProjMat(psi(g_.rep(), prec)).matrix();
}

Vertex CachedAction::apply(const Vertex& v) {
    const Context& ctx = g_.context();
    if (prec_ == 0) refresh(ctx.precision());
    while (true) {
        try {
            return canonicalize(ctx.K(), m_ * v.matrix(ctx.K()));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::PrecisionExhausted || prec_ >= ctx.max_precision()) throw;
            refresh(std::min(2 * prec_, ctx.max_precision()));
        }
    }
}

unsigned CachedAction::type_shift() {
    const Context& ctx = g_.context();
    if (prec_ == 0) refresh(ctx.precision());
    return static_cast<unsigned>(ProjMat(m_).type_shift());
}

std::optional<std::size_t> Ball::find(const Vertex& v) const {
    auto it = index.find(v);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> Ball::of_type(unsigned type) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].type() == type) out.push_back(i);
    return out;
}

Ball ball(const FiniteField& K, const Vertex& root, unsigned radius, std::size_t cap) {
    Ball b;
    b.root = root;
    b.radius = radius;
    b.vertices.push_back(root);
    b.distance.push_back(0);
    b.index.emplace(root, 0);
    std::vector<std::vector<std::size_t>> adj(1);
    for (std::size_t i = 0; i < b.vertices.size(); ++i) {
        const unsigned dist = b.distance[i];
        for (auto& n : neighbors(K, b.vertices[i])) {
            auto it = b.index.find(n);
            std::size_t j;
            if (it != b.index.end()) {
                j = it->second;
            } else {
                if (dist == radius) continue;
                if (b.vertices.size() >= cap) throw Error(ErrorCode::SizeCapExceeded, "ball exceeds the vertex cap");
                j = b.vertices.size();
                b.index.emplace(n, j);
                b.vertices.push_back(std::move(n));
                b.distance.push_back(dist + 1);
                adj.emplace_back();
            }
            adj[i].push_back(j);
        }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    b.adjacency = std::move(adj);
    return b;
}

FinMat reduce_mod_t(const ProjMat& g) {
    // ProjMat entries have minimal valuation 0, so g is integral and primitive.
    if (g.det_valuation() != 0) throw Error(ErrorCode::NotInStabilizer, "element moves the standard vertex");
    const std::size_t d = g.dim();
    const FiniteField* K = nullptr;
    for (const auto& s : g.matrix().data())
        if (s.field()) K = s.field();
    ConstMatrix m(d, d, 0);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            const Series& s = g.matrix()(r, c);
            m(r, c) = s.is_zero() || s.valuation() > 0 ? 0 : s.coeff(0);
        }
    return fin_normalize(*K, FinMat{m, true});
}

std::string ball_to_json(const Ball& b, const FieldParams& params, const std::vector<std::size_t>* orbit) {
    using nlohmann::json;
    json j;
    j["schema"] = "singerlat.ball";
    j["schema_version"] = 1;
    j["params"] = {{"p", params.p()}, {"a", params.a()}, {"d", params.d()}, {"q", params.q()}};
    j["radius"] = b.radius;
    json verts = json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Vertex& v = b.vertices[i];
        json off = json::array();
        for (unsigned r = 0; r < v.dim(); ++r)
            for (unsigned c = r + 1; c < v.dim(); ++c) off.push_back({{"row", r}, {"col", c}, {"coeffs", v.entry(r, c)}});
        json rec = {{"id", i}, {"type", v.type()}, {"distance", b.distance[i]}, {"exponents", v.exponents()},
                    {"entries", off}};
        if (orbit) rec["orbit"] = (*orbit)[i];
        verts.push_back(rec);
    }
    j["vertices"] = verts;
    json edges = json::array();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t k : b.adjacency[i])
            if (i < k) edges.push_back({i, k});
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

std::string ball_to_dot(const Ball& b, const std::vector<std::size_t>* orbit) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    std::ostringstream os;
    os << "graph ball {\n  node [style=filled, fontsize=10];\n";
    for (std::size_t i = 0; i < b.size(); ++i) {
        const std::size_t colour = orbit ? (*orbit)[i] : b.vertices[i].type();
        os << "  v" << i << " [label=\"" << i << " t" << b.vertices[i].type() << "\", fillcolor=\"" << palette[colour % 10]
           << "\"";
        if (orbit) os << ", orbit=" << (*orbit)[i];
        os << "];\n";
    }
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t k : b.adjacency[i])
            if (i < k) os << "  v" << i << " -- v" << k << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace singerlat
