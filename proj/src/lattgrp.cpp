#include "singerlat/lattgrp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "singerlat/error.hpp"

namespace singerlat {

std::vector<GroupElem> GenSet::elements() const {
    std::vector<GroupElem> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(g.elem);
    return out;
}

GenSet h_generators(const Context& ctx) {
    GenSet s;
    s.name = "H";
    s.gens.push_back({"s", "h(omega,0)", GroupElem::h(ctx, ctx.params().omega(), 0)});
    s.gens.push_back({"f", "h(1,1)", GroupElem::h(ctx, 1, 1)});
    return s;
}

GenSet singer_generators(const Context& ctx) {
    GenSet s;
    s.name = "S";
    s.gens.push_back({"s", "h(omega,0)", GroupElem::h(ctx, ctx.params().omega(), 0)});
    return s;
}

std::vector<GroupElem> group_closure(const Context& ctx, const std::vector<GroupElem>& gens, std::size_t cap) {
    std::vector<GroupElem> out{GroupElem::identity(ctx)};
    std::unordered_set<GroupElem, GroupElemHash> seen(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            GroupElem y = out[i] * g;
            if (seen.insert(y).second) {
                if (out.size() >= cap) throw Error(ErrorCode::SizeCapExceeded, "group closure above the cap");
                out.push_back(std::move(y));
            }
        }
    return out;
}

std::uint64_t element_order(const GroupElem& g, std::uint64_t cap) {
    GroupElem x = g;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (x.is_identity()) return k;
        x = x * g;
    }
    throw Error(ErrorCode::SizeCapExceeded, "element order above the cap");
}

namespace {

std::vector<CachedAction> make_actions(const std::vector<GroupElem>& gens, bool with_inverses) {
    std::vector<CachedAction> acts;
    for (const auto& g : gens) acts.emplace_back(g);
    if (with_inverses)
        for (const auto& g : gens) {
            GroupElem gi = g.inverse();
            if (!(gi == g)) acts.emplace_back(std::move(gi));
        }
    return acts;
}

int max_precision(const std::vector<CachedAction>& acts) {
    int p = 0;
    for (const auto& a : acts) p = std::max(p, a.precision());
    return p;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::size_t> partition_with(const Ball& b, std::vector<CachedAction>& acts) {
    UnionFind uf(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (auto& a : acts)
            if (auto j = b.find(a.apply(b.vertices[i]))) uf.unite(i, *j);
    // Relabel components by first appearance.
    std::unordered_map<std::size_t, std::size_t> label;
    std::vector<std::size_t> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        auto [it, fresh] = label.emplace(uf.find(i), label.size());
        out[i] = it->second;
    }
    return out;
}

std::vector<GroupElem> stabilizer_with(const Context& ctx, const Ball& region, std::vector<CachedAction>& acts,
                                       unsigned word_bound, std::size_t cap) {
    std::vector<std::optional<GroupElem>> transversal(region.size());
    std::vector<unsigned> depth(region.size(), 0);
    transversal[0] = GroupElem::identity(ctx);
    std::deque<std::size_t> queue{0};
    std::vector<GroupElem> schreier;
    std::unordered_set<GroupElem, GroupElemHash> seen;
    while (!queue.empty()) {
        const std::size_t w = queue.front();
        queue.pop_front();
        if (depth[w] >= word_bound) continue;
        for (auto& a : acts) {
            const auto j = region.find(a.apply(region.vertices[w]));
            if (!j) continue;
            GroupElem cand = a.element() * *transversal[w];
            if (!transversal[*j]) {
                transversal[*j] = std::move(cand);
                depth[*j] = depth[w] + 1;
                queue.push_back(*j);
            } else if (!(cand == *transversal[*j])) {
                GroupElem s = transversal[*j]->inverse() * cand;
                if (seen.insert(s).second) schreier.push_back(std::move(s));
            }
        }
    }
    return group_closure(ctx, schreier, cap);
}

}  // namespace

std::vector<std::size_t> orbit_partition(const Ball& b, const std::vector<GroupElem>& gens) {
    auto acts = make_actions(gens, false);
    return partition_with(b, acts);
}

std::vector<GroupElem> stabilizer_closure(const Ball& region, const std::vector<GroupElem>& gens, unsigned word_bound,
                                          std::size_t cap) {
    if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "stabiliser closure needs generators");
    auto acts = make_actions(gens, true);
    return stabilizer_with(gens.front().context(), region, acts, word_bound, cap);
}

GammaDiscovery discover_gamma_gens(const Context& ctx, const SearchConfig& cfg) {
    const FieldParams& fp = ctx.params();
    const FiniteField& E = ctx.E();
    GammaDiscovery out;
    out.gens.name = "Gamma";
    out.radius = cfg.radius;
    const auto reps = h_representatives(fp);
    const FiniteField& K = ctx.K();
    const unsigned d = ctx.d();
    const std::size_t n2 = std::size_t{d} * d;
    // Phi(h) is constant on H, so Phi(x h) = Phi(x) Phi(h) keeps the Y-degrees
    // of Phi(x) and Theta(x h) = Theta(x) Phi(h).
    std::vector<ConstMatrix> phi_h;
    phi_h.reserve(reps.size());
    for (auto [a, k] : reps) phi_h.push_back(theta(AlgElem::h(ctx, a, k)));
    // Block unitriangularity of Theta(x) Phi(h), entry by entry.
    auto unitriangular_product = [&](const ConstMatrix& tx, const ConstMatrix& ph) {
        for (std::size_t r = n2; r-- > 0;)
            for (std::size_t c = 0; c < n2; ++c) {
                const std::size_t rb = r / d, cb = c / d;
                if (rb < cb) continue;
                Elem acc = 0;
                for (std::size_t t = 0; t < n2; ++t) acc = K.add(acc, K.mul(tx(r, t), ph(t, c)));
                if (acc != (rb == cb && r == c ? 1u : 0u)) return false;
            }
        return true;
    };
    for (std::uint32_t m = 0; m + 1 < fp.ext_order(); ++m) {
        ++out.candidates;
        const AlgElem x = AlgElem::constant(ctx, E.exp(m)) + AlgElem::tau(ctx);
        const Series n = reduced_norm(x);
        if (n.is_zero() || n.valuation() != 1 || n.degree() != 1) continue;
        ++out.norm_admissible;
        const SeriesMatrix px = phi(x);
        if (!in_gamma_from_phi(px, 0).value) continue;
        const ConstMatrix tx = theta_of_phi(px);
        // H and Gamma meet trivially, so at most one h puts x h in Gamma.
        for (std::size_t t = 0; t < reps.size(); ++t) {
            if (!unitriangular_product(tx, phi_h[t])) continue;
            const auto [a, k] = reps[t];
            const AlgElem y = x * AlgElem::h(ctx, a, k);
            const Membership mem = in_gamma(y);
            if (!mem.value) continue;
            const std::string label = "g" + std::to_string(out.gens.gens.size());
            const std::string prov = "gamma(u=omega^" + std::to_string(m) + ";h=omega^" +
                                     std::to_string(E.log(a)) + " tau^" + std::to_string(k) + ")";
            out.gens.gens.push_back({label, prov, GroupElem::from_alg(y)});
            out.gens.precision = std::min(out.gens.precision, mem.precision);
            break;
        }
    }
    if (out.gens.gens.empty()) throw Error(ErrorCode::SearchExhausted, "no candidate u + tau lies in Gamma up to H");

    const Vertex v0 = standard_vertex(ctx.K(), ctx.d(), 0);
    const Ball region = ball(ctx.K(), v0, cfg.radius + cfg.slack, cfg.ball_cap);
    auto plain = make_actions(out.gens.elements(), false);
    const auto part = partition_with(region, plain);
    out.ball_size = 0;
    out.transitive = true;
    for (std::size_t i = 0; i < region.size(); ++i)
        if (region.distance[i] <= cfg.radius) {
            ++out.ball_size;
            out.transitive = out.transitive && part[i] == part[0];
        }
    auto acts = make_actions(out.gens.elements(), true);
    const Ball inner = ball(ctx.K(), v0, cfg.radius, cfg.ball_cap);
    out.free = stabilizer_with(ctx, inner, acts, cfg.word_bound, kDefaultElementCap).size() == 1;
    if (!out.transitive)
        throw Error(ErrorCode::SearchExhausted, "candidate family is not transitive on the ball around v0");
    return out;
}

Sublattices build_sublattices(const Context& ctx, const GenSet& gamma, unsigned word_bound) {
    const unsigned d = ctx.d();
    const FiniteField& K = ctx.K();
    Sublattices out;
    for (unsigned i = 0; i < d; ++i) out.standard.push_back(standard_vertex(K, d, i));

    std::vector<CachedAction> acts;
    std::vector<std::string> labels;
    for (const auto& g : gamma.gens) {
        acts.emplace_back(g.elem);
        labels.push_back(g.label);
    }
    for (const auto& g : gamma.gens) {
        acts.emplace_back(g.elem.inverse());
        labels.push_back(g.label + "^-1");
    }

    struct State {
        Vertex v;
        GroupElem g;
        std::string word;
        unsigned len;
    };
    std::vector<std::optional<State>> found(d);
    std::unordered_set<Vertex, VertexHash> visited{out.standard[0]};
    std::deque<State> queue{State{out.standard[0], GroupElem::identity(ctx), "1", 0}};
    found[0] = queue.front();
    std::size_t missing = d - 1;
    // Walk the chain v_0, v_1, ...: the type-1 neighbours of g v_0 are g s v_0
    // for generators s, so g_(k+1) = g_k s with s v_0 = g_k^-1 v_(k+1).
    std::unordered_map<Vertex, std::size_t, VertexHash> image_of;
    for (std::size_t s = 0; s < gamma.gens.size(); ++s) image_of.emplace(acts[s].apply(out.standard[0]), s);
    for (unsigned i = 1; i < d; ++i) {
        const State& prev = *found[i - 1];
        const auto it = image_of.find(act(prev.g.inverse(), out.standard[i]));
        if (it == image_of.end()) break;
        const std::size_t s = it->second;
        GroupElem g = prev.g * acts[s].element();
        if (!(act(g, out.standard[0]) == out.standard[i])) break;
        found[i] = State{out.standard[i], std::move(g), prev.len == 0 ? labels[s] : prev.word + "*" + labels[s],
                         prev.len + 1};
        --missing;
    }
    // Breadth-first search over left multiples when the chain walk stops.
    while (!queue.empty() && missing > 0) {
        State st = std::move(queue.front());
        queue.pop_front();
        if (st.len >= word_bound) continue;
        for (std::size_t s = 0; s < acts.size() && missing > 0; ++s) {
            Vertex w = acts[s].apply(st.v);
            if (!visited.insert(w).second) continue;
            State next{w, acts[s].element() * st.g, st.len == 0 ? labels[s] : labels[s] + "*" + st.word, st.len + 1};
            for (unsigned i = 1; i < d; ++i)
                if (!found[i] && w == out.standard[i]) {
                    found[i] = next;
                    --missing;
                }
            queue.push_back(std::move(next));
        }
    }
    if (missing > 0) throw Error(ErrorCode::WordSearchExhausted, "no word maps v0 to every standard vertex");

    const GroupElem s = GroupElem::h(ctx, ctx.params().omega(), 0);
    const GroupElem f = GroupElem::h(ctx, 1, 1);
    out.gamma0_prime.name = "Gamma0'";
    out.gamma0.name = "Gamma0";
    for (unsigned i = 0; i < d; ++i) {
        const GroupElem& g = found[i]->g;
        const GroupElem gi = g.inverse();
        out.conjugators.push_back(g);
        out.conjugator_words.push_back(found[i]->word);
        const std::string prov = "conj(" + found[i]->word + ")";
        const GroupElem si = g * s * gi, fi = g * f * gi;
        out.gamma0_prime.gens.push_back({"s" + std::to_string(i), prov, si});
        out.gamma0.gens.push_back({"s" + std::to_string(i), prov, si});
        out.gamma0.gens.push_back({"f" + std::to_string(i), prov, fi});
        out.S.push_back(group_closure(ctx, {si}));
        out.N.push_back(group_closure(ctx, {si, fi}));
    }
    return out;
}

bool OrbitReport::transitive() const {
    return std::all_of(types.begin(), types.end(), [](const TypeOrbit& t) { return t.orbits == 1; });
}

OrbitReport certify_type_transitivity(const Context& ctx, const GenSet& gens, const SearchConfig& cfg) {
    const unsigned d = ctx.d();
    OrbitReport rep;
    rep.radius = cfg.radius;
    rep.slack = cfg.slack;
    rep.word_bound = cfg.word_bound;
    auto plain = make_actions(gens.elements(), false);
    for (auto& a : plain)
        if (a.type_shift() != 0) throw Error(ErrorCode::InvalidArgument, "generators must preserve types");
    auto with_inv = make_actions(gens.elements(), true);
    for (unsigned i = 0; i < d; ++i) {
        const Ball region = ball(ctx.K(), standard_vertex(ctx.K(), d, i), cfg.radius + cfg.slack, cfg.ball_cap);
        const auto part = partition_with(region, plain);
        TypeOrbit t;
        t.type = i;
        t.region_size = region.size();
        std::unordered_set<std::size_t> comps;
        for (std::size_t k = 0; k < region.size(); ++k)
            if (region.distance[k] <= cfg.radius && region.vertices[k].type() == i) {
                ++t.vertices;
                comps.insert(part[k]);
            }
        t.orbits = comps.size();
        const Ball inner = ball(ctx.K(), region.root, cfg.radius, cfg.ball_cap);
        t.stabilizer = stabilizer_with(ctx, inner, with_inv, cfg.word_bound, kDefaultElementCap);
        t.stabilizer_order = t.stabilizer.size();
        rep.types.push_back(std::move(t));
    }
    rep.precision = std::max(max_precision(plain), max_precision(with_inv));
    return rep;
}

Rational covolume(const std::vector<std::uint64_t>& orders) {
    Rational sum(0);
    for (auto n : orders) {
        if (n == 0) throw Error(ErrorCode::InvalidArgument, "stabiliser orders must be positive");
        sum += Rational(1, static_cast<std::int64_t>(n));
    }
    return sum;
}

bool det_is_dth_power(const Series& det, unsigned d) {
    if (det.is_zero()) throw Error(ErrorCode::PrecisionExhausted, "determinant vanishes in its window");
    const int v = det.valuation();
    if (((v % static_cast<int>(d)) + static_cast<int>(d)) % static_cast<int>(d) != 0) return false;
    Series unit = det.shift(-v);
    // A polynomial has no tail, so its window can end just past the degree.
    if (unit.is_exact()) unit = unit.truncate(unit.degree() + 1);
    return dth_root(unit, d).has_value();
}

bool psl_member(const GroupElem& g) { return det_is_dth_power(reduced_norm(g.rep()), g.context().d()); }

Membership psl_member(const ProjMat& g) {
    const Series det = g.det();
    return Membership{det_is_dth_power(det, static_cast<unsigned>(g.dim())), det.absolute_precision()};
}

const char* psl_case_name(PslCase c) {
    switch (c) {
        case PslCase::OneA: return "1a";
        case PslCase::OneB: return "1b";
        case PslCase::TwoA: return "2a";
        case PslCase::TwoB: return "2b";
    }
    return "?";
}

PslCase classify_psl_case(const FieldParams& params) {
    const bool coprime = std::gcd(params.d(), params.q() - 1) == 1;
    const bool p_divides = params.d() % params.p() == 0;
    if (coprime) return p_divides ? PslCase::OneB : PslCase::OneA;
    return p_divides ? PslCase::TwoB : PslCase::TwoA;
}

std::uint64_t n_psl_formula(const FieldParams& params) {
    const std::uint64_t d = params.d(), q = params.q();
    const std::uint64_t delta = std::gcd<std::uint64_t>(d, q - 1);
    return d / p_part(d, params.p()) * (params.singer_order() / delta);
}

PslIntersection psl_intersection_report(const Context& ctx, const Sublattices& sub) {
    const FieldParams& fp = ctx.params();
    PslIntersection r;
    r.kase = classify_psl_case(fp);
    r.n_psl_formula = n_psl_formula(fp);
    r.n_order = sub.N.empty() ? 0 : sub.N.front().size();
    r.counts_agree = !sub.N.empty();
    r.n_psl_measured = r.n_order;
    r.lambda0_equal = true;
    for (const auto& n : sub.N) {
        std::uint64_t c = 0;
        for (const auto& g : n) c += psl_member(g);
        r.counts_agree = r.counts_agree && c == r.n_psl_formula;
        r.n_psl_measured = std::min(r.n_psl_measured, c);
        r.lambda0_equal = r.lambda0_equal && c == n.size();
    }
    r.s_in_psl = true;
    for (const auto& s : sub.S)
        for (const auto& g : s) r.s_in_psl = r.s_in_psl && psl_member(g);
    r.lambda0_prime_equal = r.s_in_psl;
    r.h_formula_agrees = true;
    for (auto [a, k] : h_representatives(fp))
        r.h_formula_agrees = r.h_formula_agrees && h_in_psl(fp, a, k) == psl_member(GroupElem::h(ctx, a, k));

    const bool proper = r.n_psl_measured < r.n_order;
    switch (r.kase) {
        case PslCase::OneA: r.matches_case = !proper && r.lambda0_equal && r.lambda0_prime_equal; break;
        case PslCase::OneB: r.matches_case = proper && r.lambda0_prime_equal && !r.lambda0_equal; break;
        case PslCase::TwoA:
        case PslCase::TwoB: r.matches_case = proper && !r.s_in_psl && !r.lambda0_equal; break;
    }
    r.matches_case = r.matches_case && r.counts_agree && r.h_formula_agrees;
    return r;
}

std::vector<int> escape_exponents(unsigned d) {
    std::vector<int> a(d, 0);
    int sum = 0;
    for (unsigned i = 0; i + 1 < d; ++i) {
        a[i] = static_cast<int>(d - 1 - i);
        sum += a[i];
    }
    a[d - 1] = -sum;
    return a;
}

EscapeTrace p_element_escape(const FiniteField& K, const ConstMatrix& u, unsigned steps, int precision) {
    const std::size_t d = u.rows();
    bool unitri = u.cols() == d, identity = true;
    for (std::size_t i = 0; i < d && unitri; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) unitri = unitri && u(i, j) == 1;
            if (i > j) unitri = unitri && u(i, j) == 0;
            if (i < j && u(i, j) != 0) identity = false;
        }
    if (!unitri) throw Error(ErrorCode::NotUnipotent, "expected an upper unitriangular matrix");
    if (identity) throw Error(ErrorCode::NotUnipotent, "the identity has no escape");

    EscapeTrace tr;
    tr.exponents = escape_exponents(static_cast<unsigned>(d));
    tr.monotone = true;
    SeriesMatrix um(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) um(i, j) = Series::constant(K, u(i, j));
    for (unsigned k = 1; k <= steps; ++k) {
        SeriesMatrix g(d, d), gi(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const int e = static_cast<int>(k) * tr.exponents[i];
                g(i, j) = i == j ? Series::monomial(K, 1, e) : Series::zero(K);
                gi(i, j) = i == j ? Series::monomial(K, 1, -e) : Series::zero(K);
            }
        const SeriesMatrix c = g * um * gi;
        std::vector<int> vals;
        bool vanished = true;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                const Series e = c(i, j).truncate(precision);
                const int v = e.is_zero() ? precision : e.valuation();
                vals.push_back(v);
                tr.monotone = tr.monotone && v >= static_cast<int>(k);
                vanished = vanished && e.is_zero();
            }
        tr.min_vals.push_back(std::move(vals));
        if (vanished && tr.vanish_step < 0) tr.vanish_step = static_cast<int>(k);
    }
    return tr;
}

bool CocompactnessReport::clean() const {
    return std::none_of(p_torsion.begin(), p_torsion.end(), [](const TorsionFinding& f) { return f.unipotent; });
}

CocompactnessReport cocompactness_report(const Context& ctx,
                                         const std::vector<std::pair<std::string, std::vector<GroupElem>>>& groups) {
    const unsigned p = ctx.params().p();
    CocompactnessReport rep;
    for (const auto& [name, elems] : groups)
        for (const auto& g : elems) {
            ++rep.scanned;
            const std::uint64_t n = element_order(g);
            if (n % p != 0) continue;
            // h has order p in PGL, so h^p is a central scalar c.
            const GroupElem h = g.pow(static_cast<long>(n / p));
            AlgElem c = AlgElem::one(ctx);
            for (unsigned k = 0; k < p; ++k) c = c * h.rep();
            for (unsigned j = 1; j < ctx.d(); ++j)
                if (!c.coeff(j).is_zero()) throw Error(ErrorCode::InvalidArgument, "p-th power is not central");
            const Series scalar = c.coeff(0).with_field(ctx.K());
            rep.p_torsion.push_back({name, n, det_is_dth_power(scalar, p)});
        }
    return rep;
}

PanelCheck panel_transitivity_check(const Context& ctx, const Sublattices& sub) {
    const unsigned d = ctx.d();
    if (d != 3) throw Error(ErrorCode::WrongDimension, "panel check is defined for d = 3");
    PanelCheck res;
    res.simply_transitive = true;
    for (unsigned i = 0; i < d; ++i) {
        std::vector<CachedAction> acts;
        for (const auto& g : sub.S[i]) acts.emplace_back(g);
        const auto nbrs = neighbors_with_subspaces(ctx.K(), sub.standard[i]);
        bool ok = true;
        for (unsigned shift : {1u, d - 1}) {
            std::unordered_set<Vertex, VertexHash> targets;
            for (const auto& n : nbrs)
                if (n.shift == shift) targets.insert(n.vertex);
            const Vertex& base = std::find_if(nbrs.begin(), nbrs.end(), [&](const Neighbor& n) {
                                     return n.shift == shift;
                                 })->vertex;
            std::unordered_set<Vertex, VertexHash> orbit;
            std::size_t fixing = 0;
            for (auto& a : acts) {
                Vertex w = a.apply(base);
                if (w == base) ++fixing;
                orbit.insert(std::move(w));
            }
            ok = ok && fixing == 1 && orbit == targets;
        }
        res.per_vertex.push_back(ok);
        res.simply_transitive = res.simply_transitive && ok;
        res.generators_in_psl.push_back(psl_member(sub.gamma0_prime.gens[i].elem));
    }
    return res;
}

}  // namespace singerlat
