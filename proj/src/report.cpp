#include "singerlat/report.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "singerlat/error.hpp"

namespace singerlat {

using nlohmann::json;

FieldParams RunConfig::field() const {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < a; ++i) q *= p;
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "a must be positive");
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "d must be at least 2");
    // Checks the size cap before the primality of p.
    const FieldParams fp = FieldParams::from_q(q, d, size_cap);
    if (fp.p() != p) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    return fp;
}

SearchConfig RunConfig::search() const {
    SearchConfig s;
    s.radius = radius;
    s.slack = slack;
    s.word_bound = word_bound;
    s.ball_cap = ball_cap;
    return s;
}

json RunConfig::to_json() const {
    return json{{"p", p},
                {"a", a},
                {"d", d},
                {"precision", precision},
                {"radius", radius},
                {"slack", slack},
                {"word_bound", word_bound},
                {"ball_cap", ball_cap},
                {"size_cap", size_cap},
                {"seed", seed}};
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Unverified: return "unverified";
        case Status::Info: return "info";
    }
    return "?";
}

bool Report::ok() const { return first_failure() == nullptr; }

const Claim* Report::first_failure() const {
    for (const auto& c : claims)
        if (c.status == Status::Fail) return &c;
    return nullptr;
}

std::string rational_string(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

CheckResult check_field_axioms(const FieldParams& fp, std::uint64_t exhaustive_limit, std::uint64_t seed) {
    const FiniteField& E = fp.E();
    const FiniteField& K = fp.K();
    const std::uint32_t n = E.order();
    std::vector<Elem> frob(n), nrm(n), tr(n);
    for (Elem x = 0; x < n; ++x) {
        frob[x] = fp.frobenius(x);
        nrm[x] = fp.norm(x);
        tr[x] = fp.trace(x);
    }
    CheckResult res;
    std::uint64_t pairs = 0;
    auto check = [&](Elem x, Elem y) {
        ++pairs;
        const Elem s = E.add(x, y), m = E.mul(x, y);
        return frob[s] == E.add(frob[x], frob[y]) && frob[m] == E.mul(frob[x], frob[y]) &&
               nrm[m] == K.mul(nrm[x], nrm[y]) && tr[s] == K.add(tr[x], tr[y]);
    };
    const bool exhaustive = n <= exhaustive_limit;
    if (exhaustive) {
        for (Elem x = 0; x < n && res.ok; ++x)
            for (Elem y = 0; y < n; ++y)
                if (!check(x, y)) {
                    res.ok = false;
                    break;
                }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Elem> pick(0, n - 1);
        for (int i = 0; i < 200000 && res.ok; ++i) res.ok = check(pick(rng), pick(rng));
    }
    // Orbit of sigma and the images and fibres of N and T.
    std::vector<std::uint64_t> fibre(K.order(), 0);
    std::vector<bool> hit(K.order(), false);
    for (Elem x = 0; x < n; ++x) {
        Elem y = x;
        for (unsigned k = 0; k < fp.d(); ++k) y = frob[y];
        res.ok = res.ok && y == x && nrm[x] < K.order() && tr[x] < K.order();
        if (nrm[x] < K.order()) ++fibre[nrm[x]];
        if (tr[x] < K.order()) hit[tr[x]] = true;
    }
    const bool onto = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    bool fibres = true;
    for (Elem c = 1; c < K.order(); ++c) fibres = fibres && fibre[c] == fp.singer_order();
    res.ok = res.ok && onto && fibres;
    res.detail = json{{"pairs", pairs}, {"exhaustive", exhaustive}, {"trace_onto", onto}, {"norm_fibres_equal", fibres}};
    return res;
}

CheckResult check_norm_equation(const Context& ctx, int prec) {
    const FiniteField& K = ctx.K();
    const Series x = ctx.X().truncate(prec);
    const Series n = series_norm(ctx.params(), x);
    const Series target = Series::from_coeffs(K, 0, {1, 1}).with_field(ctx.E());
    CheckResult res;
    res.ok = (n - target).truncate(prec).is_zero() && x.coeff(0) == 1;
    res.detail = json{{"precision", prec}, {"x1", x.coeff(1)}};
    return res;
}

CheckResult check_det_identity(const Context& ctx, std::uint64_t exhaustive_limit, std::uint64_t seed) {
    const FieldParams& fp = ctx.params();
    const FiniteField& K = ctx.K();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> coef(0, K.order() - 1), unit(1, K.order() - 1);
    std::uniform_int_distribution<int> val(-2, 2);
    std::vector<std::pair<Elem, unsigned>> cases;
    const bool exhaustive = fp.ext_order() <= exhaustive_limit;
    if (exhaustive) {
        for (std::uint32_t m = 0; m + 1 < fp.ext_order(); ++m)
            for (unsigned k = 0; k < fp.d(); ++k) cases.emplace_back(ctx.E().exp(m), k);
    } else {
        std::uniform_int_distribution<std::uint32_t> pick(0, fp.ext_order() - 2);
        for (int i = 0; i < 64; ++i) cases.emplace_back(ctx.E().exp(pick(rng)), static_cast<unsigned>(i % fp.d()));
    }
    CheckResult res;
    std::uint64_t checked = 0;
    for (auto [a, k] : cases) {
        const SeriesMatrix m = psi(AlgElem::h(ctx, a, k));
        for (int z_i = 0; z_i < 3; ++z_i) {
            const Series z = Series::from_coeffs(K, val(rng), {unit(rng), coef(rng), coef(rng)});
            const Series direct = determinant(scale(m, z), 4 * ctx.precision());
            res.ok = res.ok && direct.equals_to_precision(det_h_formula(ctx, a, k, z));
            ++checked;
        }
    }
    res.detail = json{{"cases", cases.size()}, {"exhaustive", exhaustive}, {"determinants", checked}};
    return res;
}

CheckResult check_h_structure(const Context& ctx) {
    const FieldParams& fp = ctx.params();
    const auto reps = h_representatives(fp);
    CheckResult res;
    // Ad(a tau^j) Ad(b tau^i) = Ad(a sigma^j(b) tau^(i+j)), with tau^d = 1 + Y central.
    std::vector<GroupElem> elems;
    for (auto [a, k] : reps) elems.push_back(GroupElem::h(ctx, a, k));
    std::uint64_t products = 0;
    const bool exhaustive = reps.size() * reps.size() <= 40000;
    std::mt19937_64 rng(fp.q() * 131 + fp.d());
    auto check_pair = [&](std::size_t x, std::size_t y) {
        auto [a, j] = reps[x];
        auto [b, i] = reps[y];
        const GroupElem expect = GroupElem::h(ctx, fp.E().mul(a, fp.frobenius(b, j)), (i + j) % fp.d());
        ++products;
        return elems[x] * elems[y] == expect;
    };
    if (exhaustive) {
        for (std::size_t x = 0; x < reps.size() && res.ok; ++x)
            for (std::size_t y = 0; y < reps.size() && res.ok; ++y) res.ok = check_pair(x, y);
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
        for (int t = 0; t < 20000 && res.ok; ++t) res.ok = check_pair(pick(rng), pick(rng));
    }
    const auto closure = group_closure(ctx, h_generators(ctx).elements());
    const bool order_ok = closure.size() == std::uint64_t{fp.d()} * fp.singer_order();
    std::unordered_set<GroupElem, GroupElemHash> all(elems.begin(), elems.end());
    bool same = all.size() == closure.size();
    for (const auto& g : closure) same = same && all.count(g);
    bool trivial = true;
    std::uint64_t rejected = 0;
    for (std::size_t t = 0; t < reps.size(); ++t) {
        if (elems[t].is_identity()) continue;
        const bool in = in_gamma(AlgElem::h(ctx, reps[t].first, reps[t].second)).value;
        trivial = trivial && !in;
        rejected += !in;
    }
    res.ok = res.ok && order_ok && same && trivial;
    res.detail = json{{"order", closure.size()},
                      {"products", products},
                      {"exhaustive", exhaustive},
                      {"closure_matches_representatives", same},
                      {"nontrivial_rejected_by_gamma", rejected}};
    return res;
}

CheckResult check_h_psl(const Context& ctx) {
    const FieldParams& fp = ctx.params();
    std::uint64_t count = 0, agree = 0, total = 0;
    for (auto [a, k] : h_representatives(fp)) {
        const bool m = psl_member(GroupElem::h(ctx, a, k));
        count += m;
        agree += m == h_in_psl(fp, a, k);
        ++total;
    }
    CheckResult res;
    const std::uint64_t formula = n_psl_formula(fp);
    const std::uint64_t index = h_psl_index(fp);
    res.ok = agree == total && count == formula && count * index == total;
    res.detail = json{{"h_order", total}, {"h_cap_psl", count}, {"formula", formula}, {"index", index},
                      {"criterion_agrees", agree == total}};
    return res;
}

CheckResult check_singer(const FieldParams& fp) {
    const FiniteField& K = fp.K();
    const auto s = singer_pgl(fp);
    const auto n = normalizer_singer(fp);
    const bool points = verify_simple_transitivity(K, s, subspaces(K, fp.d(), 1));
    const bool hyper = verify_simple_transitivity(K, s, subspaces(K, fp.d(), fp.d() - 1));
    CheckResult res;
    res.ok = points && hyper && s.size() == fp.singer_order() && n.size() == std::uint64_t{fp.d()} * fp.singer_order();
    res.detail = json{{"singer_order", s.size()}, {"normalizer_order", n.size()}, {"points", points},
                      {"hyperplanes", hyper}};
    return res;
}

namespace {

Claim from_check(std::string id, std::string summary, const CheckResult& c) {
    return Claim{std::move(id), c.ok ? Status::Pass : Status::Fail, std::move(summary), c.detail};
}

json orbit_json(const OrbitReport& r) {
    json types = json::array();
    for (const auto& t : r.types)
        types.push_back(json{{"type", t.type},
                             {"vertices", t.vertices},
                             {"orbits", t.orbits},
                             {"region_size", t.region_size},
                             {"stabilizer_order", t.stabilizer_order}});
    return json{{"radius", r.radius}, {"slack", r.slack}, {"word_bound", r.word_bound}, {"precision", r.precision},
                {"types", types}};
}

bool same_elements(const std::vector<GroupElem>& a, const std::vector<GroupElem>& b) {
    std::unordered_set<GroupElem, GroupElemHash> sa(a.begin(), a.end());
    if (sa.size() != b.size()) return false;
    return std::all_of(b.begin(), b.end(), [&](const GroupElem& g) { return sa.count(g) > 0; });
}

// Greedy generating set of a finite group given as an element list.
std::vector<GroupElem> generators_of(const Context& ctx, const std::vector<GroupElem>& elems) {
    std::vector<GroupElem> gens;
    std::unordered_set<GroupElem, GroupElemHash> span{GroupElem::identity(ctx)};
    for (const auto& g : elems) {
        if (span.count(g)) continue;
        gens.push_back(g);
        const auto cl = group_closure(ctx, gens);
        span = std::unordered_set<GroupElem, GroupElemHash>(cl.begin(), cl.end());
    }
    return gens;
}

void add_building_claims(const Context& ctx, Report& rep) {
    const FieldParams& fp = ctx.params();
    const FiniteField& K = ctx.K();
    const unsigned d = fp.d();
    const Vertex v0 = standard_vertex(K, d, 0);
    std::uint64_t expected = 0;
    for (unsigned i = 1; i < d; ++i) expected += gaussian_binomial(d, i, fp.q());
    const auto nb = neighbors(K, v0);
    rep.claims.push_back({"building.neighbor_count", nb.size() == expected ? Status::Pass : Status::Fail,
                          "neighbours of a vertex match the Gaussian binomial sum",
                          json{{"count", nb.size()}, {"expected", expected}}});

    bool fixes = true;
    std::unordered_set<FinMat, FinMatHash> image;
    for (auto [a, k] : h_representatives(fp)) {
        const ProjMat g = h_element(ctx, a, k);
        fixes = fixes && act(g, v0) == v0;
        image.insert(reduce_mod_t(g));
    }
    const auto norm = normalizer_singer(fp);
    bool image_ok = image.size() == norm.size();
    for (const auto& g : norm) image_ok = image_ok && image.count(g);
    rep.claims.push_back({"building.h_fixes_v0", fixes ? Status::Pass : Status::Fail,
                          "every element of H fixes v0", json{{"elements", fp.d() * fp.singer_order()}}});
    rep.claims.push_back({"building.levi_image", image_ok ? Status::Pass : Status::Fail,
                          "reduction mod t maps H onto the normaliser of a Singer cycle in PGL_d(q)",
                          json{{"image_order", image.size()}, {"normalizer_order", norm.size()}}});
}

void add_lattice_claims(const Context& ctx, const RunConfig& cfg, Report& rep) {
    const FieldParams& fp = ctx.params();
    const unsigned d = fp.d();
    const SearchConfig search = cfg.search();
    const std::uint64_t sorder = fp.singer_order();
    const std::vector<std::string> dependent = {
        "lattgrp.conjugators",           "lattgrp.subgroup_orders",      "lattgrp.type_transitivity.gamma0_prime",
        "lattgrp.type_transitivity.gamma0", "lattgrp.stabilizer.gamma0_prime", "lattgrp.stabilizer.gamma0",
        "lattgrp.covolume",              "lattgrp.psl_cases",            "lattgrp.cocompactness"};

    GammaDiscovery disc;
    try {
        disc = discover_gamma_gens(ctx, search);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchExhausted) throw;
        rep.claims.push_back({"lattgrp.gamma_discovery", Status::Unverified,
                              "candidate family did not produce a vertex-transitive set", json{{"error", e.what()}}});
        for (const auto& id : dependent)
            rep.claims.push_back({id, Status::Unverified, "depends on Gamma generators", json::object()});
        return;
    }
    json gens = json::array();
    for (const auto& g : disc.gens.gens) gens.push_back(json{{"label", g.label}, {"provenance", g.provenance}});
    rep.claims.push_back({"lattgrp.gamma_discovery", disc.transitive && disc.free ? Status::Pass : Status::Fail,
                          "Gamma generators act simply transitively on the ball around v0",
                          json{{"candidates", disc.candidates},
                               {"norm_admissible", disc.norm_admissible},
                               {"generators", gens},
                               {"radius", disc.radius},
                               {"ball_size", disc.ball_size},
                               {"transitive", disc.transitive},
                               {"free", disc.free},
                               {"membership_precision", disc.gens.precision == Series::kExact
                                                            ? json("exact")
                                                            : json(disc.gens.precision)}}});

    Sublattices sub;
    try {
        sub = build_sublattices(ctx, disc.gens, cfg.word_bound);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::WordSearchExhausted) throw;
        rep.claims.push_back({"lattgrp.conjugators", Status::Fail, "no conjugator words within the bound",
                              json{{"error", e.what()}}});
        return;
    }
    bool conj_ok = true;
    json words = json::array();
    for (unsigned i = 0; i < d; ++i) {
        conj_ok = conj_ok && act(sub.conjugators[i], sub.standard[0]) == sub.standard[i] &&
                  to_projmat(sub.conjugators[i]).type_shift() == static_cast<int>(i);
        words.push_back(sub.conjugator_words[i]);
    }
    rep.claims.push_back({"lattgrp.conjugators", conj_ok ? Status::Pass : Status::Fail,
                          "conjugators g_i map v0 to v_i with type shift i", json{{"words", words}}});

    bool orders_ok = true, fixes = true;
    json orders = json::array();
    for (unsigned i = 0; i < d; ++i) {
        orders_ok = orders_ok && sub.S[i].size() == sorder && sub.N[i].size() == d * sorder;
        for (const auto& g : sub.N[i]) fixes = fixes && act(g, sub.standard[i]) == sub.standard[i];
        orders.push_back(json{{"S", sub.S[i].size()}, {"N", sub.N[i].size()}});
    }
    rep.claims.push_back({"lattgrp.subgroup_orders", orders_ok && fixes ? Status::Pass : Status::Fail,
                          "|S_i| = (q^d-1)/(q-1), |N_i| = d |S_i|, and N_i fixes v_i",
                          json{{"orders", orders}, {"fix_v_i", fixes}}});

    const OrbitReport rp = certify_type_transitivity(ctx, sub.gamma0_prime, search);
    const OrbitReport r0 = certify_type_transitivity(ctx, sub.gamma0, search);
    rep.claims.push_back({"lattgrp.type_transitivity.gamma0_prime", rp.transitive() ? Status::Pass : Status::Fail,
                          "Gamma'_0 has one orbit on each type in the certified ball", orbit_json(rp)});
    rep.claims.push_back({"lattgrp.type_transitivity.gamma0", r0.transitive() ? Status::Pass : Status::Fail,
                          "Gamma_0 has one orbit on each type in the certified ball", orbit_json(r0)});
    bool sp = true, s0 = true;
    for (unsigned i = 0; i < d; ++i) {
        sp = sp && same_elements(rp.types[i].stabilizer, sub.S[i]);
        s0 = s0 && same_elements(r0.types[i].stabilizer, sub.N[i]);
    }
    rep.claims.push_back({"lattgrp.stabilizer.gamma0_prime", sp ? Status::Pass : Status::Fail,
                          "stabiliser closure of v_i in Gamma'_0 equals S_i", json{{"word_bound", cfg.word_bound}}});
    rep.claims.push_back({"lattgrp.stabilizer.gamma0", s0 ? Status::Pass : Status::Fail,
                          "stabiliser closure of v_i in Gamma_0 equals N_i", json{{"word_bound", cfg.word_bound}}});

    std::vector<std::uint64_t> so, no;
    for (unsigned i = 0; i < d; ++i) {
        so.push_back(rp.types[i].stabilizer_order);
        no.push_back(r0.types[i].stabilizer_order);
    }
    const Rational cp = covolume(so), c0 = covolume(no);
    const Rational ep(d, static_cast<std::int64_t>(sorder)), e0(1, static_cast<std::int64_t>(sorder));
    const bool monotone = (c0 < cp) == (d * sorder > sorder);
    rep.claims.push_back({"lattgrp.covolume", cp == ep && c0 == e0 && monotone ? Status::Pass : Status::Fail,
                          "covolumes are d/|S| for Gamma'_0 and 1/|S| for Gamma_0",
                          json{{"gamma0_prime", rational_string(cp)}, {"gamma0", rational_string(c0)}}});

    const PslIntersection psl = psl_intersection_report(ctx, sub);
    rep.claims.push_back({"lattgrp.psl_cases", psl.matches_case ? Status::Pass : Status::Fail,
                          std::string("PSL intersection follows case ") + psl_case_name(psl.kase),
                          json{{"case", psl_case_name(psl.kase)},
                               {"n_order", psl.n_order},
                               {"n_cap_psl", psl.n_psl_measured},
                               {"formula", psl.n_psl_formula},
                               {"s_in_psl", psl.s_in_psl},
                               {"lambda0_prime_equals_gamma0_prime", psl.lambda0_prime_equal},
                               {"lambda0_equals_gamma0", psl.lambda0_equal},
                               {"h_criterion_agrees", psl.h_formula_agrees}}});

    // Orbit counts of the PSL parts, reported as evidence only.
    if (!psl.lambda0_equal) {
        GenSet lp, l0;
        for (unsigned i = 0; i < d; ++i) {
            std::vector<GroupElem> sps, nps;
            for (const auto& g : sub.S[i])
                if (psl_member(g)) sps.push_back(g);
            for (const auto& g : sub.N[i])
                if (psl_member(g)) nps.push_back(g);
            for (const auto& g : generators_of(ctx, sps)) lp.gens.push_back({"l'" + std::to_string(i), "psl", g});
            for (const auto& g : generators_of(ctx, nps)) l0.gens.push_back({"l" + std::to_string(i), "psl", g});
        }
        SearchConfig small = search;
        small.radius = std::min(search.radius, 1u);
        json counts;
        counts["lambda0"] = orbit_json(certify_type_transitivity(ctx, l0, small));
        if (!psl.lambda0_prime_equal) counts["lambda0_prime"] = orbit_json(certify_type_transitivity(ctx, lp, small));
        rep.claims.push_back({"lattgrp.lambda_orbits", Status::Info,
                              "orbit counts of the groups generated by the PSL parts of S_i and N_i", counts});
    }

    std::vector<std::pair<std::string, std::vector<GroupElem>>> sgroups, ngroups;
    for (unsigned i = 0; i < d; ++i) {
        sgroups.emplace_back("S" + std::to_string(i), sub.S[i]);
        ngroups.emplace_back("N" + std::to_string(i), sub.N[i]);
    }
    const CocompactnessReport cs = cocompactness_report(ctx, sgroups);
    const CocompactnessReport cn = cocompactness_report(ctx, ngroups);
    std::uint64_t non_unipotent = 0;
    for (const auto& f : cn.p_torsion) non_unipotent += !f.unipotent;
    rep.claims.push_back({"lattgrp.cocompactness", cs.p_torsion.empty() && cs.clean() && cn.clean() ? Status::Pass
                                                                                                    : Status::Fail,
                          "no genuinely unipotent torsion in the vertex stabilisers",
                          json{{"gamma0_prime_scanned", cs.scanned},
                               {"gamma0_prime_p_torsion", cs.p_torsion.size()},
                               {"gamma0_scanned", cn.scanned},
                               {"gamma0_p_torsion", cn.p_torsion.size()},
                               {"gamma0_non_unipotent", non_unipotent}}});

    if (d == 3) {
        const PanelCheck pc = panel_transitivity_check(ctx, sub);
        json in_psl = json::array();
        for (bool b : pc.generators_in_psl) in_psl.push_back(b);
        rep.claims.push_back({"lattgrp.panel_transitivity", pc.simply_transitive ? Status::Pass : Status::Fail,
                              "each S_i is simply transitive on both panel types at v_i",
                              json{{"generators_in_psl", in_psl}}});
    }
}

}  // namespace

Report run_verify(const RunConfig& cfg) {
    const FieldParams fp = cfg.field();
    const Context ctx(fp, cfg.precision);
    Report rep;
    rep.config = cfg;
    rep.claims.push_back(from_check("gfield.axioms", "Frobenius automorphism, norm and trace identities",
                                    check_field_axioms(fp, 4096, cfg.seed)));
    rep.claims.push_back(from_check("series.norm_equation", "N(X) = 1 + Y to the working precision",
                                    check_norm_equation(ctx, cfg.precision)));
    rep.claims.push_back(from_check("calg.det_identity", "det(z Psi(a tau^k)) matches its closed form",
                                    check_det_identity(ctx, 512, cfg.seed)));
    rep.claims.push_back(
        from_check("calg.h_structure", "H is closed of order d(q^d-1)/(q-1) and meets Gamma trivially",
                   check_h_structure(ctx)));
    rep.claims.push_back(from_check("calg.h_psl_index", "|H cap PSL| and the index of H cap PSL in H",
                                    check_h_psl(ctx)));
    rep.claims.push_back(from_check("pgeom.singer", "Singer cycle simply transitive on points and hyperplanes",
                                    check_singer(fp)));
    add_building_claims(ctx, rep);

    const EscapeTrace tr = [&] {
        ConstMatrix u(fp.d(), fp.d(), 0);
        for (unsigned i = 0; i < fp.d(); ++i)
            for (unsigned j = i; j < fp.d(); ++j) u(i, j) = 1;
        return p_element_escape(fp.K(), u, 8, cfg.precision);
    }();
    rep.claims.push_back({"lattgrp.escape", tr.monotone ? Status::Pass : Status::Fail,
                          "conjugating a unipotent by the escape diagonal pushes off-diagonal valuations to >= k",
                          json{{"exponents", tr.exponents}, {"valuations", tr.min_vals}, {"steps", 8},
                               {"precision", cfg.precision}}});

    add_lattice_claims(ctx, cfg, rep);
    return rep;
}

json report_to_json(const Report& r) {
    const FieldParams fp = r.config.field();
    json claims = json::array();
    for (const auto& c : r.claims)
        claims.push_back(json{{"id", c.id}, {"status", status_name(c.status)}, {"summary", c.summary},
                              {"certificate", c.certificate}});
    json out{{"schema", "singerlat.report"},
             {"schema_version", kReportSchemaVersion},
             {"config", r.config.to_json()},
             {"params", json{{"p", fp.p()}, {"a", fp.a()}, {"d", fp.d()}, {"q", fp.q()},
                             {"k_modulus", fp.K().modulus()}, {"e_modulus", fp.E().modulus()}}},
             {"claims", claims},
             {"ok", r.ok()}};
    if (const Claim* f = r.first_failure()) out["first_failure"] = f->id;
    return out;
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << fmt::format("verify p={} a={} d={} precision={} radius={} word-bound={}\n", r.config.p, r.config.a,
                      r.config.d, r.config.precision, r.config.radius, r.config.word_bound);
    for (const auto& c : r.claims)
        os << fmt::format("{:<11} {:<40} {}\n", status_name(c.status), c.id, c.summary);
    if (const Claim* f = r.first_failure()) os << "first failure: " << f->id << "\n";
    else os << "all certifiable claims pass\n";
    return os.str();
}

std::vector<std::pair<unsigned, std::uint64_t>> default_grid() {
    return {{3, 2}, {3, 3}, {3, 4}, {3, 5}, {4, 2}, {4, 3}, {5, 2}};
}

std::vector<std::pair<unsigned, std::uint64_t>> parse_grid(const std::string& text) {
    if (text.empty() || text == "default") return default_grid();
    std::vector<std::pair<unsigned, std::uint64_t>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "grid entries are d:q, got " + item);
        try {
            out.emplace_back(static_cast<unsigned>(std::stoul(item.substr(0, colon))), std::stoull(item.substr(colon + 1)));
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidArgument, "grid entries are d:q, got " + item);
        }
    }
    return out;
}

TableRow table_row(const RunConfig& cfg) {
    const FieldParams fp = cfg.field();
    const Context ctx(fp, cfg.precision);
    TableRow row;
    row.d = fp.d();
    row.q = fp.q();
    row.p = fp.p();
    row.s_order = fp.singer_order();
    row.h_order = std::uint64_t{fp.d()} * row.s_order;
    for (auto [a, k] : h_representatives(fp)) row.h_psl += psl_member(GroupElem::h(ctx, a, k));
    row.index = h_psl_index(fp);
    if (fp.d() == 3) {
        const std::int64_t q = fp.q();
        row.cov_gamma1 = Rational(1, 2 * (q - 1) * (q - 1));
    }
    try {
        SearchConfig s = cfg.search();
        s.radius = 1;
        s.slack = 0;
        const auto disc = discover_gamma_gens(ctx, s);
        const auto sub = build_sublattices(ctx, disc.gens, cfg.word_bound);
        std::vector<std::uint64_t> so, no;
        for (unsigned i = 0; i < fp.d(); ++i) {
            so.push_back(sub.S[i].size());
            no.push_back(sub.N[i].size());
        }
        row.cov_prime = covolume(so);
        row.cov0 = covolume(no);
        row.status = "measured";
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchExhausted && e.code() != ErrorCode::WordSearchExhausted) throw;
        row.status = "unverified";
    }
    return row;
}

json table_to_json(const std::vector<TableRow>& rows, const RunConfig& cfg) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j{{"d", r.d}, {"q", r.q}, {"p", r.p}, {"S", r.s_order}, {"H", r.h_order}, {"H_cap_PSL", r.h_psl},
               {"index", r.index}, {"status", r.status}};
        j["covolume_gamma0_prime"] = r.cov_prime ? json(rational_string(*r.cov_prime)) : json(nullptr);
        j["covolume_gamma0"] = r.cov0 ? json(rational_string(*r.cov0)) : json(nullptr);
        if (r.cov_gamma1) {
            j["covolume_gamma1_hypothetical"] = rational_string(*r.cov_gamma1);
            if (r.cov0) j["gamma1_below_gamma0"] = *r.cov_gamma1 < *r.cov0;
        }
        arr.push_back(std::move(j));
    }
    json c = cfg.to_json();
    c.erase("p");
    c.erase("a");
    c.erase("d");
    return json{{"schema", "singerlat.table"}, {"schema_version", kReportSchemaVersion}, {"config", c}, {"rows", arr}};
}

std::string table_to_text(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << fmt::format("{:>2} {:>3} {:>6} {:>6} {:>7} {:>6} {:>10} {:>10} {:>10} {:>7}  {}\n", "d", "q", "|S|", "|H|",
                      "|H^PSL|", "index", "cov(G0')", "cov(G0)", "cov(G1)?", "G1<G0", "status");
    for (const auto& r : rows) {
        const std::string g1 = r.cov_gamma1 ? rational_string(*r.cov_gamma1) : "-";
        const std::string below = r.cov_gamma1 && r.cov0 ? (*r.cov_gamma1 < *r.cov0 ? "yes" : "no") : "-";
        os << fmt::format("{:>2} {:>3} {:>6} {:>6} {:>7} {:>6} {:>10} {:>10} {:>10} {:>7}  {}\n", r.d, r.q, r.s_order,
                          r.h_order, r.h_psl, r.index, r.cov_prime ? rational_string(*r.cov_prime) : "-",
                          r.cov0 ? rational_string(*r.cov0) : "-", g1, below, r.status);
    }
    return os.str();
}

}  // namespace singerlat
