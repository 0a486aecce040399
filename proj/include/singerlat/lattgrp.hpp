#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "singerlat/building.hpp"
#include "singerlat/calg.hpp"

namespace singerlat {

using Rational = boost::rational<std::int64_t>;

inline constexpr unsigned kDefaultWordBound = 8;
inline constexpr std::size_t kDefaultElementCap = 100000;

struct Generator {
    std::string label;       // unique within its set
    std::string provenance;  // how the element was built
    GroupElem elem;
};

struct GenSet {
    std::string name;
    std::vector<Generator> gens;
    int precision = Series::kExact;  // exact certificates carry kExact

    std::vector<GroupElem> elements() const;
    std::size_t size() const { return gens.size(); }
};

// Generators omega and tau of H, and omega alone for the Singer part.
GenSet h_generators(const Context& ctx);
GenSet singer_generators(const Context& ctx);

// All elements of the finite group generated by gens, identity first.
std::vector<GroupElem> group_closure(const Context& ctx, const std::vector<GroupElem>& gens,
                                     std::size_t cap = kDefaultElementCap);
// Order of a torsion element, or SizeCapExceeded.
std::uint64_t element_order(const GroupElem& g, std::uint64_t cap = kDefaultElementCap);

struct SearchConfig {
    unsigned radius = 2;
    unsigned slack = 1;
    unsigned word_bound = kDefaultWordBound;
    std::size_t ball_cap = kDefaultBallCap;
};

struct GammaDiscovery {
    GenSet gens;
    std::size_t candidates = 0;       // u in E^x tried
    std::size_t norm_admissible = 0;  // candidates whose reduced norm is a unit times Y
    unsigned radius = 0;
    std::size_t ball_size = 0;
    bool transitive = false;  // one orbit on ball(v0, radius)
    bool free = false;        // every short stabiliser word of v0 is trivial
};

// Candidates x = u + tau with Nrd(x) = c Y, each right-multiplied by the
// unique element of H that puts it in Gamma. Throws SearchExhausted when
// the family does not act transitively on the ball.
GammaDiscovery discover_gamma_gens(const Context& ctx, const SearchConfig& cfg = {});

struct Sublattices {
    std::vector<Vertex> standard;  // v_0 .. v_{d-1}
    std::vector<GroupElem> conjugators;
    std::vector<std::string> conjugator_words;
    std::vector<std::vector<GroupElem>> S, N;  // element lists of S_i and N_i
    GenSet gamma0_prime;                       // generators of S_0 .. S_{d-1}
    GenSet gamma0;                             // generators of N_0 .. N_{d-1}
};

// Conjugators g_i with g_i v_0 = v_i, walking the chain of standard vertices
// and falling back to breadth-first word search over gamma and its inverses;
// WordSearchExhausted past word_bound.
Sublattices build_sublattices(const Context& ctx, const GenSet& gamma, unsigned word_bound = kDefaultWordBound);

struct TypeOrbit {
    unsigned type = 0;
    std::size_t vertices = 0;  // type-i vertices of ball(v_i, r)
    std::size_t orbits = 0;
    std::size_t region_size = 0;
    std::size_t stabilizer_order = 0;
    std::vector<GroupElem> stabilizer;
};

struct OrbitReport {
    unsigned radius = 0;
    unsigned slack = 0;
    unsigned word_bound = 0;
    int precision = 0;  // largest working precision used by the action
    std::vector<TypeOrbit> types;
    bool transitive() const;
};

// Orbits of gens on the type-i vertices of ball(v_i, r), joining through
// ball(v_i, r + slack); stabilisers of v_i from Schreier words inside
// ball(v_i, r) up to the word bound.
OrbitReport certify_type_transitivity(const Context& ctx, const GenSet& gens, const SearchConfig& cfg = {});

// Vertex orbit partition of ball b under gens (component index per vertex).
std::vector<std::size_t> orbit_partition(const Ball& b, const std::vector<GroupElem>& gens);

// Closure of the Schreier elements fixing root, from words of length at
// most word_bound that stay inside region.
std::vector<GroupElem> stabilizer_closure(const Ball& region, const std::vector<GroupElem>& gens, unsigned word_bound,
                                          std::size_t cap = kDefaultElementCap);

Rational covolume(const std::vector<std::uint64_t>& stabilizer_orders);

// Membership in PSL_d(K((t))): nu(det) = 0 mod d and the unit part of det a
// d-th power. The GroupElem form is exact via the reduced norm.
bool psl_member(const GroupElem& g);
Membership psl_member(const ProjMat& g);
bool det_is_dth_power(const Series& det, unsigned d);

enum class PslCase { OneA, OneB, TwoA, TwoB };
const char* psl_case_name(PslCase c);
PslCase classify_psl_case(const FieldParams& params);

struct PslIntersection {
    PslCase kase = PslCase::OneA;
    std::uint64_t n_order = 0;         // |N_i|
    std::uint64_t n_psl_measured = 0;  // minimum over i of |N_i cap PSL|
    std::uint64_t n_psl_formula = 0;
    bool counts_agree = false;          // every i matches the formula
    bool s_in_psl = false;              // every S_i inside PSL
    bool lambda0_prime_equal = false;   // Lambda'_0 = Gamma'_0
    bool lambda0_equal = false;         // Lambda_0 = Gamma_0
    bool h_formula_agrees = false;      // h_in_psl agrees with psl_member on H
    bool matches_case = false;
};

std::uint64_t n_psl_formula(const FieldParams& params);
PslIntersection psl_intersection_report(const Context& ctx, const Sublattices& sub);

struct EscapeTrace {
    std::vector<int> exponents;               // diagonal exponents of g
    std::vector<std::vector<int>> min_vals;   // per step k, valuation of each (i, j), i < j
    bool monotone = false;                    // all off-diagonal valuations >= k at step k
    int vanish_step = -1;                     // first k with every entry beyond the precision
};

// Diagonal g with exponents d-1-i for i < d-1 and the last making the sum 0.
std::vector<int> escape_exponents(unsigned d);
// u upper unitriangular and not the identity, else NotUnipotent.
EscapeTrace p_element_escape(const FiniteField& K, const ConstMatrix& u, unsigned steps, int precision);

struct TorsionFinding {
    std::string where;
    std::uint64_t order = 0;
    bool unipotent = false;  // the p-th power of the representative is a p-th power scalar
};

struct CocompactnessReport {
    std::size_t scanned = 0;
    std::vector<TorsionFinding> p_torsion;
    bool clean() const;  // no genuinely unipotent element
};

// Scans finite groups (vertex stabilisers) for elements of order divisible by p.
CocompactnessReport cocompactness_report(const Context& ctx,
                                         const std::vector<std::pair<std::string, std::vector<GroupElem>>>& groups);

struct PanelCheck {
    bool simply_transitive = false;
    std::vector<bool> per_vertex;
    std::vector<bool> generators_in_psl;  // one per S_i generator
};

// Each S_i acts simply transitively on the neighbours of v_i of types i+1 and i-1.
PanelCheck panel_transitivity_check(const Context& ctx, const Sublattices& sub);

}  // namespace singerlat
