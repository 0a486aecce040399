#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "singerlat/gfield.hpp"
#include "singerlat/matrix.hpp"

namespace singerlat {

inline constexpr std::size_t kDefaultGroupCap = 1000000;

// Matrix over K, optionally taken modulo scalars.
struct FinMat {
    ConstMatrix m;
    bool projective = false;

    bool operator==(const FinMat& o) const { return m == o.m && projective == o.projective; }
};

struct FinMatHash {
    std::size_t operator()(const FinMat& f) const;
};

// Scales so the first nonzero entry (row-major) is 1 when projective.
FinMat fin_normalize(const FiniteField& K, FinMat f);
FinMat fin_mul(const FiniteField& K, const FinMat& a, const FinMat& b);
FinMat fin_identity(std::size_t n, bool projective);
Elem fin_det(const FiniteField& K, const ConstMatrix& m);
FinMat fin_inverse(const FiniteField& K, const FinMat& a);
std::uint64_t fin_order(const FiniteField& K, const FinMat& a, std::uint64_t cap = kDefaultGroupCap);

// All elements of the group generated by gens, identity first, in BFS order.
std::vector<FinMat> fin_closure(const FiniteField& K, const std::vector<FinMat>& gens,
                                std::size_t cap = kDefaultGroupCap);

// Subspaces as k x d matrices in reduced row echelon form (rows span).
ConstMatrix rref(const FiniteField& K, ConstMatrix m);
std::vector<ConstMatrix> subspaces(const FiniteField& K, unsigned d, unsigned k);
// Image g W of the row space of `basis`, in canonical form.
ConstMatrix act_on_subspace(const FiniteField& K, const ConstMatrix& g, const ConstMatrix& basis);

std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);

// Multiplication by omega and the Frobenius x -> x^q on E in the power basis.
FinMat singer_gl(const FieldParams& params);
FinMat frobenius_gl(const FieldParams& params);
std::vector<FinMat> singer_pgl(const FieldParams& params);
std::vector<FinMat> normalizer_singer(const FieldParams& params);
// True iff det of a representative is a d-th power in K^x.
bool fin_in_psl(const FieldParams& params, const FinMat& g);

struct TransitivityResult {
    bool transitive = false;
    bool free = false;  // trivial stabiliser of the first object
    std::size_t orbit_size = 0;
    std::size_t stabilizer_size = 0;
    bool simply_transitive() const { return transitive && free; }
};
TransitivityResult check_transitivity(const FiniteField& K, const std::vector<FinMat>& group,
                                      const std::vector<ConstMatrix>& objects);
bool verify_simple_transitivity(const FiniteField& K, const std::vector<FinMat>& group,
                                const std::vector<ConstMatrix>& objects);

// Orders of the large maximal p'-subgroups of PSL_3(q) for the covolume table.
std::vector<std::uint64_t> maximal_pprime_orders(std::uint64_t p, std::uint64_t q);

}  // namespace singerlat
