#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "singerlat/calg.hpp"
#include "singerlat/pgeom.hpp"

namespace singerlat {

inline constexpr std::size_t kDefaultBallCap = 200000;

// Homothety class of an O-lattice in K^d, stored as the column Hermite form
// of its primitive representative (inside O^d, not inside tO^d): upper
// triangular, diagonal t^e_i, entry (i, j) for i < j a polynomial of degree
// below e_i.
class Vertex {
public:
    Vertex() = default;

    unsigned dim() const { return d_; }
    const std::vector<int>& exponents() const { return exps_; }
    // Coefficients of entry (i, j), i < j, padded to length e_i.
    const std::vector<Elem>& entry(unsigned i, unsigned j) const { return off_[i * d_ + j]; }
    unsigned type() const { return type_; }
    int depth() const;  // 1 + max e_i
    SeriesMatrix matrix(const FiniteField& K) const;
    std::string to_string() const;

    bool operator==(const Vertex& o) const { return d_ == o.d_ && exps_ == o.exps_ && off_ == o.off_; }
    bool operator<(const Vertex& o) const;
    std::size_t hash() const { return hash_; }

    static Vertex from_hermite(unsigned d, std::vector<int> exps, std::vector<std::vector<Elem>> off);

private:
    unsigned d_ = 0;
    unsigned type_ = 0;
    std::vector<int> exps_;
    std::vector<std::vector<Elem>> off_;  // d*d, only i < j used
    std::size_t hash_ = 0;
};

struct VertexHash {
    std::size_t operator()(const Vertex& v) const { return v.hash(); }
};

// Class of the column span of m (at least d columns, rank d).
Vertex canonicalize(const FiniteField& K, const SeriesMatrix& m);
// v_i: the class of diag(t, ..., t, 1, ..., 1) with i entries t.
Vertex standard_vertex(const FiniteField& K, unsigned d, unsigned i);

struct Neighbor {
    Vertex vertex;
    ConstMatrix subspace;  // W = L'/tL inside L/tL in the basis of the vertex matrix
    unsigned shift = 0;    // type(L') - type(L) mod d, the codimension of W
};
// One neighbour per proper nonzero subspace W, ordered by codimension then W.
std::vector<Neighbor> neighbors_with_subspaces(const FiniteField& K, const Vertex& v);
std::vector<Vertex> neighbors(const FiniteField& K, const Vertex& v);
std::size_t neighbor_count(unsigned d, std::uint64_t q);

Vertex act(const ProjMat& g, const Vertex& v);
// Retries at doubled precision up to the context limit when the window runs out.
Vertex act(const GroupElem& g, const Vertex& v);
unsigned type_shift(const ProjMat& g);

// Group element with its matrix image cached at the last precision that
// sufficed.
class CachedAction {
public:
    explicit CachedAction(GroupElem g);
    const GroupElem& element() const { return g_; }
    Vertex apply(const Vertex& v);
    unsigned type_shift();
    int precision() const { return prec_; }

private:
    void refresh(int prec);
    GroupElem g_;
    int prec_ = 0;
    SeriesMatrix m_;
};

struct Ball {
    Vertex root;
    unsigned radius = 0;
    std::vector<Vertex> vertices;  // BFS order, root first
    std::vector<unsigned> distance;
    std::vector<std::vector<std::size_t>> adjacency;
    std::unordered_map<Vertex, std::size_t, VertexHash> index;

    std::size_t size() const { return vertices.size(); }
    std::optional<std::size_t> find(const Vertex& v) const;
    std::vector<std::size_t> of_type(unsigned type) const;
};
Ball ball(const FiniteField& K, const Vertex& root, unsigned radius, std::size_t cap = kDefaultBallCap);

// Constant term of the integral unit-determinant representative of g.
FinMat reduce_mod_t(const ProjMat& g);

// Machine-readable and DOT renderings; orbit ids are optional colour classes.
std::string ball_to_json(const Ball& b, const FieldParams& params, const std::vector<std::size_t>* orbit = nullptr);
std::string ball_to_dot(const Ball& b, const std::vector<std::size_t>* orbit = nullptr);

}  // namespace singerlat
