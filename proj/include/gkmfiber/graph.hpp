#pragma once

#include "gkmfiber/polynomial.hpp"
#include "gkmfiber/weyl.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gkmfiber {

struct GkmVertex {
    std::size_t id = 0;
    std::string label;

    bool operator==(const GkmVertex&) const = default;
};

struct GkmEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    LinearForm weight;
    std::size_t opposite = 0;

    bool operator==(const GkmEdge&) const = default;
};

// Multigraph with paired directed edges and an axial function.
class GkmGraph {
public:
    GkmGraph() = default;
    explicit GkmGraph(std::size_t dim_t) : dim_t_(dim_t) {}

    std::size_t dim_t() const { return dim_t_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<GkmVertex>& vertices() const { return vertices_; }
    const std::vector<GkmEdge>& edges() const { return edges_; }
    const GkmEdge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }

    std::size_t add_vertex(std::string label);
    // Adds u -> v with the given weight and v -> u with its negative. Returns the id of u -> v.
    std::size_t add_edge_pair(std::size_t u, std::size_t v, const LinearForm& weight);
    // Raw insertion used by importers; call validate() afterwards.
    void add_directed_edge(GkmEdge e);

    // Valence when constant over vertices, nullopt otherwise.
    std::optional<std::size_t> valence() const;
    // No two undirected edges joining the same pair of vertices.
    bool is_simple() const;
    // Opposite pairing, weights and the GKM independence condition. Throws InvalidArgument.
    void validate() const;

    // Edges with id < opposite: one representative per undirected edge.
    std::vector<std::size_t> undirected_edges() const;

    bool operator==(const GkmGraph&) const = default;

private:
    std::size_t dim_t_ = 0;
    std::vector<GkmVertex> vertices_;
    std::vector<GkmEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
};

// Vertex-indexed polynomials. Membership in H_alpha is checked against a graph.
struct GkmClass {
    std::vector<Polynomial> values;

    static GkmClass constant(std::size_t vertices, std::size_t dim_t, const Rational& c);
    std::size_t size() const { return values.size(); }
    // Common degree of the nonzero values; -1 when the class is zero; throws when mixed.
    int degree() const;

    GkmClass& operator+=(const GkmClass& o);
    bool operator==(const GkmClass&) const = default;
};

GkmClass operator+(GkmClass a, const GkmClass& b);
GkmClass operator-(GkmClass a, const GkmClass& b);
GkmClass operator*(const GkmClass& a, const GkmClass& b);
GkmClass operator*(const Polynomial& p, const GkmClass& c);
GkmClass operator*(const Rational& r, GkmClass c);

struct EdgeViolation {
    std::size_t edge = 0;
    Polynomial remainder;
};

struct ClassCheck {
    bool ok = true;
    std::vector<EdgeViolation> violations;
};

// Every edge congruence alpha_e | c(p) - c(q). Throws InvalidArgument when values are missing.
ClassCheck is_gkm_class(const GkmGraph& g, const GkmClass& c);

// Homogeneous space G/K: Weyl data plus its GKM graph.
struct HomogeneousSpace {
    RootSystem roots;
    IsotropyDatum k;
    WeylGroup group;
    CosetSpace cosets;
    GkmGraph graph;
    // Roots of Delta_G^+ \ Delta_K^+, as indices into roots.positive_roots.
    std::vector<std::size_t> edge_roots;

    // Weyl representative of a vertex.
    const RationalMatrix& representative(std::size_t vertex) const { return cosets.representatives.at(vertex).matrix; }
    // Vertex containing the coset of a group element.
    std::size_t vertex_of(std::size_t element) const { return cosets.coset_of.at(element); }
};

HomogeneousSpace make_homogeneous_space(const RootSystem& rs, const IsotropyDatum& k,
                                        std::size_t max_group_order = default_max_group_order);
GkmGraph build_homogeneous_graph(const RootSystem& rs, const IsotropyDatum& k);

// ---------------------------------------------------------------------------
// Graded pieces of H_alpha(Gamma).

// Coordinates of degree-d classes: vertex-major blocks of the monomial basis.
class GradedPiece {
public:
    GradedPiece(std::size_t vertices, std::size_t dim_t, unsigned degree);

    std::size_t vertices() const { return vertices_; }
    unsigned degree() const { return monomials_.degree(); }
    const MonomialBasis& monomials() const { return monomials_; }
    std::size_t dimension() const { return vertices_ * monomials_.size(); }
    std::size_t offset(std::size_t vertex) const { return vertex * monomials_.size(); }

    RationalVector coordinates(const GkmClass& c) const;
    GkmClass to_class(std::span<const Rational> coords) const;

private:
    std::size_t vertices_;
    MonomialBasis monomials_;
};

// Rows of a linear constraint system on a GradedPiece.
class ConstraintSystem {
public:
    explicit ConstraintSystem(const GradedPiece& piece) : piece_(&piece) {}

    // a(u) - a(v) vanishes modulo the linear form.
    void add_congruence(std::size_t u, std::size_t v, const LinearForm& weight);
    // rem(a(u)) - rem(transform * a(v)) = 0 with rem the canonical remainder modulo weight.
    void add_twisted_congruence(std::size_t u, std::size_t v, const LinearForm& weight, const RationalMatrix& transform);

    RationalMatrix matrix() const;
    std::vector<RationalVector> solutions() const;
    bool satisfied_by(std::span<const Rational> x) const;

private:
    const RationalMatrix& remainder(const LinearForm& weight);
    void add_rows(std::size_t u, const RationalMatrix& a, std::size_t v, const RationalMatrix& b);

    const GradedPiece* piece_;
    std::vector<std::pair<LinearForm, RationalMatrix>> remainder_cache_;
    std::vector<RationalVector> rows_;
};

// Basis of degree-d classes, as coordinate vectors of GradedPiece(g, d).
std::vector<RationalVector> degree_space(const GkmGraph& g, unsigned d);
std::size_t graded_dimension(const GkmGraph& g, unsigned d);

// sum_j b_j * C(d - j + n - 1, n - 1).
std::size_t formality_dimension(const std::vector<long>& betti, std::size_t n, unsigned d);

struct GradedGenerator {
    unsigned degree = 0;
    GkmClass cls;
};

// Coordinate vectors of all m * c with c of degree <= d and m a monomial of degree d - deg c.
std::vector<RationalVector> module_span(const GradedPiece& piece, const std::vector<GradedGenerator>& gens);
std::size_t module_span_rank(const GkmGraph& g, const std::vector<GradedGenerator>& gens, unsigned d);

struct GradedBasisReport {
    unsigned max_degree = 0;
    std::vector<std::size_t> ambient_dims;   // dim H_alpha^d for d <= max_degree
    std::vector<std::size_t> multiplicities; // generators emitted in degree d
    std::vector<GradedGenerator> generators;
};

// Degree-by-degree complement of the S(t*)-span of lower generators.
// Candidate classes (for example prescribed invariant classes) are tried first in each degree.
GradedBasisReport module_generators(const GkmGraph& g, unsigned max_degree,
                                    const std::vector<GradedGenerator>& preferred = {});

// Continues until the generator count reaches the vertex count (free module rank).
// Throws VerificationFailure when degree_cap is reached first.
GradedBasisReport complete_module_generators(const GkmGraph& g, unsigned degree_cap = 64);

// Polynomial coefficients p_i with target = sum p_i * gens[i], or nullopt.
std::optional<std::vector<Polynomial>> express_in_generators(const GkmGraph& g,
                                                             const std::vector<GradedGenerator>& gens,
                                                             const GkmClass& target);

// Pulls back a base class along a vertex map total -> base.
// Throws InvalidArgument unless the projection is onto the base vertices.
GkmClass pullback_class(const std::vector<std::size_t>& projection, std::size_t base_vertices,
                        const GkmClass& base_class);

// Rank over Frac(S(t*)) of the vertex-evaluation matrix, estimated from exact ranks at
// deterministic rational sample points; a full-rank sample certifies independence.
std::size_t evaluation_rank(const std::vector<GkmClass>& classes, std::size_t dim_t, int samples = 3);
// Determinant of the square vertex-evaluation matrix at the first sample point.
Rational evaluation_determinant(const std::vector<GkmClass>& classes, std::size_t dim_t);
RationalVector sample_point(std::size_t dim_t, int which);

} // namespace gkmfiber
