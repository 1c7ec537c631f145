#pragma once

#include "gkmfiber/graph.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gkmfiber {

// Fiber over one base vertex: its total vertices (ascending) and the vertical edges.
struct Fiber {
    std::size_t base_vertex = 0;
    std::vector<std::size_t> vertices;
    GkmGraph graph; // vertex i of graph is vertices[i]

    std::size_t local(std::size_t total_vertex) const;
};

// Data attached to a directed base edge p -> q.
struct EdgeTransport {
    std::map<std::size_t, std::size_t> transport; // total vertex in F_p -> total vertex in F_q
    RationalMatrix twist;                          // acts on t*
};

class GkmFibration {
public:
    GkmFibration() = default;
    // Validates the data and derives the fibers. Missing reverse edge data is filled with inverses.
    // Throws InvalidArgument naming the offending field.
    GkmFibration(GkmGraph total, GkmGraph base, std::vector<std::size_t> projection,
                 std::map<std::size_t, EdgeTransport> edge_data);

    const GkmGraph& total() const { return total_; }
    const GkmGraph& base() const { return base_; }
    const std::vector<std::size_t>& projection() const { return projection_; }
    const std::vector<Fiber>& fibers() const { return fibers_; }
    const Fiber& fiber(std::size_t base_vertex) const { return fibers_.at(base_vertex); }
    // Indexed by directed base edge id.
    const std::vector<EdgeTransport>& edge_data() const { return edge_data_; }
    const EdgeTransport& edge_data(std::size_t base_edge) const { return edge_data_.at(base_edge); }

    // c_q(f_e u) = tau_e . c_p(u) for a class c_p on the fiber over the source of e.
    GkmClass transport_class(std::size_t base_edge, const GkmClass& c) const;

private:
    GkmGraph total_;
    GkmGraph base_;
    std::vector<std::size_t> projection_;
    std::vector<Fiber> fibers_;
    std::vector<EdgeTransport> edge_data_;
};

struct HomogeneousFibration {
    HomogeneousSpace total;
    HomogeneousSpace base;
    GkmFibration fibration;
};

// G/K1 -> G/K. Transport along a base edge of weight beta is u -> s_beta u, with twist s_beta.
HomogeneousFibration build_homogeneous_fibration(const RootSystem& rs, const IsotropyDatum& k1,
                                                 const IsotropyDatum& k,
                                                 std::size_t max_group_order = default_max_group_order);

struct BalanceEntry {
    std::size_t edge = 0;
    bool twist_fixes_kernel = true;
    bool transport_respects_edges = true;
    bool ok() const { return twist_fixes_kernel && transport_respects_edges; }
};

struct BalanceReport {
    std::vector<BalanceEntry> entries; // one per undirected base edge, both directions checked
    bool ok() const;
    std::vector<std::size_t> failed_edges() const;
};

BalanceReport check_balanced(const GkmFibration& f);

// A fiber graph restricted to the sub-bundle over one base edge: a two-vertex base.
GkmFibration restrict_to_base_edge(const GkmFibration& f, std::size_t base_edge);

// ---------------------------------------------------------------------------
// Holonomy.

struct SpanningTree {
    std::size_t root = 0;
    std::vector<std::size_t> order;                  // BFS visiting order
    std::vector<std::optional<std::size_t>> parent;  // directed edge used to reach each vertex
};

// Deterministic BFS over out edges in id order (descending when reversed).
// Throws InvalidArgument when the base graph is disconnected.
SpanningTree spanning_tree(const GkmGraph& base, std::size_t root, bool reversed = false);

// Acts on the fiber over the base point: perm on local indices, twist on t*.
struct HolonomyElement {
    std::vector<std::size_t> perm;
    RationalMatrix twist;

    static HolonomyElement identity(std::size_t n, std::size_t dim_t);
    bool operator==(const HolonomyElement&) const = default;
};

// a * b applies b first.
HolonomyElement compose(const HolonomyElement& a, const HolonomyElement& b);

struct HolonomyGroup {
    std::size_t base_point = 0;
    std::vector<HolonomyElement> generators; // one per non-tree edge
    std::vector<HolonomyElement> elements;   // elements[0] is the identity

    std::size_t order() const { return elements.size(); }
};

// Throws ResourceLimit when the closure exceeds max_order.
HolonomyGroup holonomy_group(const GkmFibration& f, std::size_t base_point,
                             std::size_t max_order = default_max_group_order);

// (h.c)(perm(i)) = twist . c(i). A left action on classes of the base-point fiber.
GkmClass act_on_class(const HolonomyElement& h, const GkmClass& c);
GkmClass average_class(const HolonomyGroup& g, const GkmClass& c);
bool is_invariant(const HolonomyGroup& g, const GkmClass& c);

// Averaged module generators of the base-point fiber, checked to span degree by degree up to max_degree.
// Throws InternalInconsistency if averaging destroyed the basis.
std::vector<GradedGenerator> invariant_fiber_basis(const GkmFibration& f, const HolonomyGroup& g,
                                                   unsigned max_degree);

// Parallel transport of an invariant class on the base-point fiber to a class on the total graph.
// Throws InvalidArgument for a non-invariant class and InternalInconsistency on a path mismatch.
GkmClass transport_invariant_class(const GkmFibration& f, const HolonomyGroup& g, const GkmClass& c,
                                   bool reversed_tree = false);

struct SpanCheck {
    unsigned degree = 0;
    std::size_t span = 0;
    std::size_t ambient = 0;
    bool ok() const { return span == ambient; }
};

struct ProductBasis {
    std::vector<GradedGenerator> classes;
    std::vector<SpanCheck> checks;
    std::size_t evaluation_rank = 0;
    bool pass = false;
};

// Classes c_i * pi^*(f_j) with their span checks; pass records the outcome.
ProductBasis evaluate_product_basis(const GkmFibration& f, const std::vector<GradedGenerator>& transported_fiber,
                                    const std::vector<GradedGenerator>& base_classes, unsigned max_degree);
ProductBasis evaluate_product_basis(const GkmFibration& f, unsigned max_degree,
                                    std::size_t max_group_order = default_max_group_order);

// As above, but throws VerificationFailure naming the first deficient degree.
ProductBasis product_basis(const GkmFibration& f, const std::vector<GradedGenerator>& transported_fiber,
                           const std::vector<GradedGenerator>& base_classes, unsigned max_degree);
ProductBasis product_basis(const GkmFibration& f, unsigned max_degree,
                           std::size_t max_group_order = default_max_group_order);

struct CsDegreeReport {
    unsigned degree = 0;
    std::size_t dim_direct = 0;
    std::size_t dim_cs = 0;
    bool direct_in_cs = false;
    bool cs_in_direct = false;
    bool pass() const { return dim_direct == dim_cs && direct_in_cs && cs_in_direct; }
};

// Degree-d classes of the total graph against fiberwise classes glued by the edge-ring conditions.
std::vector<CsDegreeReport> verify_chang_skjelbred(const GkmFibration& f, unsigned max_degree);

} // namespace gkmfiber
