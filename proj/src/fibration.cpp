#include "gkmfiber/fibration.hpp"

#include "gkmfiber/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace gkmfiber {

namespace {

std::string edge_field(std::size_t e)
{
    return "edge_data." + std::to_string(e);
}

void rethrow_with_prefix(const std::string& prefix, const GkmGraph& g)
{
    try {
        g.validate();
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(prefix + e.what());
    }
}

EdgeTransport invert(const EdgeTransport& d)
{
    EdgeTransport inv;
    for (const auto& [u, v] : d.transport)
        inv.transport.emplace(v, u);
    inv.twist = inverse(d.twist);
    return inv;
}

std::optional<std::size_t> find_inverse_index(const std::vector<std::size_t>& perm, std::size_t value)
{
    const auto it = std::find(perm.begin(), perm.end(), value);
    if (it == perm.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - perm.begin());
}

} // namespace

std::size_t Fiber::local(std::size_t total_vertex) const
{
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), total_vertex);
    if (it == vertices.end() || *it != total_vertex)
        throw InvalidArgument("vertex " + std::to_string(total_vertex) + " is not in the fiber over base vertex " +
                              std::to_string(base_vertex));
    return static_cast<std::size_t>(it - vertices.begin());
}

GkmFibration::GkmFibration(GkmGraph total, GkmGraph base, std::vector<std::size_t> projection,
                           std::map<std::size_t, EdgeTransport> edge_data)
    : total_(std::move(total)), base_(std::move(base)), projection_(std::move(projection))
{
    rethrow_with_prefix("", total_);
    rethrow_with_prefix("base.", base_);
    if (base_.dim_t() != total_.dim_t())
        throw InvalidArgument("base.dim_t: " + std::to_string(base_.dim_t()) + " differs from the total dim_t " +
                              std::to_string(total_.dim_t()));
    if (projection_.size() != total_.vertex_count())
        throw InvalidArgument("projection: expected " + std::to_string(total_.vertex_count()) + " entries, got " +
                              std::to_string(projection_.size()));

    fibers_.resize(base_.vertex_count());
    for (std::size_t p = 0; p < fibers_.size(); ++p)
        fibers_[p].base_vertex = p;
    for (std::size_t u = 0; u < projection_.size(); ++u) {
        if (projection_[u] >= base_.vertex_count())
            throw InvalidArgument("projection." + std::to_string(u) + ": no base vertex " +
                                  std::to_string(projection_[u]));
        fibers_[projection_[u]].vertices.push_back(u);
    }
    for (Fiber& fib : fibers_) {
        if (fib.vertices.empty())
            throw InvalidArgument("projection: base vertex " + std::to_string(fib.base_vertex) + " has an empty fiber");
        fib.graph = GkmGraph(total_.dim_t());
        for (std::size_t u : fib.vertices)
            fib.graph.add_vertex(total_.vertices()[u].label);
    }

    for (std::size_t e : total_.undirected_edges()) {
        const GkmEdge& edge = total_.edge(e);
        const std::size_t p = projection_[edge.source];
        const std::size_t q = projection_[edge.target];
        if (p == q) {
            Fiber& fib = fibers_[p];
            fib.graph.add_edge_pair(fib.local(edge.source), fib.local(edge.target), edge.weight);
            continue;
        }
        const auto& outs = base_.out_edges(p);
        const bool lifts = std::any_of(outs.begin(), outs.end(), [&](std::size_t b) { return base_.edge(b).target == q; });
        if (!lifts)
            throw InvalidArgument("edges[" + std::to_string(e) + "]: joins fibers over base vertices " +
                                  std::to_string(p) + " and " + std::to_string(q) + " which share no base edge");
    }

    for (const auto& [e, d] : edge_data) {
        if (e >= base_.edge_count())
            throw InvalidArgument(edge_field(e) + ": no such base edge");
        const Fiber& from = fibers_[base_.edge(e).source];
        const Fiber& to = fibers_[base_.edge(e).target];
        std::set<std::size_t> images;
        for (const auto& [u, v] : d.transport) {
            if (u >= projection_.size() || projection_[u] != from.base_vertex)
                throw InvalidArgument(edge_field(e) + ".transport: vertex " + std::to_string(u) +
                                      " is not in the source fiber");
            if (v >= projection_.size() || projection_[v] != to.base_vertex)
                throw InvalidArgument(edge_field(e) + ".transport: vertex " + std::to_string(v) +
                                      " is not in the target fiber");
            images.insert(v);
        }
        if (d.transport.size() != from.vertices.size() || images.size() != to.vertices.size() ||
            from.vertices.size() != to.vertices.size())
            throw InvalidArgument(edge_field(e) + ".transport: not a bijection between the fibers");
        if (d.twist.rows() != total_.dim_t() || d.twist.cols() != total_.dim_t())
            throw InvalidArgument(edge_field(e) + ".twist: expected a " + std::to_string(total_.dim_t()) + "x" +
                                  std::to_string(total_.dim_t()) + " matrix");
        if (is_zero(determinant(d.twist)))
            throw InvalidArgument(edge_field(e) + ".twist: singular matrix");
    }

    edge_data_.resize(base_.edge_count());
    for (std::size_t e = 0; e < base_.edge_count(); ++e) {
        const std::size_t opp = base_.edge(e).opposite;
        const auto own = edge_data.find(e);
        const auto other = edge_data.find(opp);
        if (own != edge_data.end()) {
            edge_data_[e] = own->second;
            if (other != edge_data.end()) {
                const EdgeTransport inv = invert(other->second);
                if (inv.transport != own->second.transport || inv.twist != own->second.twist)
                    throw InvalidArgument(edge_field(e) + ": not inverse to the data of opposite edge " +
                                          std::to_string(opp));
            }
        } else if (other != edge_data.end()) {
            edge_data_[e] = invert(other->second);
        } else {
            throw InvalidArgument(edge_field(e) + ": missing transport and twist");
        }
    }
}

GkmClass GkmFibration::transport_class(std::size_t base_edge, const GkmClass& c) const
{
    const GkmEdge& edge = base_.edge(base_edge);
    const Fiber& from = fibers_[edge.source];
    const Fiber& to = fibers_[edge.target];
    if (c.size() != from.vertices.size())
        throw InvalidArgument("class has " + std::to_string(c.size()) + " values for a fiber with " +
                              std::to_string(from.vertices.size()) + " vertices");
    const EdgeTransport& d = edge_data_[base_edge];
    GkmClass out{std::vector<Polynomial>(to.vertices.size(), Polynomial(total_.dim_t()))};
    for (std::size_t i = 0; i < from.vertices.size(); ++i)
        out.values[to.local(d.transport.at(from.vertices[i]))] = substitute_linear(c.values[i], d.twist);
    return out;
}

HomogeneousFibration build_homogeneous_fibration(const RootSystem& rs, const IsotropyDatum& k1,
                                                 const IsotropyDatum& k, std::size_t max_group_order)
{
    k1.validate(rs);
    k.validate(rs);
    if (!std::includes(k.simple_subset.begin(), k.simple_subset.end(), k1.simple_subset.begin(),
                       k1.simple_subset.end()))
        throw InvalidArgument("k1: {" + k1.to_string() + "} is not contained in k = {" + k.to_string() + "}");

    HomogeneousSpace total = make_homogeneous_space(rs, k1, max_group_order);
    HomogeneousSpace base = make_homogeneous_space(rs, k, max_group_order);

    std::vector<std::size_t> projection(total.graph.vertex_count());
    std::vector<std::vector<std::size_t>> fibers(base.graph.vertex_count());
    for (std::size_t v = 0; v < projection.size(); ++v) {
        projection[v] = base.vertex_of(base.group.index_of(total.representative(v)));
        fibers[projection[v]].push_back(v);
    }

    std::map<std::size_t, EdgeTransport> data;
    for (std::size_t e = 0; e < base.graph.edge_count(); ++e) {
        const GkmEdge& edge = base.graph.edge(e);
        const auto located = rs.locate(edge.weight);
        if (!located)
            throw InternalInconsistency("base edge weight " + edge.weight.to_string() + " is not a root");
        EdgeTransport d;
        d.twist = reflection(rs, located->first).matrix;
        for (std::size_t u : fibers[edge.source]) {
            const std::size_t image = total.group.index_of(d.twist * total.representative(u));
            d.transport.emplace(u, total.vertex_of(image));
        }
        data.emplace(e, std::move(d));
    }

    GkmFibration fibration(total.graph, base.graph, std::move(projection), std::move(data));
    return {std::move(total), std::move(base), std::move(fibration)};
}

bool BalanceReport::ok() const
{
    return std::all_of(entries.begin(), entries.end(), [](const BalanceEntry& b) { return b.ok(); });
}

std::vector<std::size_t> BalanceReport::failed_edges() const
{
    std::vector<std::size_t> out;
    for (const BalanceEntry& b : entries)
        if (!b.ok())
            out.push_back(b.edge);
    return out;
}

namespace {

// tau fixes ker(alpha) in t iff tau - 1 maps t* into the line of alpha.
bool twist_fixes_kernel(const RationalMatrix& twist, const LinearForm& alpha)
{
    const std::size_t n = alpha.dimension();
    for (std::size_t j = 0; j < n; ++j) {
        RationalVector column(n);
        for (std::size_t i = 0; i < n; ++i)
            column[i] = twist(i, j) - (i == j ? 1 : 0);
        if (!is_zero_vector(column) && linearly_independent(alpha, LinearForm(column)))
            return false;
    }
    return true;
}

bool transport_respects_edges(const GkmFibration& f, std::size_t e)
{
    const GkmEdge& edge = f.base().edge(e);
    const EdgeTransport& d = f.edge_data(e);
    const Fiber& from = f.fiber(edge.source);
    const Fiber& to = f.fiber(edge.target);
    for (const GkmEdge& vertical : from.graph.edges()) {
        const std::size_t a = to.local(d.transport.at(from.vertices[vertical.source]));
        const std::size_t b = to.local(d.transport.at(from.vertices[vertical.target]));
        const LinearForm expected = apply(d.twist, vertical.weight);
        const auto& outs = to.graph.out_edges(a);
        const bool found = std::any_of(outs.begin(), outs.end(), [&](std::size_t x) {
            return to.graph.edge(x).target == b && to.graph.edge(x).weight == expected;
        });
        if (!found)
            return false;
    }
    return true;
}

} // namespace

BalanceReport check_balanced(const GkmFibration& f)
{
    BalanceReport report;
    for (std::size_t e : f.base().undirected_edges()) {
        const std::size_t opp = f.base().edge(e).opposite;
        BalanceEntry entry;
        entry.edge = e;
        entry.twist_fixes_kernel = twist_fixes_kernel(f.edge_data(e).twist, f.base().edge(e).weight) &&
                                   twist_fixes_kernel(f.edge_data(opp).twist, f.base().edge(opp).weight);
        entry.transport_respects_edges = transport_respects_edges(f, e) && transport_respects_edges(f, opp);
        report.entries.push_back(entry);
    }
    return report;
}

GkmFibration restrict_to_base_edge(const GkmFibration& f, std::size_t base_edge)
{
    if (base_edge >= f.base().edge_count())
        throw InvalidArgument("base edge " + std::to_string(base_edge) + " does not exist");
    const GkmEdge& edge = f.base().edge(base_edge);
    const Fiber& fp = f.fiber(edge.source);
    const Fiber& fq = f.fiber(edge.target);

    GkmGraph base(f.base().dim_t());
    base.add_vertex(f.base().vertices()[edge.source].label);
    base.add_vertex(f.base().vertices()[edge.target].label);
    base.add_edge_pair(0, 1, edge.weight);

    std::vector<std::size_t> kept(fp.vertices);
    kept.insert(kept.end(), fq.vertices.begin(), fq.vertices.end());
    std::sort(kept.begin(), kept.end());
    std::map<std::size_t, std::size_t> renumber;
    GkmGraph total(f.total().dim_t());
    std::vector<std::size_t> projection;
    for (std::size_t u : kept) {
        renumber[u] = total.add_vertex(f.total().vertices()[u].label);
        projection.push_back(f.projection()[u] == edge.source ? 0 : 1);
    }
    for (std::size_t e : f.total().undirected_edges()) {
        const GkmEdge& te = f.total().edge(e);
        if (renumber.contains(te.source) && renumber.contains(te.target))
            total.add_edge_pair(renumber[te.source], renumber[te.target], te.weight);
    }

    std::map<std::size_t, EdgeTransport> data;
    EdgeTransport forward;
    forward.twist = f.edge_data(base_edge).twist;
    for (const auto& [u, v] : f.edge_data(base_edge).transport)
        forward.transport.emplace(renumber.at(u), renumber.at(v));
    data.emplace(0, std::move(forward));
    return GkmFibration(std::move(total), std::move(base), std::move(projection), std::move(data));
}

// ---------------------------------------------------------------------------

SpanningTree spanning_tree(const GkmGraph& base, std::size_t root, bool reversed)
{
    if (root >= base.vertex_count())
        throw InvalidArgument("base point " + std::to_string(root) + " is not a base vertex");
    SpanningTree tree;
    tree.root = root;
    tree.parent.assign(base.vertex_count(), std::nullopt);
    std::vector<bool> seen(base.vertex_count(), false);
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        tree.order.push_back(v);
        std::vector<std::size_t> outs = base.out_edges(v);
        std::sort(outs.begin(), outs.end());
        if (reversed)
            std::reverse(outs.begin(), outs.end());
        for (std::size_t e : outs) {
            const std::size_t w = base.edge(e).target;
            if (seen[w])
                continue;
            seen[w] = true;
            tree.parent[w] = e;
            queue.push_back(w);
        }
    }
    if (tree.order.size() != base.vertex_count())
        throw InvalidArgument("base graph is not connected");
    return tree;
}

HolonomyElement HolonomyElement::identity(std::size_t n, std::size_t dim_t)
{
    HolonomyElement h;
    h.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        h.perm[i] = i;
    h.twist = RationalMatrix::identity(dim_t);
    return h;
}

HolonomyElement compose(const HolonomyElement& a, const HolonomyElement& b)
{
    if (a.perm.size() != b.perm.size())
        throw InvalidArgument("holonomy elements act on fibers of different sizes");
    HolonomyElement out;
    out.perm.resize(b.perm.size());
    for (std::size_t i = 0; i < b.perm.size(); ++i)
        out.perm[i] = a.perm[b.perm[i]];
    out.twist = a.twist * b.twist;
    return out;
}

HolonomyGroup holonomy_group(const GkmFibration& f, std::size_t base_point, std::size_t max_order)
{
    const GkmGraph& base = f.base();
    const SpanningTree tree = spanning_tree(base, base_point);
    const std::size_t n = f.fiber(base_point).vertices.size();
    const std::size_t dim = f.total().dim_t();

    // carry[q][i]: local index over q reached from local index i over the base point along the tree.
    std::vector<std::vector<std::size_t>> carry(base.vertex_count());
    std::vector<RationalMatrix> twist(base.vertex_count());
    const HolonomyElement id = HolonomyElement::identity(n, dim);
    carry[base_point] = id.perm;
    twist[base_point] = id.twist;
    for (std::size_t v : tree.order) {
        if (!tree.parent[v])
            continue;
        const std::size_t e = *tree.parent[v];
        const std::size_t p = base.edge(e).source;
        const EdgeTransport& d = f.edge_data(e);
        carry[v].resize(n);
        for (std::size_t i = 0; i < n; ++i)
            carry[v][i] = f.fiber(v).local(d.transport.at(f.fiber(p).vertices[carry[p][i]]));
        twist[v] = d.twist * twist[p];
    }

    HolonomyGroup group;
    group.base_point = base_point;
    for (std::size_t e : base.undirected_edges()) {
        const GkmEdge& edge = base.edge(e);
        if (tree.parent[edge.target] == e || tree.parent[edge.source] == edge.opposite)
            continue;
        const EdgeTransport& d = f.edge_data(e);
        HolonomyElement h;
        h.perm.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t across = f.fiber(edge.target).local(
                d.transport.at(f.fiber(edge.source).vertices[carry[edge.source][i]]));
            h.perm[i] = *find_inverse_index(carry[edge.target], across);
        }
        h.twist = inverse(twist[edge.target]) * d.twist * twist[edge.source];
        group.generators.push_back(std::move(h));
    }

    using Key = std::pair<std::vector<std::size_t>, RationalVector>;
    std::set<Key> seen{{id.perm, id.twist.data()}};
    group.elements.push_back(id);
    for (std::size_t next = 0; next < group.elements.size(); ++next) {
        for (const HolonomyElement& g : group.generators) {
            HolonomyElement h = compose(g, group.elements[next]);
            if (!seen.insert({h.perm, h.twist.data()}).second)
                continue;
            if (group.elements.size() >= max_order)
                throw ResourceLimit("holonomy group exceeds the order bound " + std::to_string(max_order));
            group.elements.push_back(std::move(h));
        }
    }
    return group;
}

GkmClass act_on_class(const HolonomyElement& h, const GkmClass& c)
{
    if (c.size() != h.perm.size())
        throw InvalidArgument("class has " + std::to_string(c.size()) + " values for a fiber with " +
                              std::to_string(h.perm.size()) + " vertices");
    GkmClass out{std::vector<Polynomial>(c.size())};
    for (std::size_t i = 0; i < c.size(); ++i)
        out.values[h.perm[i]] = substitute_linear(c.values[i], h.twist);
    return out;
}

GkmClass average_class(const HolonomyGroup& g, const GkmClass& c)
{
    GkmClass sum = act_on_class(g.elements.at(0), c);
    for (std::size_t i = 1; i < g.elements.size(); ++i)
        sum += act_on_class(g.elements[i], c);
    return Rational(1, static_cast<unsigned long>(g.order())) * std::move(sum);
}

bool is_invariant(const HolonomyGroup& g, const GkmClass& c)
{
    return std::all_of(g.generators.begin(), g.generators.end(),
                       [&](const HolonomyElement& h) { return act_on_class(h, c) == c; });
}

std::vector<GradedGenerator> invariant_fiber_basis(const GkmFibration& f, const HolonomyGroup& g,
                                                   unsigned max_degree)
{
    const GkmGraph& fiber = f.fiber(g.base_point).graph;
    const GradedBasisReport plain = complete_module_generators(fiber);
    std::vector<GradedGenerator> out;
    std::vector<GkmClass> classes;
    for (const GradedGenerator& gen : plain.generators) {
        GkmClass avg = average_class(g, gen.cls);
        if (avg.degree() != static_cast<int>(gen.degree))
            throw InternalInconsistency("averaging a degree " + std::to_string(gen.degree) +
                                        " fiber generator changed its degree");
        classes.push_back(avg);
        out.push_back({gen.degree, std::move(avg)});
    }
    if (evaluation_rank(classes, fiber.dim_t()) != fiber.vertex_count())
        throw InternalInconsistency("averaged fiber generators are dependent");
    for (unsigned d = 0; d <= max_degree; ++d)
        if (module_span_rank(fiber, out, d) != graded_dimension(fiber, d))
            throw InternalInconsistency("averaged fiber generators do not span degree " + std::to_string(d));
    return out;
}

GkmClass transport_invariant_class(const GkmFibration& f, const HolonomyGroup& g, const GkmClass& c,
                                   bool reversed_tree)
{
    if (c.size() != f.fiber(g.base_point).vertices.size())
        throw InvalidArgument("class has " + std::to_string(c.size()) + " values for a fiber with " +
                              std::to_string(f.fiber(g.base_point).vertices.size()) + " vertices");
    if (!is_invariant(g, c))
        throw InvalidArgument("fiber class is not invariant under the holonomy group");

    const GkmGraph& base = f.base();
    const SpanningTree tree = spanning_tree(base, g.base_point, reversed_tree);
    std::vector<GkmClass> over(base.vertex_count());
    over[g.base_point] = c;
    for (std::size_t v : tree.order)
        if (tree.parent[v])
            over[v] = f.transport_class(*tree.parent[v], over[base.edge(*tree.parent[v]).source]);
    for (std::size_t e = 0; e < base.edge_count(); ++e)
        if (f.transport_class(e, over[base.edge(e).source]) != over[base.edge(e).target])
            throw InternalInconsistency("parallel transport along base edge " + std::to_string(e) +
                                        " disagrees with the spanning tree");

    GkmClass out{std::vector<Polynomial>(f.total().vertex_count())};
    for (std::size_t u = 0; u < out.size(); ++u) {
        const Fiber& fib = f.fiber(f.projection()[u]);
        out.values[u] = over[fib.base_vertex].values[fib.local(u)];
    }
    if (!is_gkm_class(f.total(), out).ok)
        throw InternalInconsistency("transported class violates a congruence of the total graph");
    return out;
}

ProductBasis evaluate_product_basis(const GkmFibration& f, const std::vector<GradedGenerator>& transported_fiber,
                                    const std::vector<GradedGenerator>& base_classes, unsigned max_degree)
{
    const GkmGraph& total = f.total();
    ProductBasis pb;
    std::vector<GkmClass> pulled;
    for (const GradedGenerator& b : base_classes)
        pulled.push_back(pullback_class(f.projection(), f.base().vertex_count(), b.cls));
    for (const GradedGenerator& c : transported_fiber)
        for (std::size_t j = 0; j < base_classes.size(); ++j)
            pb.classes.push_back({c.degree + base_classes[j].degree, c.cls * pulled[j]});

    std::vector<GkmClass> plain;
    for (const GradedGenerator& g : pb.classes)
        plain.push_back(g.cls);
    pb.evaluation_rank = evaluation_rank(plain, total.dim_t());
    for (unsigned d = 0; d <= max_degree; ++d)
        pb.checks.push_back({d, module_span_rank(total, pb.classes, d), graded_dimension(total, d)});
    pb.pass = pb.evaluation_rank == total.vertex_count() && pb.classes.size() == total.vertex_count() &&
              std::all_of(pb.checks.begin(), pb.checks.end(), [](const SpanCheck& s) { return s.ok(); });
    return pb;
}

ProductBasis evaluate_product_basis(const GkmFibration& f, unsigned max_degree, std::size_t max_group_order)
{
    const HolonomyGroup g = holonomy_group(f, 0, max_group_order);
    std::vector<GradedGenerator> transported;
    for (const GradedGenerator& c : invariant_fiber_basis(f, g, max_degree))
        transported.push_back({c.degree, transport_invariant_class(f, g, c.cls)});
    const GradedBasisReport base = complete_module_generators(f.base());
    return evaluate_product_basis(f, transported, base.generators, max_degree);
}

namespace {

ProductBasis require_pass(ProductBasis pb, std::size_t vertices)
{
    for (const SpanCheck& s : pb.checks)
        if (!s.ok())
            throw VerificationFailure("product classes span " + std::to_string(s.span) + " of " +
                                      std::to_string(s.ambient) + " dimensions in degree " + std::to_string(s.degree));
    if (!pb.pass)
        throw VerificationFailure("product classes: " + std::to_string(pb.classes.size()) +
                                  " classes of evaluation rank " + std::to_string(pb.evaluation_rank) + " for " +
                                  std::to_string(vertices) + " vertices");
    return pb;
}

} // namespace

ProductBasis product_basis(const GkmFibration& f, const std::vector<GradedGenerator>& transported_fiber,
                           const std::vector<GradedGenerator>& base_classes, unsigned max_degree)
{
    return require_pass(evaluate_product_basis(f, transported_fiber, base_classes, max_degree),
                        f.total().vertex_count());
}

ProductBasis product_basis(const GkmFibration& f, unsigned max_degree, std::size_t max_group_order)
{
    return require_pass(evaluate_product_basis(f, max_degree, max_group_order), f.total().vertex_count());
}

std::vector<CsDegreeReport> verify_chang_skjelbred(const GkmFibration& f, unsigned max_degree)
{
    const GkmGraph& total = f.total();
    const GkmGraph& base = f.base();
    std::vector<RationalMatrix> inverse_twists;
    for (std::size_t e = 0; e < base.edge_count(); ++e)
        inverse_twists.push_back(inverse(f.edge_data(e).twist));

    std::vector<CsDegreeReport> out;
    for (unsigned d = 0; d <= max_degree; ++d) {
        const GradedPiece piece(total.vertex_count(), total.dim_t(), d);

        ConstraintSystem direct(piece);
        for (std::size_t e : total.undirected_edges())
            direct.add_congruence(total.edge(e).source, total.edge(e).target, total.edge(e).weight);

        ConstraintSystem glued(piece);
        for (const Fiber& fib : f.fibers())
            for (std::size_t e : fib.graph.undirected_edges()) {
                const GkmEdge& fe = fib.graph.edge(e);
                glued.add_congruence(fib.vertices[fe.source], fib.vertices[fe.target], fe.weight);
            }
        for (std::size_t e : base.undirected_edges()) {
            const RationalMatrix back = substitution_matrix(piece.monomials(), inverse_twists[e]);
            for (const auto& [u, v] : f.edge_data(e).transport)
                glued.add_twisted_congruence(u, v, base.edge(e).weight, back);
        }

        const auto sol_direct = direct.solutions();
        const auto sol_glued = glued.solutions();
        CsDegreeReport r;
        r.degree = d;
        r.dim_direct = sol_direct.size();
        r.dim_cs = sol_glued.size();
        r.direct_in_cs = std::all_of(sol_direct.begin(), sol_direct.end(),
                                     [&](const RationalVector& x) { return glued.satisfied_by(x); });
        r.cs_in_direct = std::all_of(sol_glued.begin(), sol_glued.end(),
                                     [&](const RationalVector& x) { return direct.satisfied_by(x); });
        out.push_back(r);
    }
    return out;
}

} // namespace gkmfiber
