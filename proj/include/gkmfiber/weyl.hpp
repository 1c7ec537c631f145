#pragma once

#include "gkmfiber/matrix.hpp"
#include "gkmfiber/polynomial.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gkmfiber {

enum class Series { A, B, C, D };

Series parse_series(const std::string& s);
char series_letter(Series s);

inline constexpr std::size_t default_max_group_order = 10000;

// Root datum in explicit coordinates on t* (dimension = rank of the ambient group).
// Levi subsystems keep the ambient dimension and carry fewer simple roots.
struct RootSystem {
    Series series = Series::A;
    int rank = 0;
    std::size_t dim = 0;
    std::string label;
    std::vector<LinearForm> positive_roots;
    std::vector<RationalVector> coroots;
    // Indices into positive_roots, in Dynkin order. Simple root i (1-based) is simple_roots[i-1].
    std::vector<std::size_t> simple_roots;

    std::size_t simple_count() const { return simple_roots.size(); }
    const LinearForm& simple_root(std::size_t one_based) const;
    // Index of +root or -root in positive_roots, with the sign; nullopt when not a root.
    std::optional<std::pair<std::size_t, int>> locate(const LinearForm& root) const;
    // Coordinates of a root in the basis of simple roots.
    RationalVector simple_coordinates(const LinearForm& root) const;
};

RootSystem build_root_system(Series series, int rank);

// Roots spanned by a subset of simple roots (1-based). Same ambient dimension.
RootSystem levi_subsystem(const RootSystem& rs, const std::set<int>& simple_subset);

// Subset of simple roots (1-based) generating W_K. Empty means K = T.
struct IsotropyDatum {
    std::set<int> simple_subset;

    // Accepts "", "2", "2,3", "2..4".
    static IsotropyDatum parse(const std::string& text);
    std::string to_string() const;
    void validate(const RootSystem& rs) const;
    bool operator==(const IsotropyDatum&) const = default;
};

struct WeylElement {
    RationalMatrix matrix;
    // Shortest word in simple reflections (1-based), applied right to left.
    std::vector<int> word;

    std::string word_string() const;
};

// Matrix of s_alpha(lambda) = lambda - <lambda, coroot> alpha.
WeylElement reflection(const RootSystem& rs, std::size_t root_index);

// Closure of the simple reflections, breadth first, so each word is shortest.
// Throws ResourceLimit when the group grows beyond max_order.
std::vector<WeylElement> generate_weyl_group(const RootSystem& rs, std::size_t max_order = default_max_group_order);

// Finite reflection group with element lookup. Element 0 is the identity.
class WeylGroup {
public:
    explicit WeylGroup(const RootSystem& rs, std::size_t max_order = default_max_group_order);

    const RootSystem& roots() const { return rs_; }
    std::size_t size() const { return elements_.size(); }
    const WeylElement& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<WeylElement>& elements() const { return elements_; }

    std::optional<std::size_t> find(const RationalMatrix& m) const;
    std::size_t index_of(const RationalMatrix& m) const;
    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const;
    // Number of positive roots sent to negative roots.
    int length(std::size_t a) const;
    // Elements of W_K for K given by a subset of simple roots.
    std::vector<std::size_t> parabolic_subgroup(const IsotropyDatum& k) const;

private:
    RootSystem rs_;
    std::vector<WeylElement> elements_;
    std::map<RationalVector, std::size_t> lookup_;
};

int root_inversion_count(const RootSystem& rs, const RationalMatrix& w);

// Left cosets wW_K, each represented by its unique minimal-length element.
// Cosets are ordered by (length, breadth-first index) of the representative.
struct CosetSpace {
    IsotropyDatum k;
    std::vector<WeylElement> representatives;
    std::vector<std::size_t> representative_index; // into the WeylGroup
    std::vector<int> lengths;
    std::vector<std::size_t> coset_of; // group element -> coset

    std::size_t size() const { return representatives.size(); }
};

CosetSpace coset_space(const WeylGroup& w, const IsotropyDatum& k);
CosetSpace coset_space(const RootSystem& rs, const IsotropyDatum& k);

// Betti numbers b_j = #{cosets of length j}.
std::vector<long> poincare_polynomial(const CosetSpace& cosets);
std::vector<long> poincare_polynomial(const RootSystem& rs, const IsotropyDatum& k);

// |W| for the given series and rank, from the closed formulas.
std::size_t expected_weyl_order(Series series, int rank);

} // namespace gkmfiber
