#pragma once

#include "gkmfiber/fibration.hpp"

#include <set>
#include <string>
#include <vector>

namespace gkmfiber {

// Stage s realizes L_s/T -> L_s/L_{s-1} inside the Levi L_s spanned by the simple roots in levi.
// k1 and k use the Levi's own numbering (1 = first root of levi).
struct TowerStage {
    int index = 0; // 1-based, bottom-up
    std::set<int> levi;
    IsotropyDatum k1;
    IsotropyDatum k;
    std::size_t lambda_coordinate = 0; // 0-based coordinate of the weight e_m defining the base classes
    std::string base_label;
    std::string fiber_label;
    std::string total_label;
};

struct TowerSpec {
    Series series = Series::A;
    int rank = 0;
    std::vector<TowerStage> stages;
};

TowerSpec build_tower(Series series, int rank, std::size_t max_group_order = default_max_group_order);

// Vertex [w] -> w.lambda. Throws InvalidArgument unless it is a class.
GkmClass symplectic_class(const HomogeneousSpace& base, const LinearForm& lambda);

struct PowerClassReport {
    std::vector<GradedGenerator> classes;
    Rational determinant;          // vertex-evaluation determinant at the first sample point
    bool independent = false;      // full evaluation rank over the fraction field
    std::vector<SpanCheck> checks; // degree d <= max_degree
    bool spanning() const;
    bool pass() const { return independent && spanning(); }
};

// Powers (w.lambda)^j for j < count. Throws VerificationFailure when the evaluation matrix is singular.
PowerClassReport symplectic_power_classes(const HomogeneousSpace& base, const LinearForm& lambda, std::size_t count,
                                          unsigned max_degree);

// Base classes of a stage: powers of w.e_m, plus w.(e_{m+1}...e_n) for the even orthogonal series.
std::vector<GradedGenerator> stage_base_classes(Series series, const TowerStage& stage, const HomogeneousSpace& base);

struct StageReport {
    int index = 0;
    std::string base_label;
    std::string fiber_label;
    std::size_t holonomy_order = 0;
    std::size_t class_count = 0;
    std::size_t expected_count = 0;
    std::vector<std::size_t> multiplicities;
    std::vector<long> length_histogram;
    std::vector<SpanCheck> per_degree;
    bool holonomy_invariant = false;
    bool weyl_invariant = false;
    bool pass = false;
};

struct TowerReport {
    TowerSpec spec;
    std::vector<StageReport> stages;
    std::vector<GradedGenerator> classes; // on the top flag graph
    GkmGraph top;
    bool pass = false;
};

// Throws VerificationFailure naming the stage when a stage cannot be assembled.
TowerReport iterated_invariant_basis(const TowerSpec& spec, unsigned max_degree,
                                     std::size_t max_group_order = default_max_group_order);

} // namespace gkmfiber
