#pragma once

#include "gkmfiber/fibration.hpp"
#include "gkmfiber/towers.hpp"

#include <json.hpp>

#include <string>

namespace gkmfiber {

// Insertion-ordered so that reports are byte-stable.
using Json = nlohmann::ordered_json;

// Parse failures throw InvalidArgument whose message starts with the offending field path.

// [num, den]; components outside int64 are decimal strings.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& field);

Json vector_to_json(std::span<const Rational> v);
RationalVector vector_from_json(const Json& j, const std::string& field, std::size_t expected_length);

Json matrix_to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j, const std::string& field, std::size_t n);

// [{"coeffs": [num, den], "exps": [e_1, ..., e_n]}, ...] in graded-lex order.
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, const std::string& field, std::size_t n);

Json graph_to_json(const GkmGraph& g);
GkmGraph graph_from_json(const Json& j, const std::string& prefix = "");

// {"vertex_id": polynomial}
Json class_to_json(const GkmClass& c);
GkmClass class_from_json(const Json& j, const std::string& field, std::size_t vertices, std::size_t n);

// Graph JSON of the total space plus "base", "projection" and "edge_data".
Json fibration_to_json(const GkmFibration& f);
GkmFibration fibration_from_json(const Json& j);

Json root_system_to_json(const RootSystem& rs);
Json cosets_to_json(const CosetSpace& cs);
Json balance_to_json(const BalanceReport& r);
Json holonomy_to_json(const HolonomyGroup& g);
Json cs_report_to_json(const std::vector<CsDegreeReport>& r);
Json span_checks_to_json(const std::vector<SpanCheck>& checks);
Json basis_report_to_json(const GradedBasisReport& r);
Json product_basis_to_json(const ProductBasis& pb);
Json tower_report_to_json(const TowerReport& r);

// Reads a whole file; throws InvalidArgument on I/O or syntax errors.
Json read_json_file(const std::string& path);

} // namespace gkmfiber
