#include "gkmfiber/cli.hpp"

#include "gkmfiber/errors.hpp"
#include "gkmfiber/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace gkmfiber {

namespace {

constexpr std::array subcommands{"rootsys", "graph", "basis", "fibration", "holonomy", "verify-cs", "verify-tensor",
                                 "tower"};

struct Outcome {
    Json report;
    bool pass = true;
};

Json with_schema(const Json& body)
{
    Json out{{"schema", 1}};
    for (const auto& [key, value] : body.items())
        out[key] = value;
    return out;
}

RootSystem roots_from(const CommandConfig& c)
{
    if (c.series.empty())
        throw InvalidArgument("--series: required without --input");
    if (c.rank < 1)
        throw InvalidArgument("--rank: required and at least 1 without --input");
    return build_root_system(parse_series(c.series), c.rank);
}

IsotropyDatum parse_datum(const std::string& text, const char* flag)
{
    try {
        return IsotropyDatum::parse(text);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string(flag) + ": " + e.what());
    }
}

GkmGraph graph_from(const CommandConfig& c)
{
    if (!c.input.empty())
        return graph_from_json(read_json_file(c.input));
    return make_homogeneous_space(roots_from(c), parse_datum(c.k, "--k"), c.max_group_order).graph;
}

GkmFibration fibration_from(const CommandConfig& c)
{
    if (!c.input.empty())
        return fibration_from_json(read_json_file(c.input));
    return build_homogeneous_fibration(roots_from(c), parse_datum(c.k1, "--k1"), parse_datum(c.k, "--k"),
                                       c.max_group_order)
        .fibration;
}

Outcome run_rootsys(const CommandConfig& c)
{
    const RootSystem rs = roots_from(c);
    const IsotropyDatum k = parse_datum(c.k, "--k");
    k.validate(rs);
    const WeylGroup w(rs, c.max_group_order);
    const CosetSpace cs = coset_space(w, k);
    Json body = root_system_to_json(rs);
    body["weyl_order"] = w.size();
    body["k"] = k.to_string();
    body["cosets"] = cosets_to_json(cs);
    body["poincare"] = poincare_polynomial(cs);
    return {body, true};
}

Outcome run_graph(const CommandConfig& c)
{
    return {graph_to_json(graph_from(c)), true};
}

Outcome run_basis(const CommandConfig& c)
{
    return {basis_report_to_json(module_generators(graph_from(c), c.max_degree)), true};
}

Outcome run_fibration(const CommandConfig& c)
{
    const GkmFibration f = fibration_from(c);
    const BalanceReport balance = check_balanced(f);
    Json body = fibration_to_json(f);
    body["balance"] = balance_to_json(balance);
    body["pass"] = balance.ok();
    return {body, balance.ok()};
}

Outcome run_holonomy(const CommandConfig& c)
{
    return {holonomy_to_json(holonomy_group(fibration_from(c), 0, c.max_group_order)), true};
}

Outcome run_verify_cs(const CommandConfig& c)
{
    const auto reports = verify_chang_skjelbred(fibration_from(c), c.max_degree);
    const bool pass = std::all_of(reports.begin(), reports.end(), [](const CsDegreeReport& r) { return r.pass(); });
    return {Json{{"reports", cs_report_to_json(reports)}, {"pass", pass}}, pass};
}

Outcome run_verify_tensor(const CommandConfig& c)
{
    const ProductBasis pb = evaluate_product_basis(fibration_from(c), c.max_degree, c.max_group_order);
    return {product_basis_to_json(pb), pb.pass};
}

Outcome run_tower(const CommandConfig& c)
{
    if (c.series.empty())
        throw InvalidArgument("--series: required");
    const TowerReport r = iterated_invariant_basis(build_tower(parse_series(c.series), c.rank, c.max_group_order),
                                                   c.max_degree, c.max_group_order);
    return {tower_report_to_json(r), r.pass};
}

std::string cell(const Json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

bool is_table(const Json& v)
{
    return v.is_array() && !v.empty() &&
           std::all_of(v.begin(), v.end(), [](const Json& row) { return row.is_object(); });
}

// Scalars as "key: value"; arrays of records as aligned tables. Nested values are shown as JSON.
void render_pretty(const Json& report, std::ostream& out)
{
    for (const auto& [key, value] : report.items()) {
        if (!is_table(value)) {
            std::string text = cell(value);
            if (text.size() > 100)
                text = text.substr(0, 97) + "...";
            out << key << ": " << text << '\n';
            continue;
        }
        std::vector<std::string> columns;
        for (const auto& [col, _] : value.front().items())
            columns.push_back(col);
        std::vector<std::size_t> width;
        for (const std::string& col : columns)
            width.push_back(col.size());
        std::vector<std::vector<std::string>> rows;
        for (const Json& row : value) {
            std::vector<std::string> cells;
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const auto it = row.find(columns[i]);
                std::string text = it == row.end() ? "" : cell(*it);
                if (text.size() > 60)
                    text = text.substr(0, 57) + "...";
                width[i] = std::max(width[i], text.size());
                cells.push_back(std::move(text));
            }
            rows.push_back(std::move(cells));
        }
        out << key << ":\n";
        auto line = [&](const std::vector<std::string>& cells) {
            out << ' ';
            for (std::size_t i = 0; i < cells.size(); ++i)
                out << ' ' << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
            out << '\n';
        };
        line(columns);
        for (const auto& r : rows)
            line(r);
    }
}

} // namespace

int run(const CommandConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        if (config.max_degree > max_degree_cap)
            throw InvalidArgument("--max-degree: at most " + std::to_string(max_degree_cap));
        if (config.max_group_order == 0)
            throw InvalidArgument("--max-group-order: must be positive");

        Outcome outcome;
        const std::string& s = config.subcommand;
        if (s == "rootsys")
            outcome = run_rootsys(config);
        else if (s == "graph")
            outcome = run_graph(config);
        else if (s == "basis")
            outcome = run_basis(config);
        else if (s == "fibration")
            outcome = run_fibration(config);
        else if (s == "holonomy")
            outcome = run_holonomy(config);
        else if (s == "verify-cs")
            outcome = run_verify_cs(config);
        else if (s == "verify-tensor")
            outcome = run_verify_tensor(config);
        else if (s == "tower")
            outcome = run_tower(config);
        else
            throw InvalidArgument("subcommand: unknown \"" + s + "\"");

        const Json report = with_schema(outcome.report);
        if (!config.out.empty()) {
            std::ofstream file(config.out);
            if (!file)
                throw InvalidArgument("--out: cannot open " + config.out);
            file << report.dump(2) << '\n';
        }
        if (config.pretty)
            render_pretty(report, out);
        else if (config.out.empty())
            out << report.dump(2) << '\n';
        return outcome.pass ? 0 : 1;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceLimit& e) {
        err << "error: resource limit: " << e.what() << '\n';
        return 2;
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << '\n';
        return 1;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return 1;
    }
}

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Equivariant cohomology of GKM graphs and GKM fiber bundles"};
    app.require_subcommand(1);
    CommandConfig config;
    app.add_option("--series", config.series, "Root system series: A, B, C or D");
    app.add_option("--rank", config.rank, "Rank of the root system");
    app.add_option("--k", config.k, "Simple roots of K, e.g. \"2,3\" or \"2..4\"");
    app.add_option("--k1", config.k1, "Simple roots of K1 (contained in K)");
    app.add_option("--max-degree", config.max_degree, "Highest degree to verify")->capture_default_str();
    app.add_option("--input", config.input, "Graph or fibration JSON instead of a root system");
    app.add_option("--out", config.out, "Write the JSON report to this path");
    app.add_option("--max-group-order", config.max_group_order, "Bound on Weyl and holonomy group orders")
        ->envname("GKM_MAX_GROUP_ORDER")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--pretty", config.pretty, "Render tables instead of JSON on stdout");
    for (const char* name : subcommands)
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    config.subcommand = app.get_subcommands().front()->get_name();
    return run(config, out, err);
}

} // namespace gkmfiber
