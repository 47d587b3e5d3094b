#include "anglelab/census.hpp"
#include "anglelab/configurations.hpp"
#include "anglelab/errors.hpp"
#include "anglelab/geometry.hpp"
#include "anglelab/io.hpp"
#include "anglelab/rng.hpp"
#include "anglelab/subset.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace anglelab;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

struct CliState {
    std::string output;
    std::uint64_t seed = 0;
    unsigned precision_bits = kDefaultPrecisionBits;
    int threads = 0;

    std::string command;
    Json parameters = Json::object();
    Json payload;
    std::optional<std::string> csv;  // census classes, written next to the payload
    int exit_code = kExitOk;
};

fs::path sibling_with_suffix(const fs::path& base, const std::string& suffix) {
    fs::path out = base;
    out.replace_extension();
    out += suffix;
    return out;
}

void emit(CliState& state) {
    const std::string text = dump_payload(state.payload);
    if (state.output.empty()) {
        std::cout << text;
        return;
    }
    const fs::path out(state.output);
    write_text_file(out, text);

    RunManifest manifest;
    manifest.command = state.command;
    manifest.parameters = state.parameters;
    manifest.seed = state.seed;
    manifest.precision_bits = state.precision_bits;
    manifest.tool_version = kVersion;
    manifest.timestamp = iso8601_utc_now();
    write_text_file(sibling_with_suffix(out, ".manifest.json"),
                    dump_payload(manifest_to_json(manifest)));

    if (state.csv) {
        std::ofstream csv_out(sibling_with_suffix(out, ".csv"), std::ios::binary);
        if (!csv_out) throw IoError("cannot write CSV next to '" + state.output + "'");
        csv_out << *state.csv;
    }
}

std::vector<long> parse_index_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw InvalidInput("bad index '" + item + "' in subset list");
        }
    }
    if (out.empty()) throw InvalidInput("empty subset list");
    return out;
}

// ---- gen ----------------------------------------------------------------

void run_gen_spiral(CliState& state, std::size_t n, const std::string& beta_text) {
    const Real beta = beta_text.empty() ? default_spiral_beta(n, state.precision_bits)
                                        : make_real(beta_text, state.precision_bits);
    const auto config = spiral_config(n, beta, state.precision_bits);
    state.command = "gen spiral";
    state.parameters = {{"n", n}, {"beta", real_str(config.beta)}};
    state.payload = config_to_json(Configuration(config));
}

void run_gen_grid(CliState& state, std::int64_t r, int d, std::size_t cap) {
    const auto config = grid(r, d, cap);
    state.command = "gen grid";
    state.parameters = {{"r", r}, {"d", d}};
    state.payload = config_to_json(Configuration(config));
}

void run_gen_shell(CliState& state, std::int64_t r, int d, std::size_t cap) {
    const auto config = best_shell(r, d, cap);
    state.command = "gen shell";
    state.parameters = {{"r", r}, {"d", d}};
    state.payload = config_to_json(Configuration(config));
}

void run_gen_ngon(CliState& state, std::size_t n) {
    const auto config = regular_ngon(n, state.precision_bits);
    state.command = "gen ngon";
    state.parameters = {{"n", n}};
    state.payload = config_to_json(Configuration(config));
}

void run_gen_project(CliState& state, const std::string& input, unsigned max_retries,
                     double margin) {
    const auto source = load_config(input);
    const auto kind = config_kind(source);

    const std::vector<LatticePoint>* pts = nullptr;
    std::int64_t r = 0;
    int d = 0;
    std::optional<std::int64_t> level;
    if (const auto* g = std::get_if<LatticeConfig>(&source)) {
        pts = &g->points;
        r = g->r;
        d = g->d;
    } else if (const auto* s = std::get_if<ShellConfig>(&source)) {
        pts = &s->points;
        r = s->r;
        d = s->d;
        level = s->level;
    } else {
        throw InvalidParameter("projection input must be a grid or shell configuration, got '" +
                               kind + "'");
    }

    ProjectionOptions options;
    options.max_retries = max_retries;
    options.precision_bits = state.precision_bits;
    options.gp_margin = margin;
    options.threads = state.threads;
    auto projected = generic_projection(*pts, state.seed, options);
    projected.source_kind = kind;
    projected.source_r = r;
    projected.source_d = d;
    projected.source_level = level;

    state.command = "gen project";
    state.parameters = {{"input_kind", kind}, {"max_retries", max_retries}, {"margin", margin}};
    state.payload = config_to_json(Configuration(projected));
}

// ---- verify -------------------------------------------------------------

void run_verify(CliState& state, const std::string& input, const std::string& mode, double margin,
                std::size_t projection_trials, double projection_tol) {
    const auto config = load_config(input);
    const auto kind = config_kind(config);
    state.command = "verify";
    state.parameters = {{"input_kind", kind},
                        {"mode", mode},
                        {"margin", margin},
                        {"projection_trials", projection_trials},
                        {"projection_tol", projection_tol}};

    int lattice_d = 0;
    const std::vector<LatticePoint>* lattice_pts = nullptr;
    if (const auto* g = std::get_if<LatticeConfig>(&config)) {
        lattice_d = g->d;
        lattice_pts = &g->points;
    } else if (const auto* s = std::get_if<ShellConfig>(&config)) {
        lattice_d = s->d;
        lattice_pts = &s->points;
    }

    bool ok;
    if (lattice_pts != nullptr && lattice_d > 2 && mode != "numeric") {
        // Exact integer predicates. The verdict for lattice configurations in
        // dimension 3+ is collinearity; shells legitimately contain concyclic
        // quadruples, so concyclicity is reported but not gating. Planar
        // lattices take the planar path below instead.
        const auto report = lattice_general_position(*lattice_pts);
        ok = report.collinear_free;
        state.payload = {{"kind", kind},
                         {"mode", "exact"},
                         {"ok", ok},
                         {"report", lattice_position_to_json(report)}};
    } else {
        const auto rational = rational_planar_points(config);
        const bool want_exact = mode == "exact" || (mode == "auto" && rational.has_value());
        if (want_exact) {
            if (!rational) {
                throw InvalidParameter(
                    "exact verification needs rational coordinates; this configuration has "
                    "numeric points");
            }
            const auto report = general_position_exact(*rational, state.threads);
            ok = report.ok;
            state.payload = {{"kind", kind},
                             {"mode", "exact"},
                             {"ok", ok},
                             {"report", general_position_to_json(report)}};
        } else {
            const auto points = planar_points(config);
            const unsigned bits = config_precision_bits(config);
            const auto report = general_position_numeric(points, bits, margin, state.threads);
            ok = report.ok;
            state.payload = {{"kind", kind},
                             {"mode", "numeric"},
                             {"ok", ok},
                             {"report", general_position_to_json(report)}};
        }
    }

    if (projection_trials > 0) {
        const auto* projected = std::get_if<ProjectedConfig>(&config);
        if (projected == nullptr) {
            throw InvalidParameter("--projection-trials needs a projected configuration");
        }
        const auto prop = verify_projection_property(projected->source_points, projected->frame,
                                                     projection_trials, state.seed);
        const bool prop_ok = prop.max_relative_error < projection_tol;
        state.payload["projection_property"] = projection_property_to_json(prop);
        state.payload["projection_property"]["ok"] = prop_ok;
        ok = ok && prop_ok;
        state.payload["ok"] = ok;
    }

    state.exit_code = ok ? kExitOk : kExitPropertyFailure;
}

// ---- census ---------------------------------------------------------------

void run_census(CliState& state, const std::string& input, bool pinned, const std::string& mode,
                double tolerance, bool lenient) {
    const auto config = load_config(input);
    const auto kind = config_kind(config);
    state.command = "census";
    state.parameters = {{"input_kind", kind},
                        {"pinned", pinned},
                        {"mode", mode},
                        {"tolerance", tolerance},
                        {"lenient", lenient}};

    CensusOptions options;
    options.tolerance = tolerance;
    options.lenient = lenient;
    options.threads = state.threads;

    CensusReport report;
    if (pinned) {
        const auto* spiral = std::get_if<SpiralConfig>(&config);
        if (spiral == nullptr) {
            throw InvalidParameter("--pinned applies to spiral configurations only, got '" +
                                   kind + "'");
        }
        report = census_pinned_spiral(*spiral, options);
    } else {
        const auto rational = rational_planar_points(config);
        const bool want_exact = mode == "exact" || (mode == "auto" && rational.has_value());
        if (want_exact) {
            if (!rational) {
                throw InvalidParameter(
                    "exact census needs rational coordinates; this configuration has numeric "
                    "points");
            }
            report = census_bruteforce(*rational, options);
        } else {
            report = census_bruteforce(planar_points(config), config_precision_bits(config),
                                       options);
        }
    }

    state.payload = census_report_to_json(report);
    if (pinned) {
        const std::size_t bound = 3 * binomial2(report.n_points - 1);
        const bool satisfied = report.distinct_count <= bound;
        state.payload["pinned_bound"] = bound;
        state.payload["pinned_bound_satisfied"] = satisfied;
        if (!satisfied) state.exit_code = kExitPropertyFailure;
    }

    std::ostringstream csv;
    census_report_to_csv(csv, report);
    state.csv = csv.str();
}

// ---- subset ---------------------------------------------------------------

void run_subset(CliState& state, const std::string& input, const std::string& subset_list,
                bool threshold_check, const std::string& search, std::size_t trials,
                double tolerance, std::size_t budget) {
    const auto config = load_config(input);
    const auto kind = config_kind(config);
    state.command = "subset";
    state.parameters = {{"input_kind", kind},   {"subset", subset_list},
                        {"threshold_check", threshold_check}, {"search", search},
                        {"trials", trials},     {"tolerance", tolerance},
                        {"budget", budget}};

    const int selected = (subset_list.empty() ? 0 : 1) + (threshold_check ? 1 : 0) +
                         (search.empty() ? 0 : 1);
    if (selected != 1) {
        throw InvalidParameter("choose exactly one of --subset, --threshold-check, --search");
    }

    if (!search.empty()) {
        SubsetSearchStrategy strategy;
        if (search == "greedy") {
            strategy = SubsetSearchStrategy::greedy;
        } else if (search == "exhaustive") {
            strategy = SubsetSearchStrategy::exhaustive;
        } else {
            throw InvalidParameter("unknown search strategy '" + search + "'");
        }
        const auto result = search_distinct_angle_subset(
            planar_points(config), config_precision_bits(config), strategy, budget, tolerance);
        state.payload = subset_search_to_json(result);
        return;
    }

    const auto* spiral = std::get_if<SpiralConfig>(&config);
    if (spiral == nullptr) {
        throw InvalidParameter("witness operations need a spiral configuration, got '" + kind +
                               "'");
    }

    if (!subset_list.empty()) {
        const auto indices = parse_index_list(subset_list);
        const auto witness = repeated_angle_witness(*spiral, indices, tolerance);
        if (witness) {
            state.payload = {{"found", true}, {"witness", witness_to_json(*witness)}};
        } else {
            state.payload = {{"found", false}, {"witness", nullptr}};
        }
        return;
    }

    // Threshold check: every sampled subset of size rgen_threshold(n) must
    // contain an equivalent triple pair, hence a repeated-angle witness.
    const long n = static_cast<long>(spiral->n);
    const long m_star = rgen_threshold(n);
    if (m_star > n) {
        throw InvalidParameter("threshold " + std::to_string(m_star) +
                               " exceeds the configuration size " + std::to_string(n));
    }
    SplitMix64 rng(state.seed);
    std::size_t found = 0;
    double max_discrepancy = 0.0;
    Json failures = Json::array();
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto subset = rng.sample_subset(n, m_star);
        const auto witness = repeated_angle_witness(*spiral, subset, tolerance);
        if (witness) {
            ++found;
            max_discrepancy = std::max(max_discrepancy, to_double(witness->discrepancy));
        } else {
            failures.push_back(subset);
        }
    }
    const bool all_found = found == trials;
    state.payload = {{"n", n},
                     {"m_star", m_star},
                     {"trials", trials},
                     {"witnesses_found", found},
                     {"all_found", all_found},
                     {"max_discrepancy", max_discrepancy},
                     {"failures", std::move(failures)}};
    if (!all_found) state.exit_code = kExitPropertyFailure;
}

// ---- formula ----------------------------------------------------------------

void run_formula_nrd(CliState& state, std::int64_t r, int d) {
    state.command = "formula nrd";
    state.parameters = {{"r", r}, {"d", d}};
    state.payload = {{"r", r}, {"d", d}, {"n_r_d", n_r_d(r, d).str()}};
}

void run_formula_threshold(CliState& state, long n) {
    state.command = "formula rgen-threshold";
    state.parameters = {{"n", n}};
    state.payload = {{"n", n},
                     {"m_star", rgen_threshold(n)},
                     {"upper_bound", rgen_threshold_bound(n)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"point-configuration laboratory for distinct-angle experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CliState state;
    app.add_option("--output", state.output, "write the JSON payload to this path")
        ->type_name("PATH");
    app.add_option("--seed", state.seed, "seed for all randomized choices");
    app.add_option("--precision-bits", state.precision_bits,
                   "working precision in bits (>= 64)");
    app.add_option("--threads", state.threads, "worker threads (0 = auto)");

    // gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a point configuration");
    gen->require_subcommand(1);
    gen->fallthrough();

    std::size_t spiral_n = 0;
    std::string spiral_beta;
    auto* gen_spiral = gen->add_subcommand("spiral", "logarithmic spiral points");
    gen_spiral->fallthrough();
    gen_spiral->add_option("--n", spiral_n, "point count")->required();
    gen_spiral->add_option("--beta", spiral_beta, "angular step (decimal; default 1/n)");
    gen_spiral->callback([&] { run_gen_spiral(state, spiral_n, spiral_beta); });

    std::int64_t grid_r = 0;
    int grid_d = 0;
    std::size_t grid_cap = kDefaultPointCap;
    auto* gen_grid = gen->add_subcommand("grid", "integer grid {0..r}^d");
    gen_grid->fallthrough();
    gen_grid->add_option("--r", grid_r, "coordinate bound")->required();
    gen_grid->add_option("--d", grid_d, "dimension")->required();
    gen_grid->add_option("--cap", grid_cap, "point-count cap");
    gen_grid->callback([&] { run_gen_grid(state, grid_r, grid_d, grid_cap); });

    std::int64_t shell_r = 0;
    int shell_d = 0;
    std::size_t shell_cap = kDefaultPointCap;
    auto* gen_shell = gen->add_subcommand("shell", "largest sphere shell of the grid");
    gen_shell->fallthrough();
    gen_shell->add_option("--r", shell_r, "coordinate bound")->required();
    gen_shell->add_option("--d", shell_d, "dimension")->required();
    gen_shell->add_option("--cap", shell_cap, "point-count cap");
    gen_shell->callback([&] { run_gen_shell(state, shell_r, shell_d, shell_cap); });

    std::size_t ngon_n = 0;
    auto* gen_ngon = gen->add_subcommand("ngon", "regular n-gon vertices");
    gen_ngon->fallthrough();
    gen_ngon->add_option("--n", ngon_n, "vertex count")->required();
    gen_ngon->callback([&] { run_gen_ngon(state, ngon_n); });

    std::string project_input;
    unsigned project_retries = 16;
    double project_margin = 1e-12;
    auto* gen_project = gen->add_subcommand("project", "generic planar projection of a lattice");
    gen_project->fallthrough();
    gen_project->add_option("--input", project_input, "grid or shell configuration file")
        ->required();
    gen_project->add_option("--max-retries", project_retries, "frame redraws before giving up");
    gen_project->add_option("--margin", project_margin, "image general-position margin");
    gen_project->callback(
        [&] { run_gen_project(state, project_input, project_retries, project_margin); });

    // verify --------------------------------------------------------------
    std::string verify_input, verify_mode = "auto";
    double verify_margin = 1e-12;
    std::size_t verify_proj_trials = 0;
    double verify_proj_tol = 1e-12;
    auto* verify = app.add_subcommand("verify", "general-position verification");
    verify->fallthrough();
    verify->add_option("input", verify_input, "configuration file")->required();
    verify->add_option("--mode", verify_mode, "auto, exact or numeric")
        ->check(CLI::IsMember({"auto", "exact", "numeric"}));
    verify->add_option("--margin", verify_margin, "numeric degeneracy margin");
    verify->add_option("--projection-trials", verify_proj_trials,
                       "also test projected-distance equality on this many quadruples");
    verify->add_option("--projection-tol", verify_proj_tol,
                       "relative error bound for the projection property");
    verify->callback([&] {
        run_verify(state, verify_input, verify_mode, verify_margin, verify_proj_trials,
                   verify_proj_tol);
    });

    // census --------------------------------------------------------------
    std::string census_input, census_mode = "auto";
    bool census_pinned_flag = false, census_lenient = false;
    double census_tol = 1e-9;
    auto* census = app.add_subcommand("census", "distinct-angle census");
    census->fallthrough();
    census->add_option("input", census_input, "configuration file")->required();
    census->add_flag("--pinned", census_pinned_flag,
                     "restrict to triples containing the spiral anchor");
    census->add_option("--mode", census_mode, "auto, exact or numeric")
        ->check(CLI::IsMember({"auto", "exact", "numeric"}));
    census->add_option("--tol", census_tol, "numeric merge tolerance in radians");
    census->add_flag("--lenient", census_lenient, "skip degenerate triples instead of failing");
    census->callback([&] {
        run_census(state, census_input, census_pinned_flag, census_mode, census_tol,
                   census_lenient);
    });

    // subset --------------------------------------------------------------
    std::string subset_input, subset_list, subset_search;
    bool subset_threshold = false;
    std::size_t subset_trials = 100, subset_budget = 1'000'000;
    double subset_tol = 1e-9;
    auto* subset = app.add_subcommand("subset", "equivalent-triple and subset experiments");
    subset->fallthrough();
    subset->add_option("input", subset_input, "configuration file")->required();
    subset->add_option("--subset", subset_list, "comma-separated 1-based indices");
    subset->add_flag("--threshold-check", subset_threshold,
                     "sample subsets of size rgen-threshold(n) and demand witnesses");
    subset->add_option("--search", subset_search, "greedy or exhaustive distinct-angle search");
    subset->add_option("--trials", subset_trials, "threshold-check sample count");
    subset->add_option("--tol", subset_tol, "witness discrepancy tolerance in radians");
    subset->add_option("--budget", subset_budget, "search candidate budget");
    subset->callback([&] {
        run_subset(state, subset_input, subset_list, subset_threshold, subset_search,
                   subset_trials, subset_tol, subset_budget);
    });

    // formula -------------------------------------------------------------
    auto* formula = app.add_subcommand("formula", "closed-form evaluators");
    formula->require_subcommand(1);
    formula->fallthrough();

    std::int64_t nrd_r = 0;
    int nrd_d = 0;
    auto* formula_nrd = formula->add_subcommand("nrd", "reduced-triple count ((r+1)^3 - r^3)^d");
    formula_nrd->fallthrough();
    formula_nrd->add_option("--r", nrd_r, "coordinate bound")->required();
    formula_nrd->add_option("--d", nrd_d, "dimension")->required();
    formula_nrd->callback([&] { run_formula_nrd(state, nrd_r, nrd_d); });

    long threshold_n = 0;
    auto* formula_threshold =
        formula->add_subcommand("rgen-threshold", "smallest m with C(m,2) >= 2n-1");
    formula_threshold->fallthrough();
    formula_threshold->add_option("--n", threshold_n, "ground-set size")->required();
    formula_threshold->callback([&] { run_formula_threshold(state, threshold_n); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TooLarge& e) {
        std::cerr << "enumeration too large: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionMismatch& e) {
        std::cerr << "dimension mismatch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        // Checked-property failures: discrepancies, degenerate data, retries.
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitPropertyFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        emit(state);
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kExitUsage;
    }
    return state.exit_code;
}
