#include "anglelab/census.hpp"
#include "anglelab/configurations.hpp"
#include "anglelab/errors.hpp"
#include "anglelab/geometry.hpp"
#include "anglelab/io.hpp"
#include "anglelab/subset.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace py = pybind11;
using namespace anglelab;

namespace {

// Configurations cross into python as opaque handles; reports and witnesses
// cross as JSON strings that the package decodes.
struct ConfigHandle {
    Configuration config;

    std::string kind() const { return config_kind(config); }
    std::size_t size() const { return config_size(config); }
    unsigned precision_bits() const { return config_precision_bits(config); }

    std::vector<std::pair<double, double>> points() const {
        std::vector<std::pair<double, double>> out;
        const auto planar = planar_points(config);
        out.reserve(planar.size());
        for (const auto& p : planar) out.emplace_back(to_double(p.x), to_double(p.y));
        return out;
    }

    std::string to_json() const { return dump_payload(config_to_json(config)); }
};

RationalPoint2 point_from_strings(const std::pair<std::string, std::string>& p) {
    return RationalPoint2{parse_rational(p.first), parse_rational(p.second)};
}

Real beta_from_object(const py::object& beta, std::size_t n, unsigned bits) {
    if (beta.is_none()) return default_spiral_beta(n, bits);
    if (py::isinstance<py::str>(beta)) return make_real(beta.cast<std::string>(), bits);
    return make_real(beta.cast<double>(), bits);
}

CensusOptions census_options(double tolerance, bool lenient, int threads) {
    CensusOptions options;
    options.tolerance = tolerance;
    options.lenient = lenient;
    options.threads = threads;
    return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "point-configuration laboratory for distinct-angle experiments";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "AnglelabError");

    py::class_<ConfigHandle>(m, "Config")
        .def_property_readonly("kind", &ConfigHandle::kind)
        .def("__len__", &ConfigHandle::size)
        .def_property_readonly("precision_bits", &ConfigHandle::precision_bits)
        .def("points", &ConfigHandle::points,
             "planar points as (float, float) tuples, at double precision")
        .def("to_json", &ConfigHandle::to_json)
        .def("__repr__", [](const ConfigHandle& h) {
            return "<anglelab.Config kind='" + h.kind() + "' n=" + std::to_string(h.size()) + ">";
        });

    m.def(
        "spiral",
        [](std::size_t n, const py::object& beta, unsigned precision_bits) {
            const Real b = beta_from_object(beta, n, precision_bits);
            return ConfigHandle{Configuration(spiral_config(n, b, precision_bits))};
        },
        py::arg("n"), py::arg("beta") = py::none(),
        py::arg("precision_bits") = kDefaultPrecisionBits,
        "logarithmic-spiral points (e^{j beta}, j beta), j = 1..n; beta defaults to 1/n");

    m.def(
        "grid",
        [](std::int64_t r, int d) { return ConfigHandle{Configuration(grid(r, d))}; },
        py::arg("r"), py::arg("d"), "integer grid {0..r}^d in lexicographic order");

    m.def(
        "shell",
        [](std::int64_t r, int d) { return ConfigHandle{Configuration(best_shell(r, d))}; },
        py::arg("r"), py::arg("d"), "largest sphere shell of the grid (ties to the smaller level)");

    m.def(
        "ngon",
        [](std::size_t n, unsigned precision_bits) {
            return ConfigHandle{Configuration(regular_ngon(n, precision_bits))};
        },
        py::arg("n"), py::arg("precision_bits") = kDefaultPrecisionBits,
        "unit-circumradius regular n-gon");

    m.def(
        "project",
        [](const ConfigHandle& handle, std::uint64_t seed, unsigned max_retries, double margin) {
            const std::vector<LatticePoint>* pts = nullptr;
            std::string kind = handle.kind();
            std::int64_t r = 0;
            int d = 0;
            std::optional<std::int64_t> level;
            if (const auto* g = std::get_if<LatticeConfig>(&handle.config)) {
                pts = &g->points;
                r = g->r;
                d = g->d;
            } else if (const auto* s = std::get_if<ShellConfig>(&handle.config)) {
                pts = &s->points;
                r = s->r;
                d = s->d;
                level = s->level;
            } else {
                throw InvalidParameter("projection needs a grid or shell configuration");
            }
            ProjectionOptions options;
            options.max_retries = max_retries;
            options.gp_margin = margin;
            auto projected = generic_projection(*pts, seed, options);
            projected.source_kind = kind;
            projected.source_r = r;
            projected.source_d = d;
            projected.source_level = level;
            return ConfigHandle{Configuration(std::move(projected))};
        },
        py::arg("config"), py::arg("seed"), py::arg("max_retries") = 16,
        py::arg("margin") = 1e-12, py::call_guard<py::gil_scoped_release>(),
        "seeded generic planar projection of a lattice configuration");

    m.def(
        "load", [](const std::string& path) { return ConfigHandle{load_config(path)}; },
        py::arg("path"));
    m.def(
        "save",
        [](const ConfigHandle& handle, const std::string& path) {
            save_config(path, handle.config);
        },
        py::arg("config"), py::arg("path"));

    m.def(
        "general_position_json",
        [](const ConfigHandle& handle, const std::string& mode, double margin, int threads) {
            int lattice_d = 0;
            const std::vector<LatticePoint>* lattice_pts = nullptr;
            if (const auto* g = std::get_if<LatticeConfig>(&handle.config)) {
                lattice_d = g->d;
                lattice_pts = &g->points;
            } else if (const auto* s = std::get_if<ShellConfig>(&handle.config)) {
                lattice_d = s->d;
                lattice_pts = &s->points;
            }
            if (lattice_pts != nullptr && lattice_d > 2 && mode != "numeric") {
                const auto report = lattice_general_position(*lattice_pts);
                Json j = lattice_position_to_json(report);
                j["ok"] = report.collinear_free;
                j["mode"] = "exact";
                return dump_payload(j);
            }
            const auto rational = rational_planar_points(handle.config);
            if (mode == "exact" || (mode == "auto" && rational.has_value())) {
                if (!rational) {
                    throw InvalidParameter("exact verification needs rational coordinates");
                }
                return dump_payload(general_position_to_json(
                    general_position_exact(*rational, threads)));
            }
            return dump_payload(general_position_to_json(
                general_position_numeric(planar_points(handle.config),
                                         config_precision_bits(handle.config), margin, threads)));
        },
        py::arg("config"), py::arg("mode") = "auto", py::arg("margin") = 1e-12,
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>(),
        "general-position report as a JSON string");

    m.def(
        "census_json",
        [](const ConfigHandle& handle, bool pinned, const std::string& mode, double tolerance,
           bool lenient, int threads) {
            const auto options = census_options(tolerance, lenient, threads);
            CensusReport report;
            if (pinned) {
                const auto* spiral = std::get_if<SpiralConfig>(&handle.config);
                if (spiral == nullptr) {
                    throw InvalidParameter("pinned census needs a spiral configuration");
                }
                report = census_pinned_spiral(*spiral, options);
            } else {
                const auto rational = rational_planar_points(handle.config);
                if (mode == "exact" || (mode == "auto" && rational.has_value())) {
                    if (!rational) {
                        throw InvalidParameter("exact census needs rational coordinates");
                    }
                    report = census_bruteforce(*rational, options);
                } else {
                    report = census_bruteforce(planar_points(handle.config),
                                               config_precision_bits(handle.config), options);
                }
            }
            return dump_payload(census_report_to_json(report));
        },
        py::arg("config"), py::arg("pinned") = false, py::arg("mode") = "auto",
        py::arg("tolerance") = 1e-9, py::arg("lenient") = false, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "distinct-angle census report as a JSON string");

    m.def(
        "find_equivalent_triples",
        [](const std::vector<long>& q, long n) -> py::object {
            const auto pair = find_equivalent_triples(q, n);
            if (!pair) return py::none();
            return py::make_tuple(py::make_tuple(pair->s[0], pair->s[1], pair->s[2]),
                                  py::make_tuple(pair->t[0], pair->t[1], pair->t[2]),
                                  pair->shift);
        },
        py::arg("q"), py::arg("n"),
        "((s1,s2,s3), (t1,t2,t3), shift) for the smallest repeated difference, or None");

    m.def(
        "repeated_angle_witness_json",
        [](const ConfigHandle& handle, const std::vector<long>& subset,
           double tolerance) -> py::object {
            const auto* spiral = std::get_if<SpiralConfig>(&handle.config);
            if (spiral == nullptr) {
                throw InvalidParameter("witness extraction needs a spiral configuration");
            }
            const auto witness = repeated_angle_witness(*spiral, subset, tolerance);
            if (!witness) return py::none();
            return py::str(dump_payload(witness_to_json(*witness)));
        },
        py::arg("config"), py::arg("subset"), py::arg("tolerance") = 1e-9);

    m.def("rgen_threshold", &rgen_threshold, py::arg("n"),
          "smallest m with C(m,2) >= 2n-1");
    m.def("rgen_threshold_bound", &rgen_threshold_bound, py::arg("n"));

    m.def(
        "n_r_d", [](std::int64_t r, int d) { return n_r_d(r, d).str(); }, py::arg("r"),
        py::arg("d"), "((r+1)^3 - r^3)^d as a decimal string");

    m.def(
        "count_translation_classes",
        [](const ConfigHandle& handle) {
            const std::vector<LatticePoint>* pts = nullptr;
            if (const auto* g = std::get_if<LatticeConfig>(&handle.config)) pts = &g->points;
            if (const auto* s = std::get_if<ShellConfig>(&handle.config)) pts = &s->points;
            if (pts == nullptr) {
                throw InvalidParameter("translation classes need a lattice configuration");
            }
            return count_translation_classes(*pts);
        },
        py::arg("config"));

    m.def(
        "verify_projection_property_json",
        [](const ConfigHandle& handle, std::size_t trials, std::uint64_t seed) {
            const auto* projected = std::get_if<ProjectedConfig>(&handle.config);
            if (projected == nullptr) {
                throw InvalidParameter("needs a projected configuration");
            }
            return dump_payload(projection_property_to_json(verify_projection_property(
                projected->source_points, projected->frame, trials, seed)));
        },
        py::arg("config"), py::arg("trials") = 1000, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "search_distinct_angle_subset_json",
        [](const ConfigHandle& handle, const std::string& strategy, std::size_t budget,
           double tolerance) {
            SubsetSearchStrategy s;
            if (strategy == "greedy") {
                s = SubsetSearchStrategy::greedy;
            } else if (strategy == "exhaustive") {
                s = SubsetSearchStrategy::exhaustive;
            } else {
                throw InvalidParameter("unknown strategy '" + strategy + "'");
            }
            return dump_payload(subset_search_to_json(search_distinct_angle_subset(
                planar_points(handle.config), config_precision_bits(handle.config), s, budget,
                tolerance)));
        },
        py::arg("config"), py::arg("strategy") = "greedy", py::arg("budget") = 1'000'000,
        py::arg("tolerance") = 1e-9, py::call_guard<py::gil_scoped_release>());

    m.def(
        "orientation",
        [](const std::pair<std::string, std::string>& p, const std::pair<std::string, std::string>& q,
           const std::pair<std::string, std::string>& r) {
            return orientation(point_from_strings(p), point_from_strings(q),
                               point_from_strings(r));
        },
        py::arg("p"), py::arg("q"), py::arg("r"),
        "sign of the orientation determinant of exact rational points, e.g. ('1/2', '0')");

    m.def(
        "concyclic",
        [](const std::pair<std::string, std::string>& p, const std::pair<std::string, std::string>& q,
           const std::pair<std::string, std::string>& r,
           const std::pair<std::string, std::string>& s) {
            return concyclic(point_from_strings(p), point_from_strings(q), point_from_strings(r),
                             point_from_strings(s));
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s"));

    m.def(
        "angle_key",
        [](const std::pair<std::string, std::string>& vertex,
           const std::pair<std::string, std::string>& a,
           const std::pair<std::string, std::string>& b) {
            const auto key = angle_key_exact(point_from_strings(vertex), point_from_strings(a),
                                             point_from_strings(b));
            return py::make_tuple(key.dot_sign, rational_str(key.cos_sq));
        },
        py::arg("vertex"), py::arg("a"), py::arg("b"),
        "(dot sign, reduced cos^2 as 'num/den') identifying the angle exactly");
}
