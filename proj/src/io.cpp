#include "anglelab/io.hpp"

#include "anglelab/errors.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace anglelab {

namespace {

Json real_points_to_json(const std::vector<RealPoint2>& points) {
    Json arr = Json::array();
    for (const auto& p : points) {
        arr.push_back(Json::array({real_str(p.x), real_str(p.y)}));
    }
    return arr;
}

std::vector<RealPoint2> real_points_from_json(const Json& arr, unsigned bits) {
    std::vector<RealPoint2> out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        out.push_back(RealPoint2{make_real(item.at(0).get<std::string>(), bits),
                                 make_real(item.at(1).get<std::string>(), bits), bits});
    }
    return out;
}

Json lattice_points_to_json(const std::vector<LatticePoint>& points) {
    Json arr = Json::array();
    for (const auto& p : points) arr.push_back(p);
    return arr;
}

std::vector<LatticePoint> lattice_points_from_json(const Json& arr) {
    std::vector<LatticePoint> out;
    out.reserve(arr.size());
    for (const auto& item : arr) out.push_back(item.get<LatticePoint>());
    return out;
}

Json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

template <std::size_t N>
Json witness_or_null(const std::optional<std::array<std::size_t, N>>& witness) {
    if (!witness) return nullptr;
    Json arr = Json::array();
    for (const auto i : *witness) arr.push_back(i);
    return arr;
}

}  // namespace

Json config_to_json(const Configuration& config) {
    Json j;
    j["kind"] = config_kind(config);
    j["precision_bits"] = config_precision_bits(config);

    struct Visitor {
        Json& j;

        void operator()(const SpiralConfig& c) const {
            j["parameters"] = {{"n", c.n}, {"beta", real_str(c.beta)}};
            j["points"] = real_points_to_json(c.points);
        }
        void operator()(const LatticeConfig& c) const {
            j["parameters"] = {{"r", c.r}, {"d", c.d}};
            j["points"] = lattice_points_to_json(c.points);
        }
        void operator()(const ShellConfig& c) const {
            j["parameters"] = {{"r", c.r}, {"d", c.d}, {"l", c.level}};
            j["mean_bound"] = rational_str(c.mean_bound);
            Json sizes = Json::array();
            for (const auto& [level, size] : c.level_sizes) {
                sizes.push_back(Json::array({level, size}));
            }
            j["level_sizes"] = std::move(sizes);
            j["points"] = lattice_points_to_json(c.points);
        }
        void operator()(const NgonConfig& c) const {
            j["parameters"] = {{"n", c.n}};
            j["points"] = real_points_to_json(c.points);
        }
        void operator()(const ProjectedConfig& c) const {
            Json params = {{"seed", c.frame.seed},
                           {"retries_used", c.frame.retries_used},
                           {"source_kind", c.source_kind},
                           {"source_r", c.source_r},
                           {"source_d", c.source_d}};
            if (c.source_level) params["source_l"] = *c.source_level;
            j["parameters"] = std::move(params);
            j["frame"] = frame_to_json(c.frame);
            j["points"] = real_points_to_json(c.points);
            j["source_points"] = lattice_points_to_json(c.source_points);
            j["source_collinear_free"] =
                c.source_collinear_free ? Json(*c.source_collinear_free) : Json(nullptr);
        }
        void operator()(const PlanarConfig& c) const {
            j["parameters"] = {{"coordinates", c.exact ? "rational" : "decimal"},
                               {"n", c.real_points.size()}};
            if (c.exact) {
                Json arr = Json::array();
                for (const auto& p : c.rational_points) {
                    arr.push_back(Json::array({rational_str(p.x), rational_str(p.y)}));
                }
                j["points"] = std::move(arr);
            } else {
                j["points"] = real_points_to_json(c.real_points);
            }
        }
    };
    std::visit(Visitor{j}, config);
    return j;
}

Configuration config_from_json(const Json& j) {
    try {
        const auto kind = j.at("kind").get<std::string>();
        const auto bits = j.at("precision_bits").get<unsigned>();
        const Json& params = j.at("parameters");

        if (kind == "spiral") {
            SpiralConfig c;
            c.n = params.at("n").get<std::size_t>();
            c.beta = make_real(params.at("beta").get<std::string>(), bits);
            c.precision_bits = bits;
            c.points = real_points_from_json(j.at("points"), bits);
            if (c.points.size() != c.n) throw IoError("spiral point count mismatch");
            return c;
        }
        if (kind == "grid") {
            LatticeConfig c;
            c.r = params.at("r").get<std::int64_t>();
            c.d = params.at("d").get<int>();
            c.points = lattice_points_from_json(j.at("points"));
            return c;
        }
        if (kind == "shell") {
            ShellConfig c;
            c.r = params.at("r").get<std::int64_t>();
            c.d = params.at("d").get<int>();
            c.level = params.at("l").get<std::int64_t>();
            c.mean_bound = parse_rational(j.at("mean_bound").get<std::string>());
            for (const auto& entry : j.at("level_sizes")) {
                c.level_sizes[entry.at(0).get<std::int64_t>()] = entry.at(1).get<std::size_t>();
            }
            c.points = lattice_points_from_json(j.at("points"));
            return c;
        }
        if (kind == "ngon") {
            NgonConfig c;
            c.n = params.at("n").get<std::size_t>();
            c.precision_bits = bits;
            c.points = real_points_from_json(j.at("points"), bits);
            return c;
        }
        if (kind == "projected") {
            ProjectedConfig c;
            c.frame.seed = params.at("seed").get<std::uint64_t>();
            c.frame.retries_used = params.at("retries_used").get<unsigned>();
            c.frame.precision_bits = bits;
            c.frame.d = j.at("frame").at("d").get<int>();
            for (const auto& v : j.at("frame").at("basis").at(0)) {
                c.frame.e1.push_back(make_real(v.get<std::string>(), bits));
            }
            for (const auto& v : j.at("frame").at("basis").at(1)) {
                c.frame.e2.push_back(make_real(v.get<std::string>(), bits));
            }
            c.points = real_points_from_json(j.at("points"), bits);
            c.source_kind = params.at("source_kind").get<std::string>();
            c.source_r = params.at("source_r").get<std::int64_t>();
            c.source_d = params.at("source_d").get<int>();
            if (params.contains("source_l")) {
                c.source_level = params.at("source_l").get<std::int64_t>();
            }
            c.source_points = lattice_points_from_json(j.at("source_points"));
            const auto& scf = j.at("source_collinear_free");
            if (!scf.is_null()) c.source_collinear_free = scf.get<bool>();
            return c;
        }
        if (kind == "points") {
            PlanarConfig c;
            c.precision_bits = bits;
            c.exact = params.at("coordinates").get<std::string>() == "rational";
            if (c.exact) {
                for (const auto& item : j.at("points")) {
                    c.rational_points.push_back(
                        RationalPoint2{parse_rational(item.at(0).get<std::string>()),
                                       parse_rational(item.at(1).get<std::string>())});
                }
                c.real_points.reserve(c.rational_points.size());
                for (const auto& p : c.rational_points) {
                    c.real_points.push_back(RealPoint2{rational_to_real(p.x, bits),
                                                       rational_to_real(p.y, bits), bits});
                }
            } else {
                c.real_points = real_points_from_json(j.at("points"), bits);
            }
            return c;
        }
        throw IoError("unknown configuration kind '" + kind + "'");
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed configuration: ") + e.what());
    }
}

void save_config(const std::filesystem::path& path, const Configuration& config) {
    write_text_file(path, dump_payload(config_to_json(config)));
}

Configuration load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw IoError("cannot parse '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

Json census_report_to_json(const CensusReport& report) {
    Json histogram = Json::array();
    for (const auto& [multiplicity, classes] : report.multiplicity_histogram) {
        histogram.push_back(Json::array({multiplicity, classes}));
    }
    Json j{{"n_points", report.n_points},
           {"mode", report.mode},
           {"tolerance", report.tolerance ? Json(*report.tolerance) : Json(nullptr)},
           {"distinct_count", report.distinct_count},
           {"histogram", std::move(histogram)},
           {"max_multiplicity", report.max_multiplicity},
           {"triples_enumerated", report.triples_enumerated},
           {"degenerate_skipped", report.degenerate_skipped},
           {"min_interclass_gap",
            report.min_interclass_gap ? Json(*report.min_interclass_gap) : Json(nullptr)},
           {"precision_bits", report.precision_bits},
           {"pinned", report.pinned}};
    return j;
}

void census_report_to_csv(std::ostream& out, const CensusReport& report) {
    out << "representative_radians,multiplicity\n";
    for (const auto& cls : report.classes) {
        out << real_str(cls.representative) << ',' << cls.multiplicity << '\n';
    }
}

Json general_position_to_json(const GeneralPositionReport& report) {
    return Json{{"ok", report.ok},
                {"mode", report.mode},
                {"margin", report.margin},
                {"collinearity_ok", report.collinearity_ok},
                {"concyclicity_ok", report.concyclicity_ok},
                {"min_collinearity_margin", finite_or_null(report.min_collinearity_margin)},
                {"min_concyclicity_margin", finite_or_null(report.min_concyclicity_margin)},
                {"collinearity_witness", witness_or_null(report.collinearity_witness)},
                {"concyclicity_witness", witness_or_null(report.concyclicity_witness)},
                {"triples_checked", report.triples_checked},
                {"quadruples_checked", report.quadruples_checked}};
}

Json lattice_position_to_json(const LatticePositionReport& report) {
    return Json{{"collinear_free", report.collinear_free},
                {"concyclic_free", report.concyclic_free},
                {"collinear_triples", report.collinear_triples},
                {"concyclic_quadruples", report.concyclic_quadruples},
                {"collinear_witness", witness_or_null(report.collinear_witness)},
                {"concyclic_witness", witness_or_null(report.concyclic_witness)},
                {"triples_checked", report.triples_checked},
                {"quadruples_checked", report.quadruples_checked}};
}

Json triple_pair_to_json(const IndexTriplePair& pair) {
    return Json{{"s", pair.s}, {"t", pair.t}, {"shift", pair.shift}};
}

Json witness_to_json(const RepeatedAngleWitness& witness) {
    Json j = triple_pair_to_json(witness.pair);
    j["angle_s"] = real_str(witness.angle_s);
    j["angle_t"] = real_str(witness.angle_t);
    j["discrepancy"] = real_str(witness.discrepancy);
    j["vertex_position"] = witness.vertex_position;
    return j;
}

Json frame_to_json(const ProjectionFrame& frame) {
    Json e1 = Json::array(), e2 = Json::array();
    for (const auto& v : frame.e1) e1.push_back(real_str(v));
    for (const auto& v : frame.e2) e2.push_back(real_str(v));
    return Json{{"d", frame.d}, {"basis", Json::array({std::move(e1), std::move(e2)})}};
}

Json projection_property_to_json(const ProjectionPropertyReport& report) {
    return Json{{"trials", report.trials},
                {"max_relative_error", report.max_relative_error},
                {"worst_quadruple", report.worst_quadruple}};
}

Json subset_search_to_json(const SubsetSearchResult& result) {
    return Json{{"subset", result.indices},
                {"size", result.indices.size()},
                {"certificate", census_report_to_json(result.certificate)},
                {"budget_exhausted", result.budget_exhausted},
                {"candidates_tested", result.candidates_tested}};
}

Json manifest_to_json(const RunManifest& manifest) {
    return Json{{"command", manifest.command},
                {"parameters", manifest.parameters},
                {"seed", manifest.seed},
                {"precision_bits", manifest.precision_bits},
                {"tool_version", manifest.tool_version},
                {"timestamp", manifest.timestamp}};
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string dump_payload(const Json& j) {
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace anglelab
