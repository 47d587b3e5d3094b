#include "anglelab/io.hpp"

#include "anglelab/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace anglelab;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("anglelab_io_" + name);
}

}  // namespace

TEST_CASE("spiral configurations round-trip exactly") {
    const auto config = spiral_config(7, make_real("0.125", 128), 128);
    const auto j = config_to_json(Configuration(config));
    CHECK(j.at("kind") == "spiral");
    CHECK(j.at("precision_bits") == 128);
    CHECK(j.at("parameters").at("n") == 7);

    const auto loaded = config_from_json(j);
    const auto* spiral = std::get_if<SpiralConfig>(&loaded);
    REQUIRE(spiral != nullptr);
    CHECK(spiral->n == 7);
    CHECK(spiral->beta == config.beta);
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        CHECK(spiral->points[i].x == config.points[i].x);
        CHECK(spiral->points[i].y == config.points[i].y);
    }
}

TEST_CASE("lattice and shell configurations round-trip") {
    const auto shell = best_shell(2, 3);
    const auto j = config_to_json(Configuration(shell));
    CHECK(j.at("kind") == "shell");
    const auto loaded = config_from_json(j);
    const auto* back = std::get_if<ShellConfig>(&loaded);
    REQUIRE(back != nullptr);
    CHECK(back->points == shell.points);
    CHECK(back->level == shell.level);
    CHECK(back->mean_bound == shell.mean_bound);
    CHECK(back->level_sizes == shell.level_sizes);

    const auto g = grid(2, 2);
    const auto loaded_grid = config_from_json(config_to_json(Configuration(g)));
    CHECK(std::get<LatticeConfig>(loaded_grid).points == g.points);
}

TEST_CASE("projected configurations round-trip with their frame and source") {
    const auto shell = best_shell(2, 3);
    const auto projected = generic_projection(shell.points, 42);
    auto with_source = projected;
    with_source.source_kind = "shell";
    with_source.source_level = shell.level;
    with_source.source_r = shell.r;
    with_source.source_d = shell.d;

    const auto loaded = config_from_json(config_to_json(Configuration(with_source)));
    const auto* back = std::get_if<ProjectedConfig>(&loaded);
    REQUIRE(back != nullptr);
    CHECK(back->frame.seed == 42);
    CHECK(back->source_kind == "shell");
    CHECK(back->source_level == shell.level);
    CHECK(back->source_points == shell.points);
    for (std::size_t i = 0; i < projected.frame.e1.size(); ++i) {
        CHECK(back->frame.e1[i] == projected.frame.e1[i]);
        CHECK(back->frame.e2[i] == projected.frame.e2[i]);
    }
    for (std::size_t i = 0; i < projected.points.size(); ++i) {
        CHECK(back->points[i].x == projected.points[i].x);
    }
}

TEST_CASE("rational planar files round-trip exactly") {
    PlanarConfig planar;
    planar.exact = true;
    planar.precision_bits = 128;
    planar.rational_points = {RationalPoint2{Rational(1, 3), Rational(-2, 7)},
                              RationalPoint2{Rational(0), Rational(5)}};
    for (const auto& p : planar.rational_points) {
        planar.real_points.push_back(
            RealPoint2{rational_to_real(p.x, 128), rational_to_real(p.y, 128), 128});
    }
    const auto j = config_to_json(Configuration(planar));
    CHECK(j.at("points").at(0).at(0) == "1/3");
    const auto loaded = config_from_json(j);
    const auto* back = std::get_if<PlanarConfig>(&loaded);
    REQUIRE(back != nullptr);
    CHECK(back->exact);
    CHECK(back->rational_points[0].x == Rational(1, 3));
    CHECK(back->rational_points[0].y == Rational(-2, 7));
}

TEST_CASE("save and load through files") {
    const auto path = temp_file("config.json");
    const auto config = regular_ngon(5, 128);
    save_config(path, Configuration(config));
    const auto loaded = load_config(path);
    CHECK(config_kind(loaded) == "ngon");
    CHECK(config_size(loaded) == 5);
    fs::remove(path);
}

TEST_CASE("malformed files raise IoError") {
    CHECK_THROWS_AS(load_config(temp_file("missing.json")), IoError);

    const auto path = temp_file("broken.json");
    write_text_file(path, "{not json");
    CHECK_THROWS_AS(load_config(path), IoError);

    write_text_file(path, R"({"kind": "nope", "precision_bits": 128, "parameters": {}})");
    CHECK_THROWS_AS(load_config(path), IoError);

    write_text_file(path, R"({"kind": "spiral", "precision_bits": 128})");
    CHECK_THROWS_AS(load_config(path), IoError);
    fs::remove(path);
}

TEST_CASE("census report serialization carries the documented fields") {
    const auto config = spiral_config(6, make_real("0.1", 128), 128);
    const auto report = census_bruteforce(config.points, 128);
    const auto j = census_report_to_json(report);
    for (const char* field :
         {"mode", "tolerance", "distinct_count", "histogram", "max_multiplicity",
          "triples_enumerated", "min_interclass_gap", "n_points"}) {
        CHECK(j.contains(field));
    }
    CHECK(j.at("mode") == "numeric");
    CHECK(j.at("triples_enumerated") == binomial3(6));

    std::ostringstream csv;
    census_report_to_csv(csv, report);
    const auto text = csv.str();
    CHECK(text.starts_with("representative_radians,multiplicity\n"));
    std::size_t lines = 0;
    for (const char c : text) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == report.distinct_count + 1);
}

TEST_CASE("witness serialization") {
    const auto config = spiral_config(5, make_real("0.1", 128), 128);
    const auto witness = repeated_angle_witness(config, {1, 2, 3, 4, 5}, 1e-9);
    REQUIRE(witness.has_value());
    const auto j = witness_to_json(*witness);
    CHECK(j.at("s") == Json::array({2, 3, 4}));
    CHECK(j.at("t") == Json::array({1, 2, 3}));
    CHECK(j.at("shift") == 1);
    CHECK(j.contains("angle_s"));
    CHECK(j.contains("angle_t"));
    CHECK(j.contains("discrepancy"));
}

TEST_CASE("payload dumps are stable") {
    const Json j = {{"b", 1}, {"a", 2}};
    CHECK(dump_payload(j) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

TEST_CASE("manifests serialize every reproducibility field") {
    RunManifest manifest;
    manifest.command = "gen spiral";
    manifest.parameters = {{"n", 10}};
    manifest.seed = 7;
    manifest.precision_bits = 128;
    manifest.tool_version = "0.1.0";
    manifest.timestamp = "2026-01-01T00:00:00Z";
    const auto j = manifest_to_json(manifest);
    for (const char* field :
         {"command", "parameters", "seed", "precision_bits", "tool_version", "timestamp"}) {
        CHECK(j.contains(field));
    }
}
