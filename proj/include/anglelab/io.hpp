#pragma once

#include "anglelab/census.hpp"
#include "anglelab/configurations.hpp"
#include "anglelab/geometry.hpp"
#include "anglelab/subset.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace anglelab {

using Json = nlohmann::json;

/// Interchange format: {kind, parameters, precision_bits, points}. Planar
/// coordinates are decimal strings at full working precision; rational
/// coordinates are "num/den" strings; lattice coordinates are integer arrays.
Json config_to_json(const Configuration& config);
Configuration config_from_json(const Json& j);

void save_config(const std::filesystem::path& path, const Configuration& config);
Configuration load_config(const std::filesystem::path& path);

Json census_report_to_json(const CensusReport& report);

/// One row per angle class: representative value and multiplicity.
void census_report_to_csv(std::ostream& out, const CensusReport& report);

Json general_position_to_json(const GeneralPositionReport& report);
Json lattice_position_to_json(const LatticePositionReport& report);

Json witness_to_json(const RepeatedAngleWitness& witness);
Json triple_pair_to_json(const IndexTriplePair& pair);

Json frame_to_json(const ProjectionFrame& frame);

Json projection_property_to_json(const ProjectionPropertyReport& report);

Json subset_search_to_json(const SubsetSearchResult& result);

/// Reproducibility record for a CLI run. Identical manifests (timestamp
/// aside) reproduce byte-identical result payloads.
struct RunManifest {
    std::string command;
    Json parameters;
    std::uint64_t seed = 0;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::string tool_version;
    std::string timestamp;  // ISO-8601 UTC
};

Json manifest_to_json(const RunManifest& manifest);

std::string iso8601_utc_now();

/// Canonical serialization used for every payload file: 2-space indent,
/// sorted keys, trailing newline.
std::string dump_payload(const Json& j);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace anglelab
