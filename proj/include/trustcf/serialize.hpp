#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trustcf/depreciation.hpp"
#include "trustcf/hazard.hpp"
#include "trustcf/ingest.hpp"
#include "trustcf/pricing.hpp"
#include "trustcf/simulation.hpp"

namespace trustcf {

/// Hazard model JSON: window scalars, n, the explicit `support` age list and
/// the index-aligned `lambda` / `f_hat` / `c_hat` arrays.
std::string hazard_to_json(const HazardModel& model);
HazardModel hazard_from_json(const std::string& text);
void save_hazard(const HazardModel& model, const std::string& path);
HazardModel load_hazard(const std::string& path);

/// Price report JSON; money fields are rounded to cents.
std::string price_report_to_json(const PriceReport& report);
void save_price_report(const PriceReport& report, const std::string& path);

/// Simulated PV summary JSON {"mean","median","sd","cte","alpha","replicates","seed"}.
std::string empirics_to_json(const ApvEmpirics& empirics);
void save_empirics(const ApvEmpirics& empirics, const std::string& path);

/// Cash flow bands CSV: `month,mean,p<p1>,p<p2>,...`, amounts in cents.
std::string bands_to_csv(const BandMatrix& bands);
void save_bands(const BandMatrix& bands, const std::string& path);

/// Depreciation curve CSV `age,z` with full-precision ratios.
std::string curve_to_csv(const DepreciationCurve& curve);
DepreciationCurve curve_from_csv(const std::string& text);
void save_curve(const DepreciationCurve& curve, const std::string& path);
DepreciationCurve load_curve(const std::string& path);

/// Lease records back to the portfolio CSV schema (round-trip safe).
std::string portfolio_to_csv(const std::vector<LeaseRecord>& records);

/// 64-bit FNV-1a content hashes for manifests.
std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t fnv1a_file(const std::string& path);

/// Provenance sidecar written next to every CLI output.
struct RunManifest {
    std::string command;                    ///< reconstructed invocation
    std::string version;                    ///< library version
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::vector<std::pair<std::string, std::string>> parameters;  ///< name, value
    std::vector<std::pair<std::string, std::uint64_t>> inputs;    ///< path, content hash
};

std::string manifest_to_json(const RunManifest& manifest);
/// Writes `<output_path>.manifest.json`.
void save_manifest(const RunManifest& manifest, const std::string& output_path);

/// Whole-file helpers.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace trustcf
