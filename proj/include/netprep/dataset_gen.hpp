#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netprep/dataset.hpp"

namespace netprep::gen {

enum class Split { L, T };
enum class PresetSet { MVF, MVRF };
enum class Normalization { None, DN, MN, SN };

struct VariantSpec {
  Split split = Split::L;
  PresetSet feature_set = PresetSet::MVF;
  bool pmf = false;
  Normalization normalization = Normalization::None;

  /// Normalization requires PMF.
  [[nodiscard]] bool valid() const noexcept { return pmf || normalization == Normalization::None; }

  friend bool operator==(const VariantSpec&, const VariantSpec&) = default;
};

/// {L|T}_{MVF|MVRF}{+PMF|-PMF}{+DN|+MN|+SN|-N}
std::string variant_name(const VariantSpec& spec);
VariantSpec parse_variant_name(std::string_view name);

/// The 20 valid specs, L before T, MVF before MVRF.
std::vector<VariantSpec> all_variants();

FeatureSet preset(PresetSet set);

struct ParamFile {
  std::string path;  // relative to the output directory
  std::string sha256;

  friend bool operator==(const ParamFile&, const ParamFile&) = default;
};

struct ManifestEntry {
  std::string name;
  std::string file;
  std::string sha256;
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::optional<ParamFile> pmf_params;
  std::optional<ParamFile> norm_params;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
  std::vector<ManifestEntry> datasets;
  std::vector<ManifestEntry> baselines;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

std::string to_json(const Manifest& manifest);
Manifest manifest_from_json(std::string_view text);
Manifest read_manifest_file(const std::filesystem::path& path);

struct GenerateOptions {
  /// Applied to the preset member names before projection, e.g. error_rate -> serror_rate.
  std::map<std::string, std::string> renames;
  std::size_t workers = 1;
  /// Also emit the IANA-number baseline for both presets.
  bool iana_baseline = false;
};

/**
 * Writes the 20 variant files to <out>/<name>.arff, fitted parameters to
 * <out>/params/<L name>.pmf and .norm, and <out>/manifest.json. All transforms
 * are fitted on the L projection; each T entry points at its L parameter files.
 */
Manifest generate_variants(const Dataset& train, const Dataset& test, const std::filesystem::path& out,
                           const GenerateOptions& options = {});

/// symbol -> assigned number, per feature.
using IanaTable = std::map<std::string, std::map<std::string, double, std::less<>>, std::less<>>;

/// Lines of `feature<TAB>symbol<TAB>number`; '#' starts a comment.
IanaTable parse_iana_table(std::istream& in);
/// The table shipped in data/iana_numbers.tsv.
const IanaTable& bundled_iana_table();

/// Replaces every nominal symbol by its table number.
Dataset iana_encode(const Dataset& dataset, const IanaTable& table);

/// Emits {L|T}_{set}+IANA+MN under <out>; returns the L and T entries.
std::vector<ManifestEntry> generate_baseline_iana(const Dataset& train, const Dataset& test, PresetSet set,
                                                  const std::filesystem::path& out, const GenerateOptions& options = {},
                                                  const IanaTable& table = bundled_iana_table());

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace netprep::gen
