#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "netprep/dataset.hpp"

namespace netprep::io {

/**
 * Reads the ARFF subset used by NSL-KDD style files.
 *
 * Supported: @relation, @attribute with numeric/real/integer or {v1,...}
 * types, @data followed by dense comma separated rows, '%' comment lines,
 * single or double quoted tokens. Keywords are case-insensitive. The last
 * attribute named "class" becomes the label column and is binarized with
 * label_from_symbol(). Errors throw netprep::parse_error with a line number.
 */
Dataset read_arff(std::istream& in);
Dataset read_arff_file(const std::filesystem::path& path);

/// Header only (no data rows needed); returns the feature descriptors without
/// the class attribute. Used as the schema for CSV input.
std::vector<FeatureDescriptor> read_arff_schema(std::istream& in);
std::vector<FeatureDescriptor> read_arff_schema_file(const std::filesystem::path& path);

void write_arff(const Dataset& dataset, std::ostream& out);
void write_arff_file(const Dataset& dataset, const std::filesystem::path& path);

struct CsvOptions {
  std::string name = "dataset";
  // Columns after the label that are skipped (NSL-KDD's difficulty score).
  std::size_t ignored_trailing = 0;
};

/// Headerless CSV: one column per schema descriptor followed by the label.
Dataset read_csv(std::istream& in, const std::vector<FeatureDescriptor>& schema, const CsvOptions& options = {});
Dataset read_csv_file(const std::filesystem::path& path, const std::vector<FeatureDescriptor>& schema,
                      const CsvOptions& options = {});

void write_csv(const Dataset& dataset, std::ostream& out);
void write_csv_file(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace netprep::io
