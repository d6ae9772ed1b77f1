#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wnnsel/types.hpp"

namespace wnnsel {

inline constexpr const char* kDefaultMissingToken = "NA";

/// Reads an RFC-4180-style CSV (first row header, UTF-8, quoted fields
/// supported, leading '#' lines skipped). Without a schema, categories are
/// inferred per column with codes assigned by first-appearance order and the
/// tokens recorded as labels. With a schema, tokens must match a label, or be
/// the decimal form of a code in 1..k when the schema carries no labels.
CategoricalMatrix read_csv(const std::string& path,
                           const std::optional<std::vector<AttributeSpec>>& schema = std::nullopt,
                           const std::string& missing_token = kDefaultMissingToken);

/// Writes labels when present, integer codes otherwise, and missing_token for
/// missing cells. `comment_header`, if nonempty, is emitted verbatim as
/// leading '#' lines before the CSV header.
void write_csv(const CategoricalMatrix& z, const std::string& path,
               const std::string& missing_token = kDefaultMissingToken,
               const std::string& comment_header = "");

// Schema documents: JSON {"columns": [{"name", "num_categories", "labels"?}]}.
std::vector<AttributeSpec> read_schema(const std::string& path);
void write_schema(const std::vector<AttributeSpec>& schema, const std::string& path);

namespace detail {
// Parses one CSV record (handles quotes and embedded separators); exposed for tests.
std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_number);
}  // namespace detail

}  // namespace wnnsel
