#pragma once

#include <string>
#include <vector>

#include "cdce/experiment.hpp"
#include "cdce/types.hpp"

namespace cdce {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

inline constexpr const char* kCsvHeader = "estimator,snr_db,trials,nmse_db,stderr_db";

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const std::string& text);

/// {"rows": R, "cols": C, "re": [...], "im": [...]}, entries in column-major order.
std::string grid_to_json(const CMatrix& m);
CMatrix grid_from_json(const std::string& text);

/// Writes `content` to `path`; failures raise Error naming the path.
void write_text_file(const std::string& path, const std::string& content);

/// Serializes rows in the given format and writes them to `path`.
void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path);

}  // namespace cdce
