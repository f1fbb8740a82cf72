#ifndef RISDM_HARNESS_OUTPUTS_HPP
#define RISDM_HARNESS_OUTPUTS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "risdm/harness/sweep.hpp"

namespace risdm {

// 12-significant-digit decimal formatting used by every emitted file.
std::string format_number(double v);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);

// Self-contained SVG line plot, one series per (algorithm, stream) holding
// the per-value mean secrecy rate over seeds.
std::string records_to_svg(const std::vector<ExperimentRecord>& records);

// UTF-8, comma-separated, LF line endings; byte-identical for equal inputs.
void emit_outputs(const std::vector<ExperimentRecord>& records,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path* svg_path = nullptr);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace risdm

#endif
