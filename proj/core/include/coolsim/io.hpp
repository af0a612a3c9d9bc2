// io.hpp — deterministic CSV / JSON emission for runs, scans and comparisons.
// CSV: single header row, '.' decimal, %.12e scientific; report.json carries
// the full resolved config so every output is reproducible from its sidecar.

#pragma once

#include <string>
#include <vector>

#include "coolsim/analysis.hpp"
#include "coolsim/config.hpp"

namespace coolsim {

std::string format_sci(double v);

// generic single-header-row CSV writer; columns are parallel vectors
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns);

void write_meanfield_csv(const std::string& path, const MeanFieldTrajectory& traj,
                         std::size_t stride);

// t, N_b [, nu, per-source columns]
void write_nb_csv(const std::string& path, const CoolingReport& report);

void write_scan_csv(const std::string& path, const ScanTable& table);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace coolsim
