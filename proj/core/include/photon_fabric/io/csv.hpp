// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "photon_fabric/devices/metrics.hpp"
#include "photon_fabric/topopt/optimizer.hpp"

namespace pf::io {

// Leading comment lines that make an artifact self-describing.
struct ArtifactHeader {
  std::string version;      // toolkit version line
  std::string config_hash;  // hex digest of the canonical config, empty when not applicable
};

[[nodiscard]] std::string toolkit_version();

// Shortest text that round-trips a double.
[[nodiscard]] std::string format_double(double v);

// Row-major, one CSV row per y-line (j), x (i) along the row. `a` is indexed (i, j).
void write_field_csv(const std::string& path, const Eigen::ArrayXXd& a, const ArtifactHeader& header = {});
// Inverse of write_field_csv; '#' lines are skipped. Throws InvalidArgument on ragged rows.
[[nodiscard]] Eigen::ArrayXXd read_field_csv(const std::string& path);

// iteration, objective, beta, then one column per (condition, target) in `columns` order.
void write_history_csv(const std::string& path, const std::vector<topopt::HistoryRow>& history,
                       const std::vector<std::string>& columns, const ArtifactHeader& header = {});

// wavelength_nm, then one power column per port.
void write_spectra_csv(const std::string& path, const devices::Spectra& spectra, const ArtifactHeader& header = {});

// Generic table with a header row.
void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows, const ArtifactHeader& header = {});

}  // namespace pf::io
