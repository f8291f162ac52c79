// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "photon_fabric/errors.hpp"

#ifndef PF_VERSION
#define PF_VERSION "0.0.0"
#endif

namespace pf::io {

std::string toolkit_version() { return std::string("photon_fabric ") + PF_VERSION; }

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path, const ArtifactHeader& header) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot open " + path);
  if (!header.version.empty()) out << "# " << header.version << '\n';
  if (!header.config_hash.empty()) out << "# config_sha256 " << header.config_hash << '\n';
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw InvalidArgument("failed writing " + path);
}

}  // namespace

void write_field_csv(const std::string& path, const Eigen::ArrayXXd& a, const ArtifactHeader& header) {
  auto out = open_out(path, header);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i) out << ',';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  finish(out, path);
}

Eigen::ArrayXXd read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0;
      const auto* b = cell.data();
      while (b < cell.data() + cell.size() && *b == ' ') ++b;
      const auto res = std::from_chars(b, cell.data() + cell.size(), v);
      if (res.ec != std::errc()) throw InvalidArgument("non-numeric cell in " + path + ": '" + cell + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw InvalidArgument("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw InvalidArgument("empty field file " + path);
  Eigen::ArrayXXd a(static_cast<Eigen::Index>(rows.front().size()), static_cast<Eigen::Index>(rows.size()));
  for (size_t j = 0; j < rows.size(); ++j)
    for (size_t i = 0; i < rows[j].size(); ++i)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
  return a;
}

void write_history_csv(const std::string& path, const std::vector<topopt::HistoryRow>& history,
                       const std::vector<std::string>& columns, const ArtifactHeader& header) {
  auto out = open_out(path, header);
  out << "iteration,objective,beta";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (const auto& h : history) {
    out << h.iteration << ',' << format_double(h.objective) << ',' << format_double(h.beta);
    for (const auto& cond : h.powers)
      for (double p : cond) out << ',' << format_double(p);
    out << '\n';
  }
  finish(out, path);
}

void write_spectra_csv(const std::string& path, const devices::Spectra& spectra, const ArtifactHeader& header) {
  auto out = open_out(path, header);
  out << "wavelength_nm";
  for (const auto& p : spectra.ports) out << ",P_" << p;
  out << '\n';
  for (size_t k = 0; k < spectra.wavelength.size(); ++k) {
    out << format_double(spectra.wavelength[k] * 1e9);
    for (const auto& col : spectra.power) out << ',' << format_double(col[k]);
    out << '\n';
  }
  finish(out, path);
}

void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows, const ArtifactHeader& header) {
  auto out = open_out(path, header);
  for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& r : rows) {
    if (r.size() != columns.size()) throw InvalidArgument("table row width mismatch in " + path);
    for (size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << r[c];
    out << '\n';
  }
  finish(out, path);
}

}  // namespace pf::io
