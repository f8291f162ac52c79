// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/io/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include "photon_fabric/errors.hpp"

namespace pf::io {

void write_pgm(const std::string& path, const Eigen::ArrayXXd& a, double lo, double hi) {
  if (!(hi > lo)) throw InvalidArgument("raster range must satisfy hi > lo");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path);
  const auto w = a.rows();
  const auto h = a.cols();
  out << "P5\n" << w << ' ' << h << "\n255\n";
  std::vector<unsigned char> row(static_cast<size_t>(w));
  for (Eigen::Index j = h - 1; j >= 0; --j) {
    for (Eigen::Index i = 0; i < w; ++i) {
      const double t = std::clamp((a(i, j) - lo) / (hi - lo), 0.0, 1.0);
      row[static_cast<size_t>(i)] = static_cast<unsigned char>(std::lround(t * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw InvalidArgument("failed writing " + path);
}

}  // namespace pf::io
