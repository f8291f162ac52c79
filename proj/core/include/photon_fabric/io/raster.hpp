// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <Eigen/Core>

namespace pf::io {

// Binary 8-bit PGM of `a` (indexed (i, j)); lo maps to black, hi to white, largest j on top.
void write_pgm(const std::string& path, const Eigen::ArrayXXd& a, double lo = 0.0, double hi = 1.0);

}  // namespace pf::io
