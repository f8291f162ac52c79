// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace pf {

// Wavelength conversions for serialized files; nanometres are rounded to 1e-6 nm so that
// round trips through text stay stable.
[[nodiscard]] inline double to_nm(double metres) { return std::round(metres * 1e15) / 1e6; }
[[nodiscard]] inline double from_nm(double nm) { return nm / 1e9; }

}  // namespace pf
