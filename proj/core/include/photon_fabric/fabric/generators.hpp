// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "photon_fabric/fabric/layout.hpp"

namespace pf::fabric {

struct ArchitectureSpec {
  std::string kind;  // crosspoint, spanke_benes, piloss, clos_benes_16, select_8to1, select_1to8, mux8, demux8,
                     // multicrossbar, wss_6x6x4, wss_8x8x3, wcc_4x4x4
  int n = 0;         // ports; 0 selects the kind's default
  int colors = 0;    // wavelength channels; 0 selects the kind's default
};

[[nodiscard]] const std::vector<std::string>& architecture_kinds();

// Throws UnsupportedSize outside a generator's domain and InvalidArgument for unknown kinds.
[[nodiscard]] CircuitLayout generate(const ArchitectureSpec& spec);

// Channel plan centred on 1550 nm with 2 nm spacing.
[[nodiscard]] std::vector<double> default_palette(int colors);

// Sets color = palette[color_index] on every indexed placement. Throws PaletteTooSmall when the
// palette is shorter than the largest index or repeats a wavelength the layout uses.
[[nodiscard]] CircuitLayout assign_colors(const CircuitLayout& layout, const std::vector<double>& palette);

// Colors referenced by a layout's color-dedicated elements, ascending.
[[nodiscard]] std::vector<double> layout_colors(const CircuitLayout& layout);

// Appends columns of passive crossovers that move the signal on rail offset + r to rail
// offset + perm[r], by odd-even transposition. Emits exactly inversions(perm) crossovers.
void append_permutation(CircuitLayout& layout, const std::vector<int>& perm, int offset = 0);

[[nodiscard]] int inversions(const std::vector<int>& perm);

}  // namespace pf::fabric
