// SPDX-License-Identifier: Apache-2.0
#include "photon_fabric/fabric/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "photon_fabric/errors.hpp"

namespace pf::fabric {

namespace {

struct Builder {
  CircuitLayout L;

  Column& column() {
    L.columns.emplace_back();
    return L.columns.back();
  }

  static Placement active(int rail, std::string control, int color_index = -1) {
    Placement p;
    p.rail = rail;
    p.kind = ElementKind::resonator;
    p.control = std::move(control);
    p.color_index = color_index;
    return p;
  }

  static Placement passive(int rail, ElementKind kind, int color_index = -1) {
    Placement p;
    p.rail = rail;
    p.kind = kind;
    p.color_index = color_index;
    return p;
  }

  // One stage of multi-color cells: `colors` consecutive columns, color k in column k.
  void cells(const std::vector<int>& rails, const std::string& stage, int colors) {
    for (int k = 0; k < colors; ++k) {
      Column& col = column();
      for (int r : rails)
        col.placements.push_back(
            active(r, stage + "_r" + std::to_string(r) + "_c" + std::to_string(k), colors > 0 ? k : -1));
    }
  }

  // One column of uncolored switches.
  void switches(const std::vector<int>& rails, const std::string& stage) {
    Column& col = column();
    for (int r : rails) col.placements.push_back(active(r, stage + "_r" + std::to_string(r)));
  }
};

std::vector<int> even_pairs(int n_rails, int offset = 0) {
  std::vector<int> r;
  for (int k = offset; k + 1 < n_rails; k += 2) r.push_back(k);
  return r;
}

std::vector<int> iota_vec(int n, int start = 0) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), start);
  return v;
}

// Rail r of an n-rail group goes to r/2 (even r) or n/2 + r/2 (odd r).
std::vector<int> unshuffle(int n) {
  std::vector<int> p(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) p[static_cast<size_t>(r)] = r / 2 + (r % 2) * (n / 2);
  return p;
}

std::vector<int> inverse(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (size_t k = 0; k < p.size(); ++k) q[static_cast<size_t>(p[k])] = static_cast<int>(k);
  return q;
}

// Same group permutation applied to each consecutive block of rails.
std::vector<int> tiled(const std::vector<int>& group, int n_rails) {
  const int g = static_cast<int>(group.size());
  std::vector<int> p(static_cast<size_t>(n_rails));
  for (int r = 0; r < n_rails; ++r) p[static_cast<size_t>(r)] = (r / g) * g + group[static_cast<size_t>(r % g)];
  return p;
}

int bit_reverse3(int v) { return ((v & 1) << 2) | (v & 2) | ((v >> 2) & 1); }

void require(bool ok, const std::string& what) {
  if (!ok) throw UnsupportedSize(what);
}

CircuitLayout crosspoint(int n) {
  require(n >= 2 && n <= 16, "crosspoint supports N in 2..16");
  Builder b;
  b.L.n_rails = 2 * n;
  b.L.inputs = iota_vec(n);
  b.L.outputs = iota_vec(n);
  // Row wires start on rails 0..n-1 and climb; column wires start on n..2n-1 and descend.
  // Every row/column meeting is one crosspoint; rows end on the upper rails.
  std::vector<int> wire(static_cast<size_t>(2 * n));
  for (int r = 0; r < 2 * n; ++r) wire[static_cast<size_t>(r)] = r < n ? r : -(r - n) - 1;
  for (int t = 0;; ++t) {
    std::vector<Placement> ps;
    for (int r = t % 2; r + 1 < 2 * n; r += 2) {
      const int lo = wire[static_cast<size_t>(r)];
      const int hi = wire[static_cast<size_t>(r + 1)];
      if (lo >= 0 && hi < 0) {
        const int row = lo;
        const int col = -hi - 1;
        ps.push_back(Builder::active(r, "xp_i" + std::to_string(row) + "_o" + std::to_string(col)));
        std::swap(wire[static_cast<size_t>(r)], wire[static_cast<size_t>(r + 1)]);
      }
    }
    if (ps.empty() && t > 0) break;
    if (!ps.empty()) b.column().placements = std::move(ps);
  }
  return b.L;
}

CircuitLayout spanke_benes(int n) {
  require(n >= 2 && n <= 16, "spanke_benes supports N in 2..16");
  Builder b;
  b.L.n_rails = n;
  b.L.inputs = iota_vec(n);
  b.L.outputs = iota_vec(n);
  for (int c = 0; c < n; ++c) {
    const auto rails = even_pairs(n, c % 2);
    if (!rails.empty()) b.switches(rails, "sb" + std::to_string(c));
  }
  return b.L;
}

CircuitLayout piloss(int n) {
  require(n >= 2 && n <= 16, "piloss supports N in 2..16");
  Builder b;
  b.L.n_rails = 2 * n;
  for (int i = 0; i < n; ++i) {
    b.L.inputs.push_back(2 * i);
    b.L.outputs.push_back(2 * i);
  }
  for (int c = 0; c < n; ++c) {
    b.switches(even_pairs(2 * n), "pl" + std::to_string(c));
    if (c + 1 < n) {
      Column& x = b.column();
      for (int r : even_pairs(2 * n, 1)) x.placements.push_back(Builder::passive(r, ElementKind::crossover));
    }
  }
  return b.L;
}

CircuitLayout clos_benes_16(int n) {
  require(n == 16, "clos_benes_16 is defined for N = 16 only");
  Builder b;
  b.L.n_rails = 16;
  b.L.inputs = iota_vec(16);
  b.L.outputs = iota_vec(16);
  const auto pairs = even_pairs(16);
  b.switches(pairs, "cb0");
  append_permutation(b.L, unshuffle(16));
  b.switches(pairs, "cb1");  // first column of both 8x8 middle blocks
  append_permutation(b.L, tiled(unshuffle(8), 16));
  b.switches(pairs, "cb2");
  append_permutation(b.L, tiled(unshuffle(4), 16));
  b.switches(pairs, "cb3");
  // Middle output u carries destination bitrev(u), so the first middle column settles the
  // lowest destination bit; with the plain inverse shuffle the identity would block.
  std::vector<int> out(16);
  for (int r = 0; r < 16; ++r) out[static_cast<size_t>(r)] = inverse(unshuffle(16))[static_cast<size_t>((r / 8) * 8 + bit_reverse3(r % 8))];
  append_permutation(b.L, out);
  b.switches(pairs, "cb4");
  return b.L;
}

CircuitLayout select_n_to_1(int n) {
  require(n >= 2 && n <= 16, "select_8to1 supports N in 2..16");
  Builder b;
  b.L.n_rails = n + 1;
  b.L.inputs = iota_vec(n);
  b.L.outputs = {0};
  for (int k = n - 1; k >= 0; --k) b.column().placements.push_back(Builder::active(k, "sel" + std::to_string(k)));
  for (int r = 1; r <= n; ++r) b.L.terminators.push_back({r, n - 1});
  return b.L;
}

CircuitLayout select_1_to_n(int n) {
  require(n >= 2 && n <= 16, "select_1to8 supports N in 2..16");
  Builder b;
  b.L.n_rails = n + 1;
  b.L.inputs = {0};
  b.L.outputs = iota_vec(n);
  for (int k = 0; k < n; ++k) b.column().placements.push_back(Builder::active(k, "sel" + std::to_string(k)));
  b.L.terminators.push_back({n, n - 1});
  return b.L;
}

CircuitLayout demux(int colors) {
  require(colors >= 2 && colors <= 16, "demux8 supports 2..16 colors");
  Builder b;
  b.L.n_rails = colors + 1;
  b.L.inputs = {0};
  b.L.outputs = iota_vec(colors);
  for (int k = 0; k < colors; ++k) {
    b.column().placements.push_back(Builder::passive(k, ElementKind::add_drop, k));
    b.column().placements.push_back(Builder::passive(k, ElementKind::crossover));
  }
  return b.L;
}

CircuitLayout mux(int colors) {
  require(colors >= 2 && colors <= 16, "mux8 supports 2..16 colors");
  CircuitLayout L = demux(colors);
  std::reverse(L.columns.begin(), L.columns.end());
  std::swap(L.inputs, L.outputs);
  return L;
}

CircuitLayout multicrossbar(int colors) {
  require(colors >= 1 && colors <= 8, "multicrossbar supports 1..8 colors");
  Builder b;
  b.L.n_rails = 2;
  b.L.inputs = {0, 1};
  b.L.outputs = {0, 1};
  for (int k = 0; k < colors; ++k)
    b.column().placements.push_back(Builder::active(0, "mc_c" + std::to_string(k), k));
  return b.L;
}

CircuitLayout wss_6x6(int n, int colors) {
  require(n == 6, "wss_6x6x4 is defined for N = 6 only");
  require(colors >= 1 && colors <= 8, "wss_6x6x4 supports 1..8 colors");
  Builder b;
  b.L.n_rails = 6;
  b.L.inputs = iota_vec(6);
  b.L.outputs = iota_vec(6);
  // Outer cells, then two 3x3 sub-networks on rails 0-2 and 3-5, then outer cells.
  b.cells({0, 2, 4}, "ws0", colors);
  append_permutation(b.L, unshuffle(6));
  b.cells({0, 3}, "ws1", colors);
  b.cells({1, 4}, "ws2", colors);
  b.cells({0, 3}, "ws3", colors);
  append_permutation(b.L, {0, 2, 4, 5, 3, 1});
  b.cells({0, 2, 4}, "ws4", colors);
  return b.L;
}

CircuitLayout wss_8x8(int n, int colors) {
  require(n == 8, "wss_8x8x3 is defined for N = 8 only");
  require(colors >= 1 && colors <= 8, "wss_8x8x3 supports 1..8 colors");
  Builder b;
  b.L.n_rails = 8;
  b.L.inputs = iota_vec(8);
  b.L.outputs = iota_vec(8);
  const auto pairs = even_pairs(8);
  b.cells(pairs, "wb0", colors);
  append_permutation(b.L, unshuffle(8));
  b.cells(pairs, "wb1", colors);
  append_permutation(b.L, tiled(unshuffle(4), 8));
  b.cells(pairs, "wb2", colors);
  append_permutation(b.L, tiled(inverse(unshuffle(4)), 8));
  b.cells(pairs, "wb3", colors);
  append_permutation(b.L, inverse(unshuffle(8)));
  b.cells(pairs, "wb4", colors);
  return b.L;
}

CircuitLayout wcc_4x4(int n, int colors) {
  require(n == 4, "wcc_4x4x4 is defined for N = 4 only");
  require(colors >= 1 && colors <= 8, "wcc_4x4x4 supports 1..8 colors");
  Builder b;
  b.L.n_rails = 8;
  b.L.inputs = {0, 2, 4, 6};
  b.L.outputs = {0, 2, 4, 6};
  const auto pairs = even_pairs(8);
  b.cells(pairs, "wc0", colors);
  // Multi-crossed waveguide region: perfect shuffle as one abstract block.
  Placement blk = Builder::passive(0, ElementKind::block);
  blk.perm = inverse(unshuffle(8));
  b.column().placements.push_back(blk);
  b.cells(pairs, "wc1", colors);
  append_permutation(b.L, {7, 1, 3, 5, 2, 4, 6, 0});
  b.cells(pairs, "wc2", colors);
  return b.L;
}

int default_n(const std::string& kind) {
  if (kind == "clos_benes_16") return 16;
  if (kind == "wss_6x6x4") return 6;
  if (kind == "wcc_4x4x4") return 4;
  if (kind == "multicrossbar") return 2;
  return 8;
}

int default_colors(const std::string& kind) {
  if (kind == "multicrossbar" || kind == "wss_8x8x3") return 3;
  if (kind == "wss_6x6x4" || kind == "wcc_4x4x4") return 4;
  if (kind == "mux8" || kind == "demux8") return 8;
  return 0;
}

}  // namespace

const std::vector<std::string>& architecture_kinds() {
  static const std::vector<std::string> kinds = {"crosspoint",    "spanke_benes", "piloss",    "clos_benes_16",
                                                 "select_8to1",   "select_1to8",  "mux8",      "demux8",
                                                 "multicrossbar", "wss_6x6x4",    "wss_8x8x3", "wcc_4x4x4"};
  return kinds;
}

CircuitLayout generate(const ArchitectureSpec& spec) {
  const auto& kinds = architecture_kinds();
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end())
    throw InvalidArgument("unknown architecture kind '" + spec.kind + "'");
  const int n = spec.n > 0 ? spec.n : default_n(spec.kind);
  const int colors = spec.colors > 0 ? spec.colors : default_colors(spec.kind);
  if (spec.n < 0 || spec.colors < 0) throw UnsupportedSize("sizes must be positive");

  CircuitLayout L;
  const std::string& k = spec.kind;
  if (k == "crosspoint") L = crosspoint(n);
  else if (k == "spanke_benes") L = spanke_benes(n);
  else if (k == "piloss") L = piloss(n);
  else if (k == "clos_benes_16") L = clos_benes_16(n);
  else if (k == "select_8to1") L = select_n_to_1(n);
  else if (k == "select_1to8") L = select_1_to_n(n);
  else if (k == "mux8") L = mux(spec.n > 0 ? spec.n : colors);
  else if (k == "demux8") L = demux(spec.n > 0 ? spec.n : colors);
  else if (k == "multicrossbar") {
    require(n == 2, "multicrossbar is a 2x2 element");
    L = multicrossbar(colors);
  } else if (k == "wss_6x6x4") L = wss_6x6(n, colors);
  else if (k == "wss_8x8x3") L = wss_8x8(n, colors);
  else L = wcc_4x4(n, colors);

  L.kind = k;
  int max_index = -1;
  for (const auto& col : L.columns)
    for (const auto& p : col.placements) max_index = std::max(max_index, p.color_index);
  if (max_index >= 0) L = assign_colors(L, default_palette(max_index + 1));
  L.validate();
  return L;
}

std::vector<double> default_palette(int colors) {
  if (colors < 1) throw InvalidArgument("palette needs at least one color");
  std::vector<double> p;
  for (int k = 0; k < colors; ++k) p.push_back(1550e-9 + 2e-9 * (k - (colors - 1) / 2.0));
  return p;
}

CircuitLayout assign_colors(const CircuitLayout& layout, const std::vector<double>& palette) {
  CircuitLayout out = layout;
  std::set<int> used;
  for (const auto& col : out.columns)
    for (const auto& p : col.placements)
      if (p.color_index >= 0) used.insert(p.color_index);
  if (!used.empty() && *used.rbegin() >= static_cast<int>(palette.size()))
    throw PaletteTooSmall("layout needs " + std::to_string(*used.rbegin() + 1) + " colors, palette has " +
                          std::to_string(palette.size()));
  for (int a : used)
    for (int b : used)
      if (a < b && std::abs(palette[static_cast<size_t>(a)] - palette[static_cast<size_t>(b)]) < 1e-15)
        throw PaletteTooSmall("palette repeats a wavelength; colors within a layout must be distinct");
  for (auto& col : out.columns)
    for (auto& p : col.placements)
      if (p.color_index >= 0) p.color = palette[static_cast<size_t>(p.color_index)];
  return out;
}

std::vector<double> layout_colors(const CircuitLayout& layout) {
  std::vector<double> c;
  for (const auto& col : layout.columns)
    for (const auto& p : col.placements)
      if (p.color && std::none_of(c.begin(), c.end(), [&](double x) { return std::abs(x - *p.color) < 1e-15; }))
        c.push_back(*p.color);
  std::sort(c.begin(), c.end());
  return c;
}

int inversions(const std::vector<int>& perm) {
  int n = 0;
  for (size_t a = 0; a < perm.size(); ++a)
    for (size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++n;
  return n;
}

void append_permutation(CircuitLayout& layout, const std::vector<int>& perm, int offset) {
  std::vector<int> key = perm;
  {
    std::vector<int> s = key;
    std::sort(s.begin(), s.end());
    for (size_t k = 0; k < s.size(); ++k)
      if (s[k] != static_cast<int>(k)) throw InvalidArgument("interconnect is not a permutation");
  }
  if (offset < 0 || offset + static_cast<int>(perm.size()) > layout.n_rails)
    throw InvalidArgument("interconnect leaves the rail range");
  const int n = static_cast<int>(key.size());
  for (int phase = 0, idle = 0; idle < 2; ++phase) {
    Column col;
    for (int r = phase % 2; r + 1 < n; r += 2) {
      if (key[static_cast<size_t>(r)] > key[static_cast<size_t>(r + 1)]) {
        std::swap(key[static_cast<size_t>(r)], key[static_cast<size_t>(r + 1)]);
        Placement p;
        p.rail = offset + r;
        p.kind = ElementKind::crossover;
        col.placements.push_back(p);
      }
    }
    if (col.placements.empty()) {
      ++idle;
    } else {
      idle = 0;
      layout.columns.push_back(std::move(col));
    }
  }
}

}  // namespace pf::fabric
