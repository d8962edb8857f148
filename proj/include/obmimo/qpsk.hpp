// SPDX-License-Identifier: Apache-2.0
//
// obmimo - two-stage MMSE precoding for 1-bit quantized massive MIMO downlinks
// Copyright (C) 2026 the obmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// QPSK bit/symbol mapping. Gray mapping is per quadrature: bit 0 selects
// the sign of the real part, bit 1 the sign of the imaginary part
// (0 -> +, 1 -> -), scaled so E|s|^2 = sigma_s^2. For QPSK,
// minimum-distance detection is exactly this sign rule, so the same
// detector serves the quantized and the unquantized chain.

#pragma once

#include <cstdint>
#include <vector>

#include "obmimo/rng.hpp"
#include "obmimo/types.hpp"

namespace obmimo {

/// A block of user symbols: `symbols` is M x N_b (users x symbol slots),
/// `bits` the 2 M N_b source bits in (slot, user, re/im) order.
struct SymbolBlock {
  CMat symbols;
  std::vector<std::uint8_t> bits;
};

/// Maps source bits to QPSK symbols on the alphabet
/// (sigma_s / sqrt(2)) {+-1 +- j}.
CMat map_bits_to_symbols(const std::vector<std::uint8_t> &bits, int n_users,
                         int n_symbols, double symbol_power);

/// Draws 2 * n_users * n_symbols fair bits and maps them.
SymbolBlock draw_symbols(int n_users, int n_symbols, double symbol_power, RngStream &rng);

/// Sign detection per entry: bit = 1 iff the part is negative.
std::vector<std::uint8_t> detect_bits(const CMat &rx);

/// Nearest QPSK symbol per entry (equals scaled sign detection).
CMat nearest_qpsk(const CMat &rx, double symbol_power);

/// Bit errors between two symbol blocks of equal shape, comparing the
/// signs of real and imaginary parts entry-wise (2 bits per entry).
std::uint64_t count_bit_errors(const CMat &sent, const CMat &decoded);

} // namespace obmimo
