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

#include "obmimo/qpsk.hpp"

#include <cmath>
#include <stdexcept>

namespace obmimo {

// Bit layout: two bits per symbol, (slot, user, component) order, component 0
// is the real part. Gray mapping is the per-component sign map 0 -> +, 1 -> -.

CMat map_bits_to_symbols(const std::vector<std::uint8_t> &bits, int n_users, int n_symbols,
                         double symbol_power) {
  if (static_cast<std::size_t>(n_users) * n_symbols * 2 != bits.size()) {
    throw std::invalid_argument("map_bits_to_symbols: bit count must be 2 * n_users * n_symbols");
  }
  const double amp = std::sqrt(symbol_power / 2.0);
  CMat symbols(n_users, n_symbols);
  std::size_t idx = 0;
  for (int t = 0; t < n_symbols; ++t) {
    for (int u = 0; u < n_users; ++u) {
      const double re = bits[idx++] ? -amp : amp;
      const double im = bits[idx++] ? -amp : amp;
      symbols(u, t) = Cplx(re, im);
    }
  }
  return symbols;
}

SymbolBlock draw_symbols(int n_users, int n_symbols, double symbol_power, RngStream &rng) {
  SymbolBlock block;
  block.bits.resize(static_cast<std::size_t>(n_users) * n_symbols * 2);
  for (auto &b : block.bits) b = rng.bit();
  block.symbols = map_bits_to_symbols(block.bits, n_users, n_symbols, symbol_power);
  return block;
}

std::vector<std::uint8_t> detect_bits(const CMat &rx) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(rx.size()) * 2);
  std::size_t idx = 0;
  for (Eigen::Index t = 0; t < rx.cols(); ++t) {
    for (Eigen::Index u = 0; u < rx.rows(); ++u) {
      bits[idx++] = rx(u, t).real() < 0.0 ? 1 : 0;
      bits[idx++] = rx(u, t).imag() < 0.0 ? 1 : 0;
    }
  }
  return bits;
}

CMat nearest_qpsk(const CMat &rx, double symbol_power) {
  const double amp = std::sqrt(symbol_power / 2.0);
  CMat out(rx.rows(), rx.cols());
  for (Eigen::Index t = 0; t < rx.cols(); ++t) {
    for (Eigen::Index u = 0; u < rx.rows(); ++u) {
      out(u, t) = Cplx(rx(u, t).real() < 0.0 ? -amp : amp, rx(u, t).imag() < 0.0 ? -amp : amp);
    }
  }
  return out;
}

std::uint64_t count_bit_errors(const CMat &sent, const CMat &decoded) {
  if (sent.rows() != decoded.rows() || sent.cols() != decoded.cols()) {
    throw std::invalid_argument("count_bit_errors: symbol blocks differ in shape");
  }
  std::uint64_t errors = 0;
  for (Eigen::Index t = 0; t < sent.cols(); ++t) {
    for (Eigen::Index u = 0; u < sent.rows(); ++u) {
      errors += (sent(u, t).real() < 0.0) != (decoded(u, t).real() < 0.0);
      errors += (sent(u, t).imag() < 0.0) != (decoded(u, t).imag() < 0.0);
    }
  }
  return errors;
}

} // namespace obmimo
