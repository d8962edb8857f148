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

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>

#include "obmimo/types.hpp"

namespace obmimo {

/// Purpose tag mixed into the seed so channel, symbol, noise, ... draws of
/// one realization come from unrelated streams.
enum class StreamKind : std::uint64_t {
  kChannel = 0x11,
  kSymbols = 0x22,
  kNoise = 0x33,
  kPerturbation = 0x44,
  kInit = 0x55,
  kOracle = 0x66,
};

/// One independent random stream, fully determined by
/// (master seed, stream index, purpose). Monte Carlo trials each own their
/// streams, so results do not depend on which thread runs which trial.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index, StreamKind kind);

  /// Standard normal N(0, 1).
  double gaussian() { return normal_(engine_); }

  /// Circular complex Gaussian CN(0, 1): real and imaginary parts N(0, 1/2).
  Cplx cgaussian();

  /// Uniform on [-1, 1].
  double uniform_symmetric() { return symmetric_(engine_); }

  /// Fair bit.
  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() & 1u); }

  std::mt19937_64 &engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> symmetric_{-1.0, 1.0};
};

/// Runs fn(0), ..., fn(count - 1) on up to `threads` worker threads
/// (hardware concurrency when threads <= 0). The caller must make each
/// index write only to its own slot; exceptions are rethrown on the caller.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &fn);

} // namespace obmimo
