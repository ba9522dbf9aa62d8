// SPDX-License-Identifier: Apache-2.0
//
// risbeam: robust hybrid beamforming for RIS-aided mmWave links under random blockages
// Copyright (C) 2026 The risbeam authors
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

#ifndef RISBEAM_RNG_HPP
#define RISBEAM_RNG_HPP

#include "risbeam/types.hpp"

#include <cstdint>
#include <initializer_list>

namespace risbeam
{

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent stream seed from a master seed and a path of task
/// indices, e.g. `derive_seed(master, {geo_index, stream_tag})`. The mapping is
/// a chain of SplitMix64 mixes, so neighbouring indices give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

/// Uniform double in [0, 1) with 53 random bits, independent of the
/// standard library's distribution implementation.
double uniform01(Rng &rng) noexcept;

/// Standard normal via the Box-Muller transform (consumes two uniforms).
double standard_normal(Rng &rng) noexcept;

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
cplx complex_normal(Rng &rng, double variance) noexcept;

// Stream tags used with derive_seed throughout the library.
namespace stream
{
inline constexpr std::uint64_t geometry = 0x67656f;
inline constexpr std::uint64_t training = 0x747261;
inline constexpr std::uint64_t evaluation = 0x6576616c;
inline constexpr std::uint64_t init = 0x696e6974;
} // namespace stream

} // namespace risbeam

#endif
