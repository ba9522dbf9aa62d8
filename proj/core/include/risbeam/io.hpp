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

#ifndef RISBEAM_IO_HPP
#define RISBEAM_IO_HPP

#include "risbeam/channel.hpp"
#include "risbeam/surrogate.hpp"

#include <filesystem>
#include <fstream>
#include <iosfwd>

namespace risbeam
{

// JSON round trips. Complex numbers are stored as [re, im] pairs with 17
// significant digits, so a save/load cycle is exact.

void save_geometry(const GeometricChannel &geo, std::ostream &out);
/// Throws ConfigError naming the missing or malformed field.
GeometricChannel load_geometry(std::istream &in);

void save_state(const BeamformingState &state, std::ostream &out);
/// Throws ConfigError naming the missing or malformed field.
BeamformingState load_state(std::istream &in);

/// Opens `path` for writing (binary mode, so line endings stay LF) and
/// throws std::runtime_error naming the path on failure.
std::ofstream open_output(const std::filesystem::path &path);
/// Opens `path` for reading; throws std::runtime_error naming the path on failure.
std::ifstream open_input(const std::filesystem::path &path);

} // namespace risbeam

#endif
