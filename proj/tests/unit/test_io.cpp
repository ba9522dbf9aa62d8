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

#include "support.hpp"

#include <risbeam/io.hpp>

#include <json.hpp>

#include <filesystem>
#include <sstream>

namespace risbeam
{
namespace
{

TEST(GeometryJson, RoundTripIsExact)
{
    const Problem p = test::small_problem(1);
    std::stringstream buf;
    save_geometry(p.geo, buf);
    const GeometricChannel back = load_geometry(buf);
    EXPECT_EQ(back.n_tx, p.geo.n_tx);
    EXPECT_EQ(back.m_rows, p.geo.m_rows);
    EXPECT_EQ(back.user_positions[1].y, p.geo.user_positions[1].y);
    EXPECT_EQ(back.bi_paths[0][1].aoa_el, p.geo.bi_paths[0][1].aoa_el);
    EXPECT_EQ(back.iu_paths[0][1][0].gain, p.geo.iu_paths[0][1][0].gain);
    const ChannelSample a = EquivalentChannelBuilder(p.geo).unblocked();
    const ChannelSample b = EquivalentChannelBuilder(back).unblocked();
    for (int k = 0; k < 2; ++k)
        EXPECT_TRUE(a.stacked(k) == b.stacked(k));
}

TEST(GeometryJson, RisFreeGeometryRoundTrips)
{
    const Problem p = test::small_problem(2);
    std::stringstream buf;
    save_geometry(without_ris(p.geo), buf);
    EXPECT_EQ(load_geometry(buf).n_ris(), 0);
}

TEST(StateJson, RoundTripIsExact)
{
    const Problem p = test::small_problem(3);
    Rng rng = make_rng(4);
    const BeamformingState x = test::random_state(p, rng);
    std::stringstream buf;
    save_state(x, buf);
    const BeamformingState y = load_state(buf);
    EXPECT_TRUE(x.d == y.d);
    EXPECT_TRUE(x.a == y.a);
    EXPECT_TRUE(x.e == y.e);
}

TEST(StateJson, MalformedInputNamesField)
{
    std::stringstream junk("not json");
    EXPECT_THROW(load_state(junk), ConfigError);

    const Problem p = test::small_problem(5);
    Rng rng = make_rng(6);
    std::stringstream buf;
    save_state(test::random_state(p, rng), buf);
    const nlohmann::json valid = nlohmann::json::parse(buf.str());

    nlohmann::json missing = valid;
    missing.erase("e");
    std::stringstream in_missing(missing.dump());
    try
    {
        load_state(in_missing);
        FAIL() << "expected ConfigError";
    }
    catch (const ConfigError &e)
    {
        EXPECT_EQ(e.key(), "e");
    }

    nlohmann::json ragged = valid;
    ragged["d"]["rows"] = 7;
    std::stringstream in_ragged(ragged.dump());
    EXPECT_THROW(load_state(in_ragged), ConfigError);

    nlohmann::json scalar = valid;
    scalar["a"]["data"][0][0] = 1.0;
    std::stringstream in_scalar(scalar.dump());
    EXPECT_THROW(load_state(in_scalar), ConfigError);
}

TEST(GeometryJson, MalformedInputRejected)
{
    std::stringstream empty("{}");
    EXPECT_THROW(load_geometry(empty), ConfigError);
}

TEST(Files, OpenFailuresNamePath)
{
    const std::string bad = "/nonexistent-dir/x/y.json";
    try
    {
        open_input(bad);
        FAIL() << "expected runtime_error";
    }
    catch (const std::runtime_error &e)
    {
        EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
    }
    EXPECT_THROW(open_output(bad), std::runtime_error);
}

} // namespace
} // namespace risbeam
