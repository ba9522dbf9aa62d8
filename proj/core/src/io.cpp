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

#include "risbeam/io.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace risbeam
{

namespace
{

using nlohmann::json;

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix &m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

const json &field(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(key, "missing field");
    return j.at(key);
}

template <class T>
T get(const json &j, const char *key)
{
    try
    {
        return field(j, key).get<T>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(key, e.what());
    }
}

cplx cplx_from(const json &j, const char *key)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(key, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from(const json &j, const char *key)
{
    const auto rows = get<Eigen::Index>(j, "rows");
    const auto cols = get<Eigen::Index>(j, "cols");
    const json &data = field(j, "data");
    if (rows < 0 || cols < 0 || !data.is_array() || static_cast<Eigen::Index>(data.size()) != rows)
        throw ConfigError(key, "matrix shape mismatch");
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const json &row = data[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ConfigError(key, "matrix shape mismatch");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = cplx_from(row[static_cast<std::size_t>(c)], key);
    }
    return m;
}

void dump(const json &j, std::ostream &out)
{
    out << j.dump(2) << '\n';
}

json parse(std::istream &in)
{
    try
    {
        return json::parse(in);
    }
    catch (const json::exception &e)
    {
        throw ConfigError("<document>", e.what());
    }
}

} // namespace

void save_geometry(const GeometricChannel &geo, std::ostream &out)
{
    json j;
    j["n_tx"] = geo.n_tx;
    j["m_rows"] = geo.m_rows;
    j["m_cols"] = geo.m_cols;
    j["user_positions"] = json::array();
    for (const auto &p : geo.user_positions)
        j["user_positions"].push_back({p.x, p.y});

    j["bu_paths"] = json::array();
    for (const auto &user : geo.bu_paths)
    {
        json paths = json::array();
        for (const auto &p : user)
            paths.push_back({{"gain", to_json(p.gain)}, {"aod", p.aod}});
        j["bu_paths"].push_back(std::move(paths));
    }

    j["bi_paths"] = json::array();
    for (const auto &ris : geo.bi_paths)
    {
        json paths = json::array();
        for (const auto &p : ris)
            paths.push_back(
                {{"gain", to_json(p.gain)}, {"aoa_az", p.aoa_az}, {"aoa_el", p.aoa_el}, {"aod", p.aod}});
        j["bi_paths"].push_back(std::move(paths));
    }

    j["iu_paths"] = json::array();
    for (const auto &ris : geo.iu_paths)
    {
        json users = json::array();
        for (const auto &user : ris)
        {
            json paths = json::array();
            for (const auto &p : user)
                paths.push_back({{"gain", to_json(p.gain)}, {"aod_az", p.aod_az}, {"aod_el", p.aod_el}});
            users.push_back(std::move(paths));
        }
        j["iu_paths"].push_back(std::move(users));
    }
    dump(j, out);
}

GeometricChannel load_geometry(std::istream &in)
{
    const json j = parse(in);
    GeometricChannel geo;
    geo.n_tx = get<int>(j, "n_tx");
    geo.m_rows = get<int>(j, "m_rows");
    geo.m_cols = get<int>(j, "m_cols");

    for (const auto &p : field(j, "user_positions"))
    {
        if (!p.is_array() || p.size() != 2)
            throw ConfigError("user_positions", "expected [x, y]");
        geo.user_positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    for (const auto &user : field(j, "bu_paths"))
    {
        auto &dst = geo.bu_paths.emplace_back();
        for (const auto &p : user)
            dst.push_back({cplx_from(field(p, "gain"), "bu_paths.gain"), get<double>(p, "aod")});
    }
    for (const auto &ris : field(j, "bi_paths"))
    {
        auto &dst = geo.bi_paths.emplace_back();
        for (const auto &p : ris)
            dst.push_back({cplx_from(field(p, "gain"), "bi_paths.gain"), get<double>(p, "aoa_az"),
                           get<double>(p, "aoa_el"), get<double>(p, "aod")});
    }
    for (const auto &ris : field(j, "iu_paths"))
    {
        auto &dst_ris = geo.iu_paths.emplace_back();
        for (const auto &user : ris)
        {
            auto &dst = dst_ris.emplace_back();
            for (const auto &p : user)
                dst.push_back(
                    {cplx_from(field(p, "gain"), "iu_paths.gain"), get<double>(p, "aod_az"), get<double>(p, "aod_el")});
        }
    }
    return geo;
}

void save_state(const BeamformingState &state, std::ostream &out)
{
    dump(json{{"d", to_json(state.d)}, {"a", to_json(state.a)}, {"e", to_json(CMatrix(state.e))}}, out);
}

BeamformingState load_state(std::istream &in)
{
    const json j = parse(in);
    BeamformingState s;
    s.d = matrix_from(field(j, "d"), "d");
    s.a = matrix_from(field(j, "a"), "a");
    const CMatrix e = matrix_from(field(j, "e"), "e");
    if (e.cols() != 1)
        throw ConfigError("e", "expected a column vector");
    s.e = e.col(0);
    return s;
}

std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_input(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return in;
}

} // namespace risbeam
