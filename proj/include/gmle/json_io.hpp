#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmle/mle.hpp"

namespace gmle {

using ordered_json = nlohmann::ordered_json;

// Graph schema: {"vertices":[1,2], "undirected":[[1,2]], "directed":[[1,2]],
// "bidirected":[[1,2]]}; missing edge-type keys mean empty.
inline MixedGraph graph_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("vertices"))
        throw input_error("graph JSON must be an object with a \"vertices\" array");
    std::vector<int> vertices;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_number_integer()) throw input_error("graph vertices must be integers");
        vertices.push_back(v.get<int>());
    }
    auto read_pairs = [&](const char* key) {
        std::vector<std::pair<int, int>> out;
        if (!j.contains(key)) return out;
        for (const auto& e : j.at(key)) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw input_error(std::string("graph edge in \"") + key +
                                  "\" must be a pair of integers");
            out.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return out;
    };
    std::vector<UPair> undirected, bidirected;
    std::vector<DPair> directed;
    for (auto [a, b] : read_pairs("undirected")) undirected.push_back(UPair(a, b));
    for (auto [a, b] : read_pairs("directed")) directed.push_back(DPair{a, b});
    for (auto [a, b] : read_pairs("bidirected")) bidirected.push_back(UPair(a, b));
    return MixedGraph(std::move(vertices), std::move(undirected), std::move(directed),
                      std::move(bidirected));
}

// Matrix entries may be strings ("3/4", "0.105409" — parsed exactly, decimals
// read verbatim) or JSON numbers (integers exact; floats go through their
// shortest decimal representation).
inline Rational rational_from_json(const ordered_json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return parse_rational(ordered_json(v.get<double>()).dump());
    throw input_error("matrix entry must be a number or a string");
}

inline QMatrix matrix_from_json(const ordered_json& j) {
    if (!j.is_array() || j.empty()) throw input_error("matrix JSON must be a non-empty array");
    std::size_t rows = j.size(), cols = j.at(0).size();
    QMatrix m(rows, cols, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j.at(i);
        if (!row.is_array() || row.size() != cols)
            throw input_error("matrix JSON rows must all have the same length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(row.at(k));
    }
    return m;
}

inline ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("cannot parse JSON from " + path + ": " + e.what());
    }
    return j;
}

// CSV sample data: one observation per line by default, decimal or p/q cells.
inline QMatrix csv_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<Rational> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_rational(cell));
        if (row.empty()) continue;
        if (!rows.empty() && rows.back().size() != row.size())
            throw input_error("CSV rows have inconsistent lengths in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw input_error("CSV file has no data: " + path);
    QMatrix m(rows.size(), rows[0].size(), Rational(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
    return m;
}

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// numeric matrices render as decimal strings, exact matrices as p/q strings
inline ordered_json matrix_to_json(const DMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json matrix_to_json(const QMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json partition_to_json(const Partition& p) {
    ordered_json j;
    j["U"] = p.u;
    j["W"] = p.w;
    return j;
}

inline ordered_json score_system_to_json(const ScoreSystem& sys, int dim, long deg) {
    ordered_json j;
    ordered_json vars = ordered_json::array();
    for (const auto& v : sys.vars) vars.push_back(v.name());
    j["variables"] = std::move(vars);
    ordered_json gens = ordered_json::array();
    for (const auto& p : sys.polynomials) gens.push_back(p.to_string());
    j["generators"] = std::move(gens);
    j["dim"] = dim;
    j["degree"] = deg;
    j["denominatorWitness"] = sys.denominator_witness.to_string();
    j["sampleCovariance"] = matrix_to_json(sys.sample_cov);
    return j;
}

inline ordered_json solutions_to_json(const std::vector<SolutionPoint>& sols) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : sols) {
        ordered_json pt;
        ordered_json coords = ordered_json::array();
        for (const auto& c : s.coords) {
            ordered_json z;
            z["re"] = format_double(c.real());
            z["im"] = format_double(c.imag());
            coords.push_back(std::move(z));
        }
        pt["point"] = std::move(coords);
        pt["residual"] = format_double(s.residual);
        pt["isReal"] = s.is_real;
        arr.push_back(std::move(pt));
    }
    return arr;
}

inline ordered_json mle_result_to_json(const MLEResult& res) {
    ordered_json j;
    if (res.max_log_lik)
        j["maxLogLik"] = format_double(*res.max_log_lik);
    else
        j["maxLogLik"] = nullptr;
    ordered_json optima = ordered_json::array();
    for (const auto& m : res.optima) optima.push_back(matrix_to_json(m));
    j["optima"] = std::move(optima);
    j["mlDegree"] = res.ml_degree;
    j["nSolutions"] = res.n_solutions;
    j["nRealSolutions"] = res.n_real_solutions;
    ordered_json cps = ordered_json::array();
    for (const auto& cp : res.critical_points) {
        ordered_json c;
        ordered_json params = ordered_json::array();
        for (double x : cp.parameters) params.push_back(format_double(x));
        c["parameters"] = std::move(params);
        c["covariance"] = matrix_to_json(cp.covariance);
        if (cp.log_lik)
            c["logLik"] = format_double(*cp.log_lik);
        else
            c["logLik"] = nullptr;
        c["positiveDefinite"] = cp.positive_definite;
        c["classification"] = to_string(cp.classification);
        cps.push_back(std::move(c));
    }
    j["criticalPoints"] = std::move(cps);
    if (!res.optima.empty() && res.max_log_lik) {
        ordered_json vars = ordered_json::array();
        for (const auto& v : res.system.vars) vars.push_back(v.name());
        j["parameterOrder"] = std::move(vars);
    }
    return j;
}

}  // namespace gmle
