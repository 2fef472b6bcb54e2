// serialize.hpp — JSON encoding conventions (complex numbers as [re, im],
// matrices as row-major nested arrays) and model-spec loading.
#pragma once

#include "weyljacobi/model.hpp"
#include "weyljacobi/types.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace weyljacobi {

using Json = nlohmann::json;

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInput("complex value must be a number or [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw InvalidInput("matrix must be a non-empty nested array");
    const auto rows = j.size();
    const auto cols = j[0].is_array() && (j[0].empty() || j[0][0].is_array() ||
                                          j[0][0].is_number())
                          ? j[0].size()
                          : 0;
    if (cols == 0) throw InvalidInput("matrix rows must be arrays");
    CMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw InvalidInput("matrix rows must have equal length");
        for (size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c]);
    }
    return m;
}

// Model spec: {"L": int, "family": str, "params": {...}} with families
// free | geometric | block_mixed | explicit; the explicit family carries
// "T" and "V" lists of matrices (constant-extended past their ends).
inline BlockJacobiModel load_model(const Json& j) {
    if (!j.is_object()) throw InvalidInput("model spec must be a JSON object");
    const std::string family = j.value("family", std::string("free"));
    const Json params = j.value("params", Json::object());
    const int L = j.value("L", 1);
    if (L < 1) throw InvalidInput("model spec: L must be >= 1");

    if (family == "free") return free_model(L);
    if (family == "geometric") {
        if (!params.contains("c")) throw InvalidInput("geometric family needs params.c");
        return geometric_model(params["c"].get<double>(), L);
    }
    if (family == "block_mixed") {
        if (!params.contains("c"))
            throw InvalidInput("block_mixed family needs params.c");
        return block_mixed_model(params["c"].get<double>());
    }
    if (family == "explicit") {
        if (!params.contains("T") || !params.contains("V"))
            throw InvalidInput("explicit family needs params.T and params.V lists");
        std::vector<CMatrix> t_list, v_list;
        for (const Json& m : params["T"]) t_list.push_back(matrix_from_json(m));
        for (const Json& m : params["V"]) v_list.push_back(matrix_from_json(m));
        BlockJacobiModel model = explicit_model(std::move(t_list), std::move(v_list));
        if (model.block_size() != L && j.contains("L"))
            throw InvalidInput("explicit family: L disagrees with the listed blocks");
        return model;
    }
    throw InvalidInput("unknown model family: " + family);
}

inline BlockJacobiModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open model file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw InvalidInput("model file is not valid JSON: " + std::string(e.what()));
    }
    return load_model(j);
}

}  // namespace weyljacobi
