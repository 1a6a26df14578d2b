#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsvar/error.hpp"
#include "tsvar/linalg.hpp"

namespace tsvar::detail {

using nlohmann::json;

// NaN has no JSON spelling; it is written as null and read back as NaN.
inline json number_to_json(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

inline double number_from_json(const json& j, const std::string& field) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!j.is_number()) throw ModelFormatError("field '" + field + "' holds a non-numeric entry");
    return j.get<double>();
}

inline json vector_to_json(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) out.push_back(number_to_json(x));
    return out;
}

inline std::vector<double> vector_from_json(const json& j, const std::string& field, std::size_t expected) {
    if (!j.is_array() || j.size() != expected) {
        throw ModelFormatError("field '" + field + "' must be an array of length " + std::to_string(expected));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& x : j) out.push_back(number_from_json(x, field));
    return out;
}

inline json matrix_to_json(const linalg::Matrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(number_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

inline linalg::Matrix matrix_from_json(const json& j, const std::string& field, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
        throw ModelFormatError("field '" + field + "' must have " + std::to_string(rows) + " rows");
    }
    linalg::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = vector_from_json(j[r], field, cols);
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

inline const json& require(const json& doc, const char* field) {
    const auto it = doc.find(field);
    if (it == doc.end()) throw ModelFormatError(std::string("missing field '") + field + "'");
    return *it;
}

}  // namespace tsvar::detail
