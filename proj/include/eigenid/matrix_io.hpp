#pragma once

// Matrix file format: a JSON object {"n": dim, "real": n x n, "imag": n x n
// optional}.  Serialization uses 17 significant digits so parse ->
// serialize -> parse round-trips bit-identically.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "eigenid/complex_matrix.hpp"
#include "eigenid/errors.hpp"
#include "json.hpp"

namespace eigenid {

inline ComplexMatrix parse_matrix_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw FileParseError("input is not valid JSON");
    if (!doc.is_object()) throw FileParseError("top level must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw FileParseError("field \"n\" must be an integer");
    long long n_raw = doc["n"].get<long long>();
    if (n_raw < 1) throw FileParseError("field \"n\" must be positive");
    const std::size_t n = static_cast<std::size_t>(n_raw);

    auto check_grid = [n](const nlohmann::json& grid, const char* name) {
        if (!grid.is_array() || grid.size() != n)
            throw FileParseError(std::string("field \"") + name + "\" must be an array of " +
                                 std::to_string(n) + " rows");
        for (const auto& row : grid) {
            if (!row.is_array() || row.size() != n)
                throw FileParseError(std::string("every \"") + name + "\" row must hold " +
                                     std::to_string(n) + " numbers");
            for (const auto& x : row)
                if (!x.is_number())
                    throw FileParseError(std::string("non-numeric entry in \"") + name + "\"");
        }
    };

    if (!doc.contains("real")) throw FileParseError("field \"real\" is required");
    check_grid(doc["real"], "real");
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = doc["real"][r][c].get<double>();
    if (doc.contains("imag")) {
        check_grid(doc["imag"], "imag");
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                m(r, c) += cdouble{0.0, doc["imag"][r][c].get<double>()};
    }
    return m;
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileParseError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_json(buf.str());
}

namespace detail {

inline std::string format_full(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

inline std::string matrix_to_json(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    if (!m.is_square()) throw DimensionMismatch("matrix file format holds square matrices");
    bool any_imag = false;
    for (std::size_t r = 0; r < n && !any_imag; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (m(r, c).imag() != 0.0) { any_imag = true; break; }

    std::ostringstream os;
    auto emit_grid = [&](bool imag_part) {
        os << "[";
        for (std::size_t r = 0; r < n; ++r) {
            os << (r ? ", [" : "[");
            for (std::size_t c = 0; c < n; ++c) {
                if (c) os << ", ";
                os << detail::format_full(imag_part ? m(r, c).imag() : m(r, c).real());
            }
            os << "]";
        }
        os << "]";
    };
    os << "{\"n\": " << n << ", \"real\": ";
    emit_grid(false);
    if (any_imag) {
        os << ", \"imag\": ";
        emit_grid(true);
    }
    os << "}";
    return os.str();
}

inline void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileParseError("cannot write file: " + path);
    out << matrix_to_json(m) << "\n";
}

} // namespace eigenid
