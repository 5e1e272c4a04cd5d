#include "luinv/io.hpp"

#include "luinv/errors.hpp"

#include <cmath>
#include <cstdio>

namespace luinv {

namespace {

double number_at(const Json& j, const char* what) {
    if (!j.is_number()) throw Error(ErrorKind::BadParams, std::string(what) + " must be a number");
    return j.get<double>();
}

void dump_to(std::string& out, const Json& j, int indent, int depth) {
    auto newline = [&](int level) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * level), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_to(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line even in pretty mode.
            bool scalars = true;
            for (const auto& e : j) scalars = scalars && !e.is_structured();
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += ',';
                if (!first && scalars && indent >= 0) out += ' ';
                first = false;
                if (!scalars) newline(depth + 1);
                dump_to(out, e, indent, depth + 1);
            }
            if (!scalars) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::BadShape, "matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorKind::BadShape, "matrix rows must be arrays of equal length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& entry = row[static_cast<std::size_t>(c)];
            if (!entry.is_array() || entry.size() != 2) {
                throw Error(ErrorKind::BadParams, "matrix entries must be [re, im] pairs");
            }
            m(r, c) = Complex(number_at(entry[0], "re"), number_at(entry[1], "im"));
        }
    }
    return m;
}

Json matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

BipartiteState state_from_json(const Json& j) {
    if (!j.is_object()) throw Error(ErrorKind::BadParams, "state must be a JSON object");
    if (!j.contains("d") || !j["d"].is_number_integer()) {
        throw Error(ErrorKind::BadParams, "state needs an integer field \"d\"");
    }
    if (!j.contains("amplitudes")) throw Error(ErrorKind::BadParams, "state needs field \"amplitudes\"");
    return make_state(j["d"].get<int>(), matrix_from_json(j["amplitudes"]));
}

Json state_to_json(const BipartiteState& state) {
    Json j;
    j["d"] = state.dim();
    j["amplitudes"] = matrix_to_json(state.amplitudes());
    return j;
}

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_to(out, j, indent, 0);
    return out;
}

}  // namespace luinv
