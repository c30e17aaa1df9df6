#ifndef TROPFW_IO_HPP
#define TROPFW_IO_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropfw/fw_solver.hpp"
#include "tropfw/tropical_core.hpp"

namespace tropfw {

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == '\t' || c == ';') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        const auto a = f.find_first_not_of(" \r\n");
        const auto b = f.find_last_not_of(" \r\n");
        f = a == std::string::npos ? "" : f.substr(a, b - a + 1);
    }
    return fields;
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace detail

/// Parses a point literal such as "0,3,4" or "(0, 3, 4)".
inline TropicalPoint parse_point(const std::string& text) {
    std::string clean;
    for (char c : text)
        if (c != '(' && c != ')' && c != ' ') clean += c;
    std::vector<double> coords;
    for (const auto& field : detail::split_fields(clean)) {
        double v;
        if (!detail::parse_double(field, v)) throw InvalidInput("bad point literal: " + text);
        coords.push_back(v);
    }
    return TropicalPoint(std::move(coords));
}

/// Reads a CSV/TSV sample, one point per row. A non-numeric first row is
/// treated as a header. Rows are normalized on ingestion.
inline SampleMatrix read_sample(std::istream& in) {
    std::vector<TropicalPoint> rows;
    std::string line;
    bool first = true;
    std::size_t d = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        const auto fields = detail::split_fields(line);
        std::vector<double> coords;
        bool numeric = true;
        for (const auto& f : fields) {
            double v;
            if (!detail::parse_double(f, v)) {
                numeric = false;
                break;
            }
            coords.push_back(v);
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw InvalidInput("non-numeric field in row: " + line);
        }
        first = false;
        if (d == 0) {
            d = coords.size();
        } else if (coords.size() != d) {
            throw InvalidInput("ragged input: expected " + std::to_string(d) + " columns");
        }
        rows.emplace_back(std::move(coords));
    }
    if (rows.empty()) throw InvalidInput("empty sample");
    return SampleMatrix(std::move(rows));
}

inline SampleMatrix read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open input file: " + path);
    return read_sample(in);
}

inline nlohmann::json point_to_json(const TropicalPoint& p) {
    return nlohmann::json(p.coords());
}

/// Serializes a solved polytrope together with the sample it came from, so
/// downstream checks need only this one document.
inline nlohmann::json polytrope_to_json(const SampleMatrix& V, const FWPolytrope& P) {
    nlohmann::json doc;
    doc["schema"] = "tropfw/1";
    doc["n"] = V.size();
    doc["d"] = V.dim();
    doc["opt_value"] = P.opt_value;

    nlohmann::json sample = nlohmann::json::array();
    for (const auto& r : V.rows()) sample.push_back(point_to_json(r));
    doc["sample"] = sample;

    nlohmann::json kleene = nlohmann::json::array();
    for (const auto& row : P.kleene)
        for (double v : row) kleene.push_back(v);
    doc["kleene"] = kleene;

    nlohmann::json mins = nlohmann::json::array(), maxs = nlohmann::json::array();
    for (const auto& v : P.min_vertices) mins.push_back(point_to_json(v));
    for (const auto& v : P.max_vertices) maxs.push_back(point_to_json(v));
    doc["min_vertices"] = mins;
    doc["max_vertices"] = maxs;

    nlohmann::json ineqs = nlohmann::json::array();
    for (const auto& iq : P.cell.inequalities()) {
        ineqs.push_back({{"j", iq.j + 1}, {"k", iq.k + 1}, {"bound", iq.bound}});
    }
    doc["inequalities"] = ineqs;

    // Dual covectors tau(pi*) and tau-bar(phi*), 1-based sample indices per
    // coordinate.
    nlohmann::json tau = nlohmann::json::array(), tau_bar = nlohmann::json::array();
    for (std::size_t j = 0; j < V.dim(); ++j) {
        nlohmann::json tj = nlohmann::json::array(), bj = nlohmann::json::array();
        for (std::size_t i = 0; i < V.size(); ++i) {
            if (P.dual.pi[i][j]) tj.push_back(i + 1);
            if (P.dual.phi[j][i]) bj.push_back(i + 1);
        }
        tau.push_back(tj);
        tau_bar.push_back(bj);
    }
    doc["tau"] = tau;
    doc["tau_bar"] = tau_bar;
    return doc;
}

struct SolveDocument {
    SampleMatrix sample;
    FWPolytrope polytrope;
};

inline SolveDocument polytrope_from_json(const nlohmann::json& doc) {
    if (doc.value("schema", "") != "tropfw/1") throw InvalidInput("unknown schema");
    const std::size_t n = doc.at("n").get<std::size_t>();
    const std::size_t d = doc.at("d").get<std::size_t>();

    std::vector<TropicalPoint> rows;
    for (const auto& r : doc.at("sample")) rows.emplace_back(r.get<std::vector<double>>());
    if (rows.size() != n) throw InvalidInput("sample size disagrees with n");
    SampleMatrix V(std::move(rows));
    if (V.dim() != d) throw InvalidInput("sample dimension disagrees with d");

    FWPolytrope P{.kleene = {},
                  .min_vertices = {},
                  .max_vertices = {},
                  .cell = CellDescription(d),
                  .opt_value = doc.at("opt_value").get<double>(),
                  .dual = {}};
    const auto flat = doc.at("kleene").get<std::vector<double>>();
    if (flat.size() != d * d) throw InvalidInput("kleene matrix has wrong size");
    P.kleene.assign(d, std::vector<double>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) P.kleene[j][k] = flat[j * d + k];
    for (const auto& v : doc.at("min_vertices"))
        P.min_vertices.emplace_back(v.get<std::vector<double>>());
    for (const auto& v : doc.at("max_vertices"))
        P.max_vertices.emplace_back(v.get<std::vector<double>>());
    for (const auto& iq : doc.at("inequalities")) {
        P.cell.tighten(iq.at("j").get<std::size_t>() - 1, iq.at("k").get<std::size_t>() - 1,
                       iq.at("bound").get<double>());
    }
    P.dual.pi.assign(n, std::vector<int>(d, 0));
    P.dual.phi.assign(d, std::vector<int>(n, 0));
    const auto& tau = doc.at("tau");
    const auto& tau_bar = doc.at("tau_bar");
    for (std::size_t j = 0; j < d; ++j) {
        for (const auto& i : tau.at(j)) P.dual.pi[i.get<std::size_t>() - 1][j] = 1;
        for (const auto& i : tau_bar.at(j)) P.dual.phi[j][i.get<std::size_t>() - 1] = 1;
    }
    P.dual.cost = -P.opt_value;
    return {std::move(V), std::move(P)};
}

}  // namespace tropfw

#endif  // TROPFW_IO_HPP
