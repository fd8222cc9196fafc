#pragma once

#include <json.hpp>

#include "troupes/cumulant.hpp"
#include "troupes/series.hpp"
#include "troupes/vhc.hpp"

namespace troupes {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "troupes-output/1";

/// {"var":"z","order":N,"coeffs":[{"poly":"..."},...]}
inline Json series_to_json(const TruncatedSeries& s) {
    Json coeffs = Json::array();
    for (int n = 0; n <= s.order(); ++n) coeffs.push_back(Json{{"poly", s.coeff(n).to_string()}});
    return Json{{"var", "z"}, {"order", s.order()}, {"coeffs", coeffs}};
}

inline TruncatedSeries series_from_json(const Json& j) {
    if (!j.contains("order") || !j.contains("coeffs"))
        throw std::invalid_argument("series JSON needs 'order' and 'coeffs'");
    int order = j.at("order").get<int>();
    TruncatedSeries s(order);
    const Json& coeffs = j.at("coeffs");
    if (static_cast<int>(coeffs.size()) != order + 1)
        throw std::invalid_argument("series JSON coefficient count does not match order");
    for (int n = 0; n <= order; ++n)
        s.set_coeff(n, MultiPoly::parse(coeffs.at(n).at("poly").get<std::string>()));
    return s;
}

/// {"kind":"free","values":["-1","-1",...]} with values in the polynomial
/// grammar.
inline Json cumulant_sequence_to_json(const CumulantSequence& s) {
    Json values = Json::array();
    for (const MultiPoly& v : s.values) values.push_back(v.to_string());
    return Json{{"kind", to_string(s.kind)}, {"values", values}};
}

inline CumulantSequence cumulant_sequence_from_json(const Json& j) {
    CumulantSequence s;
    s.kind = seq_kind_from_string(j.at("kind").get<std::string>());
    for (const Json& v : j.at("values")) s.values.push_back(MultiPoly::parse(v.get<std::string>()));
    return s;
}

inline Json vhc_to_json(const ValidHookConfiguration& cfg) {
    VhcColoring col = coloring(cfg);
    Json hooks = Json::array();
    for (const Hook& h : cfg.hooks()) hooks.push_back(Json::array({h.sw, h.ne}));
    return Json{{"base", cfg.base().to_string()},
                {"hooks", hooks},
                {"q", col.q},
                {"vertical", col.vertical.to_string()},
                {"horizontal", col.horizontal.to_string()}};
}

inline Json orientation_to_json(const Orientation& o) {
    Json edges = Json::array();
    for (auto [a, b] : o.directed) edges.push_back(Json::array({a, b}));
    return Json{{"vertices", o.graph.vcount}, {"directed_edges", edges}};
}

}  // namespace troupes
