#pragma once

// JSON import/export of truncated series:
// {"grid": D, "trunc": T or null, "terms": [[e, "num/den"], ...]}

#include "frob/qseries.hpp"

#include <json.hpp>

namespace frob {

inline nlohmann::json series_to_json(const FracQSeries& f) {
    nlohmann::json j;
    j["grid"] = f.grid();
    if (f.exact()) j["trunc"] = nullptr;
    else j["trunc"] = f.trunc();
    auto terms = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({e, c.get_str()});
    j["terms"] = terms;
    return j;
}

inline FracQSeries series_from_json(const nlohmann::json& j) {
    if (!j.contains("grid") || !j.contains("terms")) throw precondition_error("series json needs grid and terms");
    Int grid = j.at("grid").get<Int>();
    Int trunc = (j.contains("trunc") && !j.at("trunc").is_null()) ? j.at("trunc").get<Int>() : FracQSeries::kExact;
    FracQSeries f(grid, trunc);
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2) throw precondition_error("series term must be [e, \"num/den\"]");
        f.set(t[0].get<Int>(), parse_rational(t[1].get<std::string>()));
    }
    return f;
}

}  // namespace frob
