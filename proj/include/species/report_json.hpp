#pragma once

#include <json.hpp>

#include "species/axiom.hpp"
#include "species/eval.hpp"

namespace species {

inline nlohmann::json to_json(const AxiomReport& rep) {
    nlohmann::json j;
    j["axiom"] = rep.axiom;
    if (rep.lambda) j["lambda"] = rat_str(*rep.lambda);
    j["holds"] = rep.holds;
    j["samples"] = rep.samples;
    j["inconclusive_count"] = rep.inconclusive_count;
    if (rep.witness) {
        j["witness"] = {{"inputs", rep.witness->inputs},
                        {"lhs", rep.witness->lhs},
                        {"rhs", rep.witness->rhs},
                        {"window", rep.witness->window}};
    }
    return j;
}

inline nlohmann::json to_json(const OracleReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"n", r.n},
                        {"enumerated", int_str(r.enumerated)},
                        {"series_count", int_str(r.series_count)},
                        {"match", r.match}});
    nlohmann::json j;
    j["expr"] = rep.expr;
    j["rows"] = rows;
    j["pass"] = rep.pass;
    if (!rep.pass) j["first_mismatch"] = rep.first_mismatch;
    return j;
}

inline nlohmann::json to_json(const OrdDist& od) {
    return {{"ord", od.ord}, {"exact", od.exact}, {"dist", rat_str(od.dist)}};
}

inline nlohmann::json value_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, OrdDist>) return to_json(x);
            else if constexpr (std::is_same_v<T, SpeciesPoly>)
                return {{"kind", "species"}, {"text", x.str()}, {"window", x.window()}};
            else if constexpr (std::is_same_v<T, LinSpecies>) {
                nlohmann::json counts = nlohmann::json::array();
                for (int n = 0; n <= x.window(); ++n) counts.push_back(int_str(x.count(n)));
                return {{"kind", "linear"}, {"counts", counts}, {"window", x.window()}};
            } else if constexpr (std::is_same_v<T, LocFraction>) {
                return {{"kind", "fraction"},
                        {"num", x.num().str()},
                        {"denom_exp", x.denom_exp()},
                        {"K", x.context()->k().str()},
                        {"window", x.window()}};
            } else { // EGFSeries
                nlohmann::json coeffs = nlohmann::json::array();
                for (int n = 0; n <= x.window(); ++n) coeffs.push_back(rat_str(x.coeff(n)));
                return {{"kind", "series"}, {"coeffs", coeffs}, {"window", x.window()}};
            }
        },
        v);
}

} // namespace species
