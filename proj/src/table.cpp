#include "odb/table.hpp"

#include <json.hpp>

namespace odb {

double DistributionTable::value_at(int h) const {
    if (h < 0) return 0.0;
    if (h >= int(cdf_value.size())) return 1.0;
    return cdf_value[std::size_t(h)];
}

Rational DistributionTable::exact_at(int h) const {
    if (!exact) throw ArgumentError("table is not exact");
    if (h < 0) return Rational(0);
    if (h >= int(cdf_exact.size())) return Rational(1);
    return cdf_exact[std::size_t(h)];
}

std::string table_to_json(const DistributionTable& t) {
    nlohmann::json j;
    j["m"] = t.m;
    j["n"] = t.n;
    j["mode"] = t.mode;
    j["route"] = t.route;
    j["exact"] = t.exact;
    j["p"] = t.exact ? to_fraction_string(t.p_exact) : std::to_string(t.p_value);
    auto cdf = nlohmann::json::array();
    for (int h = 0; h <= t.h_max(); ++h) {
        nlohmann::json row;
        row["h"] = h;
        if (t.exact)
            row["prob"] = to_fraction_string(t.cdf_exact[std::size_t(h)]);
        else
            row["prob"] = t.cdf_value[std::size_t(h)];
        cdf.push_back(row);
    }
    j["cdf"] = cdf;
    return j.dump(2);
}

DistributionTable table_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DistributionTable t;
    t.m = j.at("m").get<int>();
    t.n = j.at("n").get<int>();
    t.mode = j.at("mode").get<std::string>();
    t.route = j.value("route", std::string());
    t.exact = j.value("exact", false);
    if (t.exact) {
        auto p = parse_fraction(j.at("p").get<std::string>());
        if (!p) throw ArgumentError("bad rational p in table json");
        t.p_exact = *p;
        t.p_value = to_double(t.p_exact);
    } else {
        auto& pj = j.at("p");
        t.p_value = pj.is_string() ? std::stod(pj.get<std::string>()) : pj.get<double>();
    }
    for (const auto& row : j.at("cdf")) {
        if (t.exact) {
            auto q = parse_fraction(row.at("prob").get<std::string>());
            if (!q) throw ArgumentError("bad rational prob in table json");
            t.cdf_exact.push_back(*q);
            t.cdf_value.push_back(to_double(*q));
        } else {
            t.cdf_value.push_back(row.at("prob").get<double>());
        }
    }
    return t;
}

}  // namespace odb
