#include "diamond/report_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace diamond {

namespace {

using nlohmann::json;

Sign sign_from(const std::string& s) {
    if (s == "NEG") return Sign::negative;
    if (s == "POS") return Sign::positive;
    if (s == "ZERO") return Sign::zero;
    throw std::invalid_argument("unknown sign label: " + s);
}

SchemeId scheme_from(const std::string& s) {
    if (s == "MDF") return SchemeId::mdf;
    if (s == "MDF-BC") return SchemeId::mdf_bc;
    if (s == "MDF-MAC") return SchemeId::mdf_mac;
    throw std::invalid_argument("unknown scheme label: " + s);
}

BoundId bound_from(const std::string& s) {
    for (BoundId id : {BoundId::up1, BoundId::up2, BoundId::up3, BoundId::up4, BoundId::capacity_delta0}) {
        if (to_string(id) == s) return id;
    }
    throw std::invalid_argument("unknown bound label: " + s);
}

GapSymbol gap_symbol_from(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(GapSymbol::mac2); ++k) {
        if (to_string(static_cast<GapSymbol>(k)) == s) return static_cast<GapSymbol>(k);
    }
    throw std::invalid_argument("unknown gap symbol: " + s);
}

std::string enlarged_label(EnlargedLink e) {
    switch (e) {
        case EnlargedLink::none: return "none";
        case EnlargedLink::c13: return "C13";
        case EnlargedLink::c23: return "C23";
    }
    return "?";
}

EnlargedLink enlarged_from(const std::string& s) {
    if (s == "C13") return EnlargedLink::c13;
    if (s == "C23") return EnlargedLink::c23;
    return EnlargedLink::none;
}

json scheme_json(const SchemeResult& r) {
    json j;
    j["scheme"] = to_string(r.scheme);
    j["rate"] = r.rate;
    j["schedule"] = {{"t1", r.schedule.t1}, {"t2", r.schedule.t2}, {"t3", r.schedule.t3}, {"t4", r.schedule.t4}};
    if (const auto* b = std::get_if<BroadcastSplit>(&r.split)) {
        j["split"] = {{"kind", "broadcast"}, {"eta", b->eta}, {"u", b->u}, {"v", b->v}, {"uses_eta1", b->uses_eta1}};
    } else if (const auto* m = std::get_if<MacSplit>(&r.split)) {
        j["split"] = {{"kind", "multiple_access"}, {"R1", m->R1}, {"R2", m->R2}};
    } else {
        j["split"] = nullptr;
    }
    j["case_label"] = r.case_label;
    return j;
}

SchemeResult scheme_from_json(const json& j) {
    SchemeResult r;
    r.scheme = scheme_from(j.at("scheme").get<std::string>());
    r.rate = j.at("rate").get<double>();
    const json& t = j.at("schedule");
    r.schedule = {t.at("t1").get<double>(), t.at("t2").get<double>(), t.at("t3").get<double>(), t.at("t4").get<double>()};
    const json& s = j.at("split");
    if (!s.is_null()) {
        if (s.at("kind") == "broadcast") {
            r.split = BroadcastSplit{s.at("eta").get<double>(), s.at("u").get<double>(), s.at("v").get<double>(),
                                     s.at("uses_eta1").get<bool>()};
        } else {
            r.split = MacSplit{s.at("R1").get<double>(), s.at("R2").get<double>()};
        }
    }
    r.case_label = j.at("case_label").get<std::string>();
    return r;
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_header() {
    return "g01,g02,g13,g23,C01,C02,C13,C23,Delta,Gamma,GammaPrime,delta,region,scheme,achievable,lp_opt,upper,gap,"
           "gap_guarantee";
}

std::string csv_row(const RateReport& r) {
    const auto& g = r.gains;
    const auto& c = r.caps;
    std::string s;
    for (double v : {g.g01, g.g02, g.g13, g.g23, c.C01, c.C02, c.C13, c.C23, c.Delta, c.Gamma, c.GammaPrime, c.delta}) {
        s += format_real(v);
        s += ',';
    }
    s += "R" + std::to_string(r.region.index) + ',';
    s += to_string(r.achievable.scheme) + ',';
    s += format_real(r.achievable.rate) + ',';
    s += format_real(r.lp_optimum) + ',';
    s += format_real(r.upper.value) + ',';
    s += format_real(r.measured_gap) + ',';
    s += format_real(r.gap_guarantee);
    return s;
}

json to_json(const RateReport& r) {
    json j;
    j["gains"] = {{"g01", r.gains.g01}, {"g02", r.gains.g02}, {"g13", r.gains.g13}, {"g23", r.gains.g23}};
    const auto& c = r.caps;
    j["caps"] = {{"C01", c.C01},     {"C02", c.C02},     {"C13", c.C13},         {"C23", c.C23},
                 {"C012", c.C012},   {"C123", c.C123},   {"CMAC", c.CMAC},       {"Delta", c.Delta},
                 {"Gamma", c.Gamma}, {"GammaPrime", c.GammaPrime}, {"delta", c.delta}, {"zeta1", c.zeta1},
                 {"zeta2", c.zeta2}};
    j["region"] = {{"index", r.region.index},
                   {"label", r.region.label()},
                   {"delta_sign", to_string(r.region.delta_sign)},
                   {"gamma_sign", to_string(r.region.gamma_sign)},
                   {"subcondition", r.region.subcondition}};
    j["achievable"] = scheme_json(r.achievable);
    j["mdf"] = scheme_json(r.mdf);
    j["mdf_bc"] = r.mdf_bc ? scheme_json(*r.mdf_bc) : json(nullptr);
    j["mdf_mac"] = r.mdf_mac ? scheme_json(*r.mdf_mac) : json(nullptr);
    j["upper"] = {{"value", r.upper.value},
                  {"id", to_string(r.upper.id)},
                  {"tau", r.upper.tau},
                  {"delta_added", r.upper.delta_added},
                  {"enlarged", enlarged_label(r.upper.enlarged)}};
    const auto& cert = r.certificate;
    j["certificate"] = {{"passed", cert.passed},
                        {"failures", cert.failures},
                        {"rows", cert.rows},
                        {"max_row", cert.max_row},
                        {"tau_sum", cert.tau_sum},
                        {"min_tau", cert.min_tau},
                        {"tau_limit_margin", cert.tau_limit_margin},
                        {"enlargement_cost", cert.enlargement_cost}};
    j["lp_optimum"] = r.lp_optimum;
    j["gap_symbol"] = to_string(r.gap_symbol);
    j["gap_formula_value"] = r.gap_formula_value;
    j["gap_guarantee"] = r.gap_guarantee;
    j["measured_gap"] = r.measured_gap;
    return j;
}

RateReport report_from_json(const json& j) {
    RateReport r;
    const json& g = j.at("gains");
    r.gains = {g.at("g01").get<double>(), g.at("g02").get<double>(), g.at("g13").get<double>(),
               g.at("g23").get<double>()};
    const json& c = j.at("caps");
    auto& k = r.caps;
    k.C01 = c.at("C01");
    k.C02 = c.at("C02");
    k.C13 = c.at("C13");
    k.C23 = c.at("C23");
    k.C012 = c.at("C012");
    k.C123 = c.at("C123");
    k.CMAC = c.at("CMAC");
    k.Delta = c.at("Delta");
    k.Gamma = c.at("Gamma");
    k.GammaPrime = c.at("GammaPrime");
    k.delta = c.at("delta");
    k.zeta1 = c.at("zeta1");
    k.zeta2 = c.at("zeta2");
    const json& reg = j.at("region");
    r.region.index = reg.at("index");
    r.region.delta_sign = sign_from(reg.at("delta_sign"));
    r.region.gamma_sign = sign_from(reg.at("gamma_sign"));
    r.region.subcondition = reg.at("subcondition");
    r.achievable = scheme_from_json(j.at("achievable"));
    r.mdf = scheme_from_json(j.at("mdf"));
    if (!j.at("mdf_bc").is_null()) r.mdf_bc = scheme_from_json(j.at("mdf_bc"));
    if (!j.at("mdf_mac").is_null()) r.mdf_mac = scheme_from_json(j.at("mdf_mac"));
    const json& u = j.at("upper");
    r.upper.value = u.at("value");
    r.upper.id = bound_from(u.at("id"));
    r.upper.tau = u.at("tau").get<std::array<double, 4>>();
    r.upper.delta_added = u.at("delta_added");
    r.upper.enlarged = enlarged_from(u.at("enlarged"));
    const json& ce = j.at("certificate");
    r.certificate.passed = ce.at("passed");
    r.certificate.failures = ce.at("failures").get<std::vector<std::string>>();
    r.certificate.rows = ce.at("rows").get<std::array<double, 4>>();
    r.certificate.max_row = ce.at("max_row");
    r.certificate.tau_sum = ce.at("tau_sum");
    r.certificate.min_tau = ce.at("min_tau");
    r.certificate.tau_limit_margin = ce.at("tau_limit_margin");
    r.certificate.enlargement_cost = ce.at("enlargement_cost");
    r.lp_optimum = j.at("lp_optimum");
    r.gap_symbol = gap_symbol_from(j.at("gap_symbol"));
    r.gap_formula_value = j.at("gap_formula_value");
    r.gap_guarantee = j.at("gap_guarantee");
    r.measured_gap = j.at("measured_gap");
    return r;
}

json to_json(const SweepSummary& s) {
    json j;
    j["count"] = s.count;
    j["max_gap"] = s.max_gap;
    j["max_delta"] = s.max_delta;
    j["violations"] = s.violations;
    j["violation_messages"] = s.violation_messages;
    json regions = json::array();
    for (int i = 0; i < region_count; ++i) {
        const bool seen = s.occupancy[i] > 0;
        regions.push_back({{"region", i + 1},
                           {"count", s.occupancy[i]},
                           {"max_gap", seen ? json(s.max_gap_by_region[i]) : json(nullptr)},
                           {"max_excess", seen ? json(s.max_excess_by_region[i]) : json(nullptr)}});
    }
    j["regions"] = regions;
    return j;
}

}  // namespace diamond
