#include "rcpac/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace rcpac {

Json rational_json(const Rational& r) { return Json{{"num", r.num()}, {"den", r.den()}}; }

std::string rational_str(const Rational& r) {
    return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

Json sample_json(const LabeledSample& s) {
    Json arr = Json::array();
    for (const auto& ex : s) arr.push_back(Json{{"point", ex.point}, {"label", ex.label}});
    return arr;
}

Json distribution_json(const FiniteDistribution& d) {
    Json arr = Json::array();
    for (const auto& a : d.support)
        arr.push_back(Json{{"point", a.point}, {"label", a.label}, {"mass", rational_json(a.mass)}});
    return arr;
}

Json provenance_json(const Provenance& p) {
    switch (p.kind) {
        case Provenance::Kind::Opaque: return Json{{"kind", "opaque"}};
        case Provenance::Kind::FamilyMember:
            return Json{{"kind", "member"}, {"family", p.family}, {"param", p.param}};
        case Provenance::Kind::MajorityOfMembers:
            return Json{{"kind", "majority"}, {"family", p.family}, {"members", p.member_codes}};
    }
    return Json{};
}

bool DemoReport::all_gating_pass() const {
    for (const auto& c : checks)
        if (c.gating && !c.pass) return false;
    return true;
}

Json DemoReport::to_json() const {
    Json j;
    j["experiment"] = experiment;
    j["config"] = config;
    j["rows"] = rows;
    j["summary"] = summary;
    Json cs = Json::array();
    for (const auto& c : checks)
        cs.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"gating", c.gating}});
    j["checks"] = cs;
    if (!certificates.empty()) j["certificates"] = certificates;
    return j;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

std::string scalar_to_csv(const Json& v) {
    if (v.is_object() && v.contains("num") && v.contains("den"))
        return std::to_string(v["num"].get<long long>()) + "/" +
               std::to_string(v["den"].get<long long>());
    if (v.is_string()) return csv_escape(v.get<std::string>());
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_null()) return "";
    return v.dump();
}

}  // namespace

std::string DemoReport::to_csv() const {
    std::ostringstream out;
    out << "# experiment," << experiment << "\n";
    if (!rows.empty()) {
        std::vector<std::string> cols;
        for (auto it = rows.front().begin(); it != rows.front().end(); ++it)
            cols.push_back(it.key());
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << csv_escape(cols[i]);
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                out << (i ? "," : "")
                    << (row.contains(cols[i]) ? scalar_to_csv(row[cols[i]]) : "");
            out << "\n";
        }
    }
    for (const auto& c : checks)
        out << "check," << csv_escape(c.name) << "," << (c.pass ? "pass" : "fail")
            << (c.gating ? "" : ",informational") << "\n";
    return out.str();
}

void DemoReport::write(const std::string& path, const std::string& format) const {
    std::string payload = format == "csv" ? to_csv() : to_json().dump(2) + "\n";
    if (path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("report: cannot write " + path);
        out << payload;
    }
}

}  // namespace rcpac
