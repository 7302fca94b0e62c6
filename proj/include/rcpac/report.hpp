#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rcpac/learning.hpp"

namespace rcpac {

// Machine-readable experiment reports. JSON keeps rationals as {num, den};
// CSV flattens them to "num/den" strings. Key order is fixed (insertion
// order) so equal runs produce identical bytes.
using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r);
std::string rational_str(const Rational& r);

Json sample_json(const LabeledSample& s);
Json distribution_json(const FiniteDistribution& d);
Json provenance_json(const Provenance& p);

struct Check {
    std::string name;
    bool pass = false;
    bool gating = true;  // informational rows do not affect the exit code
};

struct DemoReport {
    std::string experiment;
    Json config;
    std::vector<Json> rows;
    Json summary;
    std::vector<Check> checks;
    std::vector<Json> certificates;

    bool all_gating_pass() const;
    Json to_json() const;
    std::string to_csv() const;
    // serializes per `format` ("json" | "csv") and writes to path or stdout
    void write(const std::string& path, const std::string& format) const;
};

}  // namespace rcpac
