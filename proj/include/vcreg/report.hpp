#pragma once

#include "vcreg/serialize.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace vcreg {

std::string sha256_hex(std::string_view data);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;

    bool operator==(const Check& o) const = default;
};

struct RunReport {
    std::string subcommand;
    Json inputs = Json::object();     // files (path + sha256) and flags
    Json outputs = Json::object();
    std::vector<Check> verification;
    Json timing = Json::object();

    void check(std::string name, bool passed, std::string detail = {});
    bool passed() const;              // every check passed (and there is at least one)
};

Json to_json(const RunReport& r);
RunReport run_report_from_json(const Json& j);
bool equal_modulo_timing(const RunReport& a, const RunReport& b);

}  // namespace vcreg
