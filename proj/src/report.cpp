#include "vcreg/report.hpp"

#include "vcreg/rng.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

namespace vcreg {

std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

void RunReport::check(std::string name, bool passed, std::string detail)
{
    verification.push_back(Check{std::move(name), passed, std::move(detail)});
}

bool RunReport::passed() const
{
    return !verification.empty() &&
           std::all_of(verification.begin(), verification.end(), [](const Check& c) { return c.passed; });
}

Json to_json(const RunReport& r)
{
    Json j;
    j["subcommand"] = r.subcommand;
    j["rng"] = std::string(Rng::kName);
    j["inputs"] = r.inputs;
    j["outputs"] = r.outputs;
    Json v = Json::array();
    for (const auto& c : r.verification) v.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["verification"] = std::move(v);
    j["passed"] = r.passed();
    j["timing"] = r.timing;
    return j;
}

RunReport run_report_from_json(const Json& j)
{
    try {
        RunReport r;
        r.subcommand = j.at("subcommand").get<std::string>();
        r.inputs = j.at("inputs");
        r.outputs = j.at("outputs");
        for (const auto& c : j.at("verification"))
            r.verification.push_back(
                Check{c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
        r.timing = j.value("timing", Json::object());
        return r;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed run report: ") + e.what());
    }
}

bool equal_modulo_timing(const RunReport& a, const RunReport& b)
{
    return a.subcommand == b.subcommand && a.inputs == b.inputs && a.outputs == b.outputs &&
           a.verification == b.verification;
}

}  // namespace vcreg
