#include "udf/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

namespace udf {

void VerificationReport::add(std::string id, bool ok, std::string lhs, std::string rhs, std::string detail)
{
    entries.push_back({std::move(id), ok ? Status::Pass : Status::Fail, std::move(lhs), std::move(rhs),
                       std::move(detail)});
}

void VerificationReport::exclude(std::string id, std::string detail)
{
    entries.push_back({std::move(id), Status::Excluded, {}, {}, std::move(detail)});
}

void VerificationReport::merge(const VerificationReport &o)
{
    entries.insert(entries.end(), o.entries.begin(), o.entries.end());
}

static int tally(const std::vector<ReportEntry> &es, Status s)
{
    return (int)std::count_if(es.begin(), es.end(), [s](const ReportEntry &e) { return e.status == s; });
}

int VerificationReport::passed() const { return tally(entries, Status::Pass); }
int VerificationReport::failed() const { return tally(entries, Status::Fail); }
int VerificationReport::excluded() const { return tally(entries, Status::Excluded); }

std::string status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Excluded: return "excluded";
    }
    return "?";
}

nlohmann::json VerificationReport::to_json() const
{
    auto es = nlohmann::json::array();
    for (auto &e : entries) {
        nlohmann::json j{{"case", e.case_id}, {"status", status_name(e.status)}};
        if (!e.lhs.empty()) j["lhs"] = e.lhs;
        if (!e.rhs.empty()) j["rhs"] = e.rhs;
        if (!e.detail.empty()) j["detail"] = e.detail;
        es.push_back(j);
    }
    return {{"suite", suite},
            {"entries", es},
            {"summary", {{"pass", passed()}, {"fail", failed()}, {"excluded", excluded()}}}};
}

std::string VerificationReport::summary() const
{
    return suite + ": " + std::to_string(passed()) + " pass, " + std::to_string(failed()) + " fail, " +
           std::to_string(excluded()) + " excluded";
}

std::string digest(const std::string &s)
{
    // FNV-1a, 64 bit
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

}  // namespace udf
