#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace udf {

enum class Status { Pass, Fail, Excluded };

struct ReportEntry {
    std::string case_id;
    Status status = Status::Pass;
    std::string lhs, rhs;  // short digests of both sides
    std::string detail;
};

struct VerificationReport {
    std::string suite;
    std::vector<ReportEntry> entries;

    void add(std::string id, bool ok, std::string lhs = {}, std::string rhs = {}, std::string detail = {});
    void exclude(std::string id, std::string detail);
    void merge(const VerificationReport &o);
    int passed() const;
    int failed() const;
    int excluded() const;
    bool ok() const { return failed() == 0; }
    nlohmann::json to_json() const;
    std::string summary() const;
};

std::string status_name(Status s);
// short stable digest of a rendering, for report lhs/rhs fields
std::string digest(const std::string &s);

}  // namespace udf
