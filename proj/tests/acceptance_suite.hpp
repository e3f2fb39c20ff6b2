#pragma once

#include <string>
#include <vector>

namespace acceptance {

struct Result {
    int id = 0;
    bool pass = false;
    std::string summary;
    std::vector<std::string> notes;
    double seconds = 0;
};

constexpr int kCriteria = 8;

Result run(int id);
// short description of what the criterion covers
std::string location(int id);
std::string line(const Result &r);

}  // namespace acceptance
