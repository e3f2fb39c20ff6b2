#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance_suite.hpp"

int main(int argc, char **argv)
{
    int first = 1, last = acceptance::kCriteria;
    if (argc > 1) {
        first = last = std::atoi(argv[1]);
        if (first < 1 || first > acceptance::kCriteria) {
            std::cerr << "usage: acceptance [criterion 1-" << acceptance::kCriteria << "]\n";
            return 2;
        }
    }
    bool ok = true;
    for (int id = first; id <= last; ++id) {
        auto r = acceptance::run(id);
        std::cout << acceptance::line(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
