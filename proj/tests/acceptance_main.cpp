// Verification suite runner: one pass/fail line per criterion, nonzero exit
// on any failure.
#include <iostream>

#include "padicx/acceptance.hpp"

int main() {
    auto results = padicx::run_acceptance(3, &std::cout);
    bool all = true;
    int failed = 0;
    for (const auto& r : results) {
        if (!r.pass) {
            all = false;
            ++failed;
        }
    }
    std::cout << (all ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAILED")
              << " (" << results.size() << " total)\n";
    return all ? 0 : 1;
}
