#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padicx {

struct criterion_result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/**
 * Runs the full verification suite (exact golden tables, family
 * valuations, quotient-structure checks, oracle equivalences, the global
 * p^{m/3} scan, and the propagation property test). p_scan selects the
 * prime for the two single-prime scan criteria (default 3); the remaining
 * criteria use their pinned prime sets. When progress is non-null, one
 * pass/fail line per criterion is printed as results arrive.
 */
std::vector<criterion_result> run_acceptance(unsigned long p_scan = 3,
                                             std::ostream* progress = nullptr);

}  // namespace padicx
