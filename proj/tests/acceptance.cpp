// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "elastica/verify.hpp"

#include <iomanip>
#include <iostream>
#include <thread>

int main()
{
    elastica::VerifyOptions opt;
    opt.threads = std::max(1U, std::thread::hardware_concurrency());
    int failed = 0;
    for (const auto& r : elastica::verify_all(opt)) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << std::left
                  << std::setw(26) << r.name << std::right << r.detail << std::endl;
        failed += r.passed ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
