// Acceptance suite: runs every verification criterion and prints one
// pass/fail line each. Exit status is the number of failing blocking
// criteria (the observation suite reports but never fails the run).

#include <chrono>
#include <cstdio>
#include <exception>

#include "troupes/verify.hpp"

int main() {
    using Clock = std::chrono::steady_clock;
    auto suites = troupes::verify::all_suites();
    int failures = 0;
    auto start = Clock::now();
    for (auto& suite : suites) {
        troupes::verify::SuiteResult r;
        auto t0 = Clock::now();
        try {
            r = suite();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        const char* verdict = r.pass ? "PASS" : (r.blocking ? "FAIL" : "WARN");
        std::printf("[%2d] %s  %-28s (%6lld ms)  %s\n", r.criterion, verdict, r.name.c_str(),
                    static_cast<long long>(ms), r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass && r.blocking) ++failures;
    }
    auto total = std::chrono::duration_cast<std::chrono::seconds>(Clock::now() - start).count();
    std::printf("%d of %zu criteria failing; total %llds\n", failures, suites.size(),
                static_cast<long long>(total));
    return failures;
}
