// Acceptance suite: runs the bundled verification corpus and prints one
// pass/fail line per criterion. Exit code 0 iff everything passed.

#include <cstdio>

#include "arrkit/corpus.hpp"

int main() {
    bool all = true;
    double total = 0;
    arrkit::corpus::run_all([&](const arrkit::corpus::CheckResult& r) {
        all = all && r.pass;
        total += r.seconds;
        std::printf("%s  criterion %s  [%.2fs]%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.pass ? "" : "  ", r.pass ? "" : r.detail.c_str());
        std::fflush(stdout);
    });
    std::printf("%s: %0.2fs total\n", all ? "ALL CRITERIA PASSED" : "FAILURES PRESENT", total);
    return all ? 0 : 1;
}
