#ifndef ARRKIT_CORPUS_HPP
#define ARRKIT_CORPUS_HPP

#include <functional>
#include <string>
#include <vector>

namespace arrkit::corpus {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail; // first failure reason, empty when passing
};

// The bundled verification corpus: every fixture is built programmatically,
// so the run needs no external data. Each entry covers one acceptance
// criterion and reports one pass/fail line.
std::vector<CheckResult> run_all(const std::function<void(const CheckResult&)>& on_result = {});

} // namespace arrkit::corpus

#endif
