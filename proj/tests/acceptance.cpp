// Runs the eleven acceptance criteria and prints one line per criterion.
// Exit status is nonzero if any criterion fails or exceeds its time limit.

#include <etakit/suites.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <string>

using namespace etakit;

int main() {
    // seconds allowed per criterion
    const std::map<int, double> limit{{1, 30},  {2, 30},  {3, 60},  {4, 5},   {5, 120}, {6, 5},
                                      {7, 60},  {8, 30},  {9, 120}, {10, 120}, {11, 10}};
    const SuiteOptions options;
    int failed = 0;
    for (const auto& entry : suites()) {
        const auto t0 = std::chrono::steady_clock::now();
        SuiteResult result;
        std::string error;
        try {
            result = entry.run(options);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < limit.at(entry.criterion);
        const bool ok = error.empty() && result.pass() && in_time && !result.cases.empty();
        if (!ok) ++failed;
        std::printf("criterion %2d %-20s %s  pass=%zu fail=%zu skip=%zu  %.2fs (limit %.0fs)\n", entry.criterion,
                    entry.name.c_str(), ok ? "PASS" : "FAIL", result.count(Verdict::pass),
                    result.count(Verdict::fail), result.count(Verdict::skip), secs, limit.at(entry.criterion));
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        if (!in_time) std::printf("    over the time limit\n");
        std::map<std::string, std::size_t> skips;
        for (const auto& c : result.cases) {
            if (c.verdict == Verdict::fail) std::printf("    failed: %s %s\n", c.name.c_str(), c.detail.c_str());
            if (c.verdict == Verdict::skip) ++skips[c.detail];
        }
        for (const auto& [reason, n] : skips) std::printf("    %zu skipped: %s\n", n, reason.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, suites().size());
    return failed ? 1 : 0;
}
