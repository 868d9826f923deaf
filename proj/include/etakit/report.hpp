#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include "complex.hpp"
#include "io.hpp"
#include "qtorus.hpp"
#include "witt.hpp"

namespace etakit {

enum class Verdict { pass, fail, skip };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::skip: return "skip";
    }
    return "";
}

/// One checked case. A skip always carries its reason in `detail`.
struct CaseResult {
    std::string name;
    Verdict verdict = Verdict::pass;
    std::string detail;
    io::Json witness;
};

struct SuiteResult {
    std::string name;
    std::string claim;
    std::vector<CaseResult> cases;

    bool pass() const {
        return std::none_of(cases.begin(), cases.end(), [](const auto& c) { return c.verdict == Verdict::fail; });
    }
    std::size_t count(Verdict v) const {
        return static_cast<std::size_t>(
            std::count_if(cases.begin(), cases.end(), [&](const auto& c) { return c.verdict == v; }));
    }
    void add(CaseResult c) { cases.push_back(std::move(c)); }
    void add(std::string name, bool ok, std::string detail = {}, io::Json witness = {}) {
        cases.push_back({std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail), std::move(witness)});
    }
};

inline io::Json verdict_to_json(const QuasiIsoVerdict& v) {
    io::Json w = io::Json::array();
    for (const auto& e : v.witness) {
        if (e.free_rank == 0 && e.divisors.empty()) continue;
        w.push_back({{"degree", e.degree}, {"free_rank", e.free_rank}, {"divisors", e.divisors}, {"junk_only", e.junk_only}});
    }
    return {{"quasi_iso", v.quasi_iso}, {"cone_cohomology", std::move(w)}};
}

inline io::Json block_to_json(const BlockVerdict& b) {
    io::Json j{{"weight", b.label}, {"integral", b.integral}, {"pass", b.pass}, {"annihilators", b.annihilators}};
    if (!b.note.empty()) j["note"] = b.note;
    return j;
}

/// Per-block verdicts; with `failures_only`, passing blocks are omitted.
inline io::Json graded_to_json(const GradedVerdict& v, bool failures_only) {
    io::Json blocks = io::Json::array();
    std::size_t passed = 0;
    for (const auto& b : v.blocks) {
        if (b.pass) ++passed;
        if (!failures_only || !b.pass) blocks.push_back(block_to_json(b));
    }
    return {{"pass", v.pass}, {"blocks", v.blocks.size()}, {"passed", passed}, {"listed", std::move(blocks)}};
}

inline io::Json identities_to_json(const IdentityReport& r) {
    io::Json ids = io::Json::array();
    for (const auto& i : r.identities) {
        io::Json j{{"name", i.name}, {"cases", i.cases}, {"verdict", i.skipped ? "skip" : i.pass ? "pass" : "fail"}};
        if (!i.counterexample.empty()) j["counterexample"] = i.counterexample;
        ids.push_back(std::move(j));
    }
    return {{"ring", r.ring}, {"p", std::to_string(r.p)}, {"r", r.r}, {"identities", std::move(ids)}};
}

inline io::Json case_to_json(const CaseResult& c) {
    io::Json j{{"name", c.name}, {"verdict", verdict_name(c.verdict)}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.witness.is_null()) j["witness"] = c.witness;
    return j;
}

inline io::Json suite_to_json(const SuiteResult& s) {
    io::Json cases = io::Json::array();
    for (const auto& c : s.cases) cases.push_back(case_to_json(c));
    return {{"suite", s.name},
            {"claim", s.claim},
            {"pass", s.pass()},
            {"counts",
             {{"pass", s.count(Verdict::pass)}, {"fail", s.count(Verdict::fail)}, {"skip", s.count(Verdict::skip)}}},
            {"cases", std::move(cases)}};
}

/// The versioned report envelope. Byte-identical for identical inputs, so
/// nothing time-dependent goes in here.
inline io::Json make_report(const std::string& command, io::Json config, io::Json results, bool pass) {
    return {{"schema", io::kSchemaVersion},
            {"tool", io::kToolVersion},
            {"command", command},
            {"config", std::move(config)},
            {"pass", pass},
            {"results", std::move(results)}};
}

inline void emit_report(const io::Json& report, const std::string& path, std::ostream& fallback) {
    const std::string text = report.dump(2) + "\n";
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw Error("write to " + path + " failed");
}

}  // namespace etakit
