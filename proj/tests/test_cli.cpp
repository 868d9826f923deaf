#include <gtest/gtest.h>

#include <etakit/cli.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace etakit;
using etakit::io::Json;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("etakit_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

const char* kTwoTerm = R"({"ring": {"kind": "Integers"}, "degrees": [0, 1], "ranks": [1, 1],
  "differentials": [{"rows": 1, "cols": 1, "entries": [["9"]]}]})";

}  // namespace

TEST(Io, RoundTrips) {
    const ZTower A(Integers{}, 2, 1);
    const auto x = A.mul(A.monomial(-3, 2), A.q_int(3));
    EXPECT_EQ(io::element_from_json(A, io::element_to_json(A, x)), x);

    const Rationals Q;
    EXPECT_EQ(io::decode(Q, io::encode(Q, BigRat(-7, 3))), BigRat(-7, 3));

    const Integers Z;
    const auto C = tensor_product(Z, two_term(Z, BigInt(4)), two_term(Z, BigInt(6), 1));
    const auto back = io::complex_from_json(Z, io::complex_to_json(Z, C));
    EXPECT_EQ(back.lo, C.lo);
    EXPECT_EQ(back.d, C.d);

    const WittRing<Integers> W(Integers{}, 3);
    const auto w = W.teichmuller(5, 3);
    EXPECT_EQ(io::witt_from_json(Z, io::witt_to_json(Z, w)), w);
}

TEST(Io, RejectsBadInput) {
    const Integers Z;
    EXPECT_THROW(io::parse("{\"ring\":"), InputError);
    EXPECT_THROW(io::decode(Z, Json("12x")), InputError);
    Json bad = io::complex_to_json(Z, two_term(Z, BigInt(3)));
    bad["ranks"] = {1, 1, 1};
    EXPECT_THROW(io::complex_from_json(Z, bad), InputError);
    Json mismatch = io::complex_to_json(PrimeField(5), two_term(PrimeField(5), 3));
    EXPECT_THROW(io::complex_from_json(Z, mismatch), RingMismatch);
    // d o d != 0
    Json nonzero = Json::parse(R"({"ring": {"kind": "Integers"}, "degrees": [0, 2], "ranks": [1, 1, 1],
        "differentials": [{"rows": 1, "cols": 1, "entries": [["1"]]}, {"rows": 1, "cols": 1, "entries": [["1"]]}]})");
    EXPECT_THROW(io::complex_from_json(Z, nonzero), InputError);
}

TEST(Cli, CompareListsJunkAtThreeHalves) {
    const auto r = run({"compare", "--d", "1", "--k", "1", "--p", "2", "--B", "3", "--trunc", "1,8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_TRUE(j["pass"].get<bool>());
    bool found = false;
    for (const auto& b : j["results"]["listed"])
        if (b["weight"] == "3/2") found = b["annihilators"] == Json::array({oracle::kJunkThreeHalves});
    EXPECT_TRUE(found);
}

TEST(Cli, VerifySuiteEtaBockstein) {
    const auto r = run({"verify-suite", "eta-bockstein", "--seed", "7", "--cases", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["results"][0]["counts"]["pass"].get<std::size_t>(), 200u);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"cohomology", "--input", temp_file("bad.json", "{\"ring\": [")}).code, 2);
    EXPECT_EQ(run({"cohomology", "--input", "/nonexistent/etakit.json"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"compare", "--d", "1"}).code, 2);
    EXPECT_EQ(run({"compare", "--d", "1", "--k", "1", "--p", "4", "--B", "3"}).code, 2);
    EXPECT_EQ(run({"compare", "--d", "2", "--k", "1", "--p", "2", "--B", "2", "--exact"}).code, 2);
    EXPECT_EQ(run({"bk-check", "--d", "1", "--k", "0", "--p", "3", "--B", "2", "--i", "1"}).code, 2);
    EXPECT_EQ(run({"witt", "add", "--p", "2", "--x", "[\"1\"]", "--y", "[\"1\", \"2\"]"}).code, 2);
    EXPECT_EQ(run({"eta", "--input", temp_file("z.json", kTwoTerm), "--f", "0"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, EtaOnAFile) {
    const auto path = temp_file("nine.json", kTwoTerm);
    const auto r = run({"eta", "--input", path, "--f", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["results"]["eta"]["differentials"][0]["entries"][0][0], "3");
    const auto c = run({"eta-check", "--input", path, "--f", "3", "--g", "3"});
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(c.json()["results"]["base_change"]["verdict"], "skip");
}

TEST(Cli, WittVerb) {
    const auto r = run({"witt", "add", "--p", "2", "--x", "[\"1\", \"0\"]", "--y", "[\"1\", \"0\"]"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["results"]["value"]["components"], Json::array({"2", "-1"}));
    const auto g = run({"witt", "ghost", "--p", "2", "--x", "[\"3\", \"5\"]"});
    EXPECT_EQ(g.json()["results"]["value"]["ghost"], Json::array({"3", "19"}));
}

TEST(Cli, ReportsAreByteIdentical) {
    const auto a = std::filesystem::temp_directory_path() / "etakit_test_a.json";
    const auto b = std::filesystem::temp_directory_path() / "etakit_test_b.json";
    for (const auto& path : {a, b})
        ASSERT_EQ(run({"--out", path.string(), "fv-axioms", "--p", "2", "--d", "1", "--k", "3", "--B", "2", "--samples",
                       "4", "--seed", "9"})
                      .code,
                  0);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream f(p);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Report, EmptyResultSet) {
    SuiteResult s{"empty", "nothing", {}};
    std::ostringstream out;
    emit_report(make_report("verify-suite", Json::object(), Json::array({suite_to_json(s)}), s.pass()), "", out);
    const auto j = Json::parse(out.str());
    EXPECT_EQ(j["schema"], io::kSchemaVersion);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["results"][0]["cases"].size(), 0u);
}

TEST(Parallel, OrderIsIndexOrder) {
    const auto v = parallel_map(50, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], i * i);
    EXPECT_THROW(parallel_map(10, [](std::size_t i) -> int { if (i == 3) throw InputError("x"); return 0; }), InputError);
}
