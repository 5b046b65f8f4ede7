#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tridiag/spec_io.hpp"

using namespace tridiag;
namespace fs = std::filesystem;

namespace {

const char* kScalarSpec = R"({
  "a": {"coeff": [1,0], "base": [1,0], "power": 1},
  "b": {"coeff": [1,0], "base": [0.5,0], "power": 0},
  "options": {"truncation": 128, "horizon": 32, "tolerance": 1e-10}
})";

const char* kMatrixSpec = R"({
  "d": 2,
  "Q": [[[1,0],[0,0]],[[0,0],[1,0]]],
  "channels": [
    {"a": {"coeff": [1,0], "base": [1,0], "power": 1},
     "b": {"coeff": [1,0], "base": [0.5,0], "power": 0}},
    {"a": {"coeff": [1,0], "base": [1,0], "power": 0.5},
     "b": {"coeff": [1,0], "base": [0.5,0], "power": 0}}
  ]
})";

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    // env -u: a TRIDIAG_OUT from the outer environment would hijack --out
    const std::string cmd =
        "env -u TRIDIAG_OUT " + std::string(TRIDIAG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("scalar spec parses with options") {
    const ParsedSpec spec = parse_spec(kScalarSpec);
    CHECK_FALSE(spec.isMatrix());
    CHECK(spec.options.truncation == 128);
    CHECK(spec.options.horizon == 32);
    CHECK(spec.scalar->a.power() == 1.0);
    CHECK(spec.scalar->b.base() == cxd{0.5, 0});
}

TEST_CASE("matrix spec parses and validates") {
    const ParsedSpec spec = parse_spec(kMatrixSpec);
    REQUIRE(spec.isMatrix());
    CHECK(spec.matrix->dim() == 2);
}

TEST_CASE("parse errors carry positions") {
    SUBCASE("zero override names the index") {
        const char* bad = R"({"a": {"coeff": [1,0], "base": [1,0], "power": 0,
                              "overrides": {"3": [0,0]}},
                              "b": {"coeff": [1,0], "base": [0.5,0], "power": 0}})";
        try {
            parse_spec(bad);
            FAIL("expected SpecParseError");
        } catch (const SpecParseError& e) {
            CHECK(std::string(e.what()).find("overrides.3") != std::string::npos);
        }
    }
    SUBCASE("malformed JSON") {
        CHECK_THROWS_AS(parse_spec("{ not json"), SpecParseError);
    }
    SUBCASE("non-unitary Q cites unitarity") {
        const char* bad = R"({"d": 1, "Q": [[[2,0]]],
                              "channels": [{"a": {"coeff": [1,0], "base": [1,0], "power": 1},
                                            "b": {"coeff": [1,0], "base": [0.5,0], "power": 0}}]})";
        try {
            parse_spec(bad);
            FAIL("expected SpecParseError");
        } catch (const SpecParseError& e) {
            CHECK(std::string(e.what()).find("unitary") != std::string::npos);
        }
    }
}

TEST_CASE("hash is deterministic and content-sensitive") {
    CHECK(fnv1a("abc") == fnv1a("abc"));
    CHECK(fnv1a("abc") != fnv1a("abd"));
    CHECK(hash_string(fnv1a("abc")).substr(0, 6) == "fnv1a:");
}

TEST_CASE("verdict strings carry clause tags") {
    CHECK(verdict_with_clause(HcVerdict::YesIff, "4.2(iii)") == "yes[4.2(iii)]");
    CHECK(verdict_with_clause(HcVerdict::NoNecessary, "4.2(ii)") == "no[4.2(ii)]");
    CHECK(verdict_with_clause(ChaosVerdict::Indeterminate, "") == "indeterminate");
    CHECK(verdict_with_clause(Tri::Yes, "4.5") == "yes[4.5]");
}

TEST_CASE("matrix CSV uses quoted re,im cells") {
    DenseMatrix m(2, 2);
    m.at(0, 0) = cxd{0.5, 0};
    m.at(1, 0) = cxd{-0.25, 1};
    const std::string csv = matrix_csv(m);
    CHECK(csv.find("\"0.5,0\"") != std::string::npos);
    CHECK(csv.find("\"-0.25,1\"") != std::string::npos);
}

TEST_CASE("cli end to end" * doctest::timeout(120)) {
    const fs::path spec = write_temp("tridiag_cli_spec.json", kScalarSpec);
    const fs::path outDir = fs::temp_directory_path() / "tridiag_cli_out";
    fs::remove_all(outDir);

    SUBCASE("describe succeeds") {
        CHECK(run_cli("describe --spec " + spec.string() + " --out " + outDir.string()) == 0);
        CHECK(fs::exists(outDir / "describe.json"));
    }
    SUBCASE("describe reports the strong regime with its limsup") {
        const char* flat = R"({"a": {"coeff": [1,0], "base": [1,0], "power": 0},
                               "b": {"coeff": [0.5,0], "base": [1,0], "power": 0}})";
        const fs::path f = write_temp("tridiag_cli_flat2.json", flat);
        CHECK(run_cli("describe --spec " + f.string() + " --out " + outDir.string()) == 0);
        const std::string rep = slurp(outDir / "describe.json");
        CHECK(rep.find("\"tridiagLimsup\": 0.5") != std::string::npos);
        CHECK(rep.find("\"strongOk\": true") != std::string::npos);
        CHECK(rep.find("\"verdict\": \"bounded\"") != std::string::npos);
    }
    SUBCASE("classify rejects lambda = 0 with exit code 3") {
        CHECK(run_cli("classify --spec " + spec.string() + " --lambda 0,0 --out " +
                      outDir.string()) == 3);
    }
    SUBCASE("parse failures exit with code 2") {
        const fs::path bad = write_temp("tridiag_cli_bad.json", "{ nope");
        CHECK(run_cli("describe --spec " + bad.string() + " --out " + outDir.string()) == 2);
    }
    SUBCASE("uncertified norms exit with code 4") {
        const char* wide = R"({"a": {"coeff": [1,0], "base": [1,0], "power": 0},
                               "b": {"coeff": [1,0], "base": [1,0], "power": 0}})";
        const fs::path w = write_temp("tridiag_cli_wide.json", wide);
        CHECK(run_cli("norms --spec " + w.string() + " --n 8 --out " + outDir.string()) == 4);
        CHECK(run_cli("norms --spec " + w.string() + " --n 8 --allow-partial --out " +
                      outDir.string()) == 0);
    }
    SUBCASE("verify passes and output is byte-identical across runs") {
        const fs::path d1 = outDir / "v1";
        const fs::path d2 = outDir / "v2";
        CHECK(run_cli("verify --spec " + spec.string() + " --out " + d1.string()) == 0);
        CHECK(run_cli("verify --spec " + spec.string() + " --out " + d2.string()) == 0);
        CHECK(slurp(d1 / "verify.json") == slurp(d2 / "verify.json"));
        CHECK(slurp(d1 / "verify.json").find("\"allPass\": true") != std::string::npos);
    }
    SUBCASE("TRIDIAG_OUT overrides --out") {
        const fs::path envDir = outDir / "env";
        const std::string cmd = "TRIDIAG_OUT=" + envDir.string() + " " +
                                std::string(TRIDIAG_CLI_PATH) + " describe --spec " +
                                spec.string() + " --out " + (outDir / "ignored").string() +
                                " >/dev/null 2>&1";
        CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
        CHECK(fs::exists(envDir / "describe.json"));
        CHECK_FALSE(fs::exists(outDir / "ignored" / "describe.json"));
    }
    SUBCASE("orbit trace lands in orbit.csv") {
        CHECK(run_cli("orbit --spec " + spec.string() +
                      " --lambda 1,0 --basis-index 0 --steps 4 --n 32 --out " +
                      outDir.string()) == 0);
        const std::string csv = slurp(outDir / "orbit.csv");
        CHECK(csv.rfind("k,norm\n0,1\n", 0) == 0);  // ||f_0|| = 1
    }
    SUBCASE("classify --csv writes a one-row summary") {
        CHECK(run_cli("classify --spec " + spec.string() + " --lambda 1,0 --csv --out " +
                      outDir.string()) == 0);
        const std::string csv = slurp(outDir / "classify.csv");
        CHECK(csv.find("yes[4.4(iii)]") != std::string::npos);  // chaotic here
    }
    SUBCASE("classify sweep emits one CSV row per grid point") {
        CHECK(run_cli("classify --spec " + spec.string() + " --sweep 0.5:2.0:13 --out " +
                      outDir.string()) == 0);
        const std::string csv = slurp(outDir / "classify_sweep.csv");
        std::size_t rows = 0;
        for (char ch : csv) rows += ch == '\n';
        CHECK(rows == 14);  // header + 13 points
        CHECK(csv.find("yes[4.4(iii)]") != std::string::npos);
        CHECK(csv.find("no[4.4(iii)]") != std::string::npos);
    }
    SUBCASE("matrix command writes the closed-form first column") {
        const char* flat = R"({"a": {"coeff": [1,0], "base": [1,0], "power": 0},
                               "b": {"coeff": [0.5,0], "base": [1,0], "power": 0}})";
        const fs::path f = write_temp("tridiag_cli_flat.json", flat);
        CHECK(run_cli("matrix --spec " + f.string() + " --n 8 --out " + outDir.string()) == 0);
        const std::string csv = slurp(outDir / "matrix.csv");
        CHECK(csv.rfind("\"0.5,0\"", 0) == 0);                     // row 0 starts with b_0/a_0
        CHECK(csv.find("\n\"-0.25,0\"") != std::string::npos);     // row 1 column 0
        CHECK(csv.find("\n\"0.125,-0\"") != std::string::npos);    // row 2 column 0
    }
    SUBCASE("matrix-kernel spec goes through vector") {
        const fs::path mspec = write_temp("tridiag_cli_matrix.json", kMatrixSpec);
        CHECK(run_cli("vector --spec " + mspec.string() + " --out " + outDir.string()) == 0);
        const std::string rep = slurp(outDir / "vector.json");
        CHECK(rep.find("5.2(ii)") != std::string::npos);
    }
}
