#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

std::string g_cli_path;

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string tmp = "cli_out_" + std::to_string(counter++) + ".txt";
    std::string cmd = g_cli_path + " " + args + " > " + tmp + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream f(tmp, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(tmp.c_str());
    int status = (rc == -1) ? -1 : WEXITSTATUS(rc);
    return {status, ss.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("determinism: identical flags give byte-identical artifacts", "[cli]") {
    for (const char* args :
         {"point-levels --Z 1 --kappa-min -2 --kappa-max 3 --steps 6 --jmax 3",
          "constants --format json",
          "slab-converge --a 0.4,0.2 --grid-h 0.05 --grid-R 12 --modes 3 --format json"}) {
        auto r1 = run_cli(args);
        auto r2 = run_cli(args);
        REQUIRE(r1.status == 0);
        CHECK(r1.out == r2.out);
        CHECK(!r1.out.empty());
    }
}

TEST_CASE("point-levels table structure and scaling flag", "[cli]") {
    auto r = run_cli("point-levels --Z 1 --kappa-min 0 --kappa-max 1 --steps 3 --jmax 2");
    REQUIRE(r.status == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1 + 3 * 2);
    CHECK(rows[0][0] == "kappa");
    CHECK(rows[0].back() == "status");
    // --scaled at Z=3 equals the Z=1 table at kappa + ln 3 (epsilon / 9)
    auto rs = run_cli("point-levels --Z 3 --scaled --kappa-min 0 --kappa-max 1 --steps 3 --jmax 2");
    auto ru = run_cli("point-levels --Z 1 --kappa-min 1.0986122886681098 "
                      "--kappa-max 2.0986122886681098 --steps 3 --jmax 2");
    auto a = parse_csv(rs.out), b = parse_csv(ru.out);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 1; i < a.size(); ++i) {
        double ea = std::stod(a[i][2]), eb = std::stod(b[i][2]);
        CHECK(std::fabs(ea - eb) < 1e-10 * std::fabs(eb));
        double ka = std::stod(a[i][3]), kb = std::stod(b[i][3]);
        CHECK(std::fabs(ka - kb) < 1e-10 * kb);
    }
}

TEST_CASE("green command and spectral-point flagging", "[cli]") {
    auto ok = run_cli("green --Z 1 --kappa 0.5 --z-re -0.7 --z-im 0.2 "
                      "--points \"1.0:0.0:2.0:1.0;0.5:0.3:1.5:2.0\"");
    REQUIRE(ok.status == 0);
    auto rows = parse_csv(ok.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].back() == "ok");
    // z at an eigenvalue: the row is flagged and the exit status is nonzero,
    // but the run continues through remaining points
    auto bad = run_cli("green --Z 1 --friedrichs --z-re -1 --z-im 0 "
                       "--points \"1.0:0.0:2.0:1.0;1.1:0.0:2.0:0.5\"");
    CHECK(bad.status != 0);
    auto brows = parse_csv(bad.out);
    REQUIRE(brows.size() == 3);
    CHECK(brows[1].back().find("error") == 0);
    CHECK(brows[2].back().find("error") == 0);
}

TEST_CASE("spectrum and constants output", "[cli]") {
    auto r = run_cli("spectrum --Z 2 --mmax 1 --nmax 1 --format json");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "spectrum");
    REQUIRE(j["rows"].size() == 3 * 2);
    // (m=0, n=0): lambda = -4 at Z=2
    for (auto& row : j["rows"])
        if (row[0] == 0 && row[1] == 0) CHECK(double(row[3]) == -4.0);
    auto c = run_cli("constants");
    REQUIRE(c.status == 0);
    auto crows = parse_csv(c.out);
    bool found = false;
    for (auto& row : crows)
        if (row[0] == "C_I") {
            found = true;
            CHECK(std::fabs(std::stod(row[1]) - 4.594529378616988) < 1e-12);
        }
    CHECK(found);
}

TEST_CASE("verify exit-status contract", "[cli]") {
    auto r = run_cli("verify --suite specfun");
    CHECK(r.status == 0);
    auto rows = parse_csv(r.out);
    CHECK(rows.size() > 3);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "1");
    // unknown flags are rejected
    auto bad = run_cli("verify --no-such-flag");
    CHECK(bad.status != 0);
    auto badsuite = run_cli("verify --suite nonsense");
    CHECK(badsuite.status != 0);
}

int main(int argc, char* argv[]) {
    Catch::Session session;
    if (argc > 1 && argv[argc - 1][0] != '-') {
        g_cli_path = argv[argc - 1];
        --argc;
    } else if (const char* env = std::getenv("SPEC2D_BIN")) {
        g_cli_path = env;
    } else {
        std::fprintf(stderr, "test_cli: pass the spec2d binary path as the last argument\n");
        return 2;
    }
    return session.run(argc, argv);
}
