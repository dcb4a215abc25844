#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "snls_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(SNLS_CLI_PATH) + " " + args + " > " + (scratch() / "stdout.txt").string() +
                            " 2> " + (scratch() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string out(const std::string& name) { return (scratch() / name).string(); }

std::vector<std::string> abs_column(const std::string& csv) {
    std::vector<std::string> col;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) col.push_back(line.substr(line.rfind(',') + 1));
    return col;
}

}  // namespace

TEST_CASE("solve exit codes") {
    CHECK(run("solve --H 0,0 --M 1 --seeds 10 --rng-seed 1") == 3);
    CHECK(run("solve --M 0 --rng-seed 1") == 64);
    CHECK(run("solve --H 1,0 --M 1") == 64);
    CHECK(run("solve --H one --rng-seed 1") == 64);
}

TEST_CASE("verify exit codes") {
    CHECK(run("verify --case 2 --H 1,0 --B0 1,0 --out " + out("v2.json")) == 0);
    const json v = json::parse(slurp(out("v2.json")));
    CHECK(v["system_residual"].get<double>() <= 1e-10);
    CHECK(run("verify --case 8 --H 1,0 --B0 1,0 --B1 1,0 --out " + out("v8.json")) == 2);
    CHECK(json::parse(slurp(out("v8.json")))["flagged"] == true);
    CHECK(run("verify --case 13") == 64);
    CHECK(run("verify --case 1 --H 0,0") == 3);
    std::ofstream(out("bad.json")) << "{\"H\": [1, 0]";
    CHECK(run("verify --set " + out("bad.json")) == 65);
}

TEST_CASE("verify a file of solved sets") {
    std::ofstream(out("set.json")) << R"({"H":[1,0],"k":[0,1.4142135623730951],"A":[[0,0.70710678118654757],[0,0],[0,0]],"B":[[1,0],[-2,0]]})";
    CHECK(run("verify --set " + out("set.json")) == 0);
}

TEST_CASE("sample: pure drift and seeds") {
    CHECK(run("sample --drift 1 --diffusion 0 --rate 0 --horizon 10 --step 0.01 --rng-seed 1 --out " + out("p.csv")) == 0);
    const std::string csv = slurp(out("p.csv"));
    std::istringstream in(csv);
    std::string line;
    std::string last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    CHECK(last.rfind("10,10,grid,", 0) == 0);
    CHECK(run("sample --diffusion 1 --horizon 1") == 64);
}

TEST_CASE("outputs are byte-identical across runs") {
    const std::string args = "sample --drift 0.1 --diffusion 1 --rate 2 --jump-law normal --horizon 2 --rng-seed 5 --out ";
    REQUIRE(run(args + out("a.csv")) == 0);
    REQUIRE(run(args + out("b.csv")) == 0);
    CHECK(slurp(out("a.csv")) == slurp(out("b.csv")));

    const std::string f = "field --case 5 --alpha 1 --upsilon 0 --sigma 0.5 --diffusion 1 --rng-seed 3 --nx 21 --nt 5 --out ";
    REQUIRE(run(f + out("f1.csv")) == 0);
    REQUIRE(run(f + out("f2.csv")) == 0);
    CHECK(slurp(out("f1.csv")) == slurp(out("f2.csv")));
    CHECK(slurp(out("f1.csv.json")) == slurp(out("f2.csv.json")));
}

TEST_CASE("field: noise does not change the abs column") {
    const std::string base = "field --case 2 --alpha 1 --upsilon 0 --diffusion 1 --rate 3 --rng-seed 9 --x-range -3,3 --nx 61 --nt 6 ";
    REQUIRE(run(base + "--sigma 0 --out " + out("s0.csv")) == 0);
    REQUIRE(run(base + "--sigma 0.5 --out " + out("s5.csv")) == 0);
    const auto a = abs_column(slurp(out("s0.csv")));
    const auto b = abs_column(slurp(out("s5.csv")));
    CHECK(a.size() == 61 * 6);
    CHECK(a == b);
    CHECK(slurp(out("s0.csv")) != slurp(out("s5.csv")));
    CHECK(run("field --case 2 --sigma 0.5 --diffusion 1") == 64);
}

TEST_CASE("stability report") {
    CHECK(run("stability --case 2 --lambda upsilon --convention modulus --A-const 2,0 --out " + out("st.json")) == 0);
    const json r = json::parse(slurp(out("st.json")));
    CHECK(std::isfinite(r["Q"][0].get<double>()));
    CHECK(std::isfinite(r["dQ"][0].get<double>()));
    CHECK(r["expected_sign"] == "positive (claimed stable)");
    CHECK(run("stability --case 2 --lambda omega") == 64);
}

TEST_CASE("xcheck: constant branch and a singular case") {
    CHECK(run("xcheck --case 1 --alpha 1 --upsilon 1.5 --sigma 0.7 --A-const 0,1 --diffusion 1 --rate 2 --rng-seed 4 "
              "--t-end 0.1 --out " + out("x1.json")) == 0);
    const json r = json::parse(slurp(out("x1.json")));
    CHECK(r["testable"] == true);
    CHECK(r["error_modulus"].get<double>() <= 1e-5);
    CHECK(run("xcheck --case 2 --alpha 1 --upsilon 0 --t-end 0.1 --out " + out("x2.json")) == 2);
    CHECK(json::parse(slurp(out("x2.json")))["testable"] == false);
}
