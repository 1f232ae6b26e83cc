#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

#ifndef ORLICZ_CLI_PATH
#error "ORLICZ_CLI_PATH must point at the orlicz-verify binary"
#endif

const char* kCli = ORLICZ_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(kCli) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// report body: everything after the timestamp comment line
std::string csv_body(const fs::path& p) {
    const std::string all = slurp(p);
    const auto nl = all.find('\n');
    return nl == std::string::npos ? all : all.substr(nl + 1);
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("orlicz_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE("cli") {

    TEST_CASE("indices subcommand emits the expected table") {
        TempDir tmp("indices");
        const int rc = run_cli("indices --set 'm=power(3)' --out " + tmp.path.string());
        CHECK(rc == 0);
        const std::string body = csv_body(tmp.path / "indices.csv");
        CHECK(body.rfind("label,lower,upper,", 0) == 0);
        CHECK(body.find("power(3") != std::string::npos);
        CHECK(body.find(",3,3,0,") != std::string::npos); // d = D = 3, bounded
        CHECK(slurp(tmp.path / "indices.json").find("\"schema\": 1") != std::string::npos);
    }

    TEST_CASE("muckenhoupt subcommand: gaussian verdict") {
        TempDir tmp("muck");
        const int rc = run_cli("muckenhoupt --set 'measure=powerexp(alpha=0,beta=2)' --set p=2 --out " +
                               tmp.path.string());
        CHECK(rc == 0);
        const std::string body = csv_body(tmp.path / "muckenhoupt.csv");
        CHECK(body.find("finite") != std::string::npos);
        CHECK(fs::exists(tmp.path / "muckenhoupt_curve.csv"));
    }

    TEST_CASE("triple subcommand validates and a corrupted constant fails") {
        TempDir tmp("triple");
        CHECK(run_cli("triple --set 'm=power(2)' --set triple=identity --out " +
                      tmp.path.string()) == 0);
        // an undersized explicit constant violates the sampled inequality
        CHECK(run_cli("triple --set 'm=power(2)' --set 'triple=mf(f=hpower(2);c=0.5)' --out " +
                      tmp.path.string()) == 1);
    }

    TEST_CASE("config errors exit with status 2") {
        TempDir tmp("cfg");
        CHECK(run_cli("indices --set 'm=unknown(1)' --out " + tmp.path.string()) == 2);
        const fs::path cfg = tmp.path / "bad.cfg";
        std::ofstream(cfg) << "[unterminated\n";
        CHECK(run_cli("indices --config " + cfg.string()) == 2);
    }

    TEST_CASE("gn campaign passes and is byte-deterministic") {
        TempDir tmp("gn");
        const std::string cfg_path = (tmp.path / "c.cfg").string();
        std::ofstream(cfg_path) << "[campaign]\n"
                                   "measure = powerexp(alpha=0,beta=2)\n"
                                   "m = power(2)\n"
                                   "triple = identity\n"
                                   "mode = H\n"
                                   "seed = 42\n";
        const std::string out1 = (tmp.path / "r1").string();
        const std::string out2 = (tmp.path / "r2").string();
        CHECK(run_cli("gn --config " + cfg_path + " --out " + out1) == 0);
        CHECK(run_cli("gn --config " + cfg_path + " --out " + out2) == 0);
        CHECK(csv_body(fs::path(out1) / "gn.csv") == csv_body(fs::path(out2) / "gn.csv"));
        CHECK(csv_body(fs::path(out1) / "gn_norm.csv") ==
              csv_body(fs::path(out2) / "gn_norm.csv"));
        CHECK(slurp(fs::path(out1) / "gn.json") == slurp(fs::path(out2) / "gn.json"));
        CHECK(slurp(fs::path(out1) / "gn.json").find("\"all_satisfied\": true") !=
              std::string::npos);
    }

    TEST_CASE("corrupted ledger scaling makes the gn campaign fail") {
        TempDir tmp("gncorrupt");
        const int rc = run_cli("gn --set 'measure=powerexp(alpha=0,beta=2)' --set 'm=power(2)' "
                               "--set triple=identity --set b_scale=0.01 --out " +
                               tmp.path.string());
        CHECK(rc == 1);
    }

    TEST_CASE("sweep agrees with the analytic verdict rule") {
        TempDir tmp("sweep");
        const int rc = run_cli("sweep --set alphas=0,0.9,1.5 --set betas=1,2 --set ps=2,3 "
                               "--jobs 2 --out " +
                               tmp.path.string());
        CHECK(rc == 0);
        const std::string body = csv_body(tmp.path / "sweep.csv");
        CHECK(body.rfind("alpha,beta,p,verdict,expected,agree,sup", 0) == 0);
        CHECK(body.find("0,1,2,finite,finite,1,") != std::string::npos);
        CHECK(body.find("1.5,1,2,infinite,infinite,1,") != std::string::npos);
        // every row agrees
        CHECK(body.find(",infinite,finite,") == std::string::npos);
        CHECK(body.find(",finite,infinite,") == std::string::npos);
    }

    TEST_CASE("hardy subcommand covers classical ratios and the fit") {
        TempDir tmp("hardy");
        const int rc = run_cli("hardy --set 'measure=power(alpha=0)' --set p=2 --out " +
                               tmp.path.string());
        CHECK(rc == 0);
        const std::string ratios = csv_body(tmp.path / "hardy_ratios.csv");
        CHECK(ratios.rfind("member,p,alpha,ratio,bound,ok", 0) == 0);
        CHECK(ratios.find("powercut") != std::string::npos);
        const std::string row = csv_body(tmp.path / "hardy.csv");
        CHECK(row.rfind("family,p,alpha,beta,verdict,sup,r_star,K,K1,K2", 0) == 0);
    }

    TEST_CASE("conjugate subcommand checks the numeric transform") {
        TempDir tmp("conj");
        CHECK(run_cli("conjugate --set 'm=hpower(2)' --out " + tmp.path.string()) == 0);
        const std::string body = csv_body(tmp.path / "conjugate.csv");
        CHECK(body.rfind("y,mstar_numeric,mstar_analytic,rel_err", 0) == 0);
    }
}
