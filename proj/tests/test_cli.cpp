#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support/test_util.hpp"

using afsec_test::cli_path;
using afsec_test::run_process;
using afsec_test::write_temp_file;

namespace {

const std::string kGlbDiamond =
    "L = 1\nN = 1\nh_s = 1\nh_mid =\nh_t = 2\nh_e = 1\nP_s = 1\nP = 10\nsigma2 = 1\n";
const std::string kZeroDiamond =
    "L = 1\nN = 2\nh_s = 1\nh_t = 1\nh_e = 2\nP_s = 1\nP = 1\nsigma2 = 1\n";
const std::string kSweepDiamond =
    "L = 1\nN = 4\nh_s = 1\nh_t = 2\nh_e = 1\nP_s = 1\nP = 1\nsigma2 = 1\n";

std::string quoted(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cli end-to-end") {
    if (!cli_path()) {
        MESSAGE("AF_SECRECY_CLI not set; skipping CLI tests");
        return;
    }
    const std::string bin = cli_path();

    SUBCASE("solve prints the closed-form optimum") {
        const auto net = write_temp_file("glb", kGlbDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) + " --cmd solve");
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("case = GLB") != std::string::npos);
        CHECK(res.output.find("0.353553") != std::string::npos);
        CHECK(res.output.find("RESULT cmd=solve") != std::string::npos);
    }

    SUBCASE("dominant eavesdropper solves to zero with exit 0") {
        const auto net = write_temp_file("zero", kZeroDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) + " --cmd solve");
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("case = ZERO") != std::string::npos);
        CHECK(res.output.find("rate_bits = 0\n") != std::string::npos);
    }

    SUBCASE("missing sigma2 names the key and exits 2") {
        const auto net = write_temp_file(
            "badnet", "L = 1\nN = 1\nh_s = 1\nh_t = 2\nh_e = 1\nP_s = 1\nP = 1\n");
        const auto res = run_process(bin + " --net " + quoted(net) + " --cmd solve");
        CHECK(res.exit_code == 2);
        CHECK(res.output.find("sigma2") != std::string::npos);
    }

    SUBCASE("rate command reports the optimum for --k relays") {
        const auto net = write_temp_file("sweepd", kSweepDiamond);
        const auto res =
            run_process(bin + " --net " + quoted(net) + " --cmd rate --k 2");
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("RESULT cmd=rate m=2") != std::string::npos);
    }

    SUBCASE("gaps emits a header and one row") {
        const auto net = write_temp_file("sweepd", kSweepDiamond);
        const auto res =
            run_process(bin + " --net " + quoted(net) + " --cmd gaps --k 2");
        CHECK(res.exit_code == 0);
        CHECK(count_lines(res.output) == 2);
        CHECK(res.output.rfind("L,N,k,", 0) == 0);
    }

    SUBCASE("gaps without --k is a usage error") {
        const auto net = write_temp_file("sweepd", kSweepDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) + " --cmd gaps");
        CHECK(res.exit_code == 2);
    }

    SUBCASE("sweep produces ordered rows") {
        const auto net = write_temp_file("sweepd", kSweepDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) +
                                     " --cmd sweep --k 2 --sweep 'P_s=1e-8,1e8,17,log'");
        CHECK(res.exit_code == 0);
        CHECK(count_lines(res.output) == 18);
        // first and last swept values appear in order
        CHECK(res.output.find("1,4,2,1e-08") != std::string::npos);
        CHECK(res.output.rfind("1,4,2,1e-08") < res.output.rfind("1,4,2,1e+08"));
    }

    SUBCASE("sweep requires --sweep") {
        const auto net = write_temp_file("sweepd", kSweepDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) + " --cmd sweep --k 2");
        CHECK(res.exit_code == 2);
    }

    SUBCASE("verify passes on a small diamond") {
        const auto net = write_temp_file("glb", kGlbDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) +
                                     " --cmd verify --grid-steps 32 --refine 2");
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("VERIFY PASS") != std::string::npos);
        CHECK(res.output.find("[FAIL]") == std::string::npos);
    }

    SUBCASE("a broken solution fails stationarity") {
        const auto net = write_temp_file("glb", kGlbDiamond);
        const auto res = run_process("AF_SECRECY_VERIFY_BETA_SCALE=1.5 " + bin +
                                     " --net " + quoted(net) + " --cmd verify");
        CHECK(res.exit_code == 1);
        CHECK(res.output.find("[FAIL] stationarity") != std::string::npos);
    }

    SUBCASE("tiny evaluation budget turns checks into skips") {
        const auto net = write_temp_file("glb", kGlbDiamond);
        const auto res = run_process("AF_SECRECY_EVAL_CAP=10 " + bin + " --net " +
                                     quoted(net) + " --cmd verify");
        CHECK(res.exit_code == 0);
        CHECK(res.output.find("[SKIP] grid-agreement") != std::string::npos);
        CHECK(res.output.find("[SKIP] symmetry") != std::string::npos);
    }

    SUBCASE("unknown command is a usage error") {
        const auto net = write_temp_file("glb", kGlbDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) + " --cmd fly");
        CHECK(res.exit_code == 2);
    }

    SUBCASE("unwritable output path fails") {
        const auto net = write_temp_file("sweepd", kSweepDiamond);
        const auto res = run_process(bin + " --net " + quoted(net) +
                                     " --cmd gaps --k 2 --out /nonexistent-dir/x.csv");
        CHECK(res.exit_code == 2);
    }

    SUBCASE("identical configs write byte-identical csv") {
        const auto net = write_temp_file("sweepd", kSweepDiamond);
        const auto out1 = std::filesystem::temp_directory_path() / "afsec-cli-a.csv";
        const auto out2 = std::filesystem::temp_directory_path() / "afsec-cli-b.csv";
        const std::string cmd = bin + " --net " + quoted(net) +
                                " --cmd gaps --k 2 --sweep 'P_s=1e-6,1e6,9,log' --out ";
        CHECK(run_process(cmd + quoted(out1)).exit_code == 0);
        CHECK(run_process(cmd + quoted(out2)).exit_code == 0);
        std::ifstream a(out1, std::ios::binary), b(out2, std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
        CHECK(!sa.str().empty());
    }
}
