#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>

#include "afsec/network.hpp"

namespace afsec_test {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

/// Random ECGAL instance with gains log-uniform in [0.25, 4] and powers
/// log-uniform in [0.1, 10]. When eavesdropper_weaker, h_t > h_e is
/// enforced by swapping; otherwise h_e >= h_t is enforced.
inline afsec::EcgalNetwork random_net(std::mt19937_64& rng, int L, int N,
                                      bool eavesdropper_weaker = true) {
    afsec::EcgalNetwork net;
    net.L = L;
    net.N = N;
    net.h_s = log_uniform(rng, 0.25, 4.0);
    net.h_mid.clear();
    for (int i = 0; i < L - 1; ++i) net.h_mid.push_back(log_uniform(rng, 0.25, 4.0));
    net.h_t = log_uniform(rng, 0.25, 4.0);
    net.h_e = log_uniform(rng, 0.25, 4.0);
    if (eavesdropper_weaker == (net.h_t < net.h_e)) std::swap(net.h_t, net.h_e);
    if (net.h_t == net.h_e) net.h_t *= eavesdropper_weaker ? 1.5 : 1.0;
    net.P_s = log_uniform(rng, 0.1, 10.0);
    net.P = log_uniform(rng, 0.1, 10.0);
    net.sigma2 = log_uniform(rng, 0.1, 10.0);
    net.validate();
    return net;
}

struct ProcessResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

inline ProcessResult run_process(const std::string& command) {
    ProcessResult res;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

/// Path of the CLI under test, provided by the build via AF_SECRECY_CLI.
inline const char* cli_path() { return std::getenv("AF_SECRECY_CLI"); }

inline std::filesystem::path write_temp_file(const std::string& stem,
                                             const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() /
                      (stem + "-" + std::to_string(::getpid()) + ".tmp");
    std::ofstream f(path, std::ios::binary);
    f << contents;
    return path;
}

inline std::string net_file_text(const afsec::EcgalNetwork& n) {
    std::string s;
    s += "L = " + std::to_string(n.L) + "\n";
    s += "N = " + std::to_string(n.N) + "\n";
    const auto d = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    s += "h_s = " + d(n.h_s) + "\n";
    s += "h_mid = ";
    for (std::size_t i = 0; i < n.h_mid.size(); ++i)
        s += (i ? "," : "") + d(n.h_mid[i]);
    s += "\n";
    s += "h_t = " + d(n.h_t) + "\nh_e = " + d(n.h_e) + "\n";
    s += "P_s = " + d(n.P_s) + "\nP = " + d(n.P) + "\nsigma2 = " + d(n.sigma2) + "\n";
    return s;
}

}  // namespace afsec_test
