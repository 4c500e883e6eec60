// Exercises the command-line binary end to end. argv[1] is the binary path,
// argv[2] the directory holding the sample configs.
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

int g_failures = 0;
std::string g_bin;
std::string g_cfg_dir;

int run(const std::string& args) {
    const std::string cmd = g_bin + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
#ifdef _WIN32
    return status;
#else
    return WEXITSTATUS(status);
#endif
}

void expect(const std::string& args, int want) {
    const int got = run(args);
    if (got != want) {
        std::fprintf(stderr, "FAIL: '%s' exited %d, expected %d\n", args.c_str(), got, want);
        ++g_failures;
    } else {
        std::fprintf(stdout, "ok: '%s' -> %d\n", args.c_str(), got);
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <gch-lab binary> <configs dir>\n", argv[0]);
        return 1;
    }
    g_bin = argv[1];
    g_cfg_dir = argv[2];
    const std::string ref = g_cfg_dir + "/reference.cfg";
    const std::string quick = g_cfg_dir + "/quick.cfg";
    const std::string breach = g_cfg_dir + "/breach.cfg";
    const std::string bad = g_cfg_dir + "/bad.cfg";

    // Usage and config errors exit 1.
    expect("", 1);
    expect("nosuchcommand --config " + ref, 1);
    expect("norms", 1);  // --config is required
    expect("norms --config /nonexistent/path.cfg", 1);
    expect("norms --config " + bad, 1);

    // Successful runs exit 0.
    expect("norms --config " + ref, 0);
    expect("simulate --config " + quick + " --quiet --out /tmp/gch_cli_sim", 0);
    expect("lagrange --config " + quick + " --quiet --out /tmp/gch_cli_lag", 0);
    expect("experiment --config " + quick + " --quiet --out /tmp/gch_cli_exp", 0);

    // Verdict failures exit 2.
    expect("lagrange --config " + breach + " --quiet --out /tmp/gch_cli_breach", 2);

    if (g_failures == 0) std::fprintf(stdout, "all cli checks passed\n");
    return g_failures == 0 ? 0 : 1;
}
