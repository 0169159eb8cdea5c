// Command line front end.  Everything numerical goes through the C API in
// bsq.h; this file only handles arguments, file IO, and summary printing.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bsq.h"
#include "json.hpp"

namespace {

int finish(bsq_status rc, const std::string& out_dir, char* report) {
    if (rc == BSQ_ERROR_INVALID_ARGUMENT || rc == BSQ_ERROR_RUNTIME) {
        std::fprintf(stderr, "error: %s\n", bsq_last_error());
        bsq_string_free(report);
        return 2;
    }
    if (rc == BSQ_ERROR_IO) {
        std::fprintf(stderr, "error: %s\n", bsq_last_error());
        bsq_string_free(report);
        return 2;
    }

    if (report) {
        try {
            auto rep = nlohmann::json::parse(report);
            std::string command = rep.value("command", "");
            std::printf("command: %s\n", command.c_str());
            if (rep.contains("checks")) {
                int total = 0, passed = 0;
                for (const auto& ch : rep["checks"]) {
                    ++total;
                    if (ch.value("pass", false)) ++passed;
                    std::printf("  %-34s %s\n", ch.value("name", "").c_str(),
                                ch.value("pass", false) ? "pass" : "FAIL");
                }
                std::printf("checks: %d/%d passed\n", passed, total);
            }
            if (rep.contains("K0")) {
                std::printf("K0: %s\n", rep["K0"].dump().c_str());
            }
            if (rep.contains("fitted")) {
                std::printf("expected slope: %s\n", rep["expected"].dump().c_str());
                std::printf("fitted slope:   %s\n", rep["fitted"].dump().c_str());
                if (rep.contains("note") && rep["note"].is_string())
                    std::printf("note: %s\n", rep["note"].get<std::string>().c_str());
            }
            if (rep.contains("ratio_max")) {
                std::printf("norm ratio band: [%s, %s]\n", rep["ratio_min"].dump().c_str(),
                            rep["ratio_max"].dump().c_str());
            }
            std::printf("result: %s\n", rc == BSQ_OK ? "pass" : "FAIL");
        } catch (...) {
            std::printf("result: %s\n", rc == BSQ_OK ? "pass" : "FAIL");
        }
    }
    if (!out_dir.empty()) std::printf("artifacts: %s\n", out_dir.c_str());
    bsq_string_free(report);
    return rc == BSQ_OK ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spline quasi-interpolation toolbox"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool has_seed = false;

    const char* names[] = {"selftest",       "verify-domain", "rates-approx",
                           "rates-recovery", "stechkin",      "extend"};
    const char* blurbs[] = {
        "run the built-in consistency checks",
        "probe a domain for the start level, reach, and chain constants",
        "approximation error decay across dyadic levels",
        "recovery error from point samples against the sample count",
        "derivative error against the operator norm across levels",
        "multiscale continuation: restriction residual and norm ratios"};

    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", config_path, "path to the JSON run configuration")
            ->required();
        sub->add_option("--out", out_dir, "directory for report.json and table.csv");
        sub->add_option("--seed", seed, "override the config seed")
            ->check(CLI::NonNegativeNumber);
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    has_seed = sub->count("--seed") > 0;
    std::string command = sub->get_name();

    std::ifstream is(config_path);
    if (!is) {
        std::fprintf(stderr, "error: cannot read config file: %s\n", config_path.c_str());
        return 2;
    }
    std::stringstream buf;
    buf << is.rdbuf();
    std::string config = buf.str();

    char* report = nullptr;
    bsq_status rc = bsq_run(command.c_str(), config.c_str(),
                            out_dir.empty() ? nullptr : out_dir.c_str(), seed,
                            has_seed ? 1 : 0, &report);
    return finish(rc, out_dir, report);
}
