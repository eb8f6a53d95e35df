// sieve run    : evaluate a (family, Q, N, coefficient) grid and write CSV or JSON
// sieve verify : run one verification suite and write a JSON report
//
// Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "gls/harness.hpp"
#include "gls/verify.hpp"

namespace {

struct RunFlags {
    std::string config;
    std::vector<double> q_values;
    std::vector<gls::Int> n_values;
    std::vector<std::string> families;
    std::vector<std::string> coeffs;
    std::optional<double> epsilon;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<int> threads;
    std::optional<std::string> format;
    std::string out;
    bool timings = false;
    std::string slopes;
};

gls::ExperimentConfig build_config(const RunFlags& f) {
    gls::ExperimentConfig cfg = f.config.empty() ? gls::ExperimentConfig{} : gls::load_config(f.config);
    if (!f.q_values.empty()) cfg.q_values = f.q_values;
    if (!f.n_values.empty()) cfg.n_values = f.n_values;
    if (!f.families.empty()) {
        cfg.families.clear();
        for (const auto& s : f.families) cfg.families.push_back(gls::parse_family_kind(s));
    }
    if (!f.coeffs.empty()) {
        cfg.coeffs.clear();
        for (const auto& s : f.coeffs) cfg.coeffs.push_back(gls::CoeffSpec{gls::parse_coeff_kind(s)});
    }
    if (f.epsilon) cfg.epsilon = *f.epsilon;
    if (f.seed) cfg.seed = *f.seed;
    if (f.mode) cfg.mode = gls::parse_mode(*f.mode);
    if (f.threads) cfg.threads = *f.threads;
    if (f.format) cfg.format = gls::parse_format(*f.format);
    if (!f.out.empty()) cfg.output_path = f.out;
    if (f.timings) cfg.timings = true;
    if (cfg.output_path.empty()) throw std::invalid_argument("an output path is required (--out or \"out\" in the config)");
    cfg.validate();
    return cfg;
}

int run_command(const RunFlags& flags) {
    const gls::ExperimentConfig cfg = build_config(flags);
    const auto records = gls::run_sieve_grid(cfg);
    gls::write_records(cfg.output_path, records, cfg.format);
    for (const auto& r : records)
        if (!r.note.empty()) std::cerr << gls::to_string(r.family) << " Q=" << r.Q << " N=" << r.N << ": " << r.note << '\n';
    if (!flags.slopes.empty()) {
        nlohmann::json fits = nlohmann::json::array();
        for (const auto& s : gls::slope_report(records)) fits.push_back(gls::to_json(s));
        std::ofstream out(flags.slopes);
        if (!out) throw std::runtime_error("cannot open slope report: " + flags.slopes);
        out << nlohmann::json{{"slopes", fits}}.dump(2) << '\n';
    }
    return 0;
}

int verify_command(const std::string& suite, std::optional<gls::Int> max_norm, const std::string& out_path) {
    const auto rep = gls::run_verify_suite(gls::parse_suite(suite), max_norm);
    const std::string text = rep.to_json().dump(2);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open report: " + out_path);
        out << text << '\n';
    }
    std::cerr << "verify " << suite << ": " << rep.checks.size() - rep.failures() << "/" << rep.checks.size() << " checks passed\n";
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large sieve experiments over the Gaussian integers"};
    app.require_subcommand(1);

    RunFlags rf;
    auto* run = app.add_subcommand("run", "Evaluate a sieve grid");
    run->add_option("--config", rf.config, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
    run->add_option("--Q", rf.q_values, "Q values, comma separated")->delimiter(',');
    run->add_option("--N", rf.n_values, "N values, comma separated")->delimiter(',');
    run->add_option("--family", rf.families, "all|natural|square-norm")->delimiter(',');
    run->add_option("--coeff", rf.coeffs, "delta|all-ones|random|adversary")->delimiter(',');
    run->add_option("--epsilon", rf.epsilon);
    run->add_option("--seed", rf.seed);
    run->add_option("--mode", rf.mode, "windowed|cumulative");
    run->add_option("--threads", rf.threads);
    run->add_option("--format", rf.format, "csv|json");
    run->add_option("--out", rf.out, "Output path");
    run->add_flag("--timings", rf.timings, "Fill elapsed_ms (output is then no longer reproducible)");
    run->add_option("--slopes", rf.slopes, "Also write fitted log-log slopes to this JSON file");

    std::string suite, verify_out;
    std::optional<gls::Int> max_norm;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "spacing|gauss|dls|coverage|poisson|fastpath")->required();
    verify->add_option("--max-norm", max_norm);
    verify->add_option("--out", verify_out, "Report path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return run_command(rf);
        return verify_command(suite, max_norm, verify_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
