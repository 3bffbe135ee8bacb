// qtherm — strong-coupling temperature-estimation toolkit CLI.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qtherm/commands.hpp"

namespace {

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open output file: " << path << "\n";
        return 1;
    }
    return fn(out);
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong-coupling quantum thermometry toolkit"};
    app.require_subcommand(1);
    // Let global options (--seed, --threads, --out) appear after the subcommand.
    app.fallthrough();

    std::string out_path;
    std::uint64_t seed = 0;
    int threads = 0;
    app.add_option("--out", out_path, "Output path (default stdout)")->capture_default_str();
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads, 0 = auto")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Random-family bound and partition sweeps");
    qtherm::VerifyConfig vcfg;
    std::string dims = "2..8";
    verify->add_option("--trials", vcfg.trials, "Trials per sweep")->capture_default_str();
    verify->add_option("--dims", dims, "Dimension range lo..hi")->capture_default_str();

    auto* mf = app.add_subcommand("mean-force", "Mean-force thermodynamics sweep to CSV");
    qtherm::MeanForceConfig mcfg;
    mf->add_option("--model", mcfg.model_path, "Composite model JSON file")->required();
    mf->add_option("--tmin", mcfg.tmin, "Lowest temperature")->capture_default_str();
    mf->add_option("--tmax", mcfg.tmax, "Highest temperature")->capture_default_str();
    mf->add_option("--points", mcfg.points, "Grid points")->capture_default_str();
    mf->add_flag("--log-spaced", mcfg.log_spaced, "Log-spaced temperature grid");

    auto* osc = app.add_subcommand("oscillator-sweep", "Damped-oscillator figure sweep to CSV");
    qtherm::OscillatorSweepConfig ocfg;
    std::string gamma_csv = "0.1,0.5,1.0";
    osc->add_option("--mass", ocfg.mass, "Oscillator mass")->capture_default_str();
    osc->add_option("--omega", ocfg.omega, "Bare frequency")->capture_default_str();
    osc->add_option("--gamma-list", gamma_csv, "Comma-separated damping values")
        ->capture_default_str();
    osc->add_option("--cutoff", ocfg.cutoff, "Drude cutoff frequency")->capture_default_str();
    osc->add_option("--tmin", ocfg.tmin, "Lowest temperature")->capture_default_str();
    osc->add_option("--tmax", ocfg.tmax, "Highest temperature")->capture_default_str();
    osc->add_option("--points", ocfg.points, "Temperature grid points")->capture_default_str();
    osc->add_option("--figure", ocfg.figure, "Figure schema: 1 or 2")->capture_default_str();

    auto* est = app.add_subcommand("estimate", "Monte-Carlo MLE temperature estimation");
    qtherm::EstimateConfig ecfg;
    est->add_option("--model", ecfg.model_path, "Composite model JSON (default thermal qubit)");
    est->add_flag("--oscillator", ecfg.oscillator, "Use the damped-oscillator probe");
    est->add_option("--mass", ecfg.mass, "Oscillator mass")->capture_default_str();
    est->add_option("--omega", ecfg.omega, "Bare frequency")->capture_default_str();
    est->add_option("--gamma", ecfg.gamma, "Damping coefficient")->capture_default_str();
    est->add_option("--cutoff", ecfg.cutoff, "Drude cutoff frequency")->capture_default_str();
    est->add_option("--T-true", ecfg.T_true, "True temperature")->capture_default_str();
    est->add_option("--n-samples", ecfg.n_samples, "Samples per trial")->capture_default_str();
    est->add_option("--n-trials", ecfg.n_trials, "Independent trials")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*verify) {
            const auto sep = dims.find("..");
            if (sep == std::string::npos) {
                std::cerr << "--dims must look like lo..hi\n";
                return 1;
            }
            vcfg.dim_lo = std::stoi(dims.substr(0, sep));
            vcfg.dim_hi = std::stoi(dims.substr(sep + 2));
            vcfg.seed = seed;
            vcfg.threads = threads;
            return with_output(out_path,
                               [&](std::ostream& o) { return cmd_verify(vcfg, o, std::cerr); });
        }
        if (*mf) {
            mcfg.threads = threads;
            return with_output(
                out_path, [&](std::ostream& o) { return cmd_mean_force(mcfg, o, std::cerr); });
        }
        if (*osc) {
            ocfg.gamma_list = parse_list(gamma_csv);
            ocfg.threads = threads;
            return with_output(out_path, [&](std::ostream& o) {
                return cmd_oscillator_sweep(ocfg, o, std::cerr);
            });
        }
        if (*est) {
            ecfg.seed = seed;
            return with_output(
                out_path, [&](std::ostream& o) { return cmd_estimate(ecfg, o, std::cerr); });
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
