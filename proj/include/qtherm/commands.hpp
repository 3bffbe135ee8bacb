// commands.hpp — CLI subcommand implementations, exposed as library calls so
// tests can drive them directly. Exit contract: 0 = all checks pass,
// 1 = usage/config error, 2 = numeric/verification failure.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qtherm {

struct VerifyConfig {
    int trials = 1000;
    int dim_lo = 2;
    int dim_hi = 8;
    std::uint64_t seed = 0;
    int threads = 0;
};

int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err);

struct MeanForceConfig {
    std::string model_path;
    double tmin = 0.1;
    double tmax = 10.0;
    int points = 32;
    bool log_spaced = false;
    int threads = 0;
};

int cmd_mean_force(const MeanForceConfig& cfg, std::ostream& out, std::ostream& err);

struct OscillatorSweepConfig {
    double mass = 1.0;
    double omega = 1.0;
    std::vector<double> gamma_list{0.1, 0.5, 1.0};
    double cutoff = 50.0;
    double tmin = 0.05;
    double tmax = 10.0;
    int points = 200;
    int figure = 1;  // 1 or 2
    int threads = 0;
};

int cmd_oscillator_sweep(const OscillatorSweepConfig& cfg, std::ostream& out,
                         std::ostream& err);

struct EstimateConfig {
    // Empty model_path and oscillator=false selects the built-in thermal qubit
    // (H_S = sigma_z/2, no reservoir).
    std::string model_path;
    bool oscillator = false;
    double mass = 1.0;
    double omega = 1.0;
    double gamma = 0.1;
    double cutoff = 50.0;
    double T_true = 1.0;
    int n_samples = 10000;
    int n_trials = 200;
    std::uint64_t seed = 0;
};

int cmd_estimate(const EstimateConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qtherm
