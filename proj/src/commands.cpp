#include "qtherm/commands.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qtherm/io.hpp"
#include "qtherm/sweeps.hpp"

namespace qtherm {

namespace {

using nlohmann::json;

constexpr double kTheorem1Tol = 1e-8;
constexpr double kPartitionTol = 1e-9;
constexpr double kComponentFloor = -1e-10;

std::string csv_row(const std::vector<double>& vals) {
    std::string row;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) row += ",";
        row += format_g17(vals[i]);
    }
    return row;
}

CompositeModel thermal_qubit() {
    Matrix hs(2, 2);
    hs << 0.5, 0, 0, -0.5;
    Matrix hr = Matrix::Zero(1, 1);
    Matrix v = Matrix::Zero(2, 2);
    return CompositeModel(2, 1, HermitianOperator(hs), HermitianOperator(hr),
                          HermitianOperator(v));
}

// Probe family for the damped oscillator: effective Gibbs state of
// H*(T') = p^2/2M_T' + M_T' w_T'^2 x^2/2 represented in the number basis of
// the mean-force Hamiltonian at T_true.
StateFamily oscillator_family(const OscillatorModel& model, double T_true) {
    const OscillatorDerived ref = quadratures(model, 1.5 * T_true);
    const double x_tail = std::exp(-ref.omega_T / (1.5 * T_true));
    int n_max = 10;
    if (x_tail > 0.0)
        n_max = std::max(
            n_max, static_cast<int>(std::ceil(std::log(1e-12) / std::log(x_tail))));
    if (n_max > 512)
        throw NumericError("oscillator estimate: reference basis would need n_max = " +
                           std::to_string(n_max));
    const int dim = n_max + 1;
    const double A0 = quadratures(model, T_true).A_T;

    Matrix xsq = Matrix::Zero(dim, dim), psq = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        xsq(n, n) = (2.0 * n + 1.0) / (2.0 * A0);
        psq(n, n) = A0 * (2.0 * n + 1.0) / 2.0;
        if (n + 2 < dim) {
            const double s = std::sqrt(double(n + 1) * double(n + 2));
            xsq(n, n + 2) = xsq(n + 2, n) = s / (2.0 * A0);
            psq(n, n + 2) = psq(n + 2, n) = -A0 * s / 2.0;
        }
    }

    ExponentialFamily fam;
    fam.generator = [model, xsq, psq](double T) {
        const OscillatorDerived d = quadratures(model, T);
        Matrix h = psq / (2.0 * d.M_T) + 0.5 * d.M_T * d.omega_T * d.omega_T * xsq;
        return HermitianOperator((h / T).eval());
    };
    return fam.family();
}

}  // namespace

int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.trials < 1 || cfg.dim_lo < 2 || cfg.dim_hi > 8 || cfg.dim_hi < cfg.dim_lo) {
        err << "usage: verify requires trials >= 1 and 2 <= dim_lo <= dim_hi <= 8\n";
        return 1;
    }
    const auto t1 = theorem1_sweep(cfg.trials, cfg.dim_lo, cfg.dim_hi, cfg.seed, cfg.threads);
    const auto pp = partition_sweep(cfg.trials, cfg.dim_lo, cfg.dim_hi, cfg.seed + 1,
                                    cfg.threads);

    int t1_violations = 0;
    double t1_max = 0.0;
    std::uint64_t t1_worst = 0;
    for (const auto& t : t1) {
        if (t.rel_gap > t1_max) {
            t1_max = t.rel_gap;
            t1_worst = t.seed;
        }
        if (t.rel_gap > kTheorem1Tol) ++t1_violations;
    }

    int p_violations = 0;
    double p_max = 0.0;
    std::uint64_t p_worst = 0;
    for (const auto& t : pp) {
        if (t.rel_residual > p_max) {
            p_max = t.rel_residual;
            p_worst = t.seed;
        }
        if (t.rel_residual > kPartitionTol || t.quantum < kComponentFloor ||
            t.classical < kComponentFloor)
            ++p_violations;
    }

    json report = {
        {"command", "verify"},
        {"trials", cfg.trials},
        {"dims", {cfg.dim_lo, cfg.dim_hi}},
        {"seed", cfg.seed},
        {"theorem1",
         {{"violations", t1_violations}, {"max_rel_gap", t1_max}, {"worst_seed", t1_worst}}},
        {"partition",
         {{"violations", p_violations}, {"max_rel_residual", p_max}, {"worst_seed", p_worst}}},
        {"violations", t1_violations + p_violations},
    };
    out << report.dump(2) << "\n";
    return (t1_violations + p_violations) == 0 ? 0 : 2;
}

int cmd_mean_force(const MeanForceConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.points < 1 || !(cfg.tmin > 0.0) || (cfg.points > 1 && !(cfg.tmax > cfg.tmin))) {
        err << "usage: mean-force requires points >= 1 and 0 < tmin < tmax\n";
        return 1;
    }
    std::optional<CompositeModel> model;
    try {
        model = model_from_file(cfg.model_path);
    } catch (const std::exception& e) {
        err << "model error: " << e.what() << "\n";
        return 1;
    }

    std::vector<double> grid(cfg.points);
    if (cfg.points == 1) {
        grid[0] = cfg.tmin;
    } else if (cfg.log_spaced) {
        grid = log_spaced_grid(cfg.tmin, cfg.tmax, cfg.points);
    } else {
        for (int i = 0; i < cfg.points; ++i)
            grid[i] = cfg.tmin + (cfg.tmax - cfg.tmin) * i / (cfg.points - 1);
    }

    json params = {{"command", "mean-force"}, {"model", cfg.model_path},
                   {"tmin", cfg.tmin},        {"tmax", cfg.tmax},
                   {"points", cfg.points},    {"log_spaced", cfg.log_spaced}};
    out << "# " << params.dump() << "\n";
    out << "T,U,varU,Q,K,C,dT_E_star_mean,qfi_T,snr_opt,snr_bound,delta_beta_strong,"
           "delta_beta_weak,fdr_residual\n";

    const auto points = temperature_sweep(*model, grid, cfg.threads);
    int failures = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (!pt.report) {
            out << "# FAILED index=" << i << " T=" << format_g17(pt.temperature)
                << " error=" << pt.error << "\n";
            ++failures;
            continue;
        }
        const ThermoReport& r = *pt.report;
        out << csv_row({r.temperature, r.U, r.varU, r.Q, r.K, r.C, r.dT_E_star_mean, r.qfi_T,
                        r.temperature * r.temperature * r.qfi_T, r.snr_bound,
                        r.delta_beta_strong, r.delta_beta_weak, r.fdr_residual})
            << "\n";
    }
    if (failures) err << failures << " grid point(s) failed\n";
    return failures == 0 ? 0 : 2;
}

int cmd_oscillator_sweep(const OscillatorSweepConfig& cfg, std::ostream& out,
                         std::ostream& err) {
    if (cfg.points < 1 || !(cfg.tmin > 0.0) || (cfg.points > 1 && !(cfg.tmax > cfg.tmin)) ||
        cfg.gamma_list.empty() || (cfg.figure != 1 && cfg.figure != 2)) {
        err << "usage: oscillator-sweep requires points >= 1, 0 < tmin < tmax, a non-empty "
               "gamma list and figure 1 or 2\n";
        return 1;
    }
    for (double g : cfg.gamma_list)
        if (!(g > 0.0)) {
            err << "usage: gamma values must be positive\n";
            return 1;
        }

    const std::vector<double> grid =
        cfg.points == 1 ? std::vector<double>{cfg.tmin}
                        : log_spaced_grid(cfg.tmin, cfg.tmax, cfg.points);

    json params = {{"command", "oscillator-sweep"},
                   {"figure", cfg.figure},
                   {"mass", cfg.mass},
                   {"omega", cfg.omega},
                   {"gamma_list", cfg.gamma_list},
                   {"cutoff", cfg.cutoff},
                   {"tmin", cfg.tmin},
                   {"tmax", cfg.tmax},
                   {"points", cfg.points}};
    out << "# " << params.dump() << "\n";
    if (cfg.figure == 1)
        out << "T,gamma,sqrtQ_over_omega\n";
    else
        out << "T,gamma,snr_opt,snr_bound,gap_rel\n";

    std::vector<OscillatorGridRow> rows;
    try {
        rows = oscillator_grid(cfg.mass, cfg.omega, cfg.cutoff, cfg.gamma_list, grid,
                               cfg.threads);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    int skipped = 0;
    for (const auto& row : rows) {
        if (!row.ok) {
            err << "warning: skipped T=" << format_g17(row.temperature)
                << " gamma=" << format_g17(row.gamma) << ": " << row.error << "\n";
            ++skipped;
            continue;
        }
        const OscillatorReport& r = row.report;
        if (cfg.figure == 1) {
            out << csv_row({row.temperature, row.gamma,
                            std::sqrt(std::max(r.Q, 0.0)) / cfg.omega})
                << "\n";
        } else {
            const double gap_rel = (r.snr_bound - r.snr_opt) / r.snr_opt;
            out << csv_row({row.temperature, row.gamma, r.snr_opt, r.snr_bound, gap_rel})
                << "\n";
        }
    }
    if (skipped * 10 > static_cast<int>(rows.size())) {
        err << "error: " << skipped << "/" << rows.size() << " rows skipped\n";
        return 2;
    }
    return 0;
}

int cmd_estimate(const EstimateConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.n_samples < 1 || cfg.n_trials < 1 || !(cfg.T_true > 0.0)) {
        err << "usage: estimate requires n_samples >= 1, n_trials >= 1, T_true > 0\n";
        return 1;
    }

    StateFamily family;
    try {
        if (cfg.oscillator) {
            const OscillatorModel model(cfg.mass, cfg.omega, cfg.gamma, cfg.cutoff);
            family = oscillator_family(model, cfg.T_true);
        } else {
            CompositeModel model = cfg.model_path.empty() ? thermal_qubit()
                                                          : model_from_file(cfg.model_path);
            family.evaluate = [model](double T) {
                Matrix r = partial_trace_R(global_gibbs(model, T).hermitian(), model.dimS,
                                           model.dimR)
                               .matrix();
                r /= r.trace().real();
                return DensityMatrix(std::move(r));
            };
        }
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    }

    EstimationStats stats;
    try {
        stats = simulate_estimation(family, cfg.T_true, cfg.n_samples, cfg.n_trials, cfg.seed);
    } catch (const DomainError& e) {
        err << "zero-information diagnostic: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const double ratio = cfg.n_samples * stats.variance * stats.qfi_at_true;
    json report = {{"command", "estimate"},
                   {"T_true", cfg.T_true},
                   {"n_samples", cfg.n_samples},
                   {"n_trials", cfg.n_trials},
                   {"seed", cfg.seed},
                   {"mean_estimate", stats.mean_estimate},
                   {"empirical_var", stats.variance},
                   {"qfi", stats.qfi_at_true},
                   {"classical_fisher", stats.classical_fisher},
                   {"crb", 1.0 / (cfg.n_samples * stats.qfi_at_true)},
                   {"ratio", ratio}};
    out << report.dump(2) << "\n";

    if (cfg.n_trials < 10) {
        err << "warning: fewer than 10 trials, ratio band is not statistically meaningful\n";
        return 2;
    }
    return (ratio >= 0.85 && ratio <= 1.25) ? 0 : 2;
}

}  // namespace qtherm
