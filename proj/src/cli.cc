// Copyright 2026 The reqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reqsim/cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "reqsim/optimizer.h"
#include "reqsim/sweep.h"

namespace reqsim {

namespace {

struct GlobalOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.05;
    int workers = 0;
    bool angular_mhz = false;

    IntegratorConfig integrator() const {
        IntegratorConfig cfg = IntegratorConfig::adaptive(rel_tol, abs_tol);
        cfg.max_step = max_step;
        return cfg;
    }
    UnitConvention units() const {
        return angular_mhz ? UnitConvention::kAngular : UnitConvention::kCyclic;
    }
};

struct PulseOptions {
    std::string name = "sech-default";
    std::string sequence;
    std::string shape = "gauss";
    double duration_us = kCompositeDurationUs;
    std::vector<double> sech;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--pulse", name, "Catalog pulse name")->capture_default_str();
        cmd->add_option("--sequence", sequence, "Explicit composite, e.g. \"90_90 180_0 90_90\"");
        cmd->add_option("--shape", shape, "Envelope of --sequence")
            ->check(CLI::IsMember({"gauss", "rect"}))
            ->capture_default_str();
        cmd->add_option("--duration", duration_us, "Total duration of --sequence (us)")->capture_default_str();
        cmd->add_option("--sech", sech, "Explicit sech pulse: omega0_mhz,beta_mhz,mu,duration_us")
            ->expected(4)
            ->delimiter(',');
    }

    PulseSpec resolve() const {
        if (!sequence.empty() && !sech.empty()) {
            throw std::invalid_argument("--sequence and --sech are mutually exclusive");
        }
        if (!sequence.empty()) {
            auto seq = parse_sequence(sequence);
            return shape == "rect" ? make_rect_composite("custom", seq, duration_us)
                                   : make_gaussian_composite("custom", seq, duration_us);
        }
        if (!sech.empty()) {
            SechPulseSpec s{sech[0], sech[1], sech[2], 0.5 * sech[3], sech[3]};
            return PulseSpec("custom-sech", s);
        }
        return catalog_pulse(name);
    }
};

void write_output(const std::string &path,
                  const std::string &body,
                  const std::string &metadata,
                  std::ostream &fallback) {
    if (path.empty() || path == "-") {
        fallback << body;
        return;
    }
    {
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw IoError("cannot open '" + path + "' for writing");
        }
        file << body;
        if (!file.good()) {
            throw IoError("failed writing '" + path + "'");
        }
    }
    std::string meta_path = path + ".meta";
    std::ofstream meta(meta_path, std::ios::binary);
    if (!meta) {
        throw IoError("cannot open '" + meta_path + "' for writing");
    }
    meta << metadata;
    if (!meta.good()) {
        throw IoError("failed writing '" + meta_path + "'");
    }
}

// Global options plus the invoked subcommand's section; readable back through --config.
std::string effective_config(const CLI::App &app, const CLI::App &sub) {
    std::ostringstream meta;
    meta << "# reqsim effective configuration\n";
    std::istringstream all(app.config_to_str(true, false));
    for (std::string line; std::getline(all, line);) {
        auto eq = line.find('=');
        if (eq != std::string::npos && line.substr(0, eq).find('.') == std::string::npos) {
            meta << line << '\n';
        }
    }
    meta << '[' << sub.get_name() << "]\n";
    std::istringstream section(sub.config_to_str(true, false));
    for (std::string line; std::getline(section, line);) {
        // Unset options have no value to echo.
        if (!line.ends_with("=\"\"")) {
            meta << line << '\n';
        }
    }
    return meta.str();
}

std::string params_notation(const CompositeParams &p) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2);
    for (int k = 0; k < 3; k++) {
        s << (k ? " " : "") << p[2 * k] << '_' << p[2 * k + 1];
    }
    return s.str();
}

const char *shape_kind(const PulseSpec &p) {
    switch (p.shape().index()) {
        case 0:
            return "rect-composite";
        case 1:
            return "gauss-composite";
        default:
            return "sech";
    }
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Detuning-tolerant pulse design and gate simulation for spectrally addressed ion qubits", "reqsim"};
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "INI config file (key = value, one [section] per subcommand)")
        ->envname("REQSIM_CONFIG");
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--rel-tol", global.rel_tol, "Adaptive integrator relative tolerance")->capture_default_str();
    app.add_option("--abs-tol", global.abs_tol, "Adaptive integrator absolute tolerance")->capture_default_str();
    app.add_option("--max-step", global.max_step, "Largest adaptive step (us)")->capture_default_str();
    app.add_option("--workers", global.workers, "Worker threads (0 = all hardware threads)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_flag("--angular-mhz", global.angular_mhz, "Read MHz inputs as angular rates (rad/us)");

    std::string output;
    std::function<void()> action;

    // sweep
    auto *sweep = app.add_subcommand("sweep", "Excitation profile P_e(detuning) of one pulse");
    PulseOptions sweep_pulse;
    sweep_pulse.add_to(sweep);
    DetuningGrid sweep_grid{-10.0, 10.0, 401};
    sweep->add_option("--min", sweep_grid.min_mhz, "Lowest detuning (MHz)")->capture_default_str();
    sweep->add_option("--max", sweep_grid.max_mhz, "Highest detuning (MHz)")->capture_default_str();
    sweep->add_option("--points", sweep_grid.count, "Grid points")->capture_default_str();
    sweep->add_option("-o,--output", output, "CSV path (stdout if omitted)");
    sweep->callback([&] {
        action = [&] {
            auto result = excitation_profile(sweep_pulse.resolve(), sweep_grid, global.integrator(), global.workers,
                                             global.units());
            std::ostringstream csv;
            write_profile_csv(csv, result);
            write_output(output, csv.str(), effective_config(app, *sweep), out);
        };
    });

    // cnot
    auto *cnot = app.add_subcommand("cnot", "C-NOT populations and phases over a detuning grid");
    std::string cnot_pulse = "sech-default", mode = "1d";
    std::optional<double> cmin, cmax, tmin, tmax;
    std::optional<int> cpoints, tpoints;
    double dipole = 15.0;
    std::vector<double> initial;
    cnot->add_option("--pulses", cnot_pulse, "Catalog pulse used for all 12 steps")->capture_default_str();
    cnot->add_option("--mode", mode, "1d: common detuning; 2d: independent control/target")
        ->check(CLI::IsMember({"1d", "2d"}))
        ->capture_default_str();
    cnot->add_option("--min", cmin, "Lowest (control) detuning, MHz [1d: -10, 2d: -0.5]");
    cnot->add_option("--max", cmax, "Highest (control) detuning, MHz [1d: 10, 2d: 0.5]");
    cnot->add_option("--points", cpoints, "(Control) grid points [1d: 201, 2d: 21]");
    cnot->add_option("--target-min", tmin, "Lowest target detuning, MHz (2d) [-0.5]");
    cnot->add_option("--target-max", tmax, "Highest target detuning, MHz (2d) [0.5]");
    cnot->add_option("--target-points", tpoints, "Target grid points (2d) [21]");
    cnot->add_option("--dipole", dipole, "Dipole shift of |ee> (MHz)")->capture_default_str();
    cnot->add_option("--initial", initial, "Real qubit amplitudes a00,a01,a10,a11 (normalized on use)")
        ->expected(4)
        ->delimiter(',');
    cnot->add_option("-o,--output", output, "CSV path (stdout if omitted)");
    cnot->callback([&] {
        action = [&] {
            SweepSpec spec;
            bool two_d = mode == "2d";
            spec.kind = two_d ? SweepKind::kCnot2d : SweepKind::kCnot1d;
            spec.grid = two_d ? DetuningGrid{cmin.value_or(-0.5), cmax.value_or(0.5), cpoints.value_or(21)}
                              : DetuningGrid{cmin.value_or(-10.0), cmax.value_or(10.0), cpoints.value_or(201)};
            spec.target_grid = {tmin.value_or(-0.5), tmax.value_or(0.5), tpoints.value_or(21)};
            spec.pulse = cnot_pulse;
            if (!initial.empty()) {
                spec.initial = Eigen::Vector4cd(initial[0], initial[1], initial[2], initial[3]);
            }
            spec.dipole_shift_mhz = dipole;
            spec.units = global.units();
            spec.integrator = global.integrator();
            spec.workers = global.workers;
            auto result = cnot_sweep(spec);
            std::ostringstream csv;
            write_cnot_csv(csv, result);
            write_output(output, csv.str(), effective_config(app, *cnot), out);
        };
    });

    // optimize
    auto *opt = app.add_subcommand("optimize", "Variational search over three Gaussian areas and phases");
    std::string start = "naive";
    OptimizerConfig opt_cfg;
    ObjectiveSpec objective_spec;
    opt->add_option("--start", start, "naive, opt, or an explicit \"a_p a_p a_p\" sequence")->capture_default_str();
    opt->add_option("--max-evals", opt_cfg.max_evaluations, "Objective evaluation budget")->capture_default_str();
    opt->add_option("--restarts", opt_cfg.restarts, "Seeded simplex restarts")->capture_default_str();
    opt->add_option("--seed", opt_cfg.seed, "Restart seed")->capture_default_str();
    opt->add_option("--tolerance", opt_cfg.tolerance, "Simplex convergence tolerance")->capture_default_str();
    opt->add_option("--step", opt_cfg.initial_step_deg, "Initial simplex size (deg)")->capture_default_str();
    opt->add_option("--in-band", objective_spec.in_band_mhz, "In-band detunings (MHz)")->delimiter(',');
    opt->add_option("--out-band", objective_spec.out_band_mhz, "Out-of-band detunings (MHz)")->delimiter(',');
    opt->add_option("--w-res", objective_spec.resonance_weight, "Resonance weight")->capture_default_str();
    opt->add_option("--w-in", objective_spec.in_band_weight, "In-band weight")->capture_default_str();
    opt->add_option("--w-out", objective_spec.out_band_weight, "Out-of-band weight")->capture_default_str();
    opt->add_option("-o,--output", output, "Trace CSV path (stdout if omitted)");
    opt->callback([&] {
        action = [&] {
            if (start == "naive") {
                opt_cfg.initial_guess = {{{90, 90}, {180, 0}, {90, 90}}};
            } else if (start == "opt") {
                opt_cfg.initial_guess = {{{92.50, 96.98}, {192.00, 6.86}, {92.42, 96.23}}};
            } else {
                auto seq = parse_sequence(start);
                if (seq.size() != 3) {
                    throw std::invalid_argument("--start needs exactly three area_phase elements");
                }
                std::copy(seq.begin(), seq.end(), opt_cfg.initial_guess.begin());
            }
            objective_spec.integrator = global.integrator();
            auto result = optimize(opt_cfg, objective_spec);

            std::ostringstream csv;
            csv << "evaluation,best_score,theta1_deg,phi1_deg,theta2_deg,phi2_deg,theta3_deg,phi3_deg\n";
            for (const auto &t : result.trace) {
                csv << t.evaluation << ',' << format_number(t.best_score);
                for (double p : t.params) {
                    csv << ',' << format_number(p);
                }
                csv << '\n';
            }
            CompositeParams reference{92.50, 96.98, 192.00, 6.86, 92.42, 96.23};
            double reference_score = objective(reference, objective_spec);
            std::ostringstream summary;
            summary << "best sequence    " << params_notation(result.params) << '\n'
                    << "best score       " << format_number(result.score) << '\n'
                    << "gauss-opt score  " << format_number(reference_score) << '\n'
                    << "ratio            " << format_number(result.score / reference_score) << '\n'
                    << "evaluations      " << result.evaluations << '\n'
                    << "converged        " << (result.converged ? "yes" : "no (budget exhausted)") << '\n';
            std::string meta = effective_config(app, *opt) + "\n# result\n# " + params_notation(result.params) +
                               "\n# score " + format_number(result.score) + "\n";
            if (output.empty() || output == "-") {
                out << csv.str();
                err << summary.str();
            } else {
                write_output(output, csv.str(), meta, out);
                out << summary.str();
            }
        };
    });

    // bloch
    auto *bloch = app.add_subcommand("bloch", "Bloch-vector trajectory of one pulse at one detuning");
    PulseOptions bloch_pulse;
    bloch_pulse.add_to(bloch);
    double bloch_detuning = 0.0;
    int samples = 301;
    bloch->add_option("--detuning", bloch_detuning, "Detuning (MHz)")->capture_default_str();
    bloch->add_option("--samples", samples, "Uniformly spaced samples")->capture_default_str();
    bloch->add_option("-o,--output", output, "CSV path (stdout if omitted)");
    bloch->callback([&] {
        action = [&] {
            auto traj =
                bloch_trajectory(bloch_pulse.resolve(), bloch_detuning, samples, global.integrator(), global.units());
            std::ostringstream csv;
            write_bloch_csv(csv, traj);
            write_output(output, csv.str(), effective_config(app, *bloch), out);
        };
    });

    // program
    auto *program = app.add_subcommand("program", "Print a gate program listing");
    std::string gate = "cnot", program_pulse = "sech-default";
    double theta = 180.0, phi = 180.0;
    bool no_compensate = false;
    program->add_option("--gate", gate, "cnot, rotation or phase")
        ->check(CLI::IsMember({"cnot", "rotation", "phase"}))
        ->capture_default_str();
    program->add_option("--pulses", program_pulse, "Catalog pulse for every step")->capture_default_str();
    program->add_option("--theta", theta, "Rotation angle (deg)")->capture_default_str();
    program->add_option("--phi", phi, "Dark/bright basis phase (deg)")->capture_default_str();
    program->add_flag("--no-compensate", no_compensate, "Omit the |0bar> compensation pair (rotation)");
    program->add_option("-o,--output", output, "Listing path (stdout if omitted)");
    program->callback([&] {
        action = [&] {
            GateProgram p = gate == "cnot"       ? cnot_program(program_pulse, theta, phi)
                            : gate == "rotation" ? rotation_program(theta, phi, program_pulse, !no_compensate)
                                                 : phase_gate_program(theta, phi, program_pulse);
            write_output(output, to_listing(p), effective_config(app, *program), out);
        };
    });

    // catalog
    auto *catalog = app.add_subcommand("catalog", "List the named pulses");
    catalog->callback([&] {
        action = [&] {
            for (const auto &p : standard_pulses()) {
                out << p.name() << ' ' << shape_kind(p) << ' ' << format_number(p.duration()) << '\n';
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (action) {
            action();
        }
    } catch (const IoError &e) {
        err << "reqsim: I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericalError &e) {
        err << "reqsim: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const LeakageError &e) {
        err << "reqsim: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        err << "reqsim: invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error &e) {
        err << "reqsim: invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "reqsim: error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

}  // namespace reqsim
