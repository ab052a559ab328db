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

#include "reqsim/optimizer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "reqsim/ion_models.h"

namespace reqsim {

void ObjectiveSpec::validate() const {
    if (resonance_weight <= 0.0) {
        throw std::invalid_argument("resonance weight must be positive");
    }
    if (in_band_weight < 0.0 || out_band_weight < 0.0) {
        throw std::invalid_argument("objective weights must be non-negative");
    }
    integrator.validate();
}

void OptimizerConfig::validate() const {
    if (max_evaluations <= 0) {
        throw std::invalid_argument("max evaluations must be positive");
    }
    if (!(tolerance > 0.0) || !(initial_step_deg > 0.0) || restarts < 0) {
        throw std::invalid_argument("optimizer tolerance and step must be positive, restarts non-negative");
    }
}

CompositeParams canonical_params(const CompositeParams &params) {
    CompositeParams out = params;
    for (int k = 0; k < 3; k++) {
        double &area = out[2 * k];
        double &phase = out[2 * k + 1];
        if (area < 0.0) {
            area = -area;
            phase += 180.0;
        }
        phase = std::fmod(phase, 360.0);
        if (phase < 0.0) {
            phase += 360.0;
        }
    }
    return out;
}

CompositeParams to_params(const std::array<AreaPhase, 3> &sequence) {
    return {sequence[0].area_deg, sequence[0].phase_deg, sequence[1].area_deg,
            sequence[1].phase_deg, sequence[2].area_deg, sequence[2].phase_deg};
}

PulseSpec composite_from_params(const CompositeParams &params, const ObjectiveSpec &spec) {
    CompositeParams c = canonical_params(params);
    std::array<AreaPhase, 3> seq{{{c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]}}};
    return make_gaussian_composite("candidate", seq, spec.total_duration_us, spec.cutoff_multiple);
}

namespace {

double excited_population(const PulseSpec &pulse, double detuning_mhz, const IntegratorConfig &cfg) {
    CVector psi(2);
    psi << 1.0, 0.0;
    propagate_in_place(psi, build_two_level({detuning_mhz, pulse}), pulse.t_start(), pulse.t_end(), cfg);
    return std::norm(psi[1]);
}

double mean_of(const std::vector<double> &detunings, const std::function<double(double)> &f) {
    if (detunings.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double d : detunings) {
        sum += f(d);
    }
    return sum / static_cast<double>(detunings.size());
}

}  // namespace

double objective(const CompositeParams &params, const ObjectiveSpec &spec) {
    spec.validate();
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("composite parameters must be finite");
        }
    }
    PulseSpec pulse = composite_from_params(params, spec);
    const auto &cfg = spec.integrator;
    double score = spec.resonance_weight * (1.0 - excited_population(pulse, 0.0, cfg));
    if (spec.in_band_weight > 0.0) {
        score += spec.in_band_weight *
                 mean_of(spec.in_band_mhz, [&](double d) { return 1.0 - excited_population(pulse, d, cfg); });
    }
    if (spec.out_band_weight > 0.0) {
        score += spec.out_band_weight *
                 mean_of(spec.out_band_mhz, [&](double d) { return excited_population(pulse, d, cfg); });
    }
    if (!std::isfinite(score)) {
        throw NumericalError("objective evaluated to a non-finite value");
    }
    // Populations carry ~1e-12 integration noise; the score is a sum of non-negative terms.
    return std::max(score, 0.0);
}

SimplexResult nelder_mead(const std::function<double(const std::vector<double> &)> &fn,
                          std::vector<std::vector<double>> simplex,
                          int max_evaluations,
                          double tolerance) {
    const size_t n = simplex.size() - 1;
    if (simplex.size() < 2 || std::any_of(simplex.begin(), simplex.end(), [&](auto &v) { return v.size() != n; })) {
        throw std::invalid_argument("simplex needs n + 1 vertices of dimension n");
    }
    constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

    int evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        evals++;
        return fn(x);
    };
    std::vector<double> values(n + 1);
    for (size_t i = 0; i <= n; i++) {
        values[i] = eval(simplex[i]);
    }
    std::vector<size_t> order(n + 1);
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
    };
    auto affine = [&](const std::vector<double> &centroid, const std::vector<double> &worst, double coef) {
        std::vector<double> x(n);
        for (size_t j = 0; j < n; j++) {
            x[j] = centroid[j] + coef * (centroid[j] - worst[j]);
        }
        return x;
    };

    bool converged = false;
    while (true) {
        sort_vertices();
        size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (values[worst] - values[best] <= tolerance) {
            converged = true;
            break;
        }
        if (evals >= max_evaluations) {
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                centroid[j] += simplex[order[i]][j] / static_cast<double>(n);
            }
        }
        auto xr = affine(centroid, simplex[worst], reflect);
        double fr = eval(xr);
        if (fr < values[best]) {
            auto xe = affine(centroid, simplex[worst], expand);
            double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = std::move(xe);
                values[worst] = fe;
            } else {
                simplex[worst] = std::move(xr);
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = std::move(xr);
            values[worst] = fr;
            continue;
        }
        bool outside = fr < values[worst];
        auto xc = affine(centroid, simplex[worst], outside ? contract : -contract);
        double fc = eval(xc);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = std::move(xc);
            values[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= n; i++) {
            if (i == best) {
                continue;
            }
            for (size_t j = 0; j < n; j++) {
                simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }
    sort_vertices();
    return {simplex[order.front()], values[order.front()], evals, converged};
}

OptimizerResult optimize(const OptimizerConfig &cfg, const ObjectiveSpec &spec) {
    cfg.validate();
    spec.validate();

    OptimizerResult result{to_params(cfg.initial_guess), 0.0, 0, false, {}};
    auto record = [&](const std::vector<double> &x, double value) {
        if (result.trace.empty() || value < result.trace.back().best_score) {
            CompositeParams p;
            std::copy(x.begin(), x.end(), p.begin());
            result.trace.push_back({result.evaluations, value, canonical_params(p)});
        }
    };
    auto fn = [&](const std::vector<double> &x) {
        CompositeParams p;
        std::copy(x.begin(), x.end(), p.begin());
        double value = objective(p, spec);
        result.evaluations++;
        record(x, value);
        return value;
    };

    std::vector<double> best(result.params.begin(), result.params.end());
    double best_value = fn(best);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int run = 0; run <= cfg.restarts; run++) {
        int budget = cfg.max_evaluations - result.evaluations;
        if (budget <= 0) {
            result.converged = false;
            break;
        }
        std::vector<std::vector<double>> simplex{best};
        for (size_t i = 0; i < best.size(); i++) {
            auto v = best;
            if (run == 0) {
                v[i] += cfg.initial_step_deg;
            } else {
                for (double &c : v) {
                    c += cfg.initial_step_deg * unit(rng);
                }
            }
            simplex.push_back(std::move(v));
        }
        auto run_result = nelder_mead(fn, std::move(simplex), budget, cfg.tolerance);
        result.converged = run_result.converged;
        if (run_result.value < best_value) {
            best_value = run_result.value;
            best = run_result.x;
        }
    }

    std::copy(best.begin(), best.end(), result.params.begin());
    result.params = canonical_params(result.params);
    result.score = best_value;
    return result;
}

}  // namespace reqsim
