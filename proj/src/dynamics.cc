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

#include "reqsim/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace reqsim {

HamiltonianFn::HamiltonianFn(int dim, Filler fill, std::vector<double> breakpoints)
    : dim_(dim), fill_(std::move(fill)), breakpoints_(std::move(breakpoints)) {
    if (dim <= 0) {
        throw std::invalid_argument("Hamiltonian dimension must be positive");
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

CMatrix HamiltonianFn::operator()(double t) const {
    CMatrix out = CMatrix::Zero(dim_, dim_);
    fill_(t, out);
    return out;
}

IntegratorConfig IntegratorConfig::fixed(double step) {
    IntegratorConfig cfg;
    cfg.method = IntegratorMethod::kFixedRk4;
    cfg.step = step;
    return cfg;
}

IntegratorConfig IntegratorConfig::adaptive(double rel_tol, double abs_tol) {
    IntegratorConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    return cfg;
}

void IntegratorConfig::validate() const {
    if (method == IntegratorMethod::kFixedRk4) {
        if (!(step > 0.0)) {
            throw std::invalid_argument("fixed step must be positive");
        }
        return;
    }
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw std::invalid_argument("integrator tolerances must be strictly positive");
    }
    if (!(max_step > 0.0)) {
        throw std::invalid_argument("max_step must be positive");
    }
}

namespace {

// Evaluates d psi / dt = -i H(t) psi with t clamped to the open interior of the active segment.
class Rhs {
   public:
    explicit Rhs(const HamiltonianFn &h) : h_(h), mat_(CMatrix::Zero(h.dim(), h.dim())) {
    }

    void set_segment(double a, double b) {
        lo_ = std::nextafter(a, b);
        hi_ = std::nextafter(b, a);
    }

    void operator()(double t, const CVector &psi, CVector &out) {
        mat_.setZero();
        h_.fill(std::clamp(t, lo_, hi_), mat_);
        out.noalias() = mat_ * psi;
        out *= Complex(0.0, -1.0);
    }

   private:
    const HamiltonianFn &h_;
    CMatrix mat_;
    double lo_ = -std::numeric_limits<double>::infinity();
    double hi_ = std::numeric_limits<double>::infinity();
};

void check_finite(const CVector &psi, double t) {
    if (!psi.allFinite()) {
        throw NumericalError("integrator produced non-finite amplitudes at t = " + std::to_string(t) + " us");
    }
}

void rk4_segment(CVector &psi, Rhs &rhs, double a, double b, double step) {
    auto n = static_cast<long>(std::ceil((b - a) / step - 1e-12));
    n = std::max(n, 1L);
    double h = (b - a) / static_cast<double>(n);
    CVector k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size()), tmp(psi.size());
    for (long s = 0; s < n; s++) {
        double t = a + static_cast<double>(s) * h;
        rhs(t, psi, k1);
        tmp = psi + (0.5 * h) * k1;
        rhs(t + 0.5 * h, tmp, k2);
        tmp = psi + (0.5 * h) * k2;
        rhs(t + 0.5 * h, tmp, k3);
        tmp = psi + h * k3;
        rhs(t + h, tmp, k4);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    check_finite(psi, b);
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

void dopri_segment(CVector &psi, Rhs &rhs, double a, double b, const IntegratorConfig &cfg) {
    const auto n = psi.size();
    CVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), next(n), err(n);
    double span = b - a;
    double t = a;

    rhs(t, psi, k1);
    // Initial step from the local rate of change.
    double rate = k1.norm() / std::max(psi.norm(), 1e-300);
    double h = rate > 0.0 ? 0.01 / rate : span;
    h = std::min({h, cfg.max_step, span});

    constexpr int kMaxSteps = 50'000'000;
    for (int steps = 0; t < b; steps++) {
        if (steps > kMaxSteps) {
            throw NumericalError("adaptive integrator exceeded its step budget");
        }
        bool last = false;
        if (t + h >= b || (b - (t + h)) < 1e-12 * span) {
            h = b - t;
            last = true;
        }
        tmp = psi + h * a21 * k1;
        rhs(t + c2 * h, tmp, k2);
        tmp = psi + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, tmp, k3);
        tmp = psi + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, tmp, k4);
        tmp = psi + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, tmp, k5);
        tmp = psi + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, tmp, k6);
        next = psi + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        rhs(t + h, next, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; i++) {
            double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(psi[i]), std::abs(next[i]));
            double r = std::abs(err[i]) / scale;
            acc += r * r;
        }
        double err_norm = std::sqrt(acc / static_cast<double>(n));
        if (!std::isfinite(err_norm)) {
            throw NumericalError("adaptive integrator error estimate is non-finite at t = " + std::to_string(t));
        }

        if (err_norm <= 1.0) {
            t = last ? b : t + h;
            psi.swap(next);
            k1.swap(k7);
            if (last) {
                break;
            }
        }
        double factor = err_norm == 0.0 ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
        factor = std::clamp(factor, 0.2, 5.0);
        if (err_norm > 1.0) {
            factor = std::min(factor, 1.0);
        }
        h = std::min(h * factor, cfg.max_step);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            throw NumericalError("adaptive step underflow at t = " + std::to_string(t) + " us");
        }
    }
    check_finite(psi, b);
}

}  // namespace

void propagate_in_place(CVector &psi, const HamiltonianFn &h, double t0, double t1, const IntegratorConfig &cfg) {
    if (psi.size() != h.dim()) {
        throw std::invalid_argument("state dimension " + std::to_string(psi.size()) +
                                    " does not match Hamiltonian dimension " + std::to_string(h.dim()));
    }
    if (t1 < t0) {
        throw std::invalid_argument("propagate requires t1 >= t0");
    }
    cfg.validate();
    if (t1 == t0) {
        return;
    }

    std::vector<double> knots{t0};
    for (double bp : h.breakpoints()) {
        if (bp > t0 && bp < t1) {
            knots.push_back(bp);
        }
    }
    knots.push_back(t1);

    Rhs rhs(h);
    for (size_t k = 0; k + 1 < knots.size(); k++) {
        rhs.set_segment(knots[k], knots[k + 1]);
        if (cfg.method == IntegratorMethod::kFixedRk4) {
            rk4_segment(psi, rhs, knots[k], knots[k + 1], cfg.step);
        } else {
            dopri_segment(psi, rhs, knots[k], knots[k + 1], cfg);
        }
    }
}

StateVector propagate(
    const StateVector &state, const HamiltonianFn &h, double t0, double t1, const IntegratorConfig &cfg) {
    CVector psi = state.amplitudes();
    propagate_in_place(psi, h, t0, t1, cfg);
    double drift = std::abs(psi.squaredNorm() - 1.0);
    if (drift > kNormTolerance) {
        throw NumericalError("norm drifted by " + std::to_string(drift) + "; tighten the integrator tolerance");
    }
    return StateVector(std::move(psi), state.labels());
}

}  // namespace reqsim
