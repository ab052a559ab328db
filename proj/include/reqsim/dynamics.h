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

#ifndef REQSIM_DYNAMICS_H
#define REQSIM_DYNAMICS_H

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reqsim/state.h"

namespace reqsim {

/// Raised when integration produces non-finite amplitudes; tightening the tolerance usually helps.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time-dependent Hamiltonian H(t) in rad/us (hbar = 1).
///
/// `breakpoints` lists times where H(t) is discontinuous or changes analytic form; the
/// propagator never steps across them.
class HamiltonianFn {
   public:
    using Filler = std::function<void(double t, CMatrix &out)>;

    HamiltonianFn(int dim, Filler fill, std::vector<double> breakpoints = {});

    int dim() const {
        return dim_;
    }
    CMatrix operator()(double t) const;
    void fill(double t, CMatrix &out) const {
        fill_(t, out);
    }
    const std::vector<double> &breakpoints() const {
        return breakpoints_;
    }

   private:
    int dim_;
    Filler fill_;
    std::vector<double> breakpoints_;
};

enum class IntegratorMethod {
    kFixedRk4,
    kDormandPrince45,
};

struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::kDormandPrince45;
    /// Fixed step (us) for kFixedRk4.
    double step = 1e-3;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Upper bound on the adaptive step (us).
    double max_step = 0.05;

    static IntegratorConfig fixed(double step);
    static IntegratorConfig adaptive(double rel_tol, double abs_tol);

    /// Throws std::invalid_argument on non-positive tolerances or steps.
    void validate() const;
};

/// Solves i d|psi>/dt = H(t)|psi> from t0 to t1.
StateVector propagate(
    const StateVector &state, const HamiltonianFn &h, double t0, double t1, const IntegratorConfig &cfg = {});

/// Raw-vector form used by the harness; integrates in place.
void propagate_in_place(CVector &psi, const HamiltonianFn &h, double t0, double t1, const IntegratorConfig &cfg);

}  // namespace reqsim

#endif  // REQSIM_DYNAMICS_H
