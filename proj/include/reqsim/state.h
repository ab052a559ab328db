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

#ifndef REQSIM_STATE_H
#define REQSIM_STATE_H

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace reqsim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Norm tolerance enforced when a StateVector is constructed.
inline constexpr double kNormTolerance = 1e-9;

/// A pure state over a labelled basis of dimension 2, 3 or 9.
///
/// The constructor rejects amplitudes that are not unit-normalized to within
/// kNormTolerance; use StateVector::normalized to build from raw weights.
class StateVector {
   public:
    StateVector(CVector amplitudes, std::vector<std::string> labels);

    /// Scales `amplitudes` to unit norm before constructing.
    static StateVector normalized(CVector amplitudes, std::vector<std::string> labels);

    /// The basis vector with the given label.
    static StateVector basis(const std::vector<std::string> &labels, const std::string &label);

    int dim() const {
        return static_cast<int>(amplitudes_.size());
    }
    const CVector &amplitudes() const {
        return amplitudes_;
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    int index_of(const std::string &label) const;
    Complex amplitude(const std::string &label) const;
    double norm_squared() const {
        return amplitudes_.squaredNorm();
    }

   private:
    CVector amplitudes_;
    std::vector<std::string> labels_;
};

std::map<std::string, double> populations(const StateVector &state);

/// Phase of every other basis amplitude relative to `reference_label`, in degrees wrapped
/// to (-180, 180]. Throws std::domain_error when the reference amplitude is below 1e-6.
std::map<std::string, double> relative_phases(const StateVector &state, const std::string &reference_label);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

/// Standard basis label sets.
const std::vector<std::string> &two_level_labels();    // g, e
const std::vector<std::string> &lambda_labels();       // 0, 1, e
const std::vector<std::string> &two_ion_labels();      // 00, 01, 0e, 10, ..., ee (control first)

}  // namespace reqsim

#endif  // REQSIM_STATE_H
