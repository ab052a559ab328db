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

#include "reqsim/state.h"

#include <cmath>
#include <stdexcept>

#include "reqsim/units.h"

namespace reqsim {

namespace {

void check_shape(const CVector &amplitudes, const std::vector<std::string> &labels) {
    auto n = amplitudes.size();
    if (n != 2 && n != 3 && n != 9) {
        throw std::invalid_argument("state dimension must be 2, 3 or 9, got " + std::to_string(n));
    }
    if (static_cast<Eigen::Index>(labels.size()) != n) {
        throw std::invalid_argument("state has " + std::to_string(n) + " amplitudes but " +
                                    std::to_string(labels.size()) + " labels");
    }
    if (!amplitudes.allFinite()) {
        throw std::invalid_argument("state has non-finite amplitudes");
    }
}

}  // namespace

StateVector::StateVector(CVector amplitudes, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
    check_shape(amplitudes_, labels_);
    double err = std::abs(amplitudes_.squaredNorm() - 1.0);
    if (err > kNormTolerance) {
        throw std::invalid_argument("state is not normalized (|norm^2 - 1| = " + std::to_string(err * 1e9) + "e-9" + ")");
    }
}

StateVector StateVector::normalized(CVector amplitudes, std::vector<std::string> labels) {
    double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= n;
    return StateVector(std::move(amplitudes), std::move(labels));
}

StateVector StateVector::basis(const std::vector<std::string> &labels, const std::string &label) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(labels.size()));
    for (size_t k = 0; k < labels.size(); k++) {
        if (labels[k] == label) {
            v[static_cast<Eigen::Index>(k)] = 1.0;
            return StateVector(std::move(v), labels);
        }
    }
    throw std::invalid_argument("unknown basis label '" + label + "'");
}

int StateVector::index_of(const std::string &label) const {
    for (size_t k = 0; k < labels_.size(); k++) {
        if (labels_[k] == label) {
            return static_cast<int>(k);
        }
    }
    throw std::invalid_argument("unknown basis label '" + label + "'");
}

Complex StateVector::amplitude(const std::string &label) const {
    return amplitudes_[index_of(label)];
}

std::map<std::string, double> populations(const StateVector &state) {
    std::map<std::string, double> result;
    for (int k = 0; k < state.dim(); k++) {
        result[state.labels()[k]] = std::norm(state.amplitudes()[k]);
    }
    return result;
}

std::map<std::string, double> relative_phases(const StateVector &state, const std::string &reference_label) {
    Complex ref = state.amplitude(reference_label);
    if (std::abs(ref) <= 1e-6) {
        throw std::domain_error("reference amplitude '" + reference_label + "' is too small to define a phase");
    }
    std::map<std::string, double> result;
    for (int k = 0; k < state.dim(); k++) {
        const auto &label = state.labels()[k];
        if (label == reference_label) {
            continue;
        }
        result[label] = wrap_degrees(rad_to_deg(std::arg(state.amplitudes()[k]) - std::arg(ref)));
    }
    return result;
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity of states with different dimensions");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

const std::vector<std::string> &two_level_labels() {
    static const std::vector<std::string> labels{"g", "e"};
    return labels;
}

const std::vector<std::string> &lambda_labels() {
    static const std::vector<std::string> labels{"0", "1", "e"};
    return labels;
}

const std::vector<std::string> &two_ion_labels() {
    static const std::vector<std::string> labels{"00", "01", "0e", "10", "11", "1e", "e0", "e1", "ee"};
    return labels;
}

}  // namespace reqsim
