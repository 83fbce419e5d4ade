// Copyright 2026 The qmlkit Authors
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

#include "qmlkit/tomo.h"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "qmlkit/errors.h"

namespace qmlkit {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr size_t kMleStarts = 20;

const Matrix2 &pauli(size_t i) {
    static const std::array<Matrix2, 3> paulis = [] {
        std::array<Matrix2, 3> p;
        p[0] << 0, 1, 1, 0;
        p[1] << 0, Complex(0, -1), Complex(0, 1), 0;
        p[2] << 1, 0, 0, -1;
        return p;
    }();
    return paulis[i];
}

BlochVector unit(const BlochVector &v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("rotation axis must be a finite non-zero vector");
    }
    return {v[0] / n, v[1] / n, v[2] / n};
}

Matrix2 axis_pauli(const BlochVector &n) {
    return n[0] * pauli(0) + n[1] * pauli(1) + n[2] * pauli(2);
}

double clamp_probability(double p) {
    return std::clamp(p, 1e-12, 1 - 1e-12);
}

double negative_log_likelihood(const gsl_vector *v, void *params) {
    const auto &record = *static_cast<const TomogramRecord *>(params);
    BlochState s{gsl_vector_get(v, 0), gsl_vector_get(v, 1)};
    return -tomogram_log_likelihood(record, s);
}

double quantile(const std::vector<double> &sorted, double q) {
    double pos = q * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Eigen::MatrixXd bloch_targets(const std::vector<BlochState> &states) {
    Eigen::MatrixXd t(3, static_cast<Eigen::Index>(states.size()));
    for (size_t i = 0; i < states.size(); ++i) {
        BlochVector r = states[i].vector();
        t.col(static_cast<Eigen::Index>(i)) << r[0], r[1], r[2];
    }
    return t;
}

}  // namespace

BlochState BlochState::from_vector(const BlochVector &r) {
    double n = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (!(n > 0) || !std::isfinite(n)) {
        throw NumericalError("cannot normalize a zero or non-finite Bloch vector");
    }
    BlochState s;
    s.theta = std::acos(std::clamp(r[2] / n, -1.0, 1.0));
    s.phi = std::atan2(r[1], r[0]);
    if (s.phi < 0) {
        s.phi += kTwoPi;
    }
    if (s.phi >= kTwoPi) {
        s.phi = 0;
    }
    return s;
}

BlochVector BlochState::vector() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<Complex, 2> BlochState::amplitudes() const {
    return {Complex(std::cos(theta / 2), 0), std::polar(std::sin(theta / 2), phi)};
}

DensityMatrix BlochState::density() const {
    auto a = amplitudes();
    return DensityMatrix::pure(a[0], a[1]);
}

double fidelity(const BlochState &a, const BlochState &b) {
    auto x = a.amplitudes(), y = b.amplitudes();
    return std::clamp(std::norm(std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]), 0.0, 1.0);
}

std::vector<BlochState> sample_bloch_uniform(size_t count, Rng &rng) {
    if (count == 0) {
        throw std::invalid_argument("need at least one state");
    }
    std::vector<BlochState> states(count);
    for (auto &s : states) {
        s.theta = std::acos(rng.uniform(-1, 1));
        s.phi = rng.uniform(0, kTwoPi);
    }
    return states;
}

std::string noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::None:
            return "none";
        case NoiseKind::SystematicUnitary:
            return "systematic_unitary";
        case NoiseKind::RandomUnitary:
            return "random_unitary";
        case NoiseKind::AmplitudePhase:
            return "amplitude_phase";
    }
    throw std::logic_error("unknown noise kind");
}

NoiseKind parse_noise_kind(const std::string &name) {
    for (NoiseKind k :
         {NoiseKind::None, NoiseKind::SystematicUnitary, NoiseKind::RandomUnitary, NoiseKind::AmplitudePhase}) {
        if (noise_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown noise kind '" + name + "'");
}

NoiseChannel NoiseChannel::none() {
    return {};
}

NoiseChannel NoiseChannel::systematic_unitary(BlochVector axis, double angle) {
    NoiseChannel c;
    c.kind = NoiseKind::SystematicUnitary;
    c.axis = axis;
    c.angle = angle;
    return c;
}

NoiseChannel NoiseChannel::random_unitary(std::optional<BlochVector> axis, double angle_std) {
    NoiseChannel c;
    c.kind = NoiseKind::RandomUnitary;
    c.axis = axis;
    c.angle_std = angle_std;
    return c;
}

NoiseChannel NoiseChannel::amplitude_phase(double gamma, double lambda) {
    NoiseChannel c;
    c.kind = NoiseKind::AmplitudePhase;
    c.gamma = gamma;
    c.lambda = lambda;
    return c;
}

void NoiseChannel::validate() const {
    switch (kind) {
        case NoiseKind::None:
            return;
        case NoiseKind::SystematicUnitary:
            if (!std::isfinite(angle)) {
                throw std::invalid_argument("rotation angle must be finite");
            }
            break;
        case NoiseKind::RandomUnitary:
            if (!(angle_std >= 0) || !std::isfinite(angle_std)) {
                throw std::invalid_argument("angle standard deviation must be finite and >= 0");
            }
            break;
        case NoiseKind::AmplitudePhase:
            if (!(gamma >= 0 && gamma <= 1) || !(lambda >= 0 && lambda <= 1)) {
                throw std::invalid_argument("damping probabilities must lie in [0, 1]");
            }
            return;
    }
    if (!axis) {
        throw std::invalid_argument("unitary noise needs a rotation axis");
    }
    unit(*axis);
}

Matrix2 rotation_matrix(const BlochVector &axis, double angle) {
    return std::cos(angle / 2) * Matrix2::Identity() - Complex(0, std::sin(angle / 2)) * axis_pauli(unit(axis));
}

std::vector<Matrix2> NoiseChannel::kraus_operators() const {
    validate();
    switch (kind) {
        case NoiseKind::None:
            return {Matrix2::Identity()};
        case NoiseKind::SystematicUnitary:
            return {rotation_matrix(*axis, angle)};
        case NoiseKind::RandomUnitary: {
            // E[cos^2(a/2)] and E[sin^2(a/2)] for a ~ N(0, s); the cross terms
            // vanish because the angle distribution is symmetric.
            double damp = std::exp(-angle_std * angle_std / 2);
            return {std::sqrt((1 + damp) / 2) * Matrix2::Identity(),
                    std::sqrt((1 - damp) / 2) * axis_pauli(unit(*axis))};
        }
        case NoiseKind::AmplitudePhase: {
            Matrix2 a0, a1, p0, p1;
            a0 << 1, 0, 0, std::sqrt(1 - gamma);
            a1 << 0, std::sqrt(gamma), 0, 0;
            p0 << 1, 0, 0, std::sqrt(1 - lambda);
            p1 << 0, 0, 0, std::sqrt(lambda);
            return {p0 * a0, p0 * a1, p1 * a0, p1 * a1};
        }
    }
    throw std::logic_error("unknown noise kind");
}

DensityMatrix NoiseChannel::apply(const DensityMatrix &rho) const {
    auto ops = kraus_operators();
    return apply_kraus(rho, ops);
}

std::array<double, 3> TomogramRecord::frequencies() const {
    std::array<double, 3> f{};
    for (size_t b = 0; b < 3; ++b) {
        if (shots[b] == 0) {
            throw DataError("tomogram basis " + std::to_string(b) + " has no shots");
        }
        f[b] = static_cast<double>(plus[b]) / static_cast<double>(shots[b]);
    }
    return f;
}

std::array<double, 3> plus_probabilities(const DensityMatrix &rho) {
    auto r = rho.bloch_vector();
    return {std::clamp((1 + r[0]) / 2, 0.0, 1.0), std::clamp((1 + r[1]) / 2, 0.0, 1.0),
            std::clamp((1 + r[2]) / 2, 0.0, 1.0)};
}

TomogramRecord simulate_measurements(const BlochState &state, const NoiseChannel &noise, uint64_t sample_size,
                                     Rng &rng) {
    if (sample_size < 3) {
        throw std::invalid_argument("sample size must be at least 3");
    }
    auto p = plus_probabilities(noise.apply(state.density()));
    TomogramRecord record;
    for (size_t b = 0; b < 3; ++b) {
        record.shots[b] = sample_size / 3 + (b < sample_size % 3 ? 1 : 0);
        record.plus[b] = rng.binomial(record.shots[b], p[b]);
    }
    return record;
}

double tomogram_log_likelihood(const TomogramRecord &record, const BlochState &state) {
    BlochVector r = state.vector();
    double ll = 0;
    for (size_t b = 0; b < 3; ++b) {
        double p = clamp_probability((1 + r[b]) / 2);
        double plus = static_cast<double>(record.plus[b]);
        double minus = static_cast<double>(record.shots[b] - record.plus[b]);
        ll += plus * std::log(p) + minus * std::log1p(-p);
    }
    return ll;
}

MleEstimate mle_reconstruct(const TomogramRecord &record) {
    for (size_t b = 0; b < 3; ++b) {
        if (record.shots[b] == 0 || record.plus[b] > record.shots[b]) {
            throw DataError("tomogram needs counts in every basis");
        }
    }
    auto *type = gsl_multimin_fminimizer_nmsimplex2;
    std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
        gsl_multimin_fminimizer_alloc(type, 2), &gsl_multimin_fminimizer_free);
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> start(gsl_vector_alloc(2), &gsl_vector_free);
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(2), &gsl_vector_free);
    gsl_vector_set_all(step.get(), 0.3);
    gsl_multimin_function fn{&negative_log_likelihood, 2, const_cast<TomogramRecord *>(&record)};

    MleEstimate best;
    best.log_likelihood = -std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < kMleStarts; ++s) {
        // Fibonacci lattice: evenly spread, deterministic starting points.
        double z = 1 - (2 * static_cast<double>(s) + 1) / kMleStarts;
        gsl_vector_set(start.get(), 0, std::acos(z));
        gsl_vector_set(start.get(), 1, std::fmod(static_cast<double>(s) * std::numbers::pi * (3 - std::sqrt(5.0)), kTwoPi));
        gsl_multimin_fminimizer_set(solver.get(), &fn, start.get(), step.get());
        for (int iter = 0; iter < 2000; ++iter) {
            if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) {
                break;
            }
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()), 1e-9) == GSL_SUCCESS) {
                break;
            }
        }
        double ll = -gsl_multimin_fminimizer_minimum(solver.get());
        if (ll > best.log_likelihood) {
            const gsl_vector *x = gsl_multimin_fminimizer_x(solver.get());
            BlochState raw{gsl_vector_get(x, 0), gsl_vector_get(x, 1)};
            best.state = BlochState::from_vector(raw.vector());
            best.log_likelihood = ll;
        }
    }
    if (!std::isfinite(best.log_likelihood)) {
        throw NumericalError("likelihood maximization failed");
    }
    return best;
}

void TomographyConfig::validate() const {
    if (train_count == 0 || eval_count == 0) {
        throw std::invalid_argument("train and eval counts must be positive");
    }
    if (sample_size < 3) {
        throw std::invalid_argument("sample size must be at least 3");
    }
    noise.validate();
}

InfidelitySummary summarize_infidelity(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("no values to summarize");
    }
    std::sort(values.begin(), values.end());
    InfidelitySummary s;
    double total = 0;
    for (double v : values) {
        total += v;
    }
    s.mean = total / static_cast<double>(values.size());
    s.median = quantile(values, 0.5);
    s.q1 = quantile(values, 0.25);
    s.q3 = quantile(values, 0.75);
    return s;
}

Eigen::VectorXd tomogram_features(const TomogramRecord &record, bool per_outcome) {
    auto f = record.frequencies();
    if (per_outcome) {
        Eigen::VectorXd v(6);
        v << f[0], 1 - f[0], f[1], 1 - f[1], f[2], 1 - f[2];
        return v;
    }
    Eigen::VectorXd v(3);
    v << 2 * f[0] - 1, 2 * f[1] - 1, 2 * f[2] - 1;
    return v;
}

TomographyReport neurotomography_pipeline(const TomographyConfig &config) {
    TomographyConfig cfg = config;
    Rng root(cfg.seed);
    if (cfg.noise.kind == NoiseKind::RandomUnitary && !cfg.noise.axis) {
        Rng axis_rng = root.child(6);
        cfg.noise.axis = sample_bloch_uniform(1, axis_rng)[0].vector();
    }
    cfg.validate();

    TomographyReport report;
    report.noise = cfg.noise;
    const size_t inputs = cfg.per_outcome_inputs ? 6 : 3;

    Rng train_states_rng = root.child(0);
    std::vector<BlochState> train_states = sample_bloch_uniform(cfg.train_count, train_states_rng);
    Eigen::MatrixXd x(inputs, static_cast<Eigen::Index>(cfg.train_count));
    for (size_t i = 0; i < cfg.train_count; ++i) {
        Rng shot_rng = root.child(1).child(i);
        TomogramRecord rec = simulate_measurements(train_states[i], cfg.noise, cfg.sample_size, shot_rng);
        x.col(static_cast<Eigen::Index>(i)) = tomogram_features(rec, cfg.per_outcome_inputs);
    }

    std::vector<size_t> sizes{inputs};
    sizes.insert(sizes.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
    sizes.push_back(3);
    Rng init_rng = root.child(4);
    Mlp net = Mlp::glorot(sizes, init_rng);
    MlpTrainConfig training = cfg.training;
    training.seed = mix_seed(cfg.seed, 5);
    report.training_loss = mlp_train(net, x, bloch_targets(train_states), training).loss_history;

    Rng eval_states_rng = root.child(2);
    std::vector<BlochState> eval_states = sample_bloch_uniform(cfg.eval_count, eval_states_rng);
    std::vector<double> mle_infidelity, network_infidelity;
    for (size_t i = 0; i < cfg.eval_count; ++i) {
        Rng shot_rng = root.child(3).child(i);
        TomogramRecord rec = simulate_measurements(eval_states[i], cfg.noise, cfg.sample_size, shot_rng);
        TomographyExperiment e;
        e.truth = eval_states[i];
        e.mle = mle_reconstruct(rec).state;
        Eigen::MatrixXd out = net.evaluate(tomogram_features(rec, cfg.per_outcome_inputs));
        e.network = BlochState::from_vector({out(0, 0), out(1, 0), out(2, 0)});
        e.mle_fidelity = fidelity(e.truth, e.mle);
        e.network_fidelity = fidelity(e.truth, e.network);
        mle_infidelity.push_back(1 - e.mle_fidelity);
        network_infidelity.push_back(1 - e.network_fidelity);
        report.experiments.push_back(e);
    }
    report.mle = summarize_infidelity(mle_infidelity);
    report.network = summarize_infidelity(network_infidelity);
    return report;
}

}  // namespace qmlkit
