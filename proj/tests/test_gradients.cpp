// Copyright 2026 The QNGLab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qnglab/gradients.hpp"
#include "support/oracles.hpp"

using namespace qnglab;
using namespace qnglab::gates;
using Catch::Approx;

namespace {

Objective ry_z(LossConvention conv = LossConvention::Plain) {
    const std::vector<Gate> g{ry(0, 0)};
    return Objective(layerize(g, 1), PauliWord::parse("Z0"), conv);
}

} // namespace

TEST_CASE("loss conventions", "[gradients]") {
    const std::vector<Gate> g{ry(0, 0), ry(1, 1)};
    const Objective plain(layerize(g, 2), PauliWord::parse("Z0 Z1"));
    const Objective half(layerize(g, 2), PauliWord::parse("Z0 Z1"), LossConvention::Half);
    Estimator est(ShotBudget::analytic());

    CHECK(loss(plain, std::vector<double>{0.0, 0.0}, est) == 1.0);
    CHECK(est.evaluations() == 1);
    // |10> is a ground state of Z0 Z1
    CHECK(loss(plain, std::vector<double>{std::numbers::pi, 0.0}, est) == Approx(-1.0));

    std::mt19937_64 rng(41);
    for (int t = 0; t < 10; ++t) {
        const auto p = oracle::random_params(rng, 2);
        CHECK(loss(half, p, est) == 0.5 * loss(plain, p, est));
    }
    CHECK(to_string(LossConvention::Half) == "half");
    CHECK(loss_convention_from_string("plain") == LossConvention::Plain);
    CHECK_THROWS_AS(loss_convention_from_string("quarter"), std::invalid_argument);
}

TEST_CASE("benchmark observable on a ground state", "[gradients]") {
    const StateVector s(7, Eigen::VectorXcd::Unit(128, 1));
    CHECK(pauli_expectation(s, build_benchmark_circuit(7, 5, 0).observable) == -1.0);
}

TEST_CASE("parameter shift on one qubit", "[gradients]") {
    Estimator est(ShotBudget::analytic());
    const Objective obj = ry_z();
    CHECK(std::abs(parameter_shift_gradient(obj, std::vector<double>{0.0}, est).values[0]) < 1e-15);
    CHECK(parameter_shift_gradient(obj, std::vector<double>{std::numbers::pi / 2}, est).values[0] ==
          Approx(-1.0).margin(1e-15));
    for (double theta : {0.3, 2.0, -1.0})
        CHECK(parameter_shift_gradient(obj, std::vector<double>{theta}, est).values[0] ==
              Approx(-std::sin(theta)).margin(1e-14));
    CHECK(parameter_shift_gradient(ry_z(LossConvention::Half), std::vector<double>{1.0}, est).values[0] ==
          Approx(-0.5 * std::sin(1.0)).margin(1e-14));

    const auto fd = finite_difference_gradient(obj, std::vector<double>{std::numbers::pi / 2}, 1e-4);
    CHECK(std::abs(fd.values[0] + 1.0) <= 1e-8);
    CHECK(fd.quantum_evals_used == 2);
    CHECK_THROWS_AS(finite_difference_gradient(obj, std::vector<double>{0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(finite_difference_gradient(obj, std::vector<double>{0.0}, -1e-3), std::invalid_argument);
}

TEST_CASE("identity observable has zero gradient", "[gradients]") {
    std::mt19937_64 rng(42);
    const Circuit c = oracle::random_circuit(rng, 3, 2);
    const Objective obj(c, PauliWord::parse("2.5*I"));
    const auto p = oracle::random_params(rng, c.param_count());
    // only roundoff in the state norm survives
    for (double v : finite_difference_gradient(obj, p, 1e-4).values) CHECK(std::abs(v) <= 1e-10);
    Estimator est(ShotBudget::analytic());
    for (double v : parameter_shift_gradient(obj, p, est).values) CHECK(std::abs(v) <= 1e-13);
}

TEST_CASE("shift rule matches finite differences", "[gradients][property]") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + t % 4;
        const Circuit c = oracle::random_circuit(rng, n, 1 + t % 3);
        const PauliWord w = oracle::random_word(rng, n);
        const Objective obj(c, w);
        const auto p = oracle::random_params(rng, c.param_count());
        Estimator est(ShotBudget::analytic());
        const auto ps = parameter_shift_gradient(obj, p, est);
        CHECK(ps.quantum_evals_used == 2 * c.param_count());
        CHECK(est.evaluations() == 2 * c.param_count());

        const auto oracle_grad = oracle::fd_gradient(c, p, oracle::word_matrix(w, n));
        for (double h : {1e-3, 1e-4}) {
            const auto fd = finite_difference_gradient(obj, p, h);
            for (std::size_t i = 0; i < p.size(); ++i) {
                CHECK(std::abs(ps.values[i] - fd.values[i]) <= 10 * h * h);
                CHECK(std::abs(ps.values[i] - oracle_grad[i]) <= 1e-7);
            }
        }
    }
}

TEST_CASE("Richardson order of finite differences", "[gradients]") {
    std::mt19937_64 rng(44);
    const Circuit c = oracle::random_circuit(rng, 3, 3);
    const Objective obj(c, PauliWord::parse("X0 Z2"));
    const auto p = oracle::random_params(rng, c.param_count());
    Estimator est(ShotBudget::analytic());
    const auto exact = parameter_shift_gradient(obj, p, est).values;
    const auto coarse = finite_difference_gradient(obj, p, 1e-2).values;
    const auto fine = finite_difference_gradient(obj, p, 5e-3).values;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e1 = std::abs(coarse[i] - exact[i]);
        const double e2 = std::abs(fine[i] - exact[i]);
        if (e1 > 1e-9) CHECK(e2 / e1 == Approx(0.25).margin(0.02));
    }
}

TEST_CASE("stationary at a ground state", "[gradients]") {
    const std::vector<Gate> g{ry(0, 0), ry(1, 1), cz(0, 1), rx(0, 2), rx(1, 3)};
    const Objective obj(layerize(g, 2), PauliWord::parse("Z0 Z1"));
    const std::vector<double> p{std::numbers::pi, 0.0, 0.0, 0.0};
    Estimator est(ShotBudget::analytic());
    CHECK(exact_energy(obj, p) == Approx(-1.0));
    CHECK(parameter_shift_gradient(obj, p, est).norm() <= 1e-6);
}

TEST_CASE("Pauli-sum observables are grouped", "[gradients]") {
    std::mt19937_64 rng(45);
    const Circuit c = oracle::random_circuit(rng, 3, 2);
    const std::vector<PauliWord> h{PauliWord::parse("Z0 Z1"), PauliWord::parse("0.5*Z1 Z2"),
                                   PauliWord::parse("-0.3*X0"), PauliWord::parse("0.2*X0 X2")};
    const Objective obj(c, h);
    CHECK(obj.measurement_groups().size() == 2);
    const auto p = oracle::random_params(rng, c.param_count());
    Estimator est(ShotBudget::analytic());
    CHECK(estimate_energy(obj, p, est) == Approx(exact_energy(obj, p)).margin(1e-12));
    CHECK(est.evaluations() == 2);
    const auto grad = parameter_shift_gradient(obj, p, est);
    CHECK(grad.quantum_evals_used == 4 * c.param_count());
    const auto fd = oracle::fd_gradient(c, p, to_matrix(h, 3));
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(grad.values[i] - fd[i]) <= 1e-7);
}

TEST_CASE("sampled gradients", "[gradients]") {
    const auto bp = build_benchmark_circuit(4, 2, 3);
    const Objective obj(bp.circuit, bp.observable);
    std::mt19937_64 rng(46);
    const auto p = oracle::random_params(rng, 8);
    Estimator exact(ShotBudget::analytic());
    const auto ref = parameter_shift_gradient(obj, p, exact);

    Estimator a(ShotBudget::sampled(8192, 1));
    Estimator b(ShotBudget::sampled(8192, 1));
    const auto ga = parameter_shift_gradient(obj, p, a);
    CHECK(ga.values == parameter_shift_gradient(obj, p, b).values);
    CHECK(ga.quantum_evals_used == 16);
    // each component is half a difference of two +-1 averages
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(ga.values[i] - ref.values[i]) < 4 * std::sqrt(0.5 / 8192) + 1e-12);
}
