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
#include <limits>
#include <numbers>
#include <random>

#include "qnglab/optimizers.hpp"
#include "support/scenarios.hpp"

using namespace qnglab;
using namespace qnglab::gates;
using Catch::Approx;

namespace {

OptimizerConfig qng(MetricMode mode, double eta = 0.01) {
    OptimizerConfig c;
    c.kind = OptimizerKind::Qng;
    c.metric_mode = mode;
    c.eta = eta;
    return c;
}

MetricTensor diag_metric(std::vector<double> d) {
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    return MetricTensor::full(v.asDiagonal());
}

} // namespace

TEST_CASE("gradient descent steps", "[optimizers]") {
    OptimizerState s = OptimizerState::initial({0.5, -0.2});
    auto r = gd_step(s, std::vector<double>{0.0, 0.0}, 0.01);
    CHECK(s.params == std::vector<double>{0.5, -0.2});
    CHECK(r.update == std::vector<double>{0.0, 0.0});

    OptimizerState one = OptimizerState::initial({0.0});
    CHECK(gd_step(one, std::vector<double>{0.1}, 0.01).update[0] == Approx(-0.001));
    OptimizerState two = OptimizerState::initial({1.0});
    (void)gd_step(two, std::vector<double>{0.3}, 0.01);
    (void)gd_step(two, std::vector<double>{0.3}, 0.01);
    CHECK(two.params[0] - 1.0 == Approx(-2 * 0.01 * 0.3));
    CHECK(two.iteration == 2);
    CHECK_THROWS_AS(gd_step(two, std::vector<double>{0.1, 0.2}, 0.01), std::invalid_argument);
}

TEST_CASE("metric solve", "[optimizers]") {
    CHECK(metric_solve(diag_metric({0.25}), std::vector<double>{-0.001}, Regularization{}).x[0] ==
          Approx(-0.004));

    const auto zero = metric_solve(diag_metric({0.0}), std::vector<double>{0.7}, Regularization{});
    CHECK(zero.x[0] == 0.0);
    CHECK(zero.diagnostics.rank == 0);

    const auto quarter = metric_solve(diag_metric({0.25, 0.25}), std::vector<double>{0.1, -0.3}, Regularization{});
    CHECK(quarter.x[0] == Approx(0.4));
    CHECK(quarter.x[1] == Approx(-1.2));

    // rank-deficient block: minimal-norm solution
    Eigen::Matrix2d g{{1.0, 1.0}, {1.0, 1.0}};
    const auto md = metric_solve(MetricTensor::full(g), std::vector<double>{2.0, 0.0}, Regularization{});
    CHECK(md.x[0] == Approx(0.5));
    CHECK(md.x[1] == Approx(0.5));
    CHECK(md.diagnostics.rank == 1);
    CHECK(md.diagnostics.max_retained == Approx(2.0));

    const auto tk = metric_solve(MetricTensor::full(g), std::vector<double>{1.0, 1.0}, Regularization::tikhonov(1.0));
    CHECK(tk.x[0] == Approx(1.0 / 3.0));

    Eigen::Matrix2d asym{{1.0, 0.5}, {0.0, 1.0}};
    CHECK_THROWS_AS(metric_solve(MetricTensor::full(asym), std::vector<double>{1.0, 1.0}, Regularization{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(metric_solve(diag_metric({1.0}), std::vector<double>{std::nan("")}, Regularization{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(metric_solve(diag_metric({1.0}), std::vector<double>{1.0, 2.0}, Regularization{}),
                    std::invalid_argument);
}

TEST_CASE("metric solve agrees with a dense pseudo-inverse", "[optimizers]") {
    std::mt19937_64 rng(51);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 20; ++t) {
        const Eigen::Index d = 2 + t % 5;
        const Eigen::Index r = 1 + t % d;
        Eigen::MatrixXd b(d, r);
        for (auto &v : b.reshaped()) v = gauss(rng);
        const Eigen::MatrixXd g = b * b.transpose();
        Eigen::VectorXd rhs(d);
        for (auto &v : rhs) v = gauss(rng);
        const Eigen::MatrixXd pinv = g.completeOrthogonalDecomposition().pseudoInverse();
        const auto x = metric_solve(MetricTensor::full(g), std::vector<double>(rhs.data(), rhs.data() + d),
                                    Regularization::pseudo_inverse(1e-10));
        CHECK((Eigen::Map<const Eigen::VectorXd>(x.x.data(), d) - pinv * rhs).norm() <= 1e-8 * (1 + (pinv * rhs).norm()));
        CHECK(x.diagnostics.rank == static_cast<std::size_t>(r));
    }
}

TEST_CASE("QNG steps", "[optimizers]") {
    SECTION("identity metric reproduces gradient descent bitwise") {
        std::mt19937_64 rng(52);
        std::normal_distribution<double> gauss;
        std::vector<double> p(7);
        std::vector<double> grad(7);
        for (auto &v : p) v = gauss(rng);
        for (auto &v : grad) v = gauss(rng);
        OptimizerState a = OptimizerState::initial(p);
        OptimizerState b = OptimizerState::initial(p);
        const auto cfg = qng(MetricMode::Full, 0.037);
        CHECK(qng_step(a, grad, MetricTensor::identity(7), cfg).update == gd_step(b, grad, 0.037).update);
        CHECK(a.params == b.params);
    }
    SECTION("quarter identity scales the step by four") {
        OptimizerState a = OptimizerState::initial({0.0, 0.0});
        const auto r = qng_step(a, std::vector<double>{0.2, -0.1}, diag_metric({0.25, 0.25}), qng(MetricMode::Full));
        CHECK(r.update[0] == Approx(-4 * 0.01 * 0.2));
        CHECK(r.update[1] == Approx(4 * 0.01 * 0.1));
        REQUIRE(r.diagnostics);
        CHECK(r.diagnostics->rank == 2);
    }
    SECTION("one-qubit RY with Z") {
        const std::vector<Gate> g{ry(0, 0)};
        const Objective obj(layerize(g, 1), PauliWord::parse("Z0"));
        Estimator est(ShotBudget::analytic());
        for (double theta : {0.4, 1.2, 2.8}) {
            const std::vector<double> p{theta};
            const auto grad = parameter_shift_gradient(obj, p, est);
            const MetricTensor m = qgt_block_diagonal(obj.circuit, p, est);
            CHECK(m.entries(0, 0) == Approx(0.25));
            OptimizerState s = OptimizerState::initial(p);
            CHECK(qng_step(s, grad.values, m, qng(MetricMode::BlockDiagonal)).update[0] ==
                  Approx(0.01 * 4 * std::sin(theta)));
        }
    }
}

TEST_CASE("Adam", "[optimizers]") {
    OptimizerConfig cfg;
    cfg.kind = OptimizerKind::Adam;
    cfg.eta = 0.01;
    {
        OptimizerState s = OptimizerState::initial({0.0, 0.0, 0.0});
        const auto r = adam_step(s, std::vector<double>{3.0, -1e-3, 0.5}, cfg);
        CHECK(r.update[0] == Approx(-0.01).epsilon(1e-6));
        CHECK(r.update[1] == Approx(0.01).epsilon(1e-4));
        CHECK(r.update[2] == Approx(-0.01).epsilon(1e-6));
    }
    {
        OptimizerState s = OptimizerState::initial({0.3});
        for (int k = 0; k < 5; ++k) (void)adam_step(s, std::vector<double>{0.0}, cfg);
        CHECK(s.params[0] == 0.3);
    }
    {
        // second step by hand
        OptimizerState s = OptimizerState::initial({0.0});
        (void)adam_step(s, std::vector<double>{1.0}, cfg);
        const auto r = adam_step(s, std::vector<double>{2.0}, cfg);
        const double m = (0.9 * 0.1 + 0.1 * 2.0) / (1 - 0.81);
        const double v = (0.999 * 0.001 + 0.001 * 4.0) / (1 - 0.998001);
        CHECK(r.update[0] == Approx(-0.01 * m / (std::sqrt(v) + 1e-8)));
    }
    {
        std::vector<std::vector<double>> grads{{0.3, -0.1}, {0.2, 0.4}, {-0.5, 0.05}};
        OptimizerState a = OptimizerState::initial({1.0, 2.0});
        OptimizerState b = OptimizerState::initial({1.0, 2.0});
        OptimizerConfig nat = cfg;
        nat.kind = OptimizerKind::NaturalAdam;
        for (const auto &gr : grads) {
            (void)adam_step(a, gr, cfg);
            (void)natural_adam_step(b, gr, MetricTensor::identity(2), nat);
        }
        CHECK(a.params == b.params);
    }
    {
        OptimizerState s = OptimizerState::initial({0.0, 0.0});
        OptimizerConfig nat = cfg;
        nat.kind = OptimizerKind::NaturalAdam;
        const auto r = natural_adam_step(s, std::vector<double>{0.3, 0.8}, diag_metric({0.25, 0.0}), nat);
        CHECK(r.update[1] == 0.0);
        CHECK(r.update[0] == Approx(-0.01).epsilon(1e-6));
    }
}

TEST_CASE("optimizer config validation", "[optimizers]") {
    OptimizerConfig c;
    c.eta = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.eta = 0.01;
    c.adam.beta1 = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.adam.beta1 = 0.9;
    c.regularization = Regularization::tikhonov(-1.0);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(optimizer_kind_from_string("natural-adam") == OptimizerKind::NaturalAdam);
    CHECK(to_string(OptimizerKind::GradientDescent) == "gd");
    CHECK_THROWS_AS(optimizer_kind_from_string("sgd"), std::invalid_argument);
}

TEST_CASE("run_optimization bookkeeping", "[optimizers]") {
    const auto bp = build_benchmark_circuit(7, 5, 0);
    const Objective obj(bp.circuit, bp.observable);
    std::mt19937_64 rng(53);
    const auto init = oracle::random_params(rng, 35);
    RunOptions opts;
    opts.max_iters = 4;

    for (auto mode : {MetricMode::BlockDiagonal, MetricMode::Diagonal}) {
        Estimator est(ShotBudget::analytic());
        const auto cfg = qng(mode);
        CHECK(evaluations_per_step(obj, cfg) == 75);
        const auto rows = run_optimization(obj, init, cfg, est, opts);
        REQUIRE(rows.size() == 5);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            CHECK(rows[t].iteration == t);
            CHECK(rows[t].qevals_cum == 75 * t);
        }
        CHECK(est.evaluations() == 4 * 75);
    }
    {
        OptimizerConfig gd;
        gd.kind = OptimizerKind::GradientDescent;
        CHECK(evaluations_per_step(obj, gd) == 70);
        CHECK(evaluations_per_step(obj, qng(MetricMode::Full)) == 70);
    }
    {
        RunOptions none;
        none.max_iters = 0;
        Estimator est(ShotBudget::analytic());
        const auto rows = run_optimization(obj, init, qng(MetricMode::Diagonal), est, none);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].energy == exact_energy(obj, init));
        CHECK(rows[0].qevals_cum == 0);
        CHECK(est.evaluations() == 0);
    }
    {
        RunOptions det;
        det.max_iters = 5;
        det.record_wall_time = false;
        Estimator a(ShotBudget::sampled(1024, 7));
        Estimator b(ShotBudget::sampled(1024, 7));
        const auto ra = run_optimization(obj, init, qng(MetricMode::BlockDiagonal), a, det);
        const auto rb = run_optimization(obj, init, qng(MetricMode::BlockDiagonal), b, det);
        REQUIRE(ra.size() == rb.size());
        for (std::size_t t = 0; t < ra.size(); ++t) {
            CHECK(ra[t].energy == rb[t].energy);
            CHECK(ra[t].grad_norm == rb[t].grad_norm);
            CHECK(ra[t].wall_ms == 0.0);
        }
    }
    {
        auto bad = init;
        bad[3] = std::numeric_limits<double>::quiet_NaN();
        Estimator est(ShotBudget::analytic());
        const auto rows = run_optimization(obj, bad, qng(MetricMode::Diagonal), est, opts);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].aborted);
    }
}

TEST_CASE("small QNG steps decrease the loss", "[optimizers][property]") {
    RunOptions opts;
    opts.max_iters = 50;
    opts.record_wall_time = false;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto bp = build_benchmark_circuit(4, 3, seed);
        const Objective obj(bp.circuit, bp.observable);
        Estimator est(ShotBudget::analytic());
        const auto rows = run_optimization(obj, initial_parameters(12, seed), qng(MetricMode::BlockDiagonal, 1e-3), est, opts);
        for (std::size_t t = 1; t < rows.size(); ++t) CHECK(rows[t].loss <= rows[t - 1].loss + 1e-9);
    }
}

TEST_CASE("QNG follows imaginary time", "[optimizers][property]") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const double coarse = scenario::imaginary_time_deviation(seed);
        CHECK(coarse <= 1e-3);
        // first-order integrator: halving the step halves the deviation
        CHECK(scenario::imaginary_time_deviation(seed, 5e-4) / coarse == Approx(0.5).epsilon(0.05));
    }
}

TEST_CASE("QNG updates transform under linear reparametrization", "[optimizers][property]") {
    std::mt19937_64 rng(54);
    for (int t = 0; t < 10; ++t) {
        const auto out = scenario::reparametrization_instance(rng);
        CHECK(out.condition <= 10.0 + 1e-9);
        CHECK(out.error <= 1e-8);
    }
}
