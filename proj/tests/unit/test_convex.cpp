// Copyright 2026 The gcans Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gcans/convex.hpp"

using namespace gcans;
using namespace gcans::convex;

TEST(QuadraticProblem, IsotropicConstants) {
    const auto p = QuadraticProblem::isotropic(10, 1.0);
    EXPECT_DOUBLE_EQ(p.mu(), 1.0);
    EXPECT_DOUBLE_EQ(p.lipschitz(), 1.0);
    EXPECT_DOUBLE_EQ(p.gap(Eigen::VectorXd::Zero(10)), 0.0);
    EXPECT_DOUBLE_EQ(p.gap(Eigen::VectorXd::Ones(10)), 5.0);
}

TEST(QuadraticProblem, RandomSpdSpectrum) {
    Rng rng(1);
    const auto p = QuadraticProblem::random_spd(8, 0.3, 5.0, 1.0, rng);
    EXPECT_NEAR(p.mu(), 0.3, 1e-10);
    EXPECT_NEAR(p.lipschitz(), 5.0, 1e-10);
    EXPECT_TRUE(p.hessian().isApprox(p.hessian().transpose()));
}

TEST(QuadraticProblem, RejectsIndefinite) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
    a(1, 1) = -1.0;
    EXPECT_THROW(QuadraticProblem(a, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)), std::invalid_argument);
}

TEST(NoisyOracle, VarianceLaw) {
    const auto p = QuadraticProblem::isotropic(3, 2.0);
    const NoisyGradientOracle o(p);
    const Eigen::VectorXd theta = Eigen::VectorXd::Ones(3);
    Eigen::VectorXd shots(3);
    shots << 1.0, 4.0, 0.5;
    Rng rng(2);
    const int n = 100000;
    Eigen::VectorXd s1 = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd s2 = Eigen::VectorXd::Zero(3);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd g = o.sample(theta, shots, rng);
        s1 += g;
        s2 += g.cwiseProduct(g);
    }
    for (int i = 0; i < 3; ++i) {
        const double mean = s1(i) / n;
        const double var = s2(i) / n - mean * mean;
        const double expected = 4.0 / shots(i);
        EXPECT_NEAR(mean, 1.0, 5 * std::sqrt(expected / n));
        EXPECT_NEAR(var / expected, 1.0, 5 * std::sqrt(2.0 / n));
    }
}

TEST(IdealizedShots, Examples) {
    // d=1, sigma=1, ||grad||^2=1, L=1, alpha=1 -> s = 2
    const auto p = QuadraticProblem::isotropic(1, 1.0);
    Eigen::VectorXd theta(1);
    theta << 1.0;
    EXPECT_NEAR(idealized_gcans_shots(p, theta, 1.0)(0), 2.0, 1e-15);
    EXPECT_THROW(idealized_gcans_shots(p, Eigen::VectorXd::Zero(1), 0.5), std::domain_error);
}

TEST(IdealizedShots, HomogeneityAndSymmetry) {
    Rng rng(3);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
    Eigen::VectorXd sigma(4);
    sigma << 0.5, 1.0, 2.0, 0.1;
    const QuadraticProblem p(a, Eigen::VectorXd::Zero(4), sigma);
    const QuadraticProblem scaled(a, Eigen::VectorXd::Zero(4), 3.0 * sigma);
    Eigen::VectorXd theta(4);
    theta << 1, -2, 0.5, 3;
    const auto s = idealized_gcans_shots(p, theta, 0.5);
    const auto st = idealized_gcans_shots(scaled, theta, 0.5);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(st(i) / s(i), 9.0, 1e-12);
    }
    const auto u = idealized_gcans_shots(QuadraticProblem::isotropic(4, 0.7), theta, 0.5);
    for (int i = 1; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(u(i), u(0));
    }
}

TEST(IdealizedShots, NoisePowerIdentity) {
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = QuadraticProblem::random_spd(6, 0.2, 3.0, 0.5 + rng.uniform(), rng);
        Eigen::VectorXd theta(6);
        for (auto &x : theta) {
            x = rng.normal();
        }
        const double alpha = 0.9 / p.lipschitz() * rng.uniform() + 1e-3;
        const double la = p.lipschitz() * alpha;
        const double expected = (2 - la) / (2 * la) * p.gradient(theta).squaredNorm();
        EXPECT_NEAR(idealized_noise_power(p, theta, alpha) / expected, 1.0, 1e-9);
    }
}

TEST(RunIdealized, NoiselessIsotropicRate) {
    const auto p = QuadraticProblem::isotropic(10, 0.0);
    const auto ens = run_idealized_gcans(p, 0.5, 20, 3, Eigen::VectorXd::Ones(10), 1);
    for (std::size_t k = 0; k + 1 < ens.steps(); ++k) {
        EXPECT_NEAR(ens.gaps[0][k + 1] / ens.gaps[0][k], 0.25, 1e-12);
    }
    EXPECT_NEAR(fit_geometric_rate(ens.mean()), 0.25, 1e-6);
}

TEST(RunIdealized, GapsNonNegativeAndRateUnderBound) {
    const auto p = QuadraticProblem::isotropic(10, 1.0);
    const auto ens = run_idealized_gcans(p, 0.5, 60, 1000, Eigen::VectorXd::Ones(10), 7);
    for (const auto &trial : ens.gaps) {
        for (double g : trial) {
            ASSERT_GE(g, 0.0);
        }
    }
    EXPECT_LE(fit_geometric_rate(ens.mean()), 0.75 + 0.03);
    EXPECT_TRUE(check_step_contraction(ens, 0.75).passed);
}

TEST(RunIdealized, RejectsBadLearningRate) {
    const auto p = QuadraticProblem::isotropic(2, 1.0);
    EXPECT_THROW(run_idealized_gcans(p, 1.0, 5, 2, Eigen::VectorXd::Ones(2), 1), std::invalid_argument);
    EXPECT_THROW(run_idealized_gcans(p, 0.0, 5, 2, Eigen::VectorXd::Ones(2), 1), std::invalid_argument);
}

TEST(RunIdealized, ExactOptimumStaysPut) {
    const auto p = QuadraticProblem::isotropic(3, 1.0);
    const auto ens = run_idealized_gcans(p, 0.5, 5, 2, Eigen::VectorXd::Zero(3), 1);
    for (double g : ens.gaps[0]) {
        EXPECT_EQ(g, 0.0);
    }
}

TEST(RunIdealized, DeterministicPerSeed) {
    const auto p = QuadraticProblem::isotropic(4, 1.0);
    const auto a = run_idealized_gcans(p, 0.5, 10, 5, Eigen::VectorXd::Ones(4), 3);
    const auto b = run_idealized_gcans(p, 0.5, 10, 5, Eigen::VectorXd::Ones(4), 3);
    EXPECT_EQ(a.gaps, b.gaps);
}

TEST(RunIdealized, RateBelowOneAndUnderBoundAcrossConfigs) {
    Rng rng(11);
    for (int cfg = 0; cfg < 6; ++cfg) {
        const auto p = QuadraticProblem::random_spd(5, 0.2 + 0.3 * cfg / 5.0, 2.0, 1.0, rng);
        const double alpha = 0.9 / p.lipschitz();
        const auto ens = run_idealized_gcans(p, alpha, 40, 500, Eigen::VectorXd::Constant(5, 2.0), 100 + cfg);
        const double rate = fit_geometric_rate(ens.mean());
        EXPECT_LT(rate, 1.0);
        EXPECT_LE(rate, 1 - alpha * p.mu() / 2 + 0.03);
    }
}

TEST(FitRate, Examples) {
    std::vector<double> g;
    for (int k = 0; k < 30; ++k) {
        g.push_back(3.0 * std::pow(0.25, k));
    }
    EXPECT_NEAR(fit_geometric_rate(g), 0.25, 1e-12);
    EXPECT_NEAR(fit_geometric_rate(std::vector<double>(10, 2.0)), 1.0, 1e-15);
    EXPECT_THROW(fit_geometric_rate(std::vector<double>{0.0, 1.0}), std::domain_error);
}

TEST(PlInequality, IsotropicSaturates) {
    const auto p = QuadraticProblem::isotropic(5, 1.0);
    Rng rng(5);
    std::vector<Eigen::VectorXd> points;
    for (int i = 0; i < 100; ++i) {
        Eigen::VectorXd t(5);
        for (auto &x : t) {
            x = rng.normal();
        }
        points.push_back(t);
    }
    points.push_back(Eigen::VectorXd::Zero(5));
    const auto r = check_pl_inequality(p, points);
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(r.max_ratio, 1.0, 1e-12);
}

TEST(PlInequality, RandomSpd) {
    Rng rng(6);
    const auto p = QuadraticProblem::random_spd(7, 0.1, 10.0, 1.0, rng);
    std::vector<Eigen::VectorXd> points;
    for (int i = 0; i < 1000; ++i) {
        Eigen::VectorXd t(7);
        for (auto &x : t) {
            x = 5 * rng.normal();
        }
        points.push_back(t);
    }
    const auto r = check_pl_inequality(p, points);
    EXPECT_TRUE(r.passed());
    EXPECT_LE(r.max_ratio, 1.0 + 1e-9);
}

TEST(DescentStep, NoiselessAndOptimum) {
    const auto p = QuadraticProblem::isotropic(3, 0.0);
    Rng rng(7);
    const auto r = check_descent_step(p, Eigen::VectorXd::Ones(3), 1.0 / p.lipschitz() * 0.99, 10, rng);
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.mean_change, r.bound);
    const auto q = QuadraticProblem::isotropic(3, 1.0);
    EXPECT_TRUE(check_descent_step(q, Eigen::VectorXd::Zero(3), 0.5, 10, rng).passed);
}

TEST(DescentStep, IsotropicMonteCarlo) {
    const auto p = QuadraticProblem::isotropic(10, 1.0);
    Rng rng(8);
    const auto r = check_descent_step(p, Eigen::VectorXd::Ones(10), 0.5, 10000, rng);
    EXPECT_TRUE(r.passed) << r.mean_change << " vs " << r.bound << " se " << r.standard_error;
}
