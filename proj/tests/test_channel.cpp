// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "swiptsec/channel.hpp"

using namespace swiptsec;

TEST_CASE("generate_channels is deterministic and well-shaped") {
  const ChannelSet a = generate_channels(4, 3, 2, 7);
  const ChannelSet b = generate_channels(4, 3, 2, 7);
  CHECK(a.h_s.size() == 4);
  CHECK(a.h_e.size() == 3);
  CHECK(a.h_p.size() == 2);
  CHECK(a.sigma_s2 == 1.0);
  CHECK(a.sigma_e2 == 1.0);
  CHECK(a.h_s == b.h_s);
  for (int k = 0; k < 3; ++k) CHECK(a.h_e[k] == b.h_e[k]);
  for (int l = 0; l < 2; ++l) CHECK(a.h_p[l] == b.h_p[l]);

  const ChannelSet c = generate_channels(1, 1, 1, 0);
  CHECK(c.h_s.size() == 1);
  CHECK(c.h_e[0].size() == 1);
}

TEST_CASE("channel entries have unit variance (Monte Carlo)") {
  double acc = 0.0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i)
    acc += generate_channels(4, 1, 1, 1000 + i).h_s.squaredNorm();
  const double mean = acc / trials;
  CHECK(mean == doctest::Approx(4.0).epsilon(0.05 / 4.0));
}

TEST_CASE("secrecy_rate closed-form cases") {
  ChannelSet ch;
  ch.h_s = CVec(2);
  ch.h_s << 1.0, 0.0;
  ch.h_e = {CVec(2)};
  ch.h_e[0] << 0.0, 1.0;
  ch.h_p = {CVec(2)};
  ch.h_p[0] << 1.0, 0.0;

  CVec w(2);
  w << std::sqrt(10.0), 0.0;
  auto sol = BeamformerSolution::from_vector(w);
  CHECK(secrecy_rate(sol, ch) == doctest::Approx(std::log2(11.0)).epsilon(1e-9));

  // eavesdropper equal to the user channel: clamped to zero
  ch.h_e[0] = ch.h_s;
  CHECK(secrecy_rate(sol, ch) == 0.0);
}

TEST_CASE("secrecy_rate matches a term-by-term recomputation") {
  const ChannelSet ch = generate_channels(4, 3, 2, 42);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  CVec w(4);
  for (int i = 0; i < 4; ++i) w(i) = {g(rng), g(rng)};
  const auto sol = BeamformerSolution::from_vector(w);

  const double user =
      std::log2(1.0 + std::norm(std::complex<double>(ch.h_s.adjoint() * w)) /
                          ch.sigma_s2);
  double eve = 0.0;
  for (const auto& he : ch.h_e)
    eve = std::max(
        eve, std::log2(1.0 + std::norm(std::complex<double>(he.adjoint() * w)) /
                                 ch.sigma_e2));
  CHECK(secrecy_rate(sol, ch) ==
        doctest::Approx(std::max(0.0, user - eve)).epsilon(1e-12));
}

TEST_CASE("secrecy_rate is invariant under a global phase") {
  const ChannelSet ch = generate_channels(4, 3, 2, 9);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  CVec w(4);
  for (int i = 0; i < 4; ++i) w(i) = {g(rng), g(rng)};
  const double base = secrecy_rate(BeamformerSolution::from_vector(w), ch);
  for (double theta : {0.3, 1.2, 2.9}) {
    const CVec wr = std::exp(std::complex<double>(0, theta)) * w;
    CHECK(secrecy_rate(BeamformerSolution::from_vector(wr), ch) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("harvested_energy basics and quadratic scaling") {
  ChannelSet ch;
  ch.h_s = CVec(2);
  ch.h_s << 1.0, 0.0;
  ch.h_e = {CVec(2)};
  ch.h_e[0] << 0.0, 1.0;
  ch.h_p = {CVec(2), CVec(2)};
  ch.h_p[0] << 1.0, 0.0;
  ch.h_p[1] << 0.0, 1.0;

  CVec w(2);
  w << std::sqrt(10.0), 0.0;
  auto e = harvested_energy(BeamformerSolution::from_vector(w), ch);
  CHECK(e[0] == doctest::Approx(10.0));
  CHECK(e[1] == doctest::Approx(0.0));

  const auto e2 = harvested_energy(BeamformerSolution::from_vector(2.5 * w), ch);
  CHECK(e2[0] == doctest::Approx(6.25 * e[0]));

  // identity covariance: E_l = ||h_l||^2
  const ChannelSet r = generate_channels(3, 1, 2, 3);
  auto cov = BeamformerSolution::from_covariances(CMat::Identity(3, 3),
                                                  CMat::Zero(3, 3));
  const auto ei = harvested_energy(cov, r);
  for (int l = 0; l < 2; ++l)
    CHECK(ei[l] == doctest::Approx(r.h_p[l].squaredNorm()).epsilon(1e-12));
}

TEST_CASE("covariance metrics agree with the vector case for Q = w w^H") {
  const ChannelSet ch = generate_channels(4, 3, 2, 11);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  CVec w(4);
  for (int i = 0; i < 4; ++i) w(i) = {g(rng), g(rng)};
  const auto vec = BeamformerSolution::from_vector(w);
  const auto cov = BeamformerSolution::from_covariances(
      w * w.adjoint(), CMat::Zero(4, 4));
  CHECK(secrecy_rate(cov, ch) ==
        doctest::Approx(secrecy_rate(vec, ch)).epsilon(1e-10));
  const auto ev = harvested_energy(vec, ch);
  const auto ec = harvested_energy(cov, ch);
  for (size_t l = 0; l < ev.size(); ++l)
    CHECK(ec[l] == doctest::Approx(ev[l]).epsilon(1e-10));
}

TEST_CASE("uncertainty ball sampling stays in the ball and reaches the rim") {
  const ChannelSet ch = generate_channels(4, 3, 2, 77);
  UncertaintyModel um = UncertaintyModel::uniform(ch, 0.05, 0.0);

  SUBCASE("zero radii reproduce the nominal exactly") {
    const UncertaintyModel z = UncertaintyModel::exact(ch);
    const ChannelSet s = sample_uncertainty_ball(z, 123);
    CHECK(s.h_s == ch.h_s);
    for (int k = 0; k < 3; ++k) CHECK(s.h_e[k] == ch.h_e[k]);
  }

  SUBCASE("membership over 1e4 draws, boundary coverage") {
    double max_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const ChannelSet s = sample_uncertainty_ball(um, split_seed(99, i));
      max_err = std::max(max_err, (s.h_s - ch.h_s).norm());
      for (int k = 0; k < 3; ++k)
        max_err = std::max(max_err, (s.h_e[k] - ch.h_e[k]).norm());
      for (int l = 0; l < 2; ++l)
        max_err = std::max(max_err, (s.h_p[l] - ch.h_p[l]).norm());
    }
    CHECK(max_err <= 0.05 + 1e-12);
    CHECK(max_err >= 0.049);
  }

  SUBCASE("boundary draws sit exactly on the sphere") {
    const ChannelSet s = sample_uncertainty_boundary(um, 5);
    CHECK((s.h_s - ch.h_s).norm() == doctest::Approx(0.05).epsilon(1e-12));
  }
}

TEST_CASE("clip_psd repairs tiny negatives and rejects indefinite input") {
  CMat m = CMat::Identity(3, 3);
  m(0, 0) = -5e-9;
  const CMat c = clip_psd(m);
  Eigen::SelfAdjointEigenSolver<CMat> eig(c);
  CHECK(eig.eigenvalues().minCoeff() >= 0.0);
  m(0, 0) = -1e-3;
  CHECK_THROWS_AS(clip_psd(m), std::invalid_argument);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(generate_channels(0, 1, 1, 1), std::invalid_argument);
  ChannelSet ch = generate_channels(2, 1, 1, 1);
  CVec w3(3);
  w3.setZero();
  CHECK_THROWS_AS(secrecy_rate(BeamformerSolution::from_vector(w3), ch),
                  std::invalid_argument);
  ch.sigma_s2 = 0.0;
  CHECK_THROWS_AS(
      harvested_energy(BeamformerSolution::from_vector(CVec::Zero(2)), ch),
      std::invalid_argument);
}
