// Copyright 2026 The qdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdyn/dynmap.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qdyn/errors.hpp"
#include "qdyn/qubitpair.hpp"
#include "qdyn/scenarios.hpp"
#include "qdyn/serialize.hpp"
#include "test_util.hpp"

namespace qdyn {
namespace {

using qubitpair::InitParams;
using testing::max_abs_diff;
using testing::max_abs_diff_seq;

constexpr double kPi = std::numbers::pi;

// Straight transcription of 𝒜_{αβ} = Tr[A (T_α^† ⊗ T_β^T)] as a double loop
// over the n^4 entries, kept separate from the library implementation.
ComplexMatrix coefficient_matrix_loop(const AMap& a, const std::vector<ComplexMatrix>& basis) {
  const std::size_t n = a.dim();
  const std::size_t m = n * n;
  ComplexMatrix out(m, m);
  for (std::size_t al = 0; al < m; ++al) {
    for (std::size_t be = 0; be < m; ++be) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          // (T_α^† ⊗ T_β^T)_{j,i} with j = (p, q), i = (r, s).
          const std::size_t p = j / n, q = j % n, r = i / n, s = i % n;
          const Complex k = std::conj(basis[al](r, p)) * basis[be](s, q);
          acc += a.matrix()(i, j) * k;
        }
      }
      out(al, be) = acc;
    }
  }
  return out;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::vector<scenarios::ScenarioSpec> all_scenarios() {
  const double s = 1.0 / std::sqrt(6.0);
  return {scenarios::ScenarioSpec::pure(0.7), scenarios::ScenarioSpec::werner(0.25),
          scenarios::ScenarioSpec::separable(s, s, s, s)};
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_NO_THROW(DensityMatrix(ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}));
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}), NotAState);
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), NotAState);
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{0.5, 0.3}, {0.0, 0.5}}), NotAState);
  EXPECT_EQ(DensityMatrix::maximally_mixed(2).matrix(), ComplexMatrix::identity(2) * Complex(0.5));
}

TEST(AMap, IdentityIsValid) {
  const AMap id = AMap::identity(2);
  EXPECT_EQ(id.matrix(), ComplexMatrix::identity(4));
  EXPECT_EQ(id.hermiticity_preservation_defect(), 0.0);
  EXPECT_EQ(id.trace_preservation_defect(), 0.0);
}

TEST(AMap, RejectsInvalidMaps) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m(0, 0) = 2.0;
  EXPECT_THROW(AMap(2, m), InvalidMap);
  ComplexMatrix h = ComplexMatrix::identity(4);
  h(1, 0) = kI;  // breaks A_{s'r';sr} = conj(A_{r's';rs})
  EXPECT_THROW(AMap(2, h), InvalidMap);
  EXPECT_THROW(AMap(2, ComplexMatrix::identity(3)), DimensionMismatch);
  EXPECT_NO_THROW(AMap::unchecked(2, m));
}

TEST(Basis, PauliAndMatrixUnitAreOrthonormal) {
  EXPECT_NO_THROW(require_orthonormal_basis(pauli_basis(), 2));
  EXPECT_NO_THROW(require_orthonormal_basis(matrix_unit_basis(3), 3));
  auto bad = pauli_basis();
  bad[1] = bad[1] * Complex(2.0);
  EXPECT_THROW(require_orthonormal_basis(bad, 2), BasisNotOrthonormal);
  bad.pop_back();
  EXPECT_THROW(coefficient_matrix(AMap::identity(2), bad), DimensionMismatch);
}

TEST(Flatten, RowMajor) {
  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  const auto v = flatten(m);
  EXPECT_EQ(v, (std::vector<Complex>{1.0, 2.0, 3.0, 4.0}));
  EXPECT_EQ(unflatten(v, 2), m);
}

TEST(CoefficientMatrix, IdentityMap) {
  const double d[] = {2.0, 0.0, 0.0, 0.0};
  EXPECT_LT(max_abs_diff(coefficient_matrix(AMap::identity(2), pauli_basis()), ComplexMatrix::diagonal(d)),
            1e-15);
}

TEST(CoefficientMatrix, QubitMapMatchesClosedForm) {
  for (double t : {0.3, 1.2, 2.5, 4.0}) {
    const auto p = InitParams::direct(-0.4, 0.55);
    const ComplexMatrix general = coefficient_matrix(qubitpair::qubit_amap(p, t), pauli_basis());
    EXPECT_LT(max_abs_diff(general, qubitpair::coefficient_matrix_closed(p, t)), 1e-12);
  }
}

TEST(CoefficientMatrix, RandomMapsAgreeWithLoopAndAreHermitian) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {2u, 3u}) {
    const auto basis = default_basis(n);
    for (int trial = 0; trial < 10; ++trial) {
      const AMap a = testing::random_valid_amap(rng, n);
      const ComplexMatrix cm = coefficient_matrix(a, basis);
      EXPECT_LT(max_abs_diff(cm, coefficient_matrix_loop(a, basis)), 1e-12);
      EXPECT_LT(max_abs_diff(cm, cm.adjoint()), 1e-12);
    }
  }
}

TEST(CanonicalDecompose, IdentityMap) {
  const auto d = canonical_decompose(AMap::identity(2));
  EXPECT_EQ(d.classification, Classification::CP);
  EXPECT_EQ(d.negativity, 0.0);
  ASSERT_EQ(d.eigenvalues.size(), 4u);
  EXPECT_NEAR(d.eigenvalues[0], 2.0, 1e-15);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(d.eigenvalues[k], 0.0, 1e-15);
  const ComplexMatrix expected = ComplexMatrix::identity(2) * Complex(1.0 / std::sqrt(2.0));
  EXPECT_LT(max_abs_diff(d.operators[0], expected), 1e-15);
}

TEST(CanonicalDecompose, QubitMapIsNcpAtQuarterPeriod) {
  const auto d = canonical_decompose(qubitpair::qubit_amap(InitParams::direct(0.0, 2.0 / 3.0), kPi / 2));
  EXPECT_EQ(d.classification, Classification::NCP);
  EXPECT_NEAR(d.eigenvalues[0], 1.10093, 1e-5);
  EXPECT_NEAR(d.eigenvalues[1], 1.10093, 1e-5);
  EXPECT_NEAR(d.eigenvalues[2], -0.10093, 1e-5);
  EXPECT_NEAR(d.eigenvalues[3], -0.10093, 1e-5);
  EXPECT_NEAR(d.negativity, 2.0 * 0.5 * (std::sqrt(13.0) / 3.0 - 1.0), 1e-12);
}

TEST(CanonicalDecompose, IdentityAtZeroTimeForAnyParams) {
  for (double a2 : {0.0, 0.3, 1.0}) {
    const auto d = canonical_decompose(qubitpair::qubit_amap(InitParams::direct(0.2, a2), 0.0));
    EXPECT_EQ(d.classification, Classification::CP);
    EXPECT_LT(max_abs_diff_seq(d.eigenvalues, std::vector<double>{2, 0, 0, 0}), 1e-15);
  }
}

TEST(CanonicalDecompose, StructuralInvariantsOnRandomMaps) {
  std::mt19937_64 rng(23);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const AMap a = testing::random_valid_amap(rng, n);
      const auto d = canonical_decompose(a);
      ASSERT_EQ(d.operators.size(), n * n);
      for (std::size_t mu = 0; mu < n * n; ++mu) {
        for (std::size_t nu = 0; nu < n * n; ++nu) {
          const Complex ip = hs_inner(d.operators[mu], d.operators[nu]);
          EXPECT_LT(std::abs(ip - (mu == nu ? 1.0 : 0.0)), 1e-10);
        }
      }
      EXPECT_LT(frobenius_distance(reconstruct_amap(d), a.matrix()), 1e-10);
      EXPECT_LT(frobenius_distance(trace_identity(d), ComplexMatrix::identity(n)), 1e-10);
      const double lmin = d.eigenvalues.back();
      EXPECT_EQ(d.classification == Classification::NCP, lmin < -kCpThreshold);
    }
  }
}

TEST(CanonicalDecompose, BasisIndependence) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const AMap a = testing::random_valid_amap(rng, 2);
    const auto pauli = canonical_decompose(a, pauli_basis());
    const auto units = canonical_decompose(a, matrix_unit_basis(2));
    EXPECT_LT(max_abs_diff_seq(pauli.eigenvalues, units.eigenvalues), 1e-10);
  }
}

TEST(Classify, Threshold) {
  EXPECT_EQ(classify(std::vector<double>{1.0, -1e-11}), Classification::CP);
  EXPECT_EQ(classify(std::vector<double>{1.0, -1e-9}), Classification::NCP);
  EXPECT_EQ(to_string(Classification::CP), "CP");
  EXPECT_EQ(to_string(Classification::NCP), "NCP");
}

TEST(Realign, IdentityGivesScaledEntangledProjector) {
  const BMatrix b = realign_to_b(AMap::identity(2));
  ComplexMatrix expected(4, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t s = 0; s < 2; ++s) expected(3 * r, 3 * s) = 1.0;
  EXPECT_EQ(b.matrix, expected);
  EXPECT_LT(max_abs_diff_seq(eigvals_hermitian(b.matrix), std::vector<double>{2, 0, 0, 0}), 1e-15);
}

TEST(Realign, IndexPermutationAndInvolution) {
  std::mt19937_64 rng(31);
  const ComplexMatrix m = testing::random_complex(rng, 9, 9);
  const ComplexMatrix b = realign(m, 3);
  for (std::size_t rp = 0; rp < 3; ++rp)
    for (std::size_t sp = 0; sp < 3; ++sp)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 3; ++s)
          EXPECT_EQ(b(3 * rp + r, 3 * sp + s), m(3 * rp + sp, 3 * r + s));
  EXPECT_EQ(realign(b, 3), m);
}

TEST(Realign, SpectrumEqualsCoefficientSpectrum) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const AMap a = testing::random_valid_amap(rng, trial % 2 == 0 ? 2 : 3);
    const BMatrix b = realign_to_b(a);
    EXPECT_LT(hermiticity_defect(b.matrix), 1e-10);
    const auto lb = sorted_desc(eigvals_hermitian(b.matrix));
    const auto la = sorted_desc(eigvals_hermitian(coefficient_matrix(a, default_basis(a.dim()))));
    EXPECT_LT(max_abs_diff_seq(la, lb), 1e-10);
  }
}

TEST(ApplyMap, IdentityLeavesStatesUnchanged) {
  std::mt19937_64 rng(41);
  const auto rho = testing::random_density(rng, 3);
  const auto out = apply_map(AMap::identity(3), rho);
  EXPECT_FALSE(out.positivity_violation);
  EXPECT_LT(max_abs_diff(out.matrix, rho.matrix()), 1e-15);
}

TEST(ApplyMap, PureScenarioInitialStateAtPhiZero) {
  const DensityMatrix rho0(ComplexMatrix{{1.0, 1.0}, {1.0, 2.0}} * Complex(1.0 / 3.0));
  const auto a = qubitpair::qubit_amap(InitParams::direct(0.0, 2.0 / 3.0), 1.1);
  const double c = std::cos(1.1), s = std::sin(1.1);
  const ComplexMatrix expected =
      ComplexMatrix{{1.0, Complex(c, -s)}, {Complex(c, s), 2.0}} * Complex(1.0 / 3.0);
  EXPECT_LT(max_abs_diff(apply_map(a, rho0).matrix, expected), 1e-15);
  EXPECT_LT(max_abs_diff(apply_canonical(canonical_decompose(a), rho0).matrix, expected), 1e-12);
}

TEST(ApplyMap, CanonicalAgreesWithDirectOnRandomMaps) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const AMap a = testing::random_valid_amap(rng, 2);
    const auto rho = testing::random_density(rng, 2);
    const auto direct = apply_map(a, rho);
    const auto canon = apply_canonical(canonical_decompose(a), rho);
    EXPECT_LT(max_abs_diff(direct.matrix, canon.matrix), 1e-10);
    EXPECT_LT(hermiticity_defect(direct.matrix), 1e-12);
    EXPECT_LT(std::abs(direct.matrix.trace() - 1.0), 1e-12);
  }
}

TEST(ApplyMap, WernerQuarterPeriodCanonicalPath) {
  // x = 0.5 at omega t = pi/2: i (1 - x) / 2 = i / 4 off the diagonal.
  const auto spec = scenarios::ScenarioSpec::werner(0.5);
  const auto a = qubitpair::qubit_amap(scenarios::params_closed(spec), kPi / 2);
  const auto out = apply_canonical(canonical_decompose(a), DensityMatrix::maximally_mixed(2));
  const ComplexMatrix expected{{0.5, 0.25 * kI}, {-0.25 * kI, 0.5}};
  EXPECT_LT(max_abs_diff(out.matrix, expected), 1e-12);
}

TEST(ApplyMap, FlagsPositivityViolationWithoutRejecting) {
  // a = 1 at omega t = pi/2 pushed onto |1><1| leaves the Bloch ball.
  const auto a = qubitpair::qubit_amap(InitParams::direct(1.0, 1.0), kPi / 2);
  const DensityMatrix one(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}});
  const auto out = apply_map(a, one);
  EXPECT_TRUE(out.positivity_violation);
  EXPECT_LT(out.min_eigenvalue, -1e-10);
  EXPECT_THROW(out.state(), NotAState);
  const auto canon = apply_canonical(canonical_decompose(a), one);
  EXPECT_TRUE(canon.positivity_violation);
}

TEST(ApplyMap, DimensionMismatch) {
  EXPECT_THROW(apply_map(AMap::identity(2), DensityMatrix::maximally_mixed(3)), DimensionMismatch);
}

TEST(Semigroup, ConstantIdentityFamily) {
  const MapFamily id = [](double) { return AMap::identity(2); };
  EXPECT_EQ(check_semigroup(id, 0.4, 1.3), 0.0);
}

TEST(Semigroup, QubitMapViolatesAtThirdPeriod) {
  const auto family = qubitpair::qubit_amap_family(InitParams::direct(0.0, 0.0));
  const double dev = check_semigroup(family, kPi / 3, kPi / 3);
  // With a = 0 only C enters: |cos(2pi/3) - cos^2(pi/3)| = 3/4 on two entries.
  EXPECT_NEAR(dev, 0.75 * std::sqrt(2.0), 1e-12);
  EXPECT_GE(dev, 0.1);
}

TEST(Semigroup, QubitMapWithCorrelationsIsNotASemigroup) {
  const auto family = qubitpair::qubit_amap_family(InitParams::direct(0.0, 2.0 / 3.0));
  EXPECT_GT(check_semigroup(family, kPi / 4, kPi / 4), 1e-3);
}

TEST(Scenarios, SpectrumEqualityForScenarioMaps) {
  for (const auto& spec : all_scenarios()) {
    const auto params = qubitpair::extract_params(scenarios::initial_joint_state(spec));
    for (double t : {0.4, 1.7, 3.0, 5.5}) {
      const AMap a = qubitpair::qubit_amap(params, t);
      const auto la = sorted_desc(eigvals_hermitian(coefficient_matrix(a, pauli_basis())));
      const auto lb = sorted_desc(eigvals_hermitian(realign_to_b(a).matrix));
      EXPECT_LT(max_abs_diff_seq(la, lb), 1e-10);
    }
  }
}

TEST(Serialize, AMapRoundTrip) {
  std::mt19937_64 rng(47);
  const AMap a = testing::random_valid_amap(rng, 2);
  const auto j = to_json(a);
  EXPECT_EQ(j.at("dim"), 2);
  const AMap back = amap_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.matrix(), a.matrix());
}

TEST(Serialize, DecompositionRoundTripAndFieldNames) {
  const auto d = canonical_decompose(qubitpair::qubit_amap(InitParams::direct(0.1, 0.6), 1.0));
  const auto j = to_json(d);
  for (const char* key : {"dim", "eigenvalues", "operators", "classification", "negativity"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("classification"), "NCP");
  EXPECT_TRUE(j.at("operators")[0][0][0].is_array());
  const auto back = decomposition_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.eigenvalues, d.eigenvalues);
  EXPECT_EQ(back.classification, d.classification);
  EXPECT_EQ(back.negativity, d.negativity);
  ASSERT_EQ(back.operators.size(), d.operators.size());
  for (std::size_t k = 0; k < d.operators.size(); ++k) EXPECT_EQ(back.operators[k], d.operators[k]);
}

TEST(Serialize, ComplexPairs) {
  EXPECT_EQ(complex_to_json(Complex(1.5, -2.0)).dump(), "[1.5,-2.0]");
  EXPECT_EQ(complex_from_json(nlohmann::json::parse("[0.25, 3]")), Complex(0.25, 3.0));
  EXPECT_THROW(complex_from_json(nlohmann::json::parse("[1]")), Error);
}

}  // namespace
}  // namespace qdyn
