#include "support.hpp"

namespace gfusion {
namespace {

using testing::max_abs;

GFusionSystem<double> scalar_system(double c) {
  return GFusionSystem<double>(1, {{1.0, Subspace<double>::whole(1), Matrix<double>::Constant(1, 1, c)}});
}

GFusionSystem<Complex> scaled(const GFusionSystem<Complex>& sys, double factor) {
  std::vector<Matrix<Complex>> ops;
  for (std::size_t j = 0; j < sys.size(); ++j) ops.push_back(factor * sys.lambda(j));
  return with_operators(sys, ops);
}

SamplingOptions quick(std::uint64_t seed) {
  SamplingOptions opt(seed);
  opt.samples = 400;
  opt.subset_samples = 50;
  return opt;
}

// ---------------------------------------------------------------- lemma

TEST(Lemma, Identity) {
  const auto r = check_invertibility_lemma<double>(Matrix<double>::Identity(3, 3), 0.0, 0.0, quick(1));
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.sandwich_ok());
  EXPECT_EQ(r.lower_u, 1.0);
  EXPECT_EQ(r.upper_u, 1.0);
  EXPECT_EQ(r.lower_inv, 1.0);
  EXPECT_EQ(r.upper_inv, 1.0);
}

TEST(Lemma, ScalarMultiple) {
  const Matrix<double> u = 1.1 * Matrix<double>::Identity(4, 4);
  const auto r = check_invertibility_lemma(u, 0.1, 0.0, quick(2));
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.sandwich_ok());
  EXPECT_NEAR(r.sigma_min, 1.1, 1e-15);
  EXPECT_NEAR(r.sampled_max_ratio, 1.1, 1e-12);
  EXPECT_NEAR(r.lower_u, 0.9, 1e-15);
  EXPECT_NEAR(r.upper_u, 1.1, 1e-15);
}

TEST(Lemma, SmallRandomPerturbationOfIdentity) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = uniform_index(rng, 1, 8);
    Matrix<Complex> e = gaussian_matrix<Complex>(n, n, rng);
    e *= 0.05 / operator_norm(e);
    const Matrix<Complex> u = Matrix<Complex>::Identity(n, n) + e;
    const auto r = check_invertibility_lemma(u, operator_norm(e), 0.0, quick(4 + static_cast<std::uint64_t>(trial)));
    EXPECT_TRUE(r.hypothesis_holds);
    EXPECT_LE(r.max_violation, 1e-12);
    EXPECT_TRUE(r.sandwich_ok());
    EXPECT_LE(1.0 / r.sigma_min, r.upper_inv + 1e-9);
    EXPECT_LE(r.sigma_max, r.upper_u + 1e-9);
  }
}

TEST(Lemma, DetectsViolatedHypothesis) {
  const auto r = check_invertibility_lemma<double>(2.0 * Matrix<double>::Identity(2, 2), 0.5, 0.0, quick(5));
  EXPECT_FALSE(r.hypothesis_holds);
  EXPECT_NEAR(r.max_violation, 0.5, 1e-12);
}

TEST(Lemma, RejectsBadArguments) {
  EXPECT_THROW(check_invertibility_lemma<double>(Matrix<double>::Identity(2, 3), 0.1, 0.1, quick(6)),
               DimensionMismatch);
  EXPECT_THROW(check_invertibility_lemma<double>(Matrix<double>::Identity(2, 2), 1.0, 0.1, quick(6)),
               InvalidArgument);
}

// ------------------------------------------------------- frame operator

TEST(FrameOperatorPerturbation, IdenticalSystems) {
  Rng rng(7);
  const auto lam = generate<Complex>(SystemKind::frame, 5, 3, rng);
  const auto r = certify_frame_operator_perturbation(lam, lam, {}, quick(8));
  EXPECT_EQ(r.mode, HypothesisMode::certified);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.bracket_ok);
  EXPECT_DOUBLE_EQ(r.predicted.lower, r.actual.lower);
  EXPECT_DOUBLE_EQ(r.predicted.upper, r.actual.upper);
  EXPECT_EQ(r.predicted.kind, BoundsKind::certified);
}

TEST(FrameOperatorPerturbation, UniformScaling) {
  Rng rng(9);
  const double delta = 0.05;
  const auto lam = generate<Complex>(SystemKind::frame, 4, 2, rng);
  const auto theta = scaled(lam, std::sqrt(1.0 + delta));
  const auto r = certify_frame_operator_perturbation(lam, theta, {delta, 0.0, 0.0}, quick(10));
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.bracket_ok);
  EXPECT_NEAR(r.predicted.lower, r.reference.lower * (1.0 - delta), 1e-12);
  EXPECT_NEAR(r.predicted.upper, r.reference.upper * (1.0 + delta), 1e-12);
  EXPECT_NEAR(r.actual.upper, r.predicted.upper, 1e-9);  // equality case
}

TEST(FrameOperatorPerturbation, FittedLambdaIsCertified) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lam = generate<Complex>(SystemKind::frame, 6, 3, rng);
    const auto theta = perturb_operators(lam, 0.01, rng);
    const double a = frame_bounds(lam).bounds->lower;
    const double fitted = operator_norm<Complex>(frame_operator(lam) - frame_operator(theta)) / a;
    if (fitted >= 1.0) continue;
    const auto r = certify_frame_operator_perturbation(lam, theta, {fitted * (1 + 1e-12), 0.0, 0.0}, quick(12));
    EXPECT_EQ(r.mode, HypothesisMode::certified);
    EXPECT_TRUE(r.bracket_ok);
  }
}

TEST(FrameOperatorPerturbation, UnsupportedParametersAreNotEstablished) {
  Rng rng(13);
  const auto lam = generate<double>(SystemKind::frame, 4, 2, rng);
  const auto theta = perturb_operators(lam, 0.3, rng);
  const auto none = certify_frame_operator_perturbation(lam, theta, {}, quick(14));
  EXPECT_FALSE(none.hypothesis_holds);
  EXPECT_GT(none.sampled_margin, 0.0);
  const auto wild = certify_frame_operator_perturbation(lam, theta, {0.5, 1.5, 0.0}, quick(14));
  EXPECT_FALSE(wild.params_admissible);
  EXPECT_FALSE(wild.hypothesis_holds);
}

// ---------------------------------------------------------- R-condition

TEST(RCondition, IdenticalSystems) {
  Rng rng(15);
  const auto lam = generate<Complex>(SystemKind::frame, 5, 2, rng);
  const auto r = certify_r_condition(lam, lam, quick(16));
  ASSERT_TRUE(r.r.has_value());
  EXPECT_EQ(*r.r, 0.0);
  EXPECT_EQ(r.mode, HypothesisMode::certified);
  EXPECT_DOUBLE_EQ(r.predicted.lower, r.reference.lower);
  EXPECT_DOUBLE_EQ(r.predicted.upper, r.reference.upper);
  EXPECT_DOUBLE_EQ(r.r_upper->sqrt_form, std::sqrt(r.reference.upper));
  EXPECT_TRUE(r.bracket_ok);
}

TEST(RCondition, Scalar) {
  const double eps = 0.1;
  const auto r = certify_r_condition(scalar_system(1.0), scalar_system(1.0 + eps), quick(17));
  const double big_r = (1.0 + eps) * (1.0 + eps) - 1.0;  // 0.21
  ASSERT_TRUE(r.r.has_value());
  EXPECT_NEAR(*r.r, big_r, 1e-15);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_NEAR(r.predicted.lower, 1.0 - big_r, 1e-15);
  EXPECT_NEAR(r.predicted.upper, 1.0 + big_r, 1e-15);
  EXPECT_NEAR(r.actual.lower, 1.21, 1e-15);
  EXPECT_TRUE(r.bracket_ok);
  EXPECT_TRUE(r.r_upper->within_sqrt);
}

TEST(RCondition, SmallRandomPerturbations) {
  Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lam = generate<Complex>(SystemKind::frame, 5, 3, rng);
    const auto theta = perturb_operators(lam, 0.005, rng);
    const auto r = certify_r_condition(lam, theta, quick(19));
    if (!r.hypothesis_holds) continue;
    EXPECT_TRUE(r.bracket_ok);
    EXPECT_LE(r.predicted.lower, r.actual.lower + 1e-9);
  }
}

TEST(RCondition, LargePerturbationIsNotEstablished) {
  Rng rng(20);
  const auto lam = generate<double>(SystemKind::frame, 4, 2, rng);
  const auto theta = perturb_operators(lam, 5.0, rng);
  const auto r = certify_r_condition(lam, theta, quick(21));
  EXPECT_FALSE(r.hypothesis_holds);
  EXPECT_EQ(r.mode, HypothesisMode::not_established);
}

// ------------------------------------------------------ synthesis side

TEST(SynthesisPerturbation, IdenticalSystems) {
  Rng rng(22);
  const auto lam = generate<Complex>(SystemKind::frame, 5, 2, rng);
  const auto r = certify_synthesis_perturbation(lam, lam, {}, quick(23));
  EXPECT_EQ(r.mode, HypothesisMode::certified);
  EXPECT_DOUBLE_EQ(r.predicted.lower, r.actual.lower);
  EXPECT_DOUBLE_EQ(r.predicted.upper, r.actual.upper);
  EXPECT_TRUE(r.bracket_ok);
}

TEST(SynthesisPerturbation, CertifiedByOperatorNorm) {
  Rng rng(24);
  const auto lam = generate<Complex>(SystemKind::frame, 6, 3, rng);
  const auto noisy = perturb_operators(lam, 1.0, rng);
  const double scale = 0.01 / operator_norm<Complex>(synthesis_matrix(noisy) - synthesis_matrix(lam));
  std::vector<Matrix<Complex>> ops;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    ops.push_back(lam.lambda(j) + scale * (noisy.lambda(j) - lam.lambda(j)));
  }
  const auto theta = with_operators(lam, ops);
  const auto r = certify_synthesis_perturbation(lam, theta, {0.0, 0.0, 0.01 * (1 + 1e-12)}, quick(25));
  EXPECT_NEAR(r.certificate_lhs, 0.01, 1e-12);
  EXPECT_EQ(r.mode, HypothesisMode::certified);
  EXPECT_TRUE(r.bracket_ok);
}

TEST(SynthesisPerturbation, LooseMuOnIdenticalSystems) {
  Rng rng(26);
  const auto lam = generate<double>(SystemKind::frame, 4, 2, rng);
  const auto r = certify_synthesis_perturbation(lam, lam, {0.0, 0.5, 0.0}, quick(27));
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_TRUE(r.bracket_ok);
  EXPECT_NEAR(r.synthesis_lower->stated, r.reference.lower / 1.5, 1e-12);
  EXPECT_LE(r.synthesis_lower->stated, r.actual.lower);
}

// Λ = 1, Θ = 1 − ε on ℝ: ‖T_Λ − T_Θ‖ = ε so γ = ε is certified, and
// A = B = 1. The actual lower bound (1 − ε)² lies below 1 − ε², so only
// the squared form brackets it.
TEST(SynthesisPerturbation, StatedLowerFormFailsOnScalarPair) {
  const double eps = 0.2;
  const auto r = certify_synthesis_perturbation(scalar_system(1.0), scalar_system(1.0 - eps),
                                                {0.0, 0.0, eps * (1 + 1e-12)}, quick(28));
  EXPECT_EQ(r.mode, HypothesisMode::certified);
  EXPECT_NEAR(r.actual.lower, 0.64, 1e-15);
  EXPECT_NEAR(r.synthesis_lower->stated, 0.96, 1e-9);
  EXPECT_NEAR(r.synthesis_lower->proof, 0.64, 1e-9);
  EXPECT_FALSE(r.synthesis_lower->stated_ok);
  EXPECT_TRUE(r.synthesis_lower->proof_ok);
  EXPECT_TRUE(r.bracket_ok);
}

// -------------------------------------------------------- analysis side

TEST(AnalysisPerturbation, IdenticalSystems) {
  Rng rng(29);
  const auto lam = generate<Complex>(SystemKind::frame, 5, 3, rng);
  const auto r = certify_analysis_perturbation(lam, lam);
  EXPECT_EQ(*r.r, 0.0);
  EXPECT_EQ(r.mode, HypothesisMode::exact);
  EXPECT_DOUBLE_EQ(r.predicted.lower, r.reference.lower);
  EXPECT_DOUBLE_EQ(r.predicted.upper, r.reference.upper);
  EXPECT_TRUE(r.bracket_ok);
}

TEST(AnalysisPerturbation, Scalar) {
  const double eps = 0.1;
  const auto r = certify_analysis_perturbation(scalar_system(1.0), scalar_system(1.0 + eps));
  EXPECT_NEAR(*r.r, eps * eps, 1e-15);
  EXPECT_NEAR(r.predicted.lower, 0.81, 1e-15);
  EXPECT_NEAR(r.predicted.upper, 1.21, 1e-15);
  EXPECT_NEAR(r.actual.upper, 1.21, 1e-15);
  EXPECT_TRUE(r.bracket_ok);
}

TEST(AnalysisPerturbation, QuarterRadius) {
  Rng rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lam = generate<Complex>(SystemKind::frame, 6, 3, rng);
    const auto unit = perturb_operators(lam, 1.0, rng);
    const double a = frame_bounds(lam).bounds->lower;
    const double r1 = analysis_perturbation_radius(lam, unit);
    const double t = std::sqrt(a / 4.0 / r1);
    std::vector<Matrix<Complex>> ops;
    for (std::size_t j = 0; j < lam.size(); ++j) ops.push_back(lam.lambda(j) + t * (unit.lambda(j) - lam.lambda(j)));
    const auto theta = with_operators(lam, ops);
    const auto r = certify_analysis_perturbation(lam, theta);
    EXPECT_NEAR(*r.r, a / 4.0, 1e-10 * a);
    EXPECT_TRUE(r.hypothesis_holds);
    EXPECT_TRUE(r.bracket_ok);
  }
}

TEST(AnalysisPerturbation, QuadraticScaling) {
  Rng rng(31);
  const auto lam = generate<Complex>(SystemKind::frame, 5, 3, rng);
  const auto unit = perturb_operators(lam, 0.5, rng);
  const double r1 = analysis_perturbation_radius(lam, unit);
  for (double t : {0.1, 0.25, 0.5, 0.9, 1.0}) {
    std::vector<Matrix<Complex>> ops;
    for (std::size_t j = 0; j < lam.size(); ++j) ops.push_back(lam.lambda(j) + t * (unit.lambda(j) - lam.lambda(j)));
    EXPECT_NEAR(analysis_perturbation_radius(lam, with_operators(lam, ops)), t * t * r1, 1e-10 * std::max(1.0, r1));
  }
}

// -------------------------------------------------------------- shared

TEST(Perturbation, RejectsMismatchedPairs) {
  Rng rng(32);
  const auto a = generate<double>(SystemKind::frame, 4, 2, rng);
  const auto b = generate<double>(SystemKind::frame, 4, 2, rng);
  EXPECT_THROW(certify_analysis_perturbation(a, b), SystemMismatch);
  EXPECT_THROW(certify_r_condition(a, b, quick(1)), SystemMismatch);
  EXPECT_THROW(certify_frame_operator_perturbation(a, b, {}, quick(1)), SystemMismatch);
  EXPECT_THROW(certify_synthesis_perturbation(a, b, {}, quick(1)), SystemMismatch);
  EXPECT_THROW(analysis_perturbation_radius(a, b), SystemMismatch);
}

TEST(Perturbation, RequiresFrame) {
  const auto h = testing::half_coordinate_system();
  EXPECT_THROW(certify_analysis_perturbation(h, h), NotAFrame);
}

TEST(Perturbation, ActualBoundsComeFromTheFrameOperator) {
  Rng rng(33);
  const auto lam = generate<Complex>(SystemKind::frame, 5, 3, rng);
  const auto theta = perturb_operators(lam, 0.1, rng);
  const auto setup = detail::setup_pair(lam, theta, {});
  EXPECT_LE(max_abs<Complex>(setup.s_theta - frame_operator(theta)), 1e-12);
  const auto fb = frame_bounds(theta);
  EXPECT_EQ(setup.actual.lower, fb.spectrum.min_eig);
  EXPECT_EQ(setup.actual.upper, fb.spectrum.max_eig);
}

TEST(Perturbation, SameSeedSameReport) {
  Rng rng(34);
  const auto lam = generate<Complex>(SystemKind::frame, 5, 3, rng);
  const auto theta = perturb_operators(lam, 0.05, rng);
  const auto a = certify_frame_operator_perturbation(lam, theta, {0.2, 0.1, 0.0}, quick(99));
  const auto b = certify_frame_operator_perturbation(lam, theta, {0.2, 0.1, 0.0}, quick(99));
  EXPECT_EQ(a.sampled_margin, b.sampled_margin);
  EXPECT_EQ(a.subset_margin, b.subset_margin);
}

// Soundness on a small random sweep; the acceptance run covers the full
// budget.
TEST(Perturbation, SoundOnRandomInstances) {
  Rng rng(35);
  int established = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = uniform_index(rng, 2, 6);
    const auto lam = generate<Complex>(SystemKind::frame, n, static_cast<std::size_t>(uniform_index(rng, 1, 4)), rng);
    const auto theta = perturb_operators(lam, uniform(rng, 0.0, 0.2), rng);
    const PerturbParams p{uniform(rng, 0.0, 0.5), uniform(rng, 0.0, 0.5), uniform(rng, 0.0, 0.2)};
    const auto opt = quick(100 + static_cast<std::uint64_t>(trial));
    for (const auto& r : {certify_frame_operator_perturbation(lam, theta, p, opt),
                          certify_r_condition(lam, theta, opt),
                          certify_synthesis_perturbation(lam, theta, p, opt),
                          certify_analysis_perturbation(lam, theta)}) {
      EXPECT_TRUE(r.sound()) << to_string(r.theorem);
      established += r.hypothesis_holds;
    }
  }
  EXPECT_GT(established, 30);
}

}  // namespace
}  // namespace gfusion
