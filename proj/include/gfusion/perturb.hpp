#pragma once

//
// Numeric certifiers for perturbations of a g-fusion frame Λ (bounds A, B)
// into Θ = (W_j, Θ_j, v_j) on the same subspaces and weights.
//
// Every certifier checks its hypothesis on the given pair, evaluates the
// bounds the hypothesis guarantees for Θ (`predicted`) and compares them to
// Θ's optimal bounds (`actual`). Hypotheses are established in one of three
// modes:
//   certified - a sound operator-norm sufficient condition holds
//   sampled   - random unit vectors plus projected gradient ascent found no
//               violation (not a proof; flagged with `warning`)
//   exact     - the hypothesis reduces to a single eigenvalue
//
// Certificates quantify over the full index set; sampled mode also draws
// random subsets of it.
//

#include <gfusion/frame.hpp>
#include <gfusion/random.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace gfusion {

struct PerturbParams {
  double lambda = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
};

/// Sampling budget for the randomized hypothesis checks. The seed has no
/// default.
struct SamplingOptions {
  explicit SamplingOptions(std::uint64_t s) : seed(s) {}

  std::uint64_t seed;
  int samples = 2000;
  int ascent_starts = 5;
  int ascent_steps = 50;
  int subset_samples = 200;
  double tol = 1e-9;               // predicted-vs-actual eigenvalue slack
  double hypothesis_slack = 1e-12; // rounding allowance on sampled inequalities
};

enum class Theorem { frame_operator, r_condition, synthesis, analysis };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::frame_operator: return "frame-operator";
    case Theorem::r_condition: return "r-condition";
    case Theorem::synthesis: return "synthesis";
    case Theorem::analysis: return "analysis";
  }
  return "?";
}

enum class HypothesisMode { certified, sampled, exact, not_established };

inline const char* to_string(HypothesisMode m) {
  switch (m) {
    case HypothesisMode::certified: return "certified";
    case HypothesisMode::sampled: return "sampled";
    case HypothesisMode::exact: return "exact";
    case HypothesisMode::not_established: return "not-established";
  }
  return "?";
}

/// The two lower-bound forms for the synthesis-side perturbation: the one
/// as stated, A(1−x²)/(1+μ), and the one its argument yields,
/// A((1−x)/(1+μ))², with x = λ + γ/√A. Only the latter is sound.
struct SynthesisLowerForms {
  double stated = 0.0;
  double proof = 0.0;
  bool stated_ok = false;
  bool proof_ok = false;
};

/// Upper-bound components for the R-condition: B + R√(B/A) bounds the
/// quadratic form; R + √B bounds Σ v_j²‖π Θ_jᴴΘ_j π f‖. Their minimum is
/// reported but not asserted.
struct RUpperForms {
  double quadratic = 0.0;
  double sqrt_form = 0.0;
  double stated_min = 0.0;
  bool within_quadratic = false;
  bool within_sqrt = false;
};

struct PerturbationReport {
  Theorem theorem = Theorem::analysis;
  PerturbParams params;
  bool params_admissible = true;

  HypothesisMode mode = HypothesisMode::not_established;
  bool hypothesis_holds = false;
  double hypothesis_margin = 0.0;  // max observed violation, ≤ 0 when it holds
  bool warning = false;            // established by sampling only

  // sound sufficient condition: lhs ≤ rhs
  std::optional<bool> certified_sufficient;
  double certificate_lhs = 0.0;
  double certificate_rhs = 0.0;

  // randomized check
  std::optional<bool> sampled;
  double sampled_margin = -std::numeric_limits<double>::infinity();
  double subset_margin = -std::numeric_limits<double>::infinity();

  std::optional<double> r;  // R for the R-condition / analysis certifiers

  FrameBounds reference;  // Λ, optimal
  FrameBounds predicted;  // certified
  FrameBounds actual;     // Θ, optimal (eigen extremes of S_Θ)
  bool bracket_ok = false;

  std::optional<SynthesisLowerForms> synthesis_lower;
  std::optional<RUpperForms> r_upper;

  /// The theorem's content: a hypothesis that holds implies the bracket.
  bool sound() const { return !hypothesis_holds || bracket_ok; }
};

namespace detail {

template <Field S>
double re_dot(const Vector<S>& a, const Vector<S>& b) {
  return std::real(a.dot(b));
}

/// Adds the gradient of ‖M f‖ (w.r.t. the real inner product Re⟨·,·⟩)
/// scaled by `coef` to `grad`, and returns ‖M f‖.
template <Field S>
double norm_term(const Matrix<S>& m, const Vector<S>& f, double coef, Vector<S>* grad) {
  const Vector<S> mf = m * f;
  const double nv = mf.norm();
  if (grad && nv > 0.0) *grad += (coef / nv) * (m.adjoint() * mf);
  return nv;
}

/// Maximizes eval over the unit sphere of dimension `dim`: plain sampling,
/// then projected gradient ascent with step adaptation from the best
/// starts. eval(f, grad) returns the value and, when grad is non-null,
/// accumulates the gradient into it.
template <Field S, class Eval>
double maximize_on_sphere(Index dim, Eval&& eval, const SamplingOptions& opt, Rng& rng) {
  std::vector<std::pair<double, Vector<S>>> starts;
  double best = -std::numeric_limits<double>::infinity();
  const auto keep = static_cast<std::size_t>(std::max(opt.ascent_starts, 0));
  for (int s = 0; s < opt.samples; ++s) {
    Vector<S> f = random_unit_vector<S>(dim, rng);
    const double val = eval(f, nullptr);
    best = std::max(best, val);
    if (keep == 0) continue;
    if (starts.size() < keep) {
      starts.emplace_back(val, std::move(f));
    } else {
      auto worst = std::min_element(starts.begin(), starts.end(),
                                    [](const auto& a, const auto& b) { return a.first < b.first; });
      if (val > worst->first) *worst = {val, std::move(f)};
    }
  }
  for (auto& [val, f] : starts) {
    double eta = 0.5;
    for (int step = 0; step < opt.ascent_steps && eta > 1e-12; ++step) {
      Vector<S> g = Vector<S>::Zero(dim);
      eval(f, &g);
      g -= re_dot<S>(f, g) * f;
      const double gn = g.norm();
      if (gn < 1e-14) break;
      Vector<S> cand = f + (eta / gn) * g;
      cand /= cand.norm();
      const double cv = eval(cand, nullptr);
      if (cv > val) {
        f = std::move(cand);
        val = cv;
        eta *= 1.5;
      } else {
        eta *= 0.5;
      }
    }
    best = std::max(best, val);
  }
  return best;
}

/// Random non-empty subset of {0..J−1}, each index kept with probability ½.
inline std::vector<bool> random_subset(std::size_t count, Rng& rng) {
  std::vector<bool> in(count, false);
  std::bernoulli_distribution coin(0.5);
  bool any = false;
  while (!any) {
    for (std::size_t j = 0; j < count; ++j) {
      in[j] = coin(rng);
      any = any || in[j];
    }
  }
  return in;
}

template <Field S>
struct PairSetup {
  FrameBounds reference;
  FrameBounds actual;
  Matrix<S> s_lambda;
  Matrix<S> s_theta;
};

template <Field S>
PairSetup<S> setup_pair(const GFusionSystem<S>& lambda, const GFusionSystem<S>& theta,
                        const Tolerances& tols) {
  if (auto why = structure_mismatch(lambda, theta, tols.verdict)) {
    throw SystemMismatch("perturbation pair: " + *why);
  }
  const FrameVerdict lv = frame_bounds(lambda, tols);
  if (!lv.is_frame()) throw NotAFrame("perturbation pair: the unperturbed system is not a frame");
  PairSetup<S> p;
  p.reference = *lv.bounds;
  p.s_lambda = frame_operator(lambda);
  p.s_theta = frame_operator(theta);
  const SpectralBounds st = hermitian_eigen_extremes(p.s_theta, tols.herm);
  p.actual = FrameBounds{st.min_eig, st.max_eig, BoundsKind::optimal_spectral};
  return p;
}

inline bool brackets(const FrameBounds& predicted, const FrameBounds& actual, double tol) {
  return predicted.lower <= actual.lower + tol && actual.upper <= predicted.upper + tol;
}

/// Per-index weighted frame-operator pieces v_j² π_{W_j} X_jᴴ X_j π_{W_j}.
template <Field S>
std::vector<Matrix<S>> frame_pieces(const GFusionSystem<S>& sys) {
  std::vector<Matrix<S>> out;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const double w2 = sys.weight(j) * sys.weight(j);
    out.push_back(w2 * (sys.restricted(j).adjoint() * sys.restricted(j)));
  }
  return out;
}

}  // namespace detail

/// Frame-operator perturbation: if for all f
///   ‖(S_Λ − S_Θ) f‖ ≤ λ‖S_Λ f‖ + μ‖S_Θ f‖ + γ⟨S_Λ f, f⟩^½
/// with max{λ + γ/√A, μ} < 1, then Θ has bounds
///   A(1 − (λ + γ/√A))/(1 + μ)  and  B(1 + λ + γ/√B)/(1 − μ).
/// Certificate: ‖S_Λ − S_Θ‖ ≤ λA + γ√A.
template <Field S>
PerturbationReport certify_frame_operator_perturbation(const GFusionSystem<S>& lambda,
                                                       const GFusionSystem<S>& theta,
                                                       const PerturbParams& p,
                                                       const SamplingOptions& opt,
                                                       const Tolerances& tols = {}) {
  const auto setup = detail::setup_pair(lambda, theta, tols);
  PerturbationReport r;
  r.theorem = Theorem::frame_operator;
  r.params = p;
  r.reference = setup.reference;
  r.actual = setup.actual;
  const double a = setup.reference.lower;
  const double b = setup.reference.upper;

  const double x = p.lambda + p.gamma / std::sqrt(a);
  r.params_admissible = p.lambda >= 0.0 && p.mu >= 0.0 && p.gamma >= 0.0 && std::max(x, p.mu) < 1.0;
  r.predicted = FrameBounds{a * (1.0 - x) / (1.0 + p.mu),
                            b * (1.0 + p.lambda + p.gamma / std::sqrt(b)) / (1.0 - p.mu),
                            BoundsKind::certified};

  const Matrix<S> diff = setup.s_lambda - setup.s_theta;
  r.certificate_lhs = operator_norm(diff);
  r.certificate_rhs = p.lambda * a + p.gamma * std::sqrt(a);
  r.certified_sufficient = r.certificate_lhs <= r.certificate_rhs;

  Rng rng(opt.seed);
  const Index n = lambda.ambient_dim();
  auto violation = [&](const Matrix<S>& d, const Matrix<S>& sl, const Matrix<S>& st,
                       const Vector<S>& f, Vector<S>* g) {
    double v = detail::norm_term(d, f, 1.0, g);
    v -= p.lambda * detail::norm_term(sl, f, -p.lambda, g);
    v -= p.mu * detail::norm_term(st, f, -p.mu, g);
    const Vector<S> slf = sl * f;
    const double q = std::max(0.0, detail::re_dot<S>(f, slf));
    const double root = std::sqrt(q);
    if (g && root > 0.0) *g += (-p.gamma / root) * slf;
    return v - p.gamma * root;
  };
  r.sampled_margin = detail::maximize_on_sphere<S>(
      n,
      [&](const Vector<S>& f, Vector<S>* g) {
        return violation(diff, setup.s_lambda, setup.s_theta, f, g);
      },
      opt, rng);

  const auto pl = detail::frame_pieces(lambda);
  const auto pt = detail::frame_pieces(theta);
  for (int s = 0; s < opt.subset_samples; ++s) {
    const auto in = detail::random_subset(lambda.size(), rng);
    Matrix<S> sl = Matrix<S>::Zero(n, n);
    Matrix<S> st = Matrix<S>::Zero(n, n);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      if (!in[j]) continue;
      sl += pl[j];
      st += pt[j];
    }
    const Vector<S> f = random_unit_vector<S>(n, rng);
    r.subset_margin = std::max(r.subset_margin, violation(sl - st, sl, st, f, nullptr));
  }
  r.sampled = std::max(r.sampled_margin, r.subset_margin) <= opt.hypothesis_slack;

  if (!r.params_admissible) {
    r.mode = HypothesisMode::not_established;
  } else if (*r.certified_sufficient) {
    r.mode = HypothesisMode::certified;
  } else if (*r.sampled) {
    r.mode = HypothesisMode::sampled;
    r.warning = true;
  }
  r.hypothesis_holds = r.mode != HypothesisMode::not_established;
  r.hypothesis_margin = r.mode == HypothesisMode::certified
                            ? r.certificate_lhs - r.certificate_rhs
                            : std::max(r.sampled_margin, r.subset_margin);
  r.bracket_ok = detail::brackets(r.predicted, r.actual, opt.tol);
  return r;
}

/// R-condition: if Σ_j v_j² ‖π_{W_j}(Λ_jᴴΛ_j − Θ_jᴴΘ_j)π_{W_j} f‖ ≤ R‖f‖
/// for all f with R < A, then Θ has lower bound A − R and upper bound
/// B + R√(B/A).
///
/// R is taken from the triangle-inequality certificate
/// Σ_j v_j² ‖π(Λ_jᴴΛ_j − Θ_jᴴΘ_j)π‖ when that is below A, otherwise from
/// the sampled maximum (flagged with `warning`).
template <Field S>
PerturbationReport certify_r_condition(const GFusionSystem<S>& lambda, const GFusionSystem<S>& theta,
                                       const SamplingOptions& opt, const Tolerances& tols = {}) {
  const auto setup = detail::setup_pair(lambda, theta, tols);
  PerturbationReport r;
  r.theorem = Theorem::r_condition;
  r.reference = setup.reference;
  r.actual = setup.actual;
  const double a = setup.reference.lower;
  const double b = setup.reference.upper;

  const auto pl = detail::frame_pieces(lambda);
  const auto pt = detail::frame_pieces(theta);
  std::vector<Matrix<S>> d;
  double r_cert = 0.0;
  for (std::size_t j = 0; j < pl.size(); ++j) {
    d.push_back(pl[j] - pt[j]);
    r_cert += operator_norm(d.back());
  }
  Rng rng(opt.seed);
  const double r_samp = detail::maximize_on_sphere<S>(
      lambda.ambient_dim(),
      [&](const Vector<S>& f, Vector<S>* g) {
        double v = 0.0;
        for (const auto& dj : d) v += detail::norm_term(dj, f, 1.0, g);
        return v;
      },
      opt, rng);

  r.certificate_lhs = r_cert;
  r.certificate_rhs = a;
  r.certified_sufficient = r_cert < a;
  r.sampled = r_samp < a;
  r.sampled_margin = r_samp - a;

  double rr = r_samp;
  if (*r.certified_sufficient) {
    rr = r_cert;
    r.mode = HypothesisMode::certified;
  } else if (*r.sampled) {
    r.mode = HypothesisMode::sampled;
    r.warning = true;
  }
  r.hypothesis_holds = r.mode != HypothesisMode::not_established;
  r.hypothesis_margin = rr - a;
  r.r = rr;

  RUpperForms up;
  up.quadratic = b + rr * std::sqrt(b / a);
  up.sqrt_form = rr + std::sqrt(b);
  up.stated_min = std::min(up.quadratic, up.sqrt_form);
  up.within_quadratic = r.actual.upper <= up.quadratic + opt.tol;
  up.within_sqrt = r.actual.upper <= up.sqrt_form + opt.tol;
  r.r_upper = up;

  r.predicted = FrameBounds{a - rr, up.quadratic, BoundsKind::certified};
  r.bracket_ok = detail::brackets(r.predicted, r.actual, opt.tol);
  return r;
}

/// Synthesis-side perturbation: if for all {f_j}
///   ‖Σ v_j π(Λ_jᴴ − Θ_jᴴ) f_j‖ ≤ λ‖Σ v_j π Λ_jᴴ f_j‖ + μ‖Σ v_j π Θ_jᴴ f_j‖ + γ‖{f_j}‖
/// with max{x, μ} < 1, x = λ + γ/√A, then Θ has lower bound
/// A((1 − x)/(1 + μ))² and upper bound B((1 + λ + γ/√B)/(1 − μ))².
/// Certificate: ‖T_Λ − T_Θ‖ ≤ γ (valid on every subset of indices too).
template <Field S>
PerturbationReport certify_synthesis_perturbation(const GFusionSystem<S>& lambda,
                                                  const GFusionSystem<S>& theta,
                                                  const PerturbParams& p, const SamplingOptions& opt,
                                                  const Tolerances& tols = {}) {
  const auto setup = detail::setup_pair(lambda, theta, tols);
  PerturbationReport r;
  r.theorem = Theorem::synthesis;
  r.params = p;
  r.reference = setup.reference;
  r.actual = setup.actual;
  const double a = setup.reference.lower;
  const double b = setup.reference.upper;

  const double x = p.lambda + p.gamma / std::sqrt(a);
  r.params_admissible = p.lambda >= 0.0 && p.mu >= 0.0 && p.gamma >= 0.0 && std::max(x, p.mu) < 1.0;

  const Matrix<S> tl = synthesis_matrix(lambda);
  const Matrix<S> tt = synthesis_matrix(theta);
  const Matrix<S> dt = tl - tt;
  r.certificate_lhs = operator_norm(dt);
  r.certificate_rhs = p.gamma;
  r.certified_sufficient = r.certificate_lhs <= r.certificate_rhs;

  Rng rng(opt.seed);
  auto violation = [&](const Matrix<S>& d, const Matrix<S>& l, const Matrix<S>& t,
                       const Vector<S>& g, Vector<S>* grad) {
    double v = detail::norm_term(d, g, 1.0, grad);
    v -= p.lambda * detail::norm_term(l, g, -p.lambda, grad);
    v -= p.mu * detail::norm_term(t, g, -p.mu, grad);
    const double gn = g.norm();
    if (grad && gn > 0.0) *grad += (-p.gamma / gn) * g;
    return v - p.gamma * gn;
  };
  r.sampled_margin = detail::maximize_on_sphere<S>(
      tl.cols(), [&](const Vector<S>& g, Vector<S>* grad) { return violation(dt, tl, tt, g, grad); },
      opt, rng);
  for (int s = 0; s < opt.subset_samples; ++s) {
    const auto in = detail::random_subset(lambda.size(), rng);
    Vector<S> g = random_unit_vector<S>(tl.cols(), rng);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      if (!in[j]) g.segment(lambda.block_offset(j), lambda.block_dim(j)).setZero();
    }
    g /= g.norm();
    r.subset_margin = std::max(r.subset_margin, violation(dt, tl, tt, g, nullptr));
  }
  r.sampled = std::max(r.sampled_margin, r.subset_margin) <= opt.hypothesis_slack;

  if (!r.params_admissible) {
    r.mode = HypothesisMode::not_established;
  } else if (*r.certified_sufficient) {
    r.mode = HypothesisMode::certified;
  } else if (*r.sampled) {
    r.mode = HypothesisMode::sampled;
    r.warning = true;
  }
  r.hypothesis_holds = r.mode != HypothesisMode::not_established;
  r.hypothesis_margin = r.mode == HypothesisMode::certified
                            ? r.certificate_lhs - r.certificate_rhs
                            : std::max(r.sampled_margin, r.subset_margin);

  SynthesisLowerForms lower;
  lower.stated = a * (1.0 - x * x) / (1.0 + p.mu);
  const double ratio = (1.0 - x) / (1.0 + p.mu);
  lower.proof = a * ratio * ratio;
  lower.stated_ok = lower.stated <= r.actual.lower + opt.tol;
  lower.proof_ok = lower.proof <= r.actual.lower + opt.tol;
  r.synthesis_lower = lower;

  const double up = (1.0 + p.lambda + p.gamma / std::sqrt(b)) / (1.0 - p.mu);
  r.predicted = FrameBounds{lower.proof, b * up * up, BoundsKind::certified};
  r.bracket_ok = detail::brackets(r.predicted, r.actual, opt.tol);
  return r;
}

/// λ_max(Σ_j v_j² π_{W_j}(Λ_j − Θ_j)ᴴ(Λ_j − Θ_j)π_{W_j}): the smallest R with
/// Σ v_j²‖(Λ_j − Θ_j)π_{W_j} f‖² ≤ R‖f‖².
template <Field S>
double analysis_perturbation_radius(const GFusionSystem<S>& lambda, const GFusionSystem<S>& theta) {
  if (auto why = structure_mismatch(lambda, theta)) {
    throw SystemMismatch("perturbation pair: " + *why);
  }
  const Index n = lambda.ambient_dim();
  Matrix<S> q = Matrix<S>::Zero(n, n);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const Matrix<S> e = lambda.restricted(j) - theta.restricted(j);
    q += (lambda.weight(j) * lambda.weight(j)) * (e.adjoint() * e);
  }
  return std::max(0.0, hermitian_eigen_extremes<S>(hermitian_part(q)).max_eig);
}

/// Analysis-side perturbation: with R = λ_max(Σ v_j² π(Λ_j − Θ_j)ᴴ(Λ_j − Θ_j)π)
/// and R < A, Θ has bounds (√A − √R)² and (√R + √B)². Exact, no sampling.
template <Field S>
PerturbationReport certify_analysis_perturbation(const GFusionSystem<S>& lambda,
                                                 const GFusionSystem<S>& theta,
                                                 double tol = Tolerances{}.verdict,
                                                 const Tolerances& tols = {}) {
  const auto setup = detail::setup_pair(lambda, theta, tols);
  PerturbationReport r;
  r.theorem = Theorem::analysis;
  r.reference = setup.reference;
  r.actual = setup.actual;
  const double a = setup.reference.lower;
  const double b = setup.reference.upper;

  const double rr = analysis_perturbation_radius(lambda, theta);
  r.r = rr;
  r.mode = rr < a ? HypothesisMode::exact : HypothesisMode::not_established;
  r.hypothesis_holds = rr < a;
  r.hypothesis_margin = rr - a;
  const double lo = std::sqrt(a) - std::sqrt(rr);
  const double hi = std::sqrt(rr) + std::sqrt(b);
  r.predicted = FrameBounds{lo * lo, hi * hi, BoundsKind::certified};
  r.bracket_ok = detail::brackets(r.predicted, r.actual, tol);
  return r;
}

struct LemmaReport {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double max_violation = 0.0;  // max ‖x − Ux‖ − λ1‖x‖ − λ2‖Ux‖ over unit x
  bool hypothesis_holds = false;

  double lower_u = 0.0;    // (1−λ1)/(1+λ2)
  double upper_u = 0.0;    // (1+λ1)/(1−λ2)
  double lower_inv = 0.0;  // (1−λ2)/(1+λ1)
  double upper_inv = 0.0;  // (1+λ2)/(1−λ1)

  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double sampled_min_ratio = 0.0;  // min ‖Ux‖ over the sample
  double sampled_max_ratio = 0.0;

  bool lower_u_ok = false;
  bool upper_u_ok = false;
  bool lower_inv_ok = false;
  bool upper_inv_ok = false;
  bool invertible = false;

  bool sandwich_ok() const {
    return lower_u_ok && upper_u_ok && lower_inv_ok && upper_inv_ok && invertible;
  }
};

/// If ‖x − Ux‖ ≤ λ1‖x‖ + λ2‖Ux‖ for all x with λ1, λ2 ∈ [0, 1), U is
/// invertible and both U and U⁻¹ are sandwiched between the ratios above.
/// The hypothesis is sampled; the sandwich is checked exactly via the
/// singular values of U.
template <Field S>
LemmaReport check_invertibility_lemma(const Matrix<S>& u, double lambda1, double lambda2,
                                      const SamplingOptions& opt) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw DimensionMismatch("check_invertibility_lemma: operator must be square");
  }
  if (!(lambda1 >= 0.0 && lambda1 < 1.0 && lambda2 >= 0.0 && lambda2 < 1.0)) {
    throw InvalidArgument("check_invertibility_lemma: λ1 and λ2 must lie in [0, 1)");
  }
  require_finite(u, "check_invertibility_lemma");
  LemmaReport r;
  r.lambda1 = lambda1;
  r.lambda2 = lambda2;
  const Index n = u.rows();

  Rng rng(opt.seed);
  r.sampled_min_ratio = std::numeric_limits<double>::infinity();
  r.sampled_max_ratio = 0.0;
  const Matrix<S> id_minus_u = Matrix<S>::Identity(n, n) - u;
  r.max_violation = detail::maximize_on_sphere<S>(
      n,
      [&](const Vector<S>& x, Vector<S>* g) {
        const double ux = detail::norm_term(u, x, -lambda2, g);
        if (!g) {
          r.sampled_min_ratio = std::min(r.sampled_min_ratio, ux);
          r.sampled_max_ratio = std::max(r.sampled_max_ratio, ux);
        }
        return detail::norm_term(id_minus_u, x, 1.0, g) - lambda1 - lambda2 * ux;
      },
      opt, rng);
  r.hypothesis_holds = r.max_violation <= opt.hypothesis_slack;

  r.lower_u = (1.0 - lambda1) / (1.0 + lambda2);
  r.upper_u = (1.0 + lambda1) / (1.0 - lambda2);
  r.lower_inv = (1.0 - lambda2) / (1.0 + lambda1);
  r.upper_inv = (1.0 + lambda2) / (1.0 - lambda1);

  const Eigen::VectorXd sv = singular_values(u);
  r.sigma_max = sv(0);
  r.sigma_min = sv(sv.size() - 1);
  r.invertible = r.sigma_min > 0.0;
  r.lower_u_ok = r.sigma_min >= r.lower_u - opt.tol;
  r.upper_u_ok = r.sigma_max <= r.upper_u + opt.tol;
  r.upper_inv_ok = r.invertible && 1.0 / r.sigma_min <= r.upper_inv + opt.tol;
  r.lower_inv_ok = 1.0 / r.sigma_max >= r.lower_inv - opt.tol;
  return r;
}

}  // namespace gfusion
