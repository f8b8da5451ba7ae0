#pragma once

//
// Command-line front end. `run` parses the arguments, executes one
// subcommand and writes its report; it never calls exit(), so tests can
// drive it in-process.
//
// Exit codes: 0 positive verdict / sound certification, 1 negative
// verdict, 2 input error.
//

#include <gfusion/gfusion.hpp>
#include <gfusion/io.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gfusion::cli {

using nlohmann::json;

enum ExitCode : int { kPositive = 0, kNegative = 1, kInputError = 2 };

inline constexpr int kReportFormatVersion = 1;

namespace detail {

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

struct InputFile {
  std::string path;
  std::string text;
  std::string digest;

  json echo() const {
    return json{{"file", std::filesystem::path(path).filename().string()}, {"sha256", digest}};
  }
};

inline InputFile read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  InputFile f{path, buf.str(), {}};
  f.digest = sha256_hex(f.text);
  return f;
}

inline AnySystem load_system(const InputFile& f, const Tolerances& tol) {
  try {
    return parse_system(f.text, tol);
  } catch (const ParseError& e) {
    throw ParseError(std::filesystem::path(f.path).filename().string() + ": " + e.what());
  }
}

inline json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline json to_json(const FrameBounds& b) {
  return json{{"lower", number(b.lower)}, {"upper", number(b.upper)}, {"kind", to_string(b.kind)}};
}

inline json to_json(const std::optional<FrameBounds>& b) {
  return b ? to_json(*b) : json(nullptr);
}

inline json to_json(const SpectralBounds& s) {
  return json{{"min_eig", number(s.min_eig)}, {"max_eig", number(s.max_eig)}};
}

inline json to_json(const Tolerances& t) {
  return json{{"rank", t.rank}, {"ortho", t.ortho}, {"herm", t.herm},
              {"pd", t.pd},     {"inv", t.inv},     {"verdict", t.verdict}};
}

template <Field S>
json vector_json(const Vector<S>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(gfusion::detail::scalar_to_json<S>(v(i)));
  return out;
}

inline json to_json(const BasisVerdict& v) {
  return json{{"is_riesz", v.is_riesz},
              {"riesz_bounds", to_json(v.riesz_bounds)},
              {"is_gf_orthonormal", v.is_gf_orthonormal},
              {"gram_ok", v.gram_ok},
              {"parseval_ok", v.parseval_ok},
              {"gram_deviation", number(v.gram_deviation)},
              {"parseval_deviation", number(v.parseval_deviation)}};
}

inline json to_json(const OrthogonalDecomposition& d) {
  json iso = json::array();
  for (double e : d.isometry_deviation) iso.push_back(number(e));
  return json{{"isometry_deviation", iso},   {"cross_deviation", number(d.cross_deviation)},
              {"image_dim_sum", d.image_dim_sum}, {"combined_rank", d.combined_rank},
              {"isometric", d.isometric},     {"orthogonal", d.orthogonal},
              {"spans", d.spans},             {"holds", d.holds()}};
}

inline json to_json(const PerturbationReport& r) {
  json j{{"theorem", to_string(r.theorem)},
         {"params", {{"lambda", r.params.lambda}, {"mu", r.params.mu}, {"gamma", r.params.gamma}}},
         {"params_admissible", r.params_admissible},
         {"mode", to_string(r.mode)},
         {"hypothesis_holds", r.hypothesis_holds},
         {"hypothesis_margin", number(r.hypothesis_margin)},
         {"warning", r.warning},
         {"certificate", {{"lhs", number(r.certificate_lhs)}, {"rhs", number(r.certificate_rhs)}}},
         {"certified_sufficient", r.certified_sufficient ? json(*r.certified_sufficient) : json(nullptr)},
         {"sampled", r.sampled ? json(*r.sampled) : json(nullptr)},
         {"sampled_margin", number(r.sampled_margin)},
         {"subset_margin", number(r.subset_margin)},
         {"R", r.r ? number(*r.r) : json(nullptr)},
         {"reference", to_json(r.reference)},
         {"predicted", to_json(r.predicted)},
         {"actual", to_json(r.actual)},
         {"bracket_ok", r.bracket_ok}};
  if (r.synthesis_lower) {
    j["lower_forms"] = {{"stated", number(r.synthesis_lower->stated)},
                        {"proof", number(r.synthesis_lower->proof)},
                        {"stated_ok", r.synthesis_lower->stated_ok},
                        {"proof_ok", r.synthesis_lower->proof_ok}};
  }
  if (r.r_upper) {
    j["upper_forms"] = {{"quadratic", number(r.r_upper->quadratic)},
                        {"sqrt_form", number(r.r_upper->sqrt_form)},
                        {"stated_min", number(r.r_upper->stated_min)},
                        {"within_quadratic", r.r_upper->within_quadratic},
                        {"within_sqrt", r.r_upper->within_sqrt}};
  }
  return j;
}

inline json to_json(const LemmaReport& r) {
  return json{{"lambda1", r.lambda1},
              {"lambda2", r.lambda2},
              {"max_violation", number(r.max_violation)},
              {"hypothesis_holds", r.hypothesis_holds},
              {"bounds",
               {{"lower_u", number(r.lower_u)},
                {"upper_u", number(r.upper_u)},
                {"lower_inv", number(r.lower_inv)},
                {"upper_inv", number(r.upper_inv)}}},
              {"sigma_min", number(r.sigma_min)},
              {"sigma_max", number(r.sigma_max)},
              {"sampled_min_ratio", number(r.sampled_min_ratio)},
              {"sampled_max_ratio", number(r.sampled_max_ratio)},
              {"checks",
               {{"lower_u", r.lower_u_ok},
                {"upper_u", r.upper_u_ok},
                {"lower_inv", r.lower_inv_ok},
                {"upper_inv", r.upper_inv_ok},
                {"invertible", r.invertible}}},
              {"sandwich_ok", r.sandwich_ok()}};
}

inline json to_json(const CorrespondenceReport& r) {
  return json{{"family_size", r.family_size},
              {"operator_deviation", number(r.operator_deviation)},
              {"family_spectrum", to_json(r.family_spectrum)},
              {"system_spectrum", to_json(r.system_spectrum)},
              {"bounds_deviation", number(r.bounds_deviation)},
              {"family_is_frame", r.family_is_frame},
              {"system_is_frame", r.system_is_frame},
              {"family_is_riesz", r.family_is_riesz},
              {"system_is_riesz", r.system_is_riesz},
              {"family_riesz_bounds", to_json(r.family_riesz_bounds)},
              {"riesz_bounds_deviation", number(r.riesz_bounds_deviation)},
              {"family_is_orthonormal", r.family_is_orthonormal},
              {"system_is_orthonormal", r.system_is_orthonormal},
              {"family_gram_deviation", number(r.family_gram_deviation)},
              {"consistent", r.consistent}};
}

/// One "path: value" line per leaf; numeric arrays stay on one line.
inline void flatten(const json& j, const std::string& path, std::ostream& os) {
  const bool leafy_array =
      j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) {
        return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const json& x) {
                                      return x.is_primitive();
                                    }));
      });
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    }
  } else if (j.is_array() && !leafy_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << ": " << j.dump() << "\n";
  }
}

struct Common {
  double tol = Tolerances{}.verdict;
  std::string format = "json";
  std::string out;

  Tolerances tolerances() const {
    Tolerances t;
    t.verdict = tol;
    return t;
  }
};

inline void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tol", c.tol, "Verdict tolerance (classification and bound comparisons)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out", c.out, "Write the report to this file instead of stdout");
}

inline json envelope(const std::string& command, json options, const std::vector<InputFile>& inputs,
                     const Tolerances& tol) {
  json inp = json::array();
  for (const auto& f : inputs) inp.push_back(f.echo());
  return json{{"tool", "gfusion"},
              {"format_version", kReportFormatVersion},
              {"command", {{"name", command}, {"options", std::move(options)}}},
              {"inputs", std::move(inp)},
              {"tolerances", to_json(tol)}};
}

inline void emit(const json& report, const Common& c, std::ostream& out) {
  std::ostringstream os;
  if (c.format == "text") {
    flatten(report, "", os);
  } else {
    os << report.dump(2) << "\n";
  }
  if (c.out.empty()) {
    out << os.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + c.out + "'");
    f << os.str();
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

template <class A, class B, class F>
auto visit_pair(const A& a, const B& b, F&& fn) {
  return std::visit(
      [&](const auto& x, const auto& y) -> int {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<X, Y>) {
          return fn(x, y);
        } else {
          throw SystemMismatch("systems use different scalar fields");
        }
      },
      a, b);
}

// ---- subcommands --------------------------------------------------------

inline int cmd_analyze(const InputFile& in, const Common& c, std::ostream& out) {
  const Tolerances tol = c.tolerances();
  const AnySystem any = load_system(in, tol);
  return std::visit(
      [&](const auto& sys) {
        const FrameVerdict v = frame_bounds(sys, tol);
        json report = envelope("analyze", json::object(), {in}, tol);
        report["result"] = {{"field", field_name<typename std::decay_t<decltype(sys)>::Scalar>()},
                            {"dim", sys.ambient_dim()},
                            {"subsystems", sys.size()},
                            {"spectrum", to_json(v.spectrum)},
                            {"is_frame", v.is_frame()},
                            {"bounds", to_json(v.bounds)},
                            {"parseval", v.is_parseval(c.tol)},
                            {"gf_complete", is_gf_complete(sys, tol.rank)}};
        report["verdict"] = v.is_frame() ? "frame" : "NotAFrame";
        const int code = v.is_frame() ? kPositive : kNegative;
        report["exit_code"] = code;
        emit(report, c, out);
        return code;
      },
      any);
}

inline int cmd_dual(const InputFile& in, const Common& c, std::uint64_t seed, int samples,
                    const std::string& dual_out, std::ostream& out) {
  const Tolerances tol = c.tolerances();
  const AnySystem any = load_system(in, tol);
  return std::visit(
      [&](const auto& sys) {
        using S = typename std::decay_t<decltype(sys)>::Scalar;
        json report = envelope("dual", json{{"seed", seed}, {"samples", samples}}, {in}, tol);
        const FrameVerdict v = frame_bounds(sys, tol);
        if (!v.is_frame()) {
          report["result"] = {{"is_frame", false}, {"spectrum", to_json(v.spectrum)}};
          report["verdict"] = "NotAFrame";
          report["exit_code"] = static_cast<int>(kNegative);
          emit(report, c, out);
          return static_cast<int>(kNegative);
        }
        const GFusionSystem<S> dual = canonical_dual(sys, tol);
        Rng rng(seed);
        double worst_primal = 0.0;
        double worst_swapped = 0.0;
        for (int i = 0; i < samples; ++i) {
          const Vector<S> f = random_unit_vector<S>(sys.ambient_dim(), rng);
          const Reconstruction<S> r = reconstruct(sys, dual, f);
          worst_primal = std::max(worst_primal, r.primal_residual);
          worst_swapped = std::max(worst_swapped, r.swapped_residual);
        }
        const bool ok = worst_primal <= c.tol && worst_swapped <= c.tol;
        const FrameVerdict dv = frame_bounds(dual, tol);
        report["result"] = {{"is_frame", true},
                            {"bounds", to_json(v.bounds)},
                            {"dual_bounds", to_json(dv.bounds)},
                            {"reconstruction",
                             {{"samples", samples},
                              {"max_relative_residual_primal", number(worst_primal)},
                              {"max_relative_residual_swapped", number(worst_swapped)},
                              {"ok", ok}}},
                            {"dual", gfusion::to_json(dual)}};
        if (!dual_out.empty()) write_text_file(dual_out, serialize(dual));
        report["verdict"] = ok ? "reconstructs" : "reconstruction-failed";
        const int code = ok ? kPositive : kNegative;
        report["exit_code"] = code;
        emit(report, c, out);
        return code;
      },
      any);
}

inline int cmd_basis(const std::string& name, const InputFile& in, const Common& c,
                     std::ostream& out) {
  const Tolerances tol = c.tolerances();
  const AnySystem any = load_system(in, tol);
  return std::visit(
      [&](const auto& sys) {
        const BasisVerdict v = is_gf_orthonormal(sys, c.tol, tol);
        const RieszVerdict rv = riesz_bounds(sys, c.tol, tol.rank);
        json report = envelope(name, json::object(), {in}, tol);
        json result = to_json(v);
        result["gf_complete"] = rv.complete;
        result["synthesis_sigma_min"] = number(rv.sigma_min);
        result["synthesis_sigma_max"] = number(rv.sigma_max);
        bool positive = v.is_riesz;
        if (name == "onb") {
          result["decomposition"] = to_json(orthogonal_decomposition(sys, c.tol, tol.rank));
          positive = v.is_gf_orthonormal;
          report["verdict"] = positive ? "gf-orthonormal" : "not-gf-orthonormal";
        } else {
          report["verdict"] = positive ? "gf-riesz" : "NotRiesz";
        }
        report["result"] = std::move(result);
        const int code = positive ? kPositive : kNegative;
        report["exit_code"] = code;
        emit(report, c, out);
        return code;
      },
      any);
}

inline int cmd_cross(const InputFile& theta_in, const InputFile& lambda_in, const Common& c,
                     std::ostream& out) {
  const Tolerances tol = c.tolerances();
  const AnySystem theta_any = load_system(theta_in, tol);
  const AnySystem lambda_any = load_system(lambda_in, tol);
  return visit_pair(theta_any, lambda_any, [&](const auto& theta, const auto& lambda) {
    using S = typename std::decay_t<decltype(theta)>::Scalar;
    CrossOperatorReport<S> r = cross_operator(theta, lambda, c.tol, tol);
    r = classify_cross_operator(std::move(r), lambda, c.tol, tol);
    json vm = gfusion::detail::matrix_to_json<S>(r.v);
    json report = envelope("cross", json::object(), {theta_in, lambda_in}, tol);
    report["result"] = {{"V", vm},
                        {"intertwine_residual", number(r.intertwine_residual)},
                        {"norm", number(r.norm)},
                        {"norm_bound", number(r.norm_bound)},
                        {"sigma_min", number(r.sigma_min)},
                        {"surjective", r.surjective},
                        {"isometry_deviation", number(r.isometry_deviation)},
                        {"adjoint_isometric", r.adjoint_isometric},
                        {"invertible", r.invertible},
                        {"unitary", r.unitary},
                        {"lambda_parseval", r.lambda_parseval},
                        {"lambda_riesz", r.lambda_riesz},
                        {"lambda_orthonormal", r.lambda_orthonormal},
                        {"corollaries_hold", r.corollaries_hold}};
    const bool ok = r.intertwine_residual <= c.tol && r.surjective && r.corollaries_hold;
    report["verdict"] = ok ? "intertwined" : "inconsistent";
    const int code = ok ? kPositive : kNegative;
    report["exit_code"] = code;
    emit(report, c, out);
    return code;
  });
}

inline int cmd_induce(const InputFile& in, const Common& c, bool random_onbs, std::uint64_t seed,
                      std::ostream& out) {
  const Tolerances tol = c.tolerances();
  const AnySystem any = load_system(in, tol);
  return std::visit(
      [&](const auto& sys) {
        using S = typename std::decay_t<decltype(sys)>::Scalar;
        std::optional<std::vector<Matrix<S>>> onbs;
        if (random_onbs) {
          Rng rng(seed);
          onbs.emplace();
          for (std::size_t j = 0; j < sys.size(); ++j) {
            onbs->push_back(random_unitary<S>(sys.block_dim(j), rng));
          }
        }
        const InducedFamily<S> fam = induce_vectors(sys, onbs, tol.ortho);
        const CorrespondenceReport r = verify_correspondence(sys, fam, c.tol, tol);
        json vectors = json::array();
        for (const auto& iv : fam.vectors) {
          vectors.push_back({{"j", iv.j}, {"k", iv.k}, {"u", vector_json<S>(iv.u)}});
        }
        json options = json{{"random_onbs", random_onbs}};
        if (random_onbs) options["seed"] = seed;
        json report = envelope("induce", std::move(options), {in}, tol);
        report["result"] = {{"family", std::move(vectors)}, {"correspondence", to_json(r)}};
        report["verdict"] = r.consistent ? "correspondence-holds" : "correspondence-fails";
        const int code = r.consistent ? kPositive : kNegative;
        report["exit_code"] = code;
        emit(report, c, out);
        return code;
      },
      any);
}

struct PerturbArgs {
  std::string theorem;
  std::uint64_t seed = 0;
  PerturbParams params;
  int samples = 2000;
};

inline int cmd_perturb(const InputFile& lambda_in, const InputFile& theta_in, const Common& c,
                       const PerturbArgs& a, std::ostream& out) {
  const Tolerances tol = c.tolerances();
  const AnySystem lambda_any = load_system(lambda_in, tol);
  const AnySystem theta_any = load_system(theta_in, tol);
  return visit_pair(lambda_any, theta_any, [&](const auto& lambda, const auto& theta) {
    using S = typename std::decay_t<decltype(lambda)>::Scalar;
    SamplingOptions opt(a.seed);
    opt.samples = a.samples;
    opt.tol = c.tol;
    json options = json{{"theorem", a.theorem},
                        {"seed", a.seed},
                        {"samples", a.samples},
                        {"lambda", a.params.lambda},
                        {"mu", a.params.mu},
                        {"gamma", a.params.gamma}};
    json report = envelope("perturb", std::move(options), {lambda_in, theta_in}, tol);
    bool ok = false;
    if (a.theorem == "lemma") {
      if (auto why = structure_mismatch(lambda, theta, tol.verdict)) {
        throw SystemMismatch("perturbation pair: " + *why);
      }
      // U = S_Θ S_Λ⁻¹ with λ1 = λ + γ/√A and λ2 = μ.
      const FrameVerdict lv = frame_bounds(lambda, tol);
      if (!lv.is_frame()) throw NotAFrame("the unperturbed system is not a frame");
      const Matrix<S> u = frame_operator(theta) * hpd_inverse(frame_operator(lambda), tol.pd, tol.herm);
      const double l1 = a.params.lambda + a.params.gamma / std::sqrt(lv.bounds->lower);
      const LemmaReport r = check_invertibility_lemma(u, l1, a.params.mu, opt);
      report["result"] = to_json(r);
      ok = r.hypothesis_holds && r.sandwich_ok();
    } else {
      PerturbationReport r;
      if (a.theorem == "frame-operator") {
        r = certify_frame_operator_perturbation(lambda, theta, a.params, opt, tol);
      } else if (a.theorem == "r-condition") {
        r = certify_r_condition(lambda, theta, opt, tol);
      } else if (a.theorem == "synthesis") {
        r = certify_synthesis_perturbation(lambda, theta, a.params, opt, tol);
      } else {
        r = certify_analysis_perturbation(lambda, theta, c.tol, tol);
      }
      report["result"] = to_json(r);
      ok = r.hypothesis_holds && r.bracket_ok;
    }
    report["verdict"] = ok ? "certified-sound" : "not-certified";
    const int code = ok ? kPositive : kNegative;
    report["exit_code"] = code;
    emit(report, c, out);
    return code;
  });
}

struct GenArgs {
  Index dim = 0;
  std::size_t blocks = 0;
  std::string kind = "frame";
  std::uint64_t seed = 0;
  std::string field = "real";
  std::string over;
  std::string perturb;
  double scale = 0.0;
};

inline int cmd_gen(const GenArgs& g, const Common& c, std::ostream& out) {
  const Tolerances tol = c.tolerances();
  const SystemKind kind = *parse_system_kind(g.kind);
  Rng rng(g.seed);
  std::string text;
  if (!g.perturb.empty()) {
    const AnySystem base = load_system(read_input(g.perturb), tol);
    text = std::visit([&](const auto& s) { return serialize(perturb_operators(s, g.scale, rng)); }, base);
  } else if (!g.over.empty()) {
    const AnySystem base = load_system(read_input(g.over), tol);
    text = std::visit(
        [&](const auto& theta) {
          if (!is_gf_orthonormal(theta, c.tol, tol).is_gf_orthonormal) {
            throw PreconditionFailed("--over needs a gf-orthonormal basis");
          }
          return serialize(generate_over_orthonormal(theta, kind, rng));
        },
        base);
  } else {
    if (g.dim < 1 || g.blocks < 1) throw InvalidArgument("gen needs --dim and --blocks ≥ 1");
    text = g.field == "complex" ? serialize(generate<Complex>(kind, g.dim, g.blocks, rng))
                                : serialize(generate<double>(kind, g.dim, g.blocks, rng));
  }
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_file(c.out, text);
  }
  return kPositive;
}

}  // namespace detail

/// Runs one command line. argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Toolkit for generalized fusion frames in finite dimension", "gfusion"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::string file_a;
  std::string file_b;

  auto* analyze = app.add_subcommand("analyze", "Frame verdict, optimal bounds, gf-completeness");
  analyze->add_option("system", file_a, "System file")->required();
  add_common(analyze, common);

  std::uint64_t seed = 0;
  int dual_samples = 100;
  std::string dual_out;
  auto* dual = app.add_subcommand("dual", "Canonical dual and reconstruction residuals");
  dual->add_option("system", file_a, "System file")->required();
  dual->add_option("--seed", seed, "Seed for the random test vectors");
  dual->add_option("--samples", dual_samples, "Number of random test vectors")
      ->check(CLI::PositiveNumber);
  dual->add_option("--dual-out", dual_out, "Also write the dual as a system file");
  add_common(dual, common);

  auto* riesz = app.add_subcommand("riesz", "gf-Riesz basis verdict");
  riesz->add_option("system", file_a, "System file")->required();
  add_common(riesz, common);

  auto* onb = app.add_subcommand("onb", "gf-orthonormal basis verdict and decomposition checks");
  onb->add_option("system", file_a, "System file")->required();
  add_common(onb, common);

  auto* cross = app.add_subcommand("cross", "Cross operator between a gf-orthonormal basis and a frame");
  cross->add_option("theta", file_a, "gf-orthonormal basis")->required();
  cross->add_option("lambda", file_b, "g-fusion frame on the same subspaces and weights")->required();
  add_common(cross, common);

  bool random_onbs = false;
  auto* induce = app.add_subcommand("induce", "Induced vector family and correspondence report");
  induce->add_option("system", file_a, "System file")->required();
  induce->add_flag("--random-onbs", random_onbs, "Use random orthonormal bases of each H_j");
  induce->add_option("--seed", seed, "Seed for --random-onbs");
  add_common(induce, common);

  PerturbArgs pa;
  auto* perturb = app.add_subcommand("perturb", "Certify a perturbation bound for a pair of systems");
  perturb->add_option("frame", file_a, "Unperturbed frame Λ")->required();
  perturb->add_option("perturbed", file_b, "Perturbed system Θ")->required();
  // Short spellings are accepted and normalized to the long names.
  const std::map<std::string, std::string> short_names{
      {"t52", "frame-operator"}, {"cR", "r-condition"}, {"synth", "synthesis"}};
  perturb->add_option("--theorem", pa.theorem, "Which result to certify")
      ->required()
      ->transform(CLI::Transformer(short_names))
      ->check(CLI::IsMember({"frame-operator", "r-condition", "synthesis", "analysis", "lemma"}));
  perturb->add_option("--seed", pa.seed, "Seed for the sampled hypothesis checks");
  perturb->add_option("--lambda", pa.params.lambda, "λ parameter")->check(CLI::NonNegativeNumber);
  perturb->add_option("--mu", pa.params.mu, "μ parameter")->check(CLI::NonNegativeNumber);
  perturb->add_option("--gamma", pa.params.gamma, "γ parameter")->check(CLI::NonNegativeNumber);
  perturb->add_option("--samples", pa.samples, "Random samples for sampled checks")
      ->check(CLI::PositiveNumber);
  add_common(perturb, common);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a random system file");
  gen->add_option("--dim", ga.dim, "Ambient dimension n");
  gen->add_option("--blocks", ga.blocks, "Number of subsystems J");
  gen->add_option("--kind", ga.kind, "System kind")
      ->check(CLI::IsMember({"frame", "parseval", "onb", "riesz"}));
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--field", ga.field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
  auto* over_opt = gen->add_option("--over", ga.over,
                                   "Draw operators on the structure of this gf-orthonormal basis");
  auto* perturb_opt =
      gen->add_option("--perturb", ga.perturb, "Emit a noisy copy of this system (see --scale)");
  gen->add_option("--scale", ga.scale, "Noise scale for --perturb")->check(CLI::NonNegativeNumber);
  over_opt->excludes(perturb_opt);
  add_common(gen, common);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "gfusion: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(read_input(file_a), common, out);
    if (*dual) return cmd_dual(read_input(file_a), common, seed, dual_samples, dual_out, out);
    if (*riesz) return cmd_basis("riesz", read_input(file_a), common, out);
    if (*onb) return cmd_basis("onb", read_input(file_a), common, out);
    if (*cross) return cmd_cross(read_input(file_a), read_input(file_b), common, out);
    if (*induce) return cmd_induce(read_input(file_a), common, random_onbs, seed, out);
    if (*perturb) return cmd_perturb(read_input(file_a), read_input(file_b), common, pa, out);
    if (*gen) return cmd_gen(ga, common, out);
  } catch (const Error& e) {
    err << "gfusion: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace gfusion::cli
