#pragma once

//
// Random test systems.
//
//   onb      - a random orthonormal basis of H split into J blocks;
//              W_j = block span, Λ_j = coordinate map, v_j = 1
//   parseval - onb with each Λ_j post-composed by a random unitary and
//              arbitrary junk added on W_j^⊥ (invisible to Λ_j π_{W_j})
//   riesz    - onb pushed through a random invertible M with singular
//              values in [0.5, 2]: W_j ← M W_j, Λ_j ← Λ_j Mᴴ
//   frame    - random subspaces and operators, weights in [0.5, 2],
//              redrawn until the frame verdict holds
//

#include <gfusion/frame.hpp>
#include <gfusion/random.hpp>

#include <algorithm>
#include <optional>
#include <string>

namespace gfusion {

enum class SystemKind { frame, parseval, onb, riesz };

inline const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::frame: return "frame";
    case SystemKind::parseval: return "parseval";
    case SystemKind::onb: return "onb";
    case SystemKind::riesz: return "riesz";
  }
  return "?";
}

inline std::optional<SystemKind> parse_system_kind(const std::string& s) {
  if (s == "frame") return SystemKind::frame;
  if (s == "parseval") return SystemKind::parseval;
  if (s == "onb") return SystemKind::onb;
  if (s == "riesz") return SystemKind::riesz;
  return std::nullopt;
}

namespace detail {

/// Random composition of n into `parts` positive sizes.
inline std::vector<Index> random_partition(Index n, std::size_t parts, Rng& rng) {
  std::vector<Index> sizes(parts, 1);
  for (Index extra = n - static_cast<Index>(parts); extra > 0; --extra) {
    sizes[static_cast<std::size_t>(uniform_index(rng, 0, static_cast<Index>(parts) - 1))] += 1;
  }
  return sizes;
}

/// Orthonormal column blocks Q_j of a random unitary, split by a random
/// partition.
template <Field S>
std::vector<Matrix<S>> random_onb_blocks(Index n, std::size_t blocks, Rng& rng) {
  const Matrix<S> q = random_unitary<S>(n, rng);
  std::vector<Matrix<S>> out;
  Index at = 0;
  for (Index size : random_partition(n, blocks, rng)) {
    out.push_back(q.middleCols(at, size));
    at += size;
  }
  return out;
}

}  // namespace detail

template <Field S>
GFusionSystem<S> generate(SystemKind kind, Index n, std::size_t blocks, Rng& rng) {
  if (n < 1 || blocks < 1) throw InvalidArgument("generate: need n ≥ 1 and J ≥ 1");
  if (kind != SystemKind::frame && static_cast<Index>(blocks) > n) {
    throw InvalidArgument("generate: " + std::string(to_string(kind)) +
                          " systems need J ≤ n (each block is a non-trivial piece of a basis)");
  }

  if (kind == SystemKind::frame) {
    const Index min_dim = (n + static_cast<Index>(blocks) - 1) / static_cast<Index>(blocks);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<Subsystem<S>> subs;
      for (std::size_t j = 0; j < blocks; ++j) {
        const Index k = uniform_index(rng, min_dim, n);
        const Index m = uniform_index(rng, min_dim, n);
        const double v = uniform(rng, 0.5, 2.0);
        Subspace<S> w = orthonormalize<S>(gaussian_matrix<S>(n, k, rng));
        Matrix<S> op = gaussian_matrix<S>(m, n, rng) / std::sqrt(static_cast<double>(n));
        subs.push_back({v, std::move(w), std::move(op)});
      }
      GFusionSystem<S> sys(n, std::move(subs));
      if (frame_bounds(sys).is_frame()) return sys;
    }
    throw Error("generate: could not draw a frame in 1000 attempts");
  }

  const auto q = detail::random_onb_blocks<S>(n, blocks, rng);
  std::vector<Subsystem<S>> subs;
  if (kind == SystemKind::riesz) {
    const Matrix<S> m = random_conditioned<S>(n, 0.5, 2.0, rng);
    for (const auto& qj : q) {
      subs.push_back({1.0, orthonormalize<S>(m * qj), qj.adjoint() * m.adjoint()});
    }
    return GFusionSystem<S>(n, std::move(subs));
  }
  for (const auto& qj : q) {
    Subspace<S> w = Subspace<S>::from_orthonormal(qj, 1e-8);
    Matrix<S> op = qj.adjoint();
    if (kind == SystemKind::parseval) {
      const Matrix<S> u = random_unitary<S>(qj.cols(), rng);
      const Matrix<S> junk = gaussian_matrix<S>(qj.cols(), n, rng);
      const Matrix<S> off = Matrix<S>::Identity(n, n) - qj * qj.adjoint();
      op = u * op + junk * off;
    }
    subs.push_back({1.0, std::move(w), std::move(op)});
  }
  return GFusionSystem<S>(n, std::move(subs));
}

template <Field S>
GFusionSystem<S> generate(SystemKind kind, Index n, std::size_t blocks, std::uint64_t seed) {
  Rng rng(seed);
  return generate<S>(kind, n, blocks, rng);
}

/// A system of the requested kind on the structure (W_j, v_j, m_j) of a
/// gf-orthonormal basis θ, suitable as the frame side of a cross-operator
/// pair. With Y_j = v_j π_{W_j} θ_jᴴ (isometries with orthogonal images),
/// Λ_j = v_j⁻¹ B_j Y_jᴴ + junk·(I − π_{W_j}) where B_j is Gaussian (frame),
/// well conditioned (riesz) or unitary (parseval, onb).
template <Field S>
GFusionSystem<S> generate_over_orthonormal(const GFusionSystem<S>& theta, SystemKind kind, Rng& rng) {
  const Index n = theta.ambient_dim();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Matrix<S>> ops;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const Index m = theta.block_dim(j);
      const Matrix<S> y = theta.weight(j) * theta.restricted(j).adjoint();
      Matrix<S> b;
      switch (kind) {
        case SystemKind::frame: b = gaussian_matrix<S>(m, m, rng); break;
        case SystemKind::riesz: b = random_conditioned<S>(m, 0.5, 2.0, rng); break;
        case SystemKind::parseval:
        case SystemKind::onb: b = random_unitary<S>(m, rng); break;
      }
      Matrix<S> op = (b * y.adjoint()) / theta.weight(j);
      if (kind == SystemKind::frame) {
        const Matrix<S> off = Matrix<S>::Identity(n, n) - theta.projector(j);
        op += gaussian_matrix<S>(m, n, rng) * off;
      }
      ops.push_back(std::move(op));
    }
    GFusionSystem<S> sys = with_operators(theta, ops);
    if (frame_bounds(sys).is_frame()) return sys;
  }
  throw Error("generate_over_orthonormal: could not draw a frame in 1000 attempts");
}

/// Θ_j = Λ_j + scale · G_j / √n with Gaussian G_j; same (W_j, v_j).
template <Field S>
GFusionSystem<S> perturb_operators(const GFusionSystem<S>& sys, double scale, Rng& rng) {
  std::vector<Matrix<S>> ops;
  const double norm = std::sqrt(static_cast<double>(sys.ambient_dim()));
  for (std::size_t j = 0; j < sys.size(); ++j) {
    ops.push_back(sys.lambda(j) +
                  (scale / norm) * gaussian_matrix<S>(sys.block_dim(j), sys.ambient_dim(), rng));
  }
  return with_operators(sys, ops);
}

}  // namespace gfusion
