#pragma once

#include <gfusion/linalg.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace gfusion {

/// One member (v_j, W_j, Λ_j) of a g-fusion system. Λ_j is stored as a map
/// on all of H (m_j × n); only Λ_j π_{W_j} ever enters a formula.
template <Field S>
struct Subsystem {
  double weight;
  Subspace<S> subspace;
  Matrix<S> lambda;
};

/// The triple Λ = (W_j, Λ_j, v_j) over a finite index set on an
/// n-dimensional space. Immutable once validated.
template <Field S>
class GFusionSystem {
 public:
  using Scalar = S;

  GFusionSystem(Index ambient_dim, std::vector<Subsystem<S>> subsystems)
      : n_(ambient_dim), subsystems_(std::move(subsystems)) {
    if (n_ < 1) throw InvalidSystem("ambient dimension must be positive");
    if (subsystems_.empty()) throw InvalidSystem("a system needs at least one subsystem");
    offsets_.reserve(subsystems_.size() + 1);
    offsets_.push_back(0);
    for (std::size_t j = 0; j < subsystems_.size(); ++j) {
      const auto& s = subsystems_[j];
      const std::string where = "subsystem " + std::to_string(j) + ": ";
      if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
        throw InvalidSystem(where + "weight must be a finite positive number");
      }
      if (s.subspace.ambient_dim() != n_) {
        throw InvalidSystem(where + "subspace lives in dimension " +
                            std::to_string(s.subspace.ambient_dim()) + ", expected " +
                            std::to_string(n_));
      }
      if (s.lambda.cols() != n_) {
        throw InvalidSystem(where + "operator has " + std::to_string(s.lambda.cols()) +
                            " columns, expected " + std::to_string(n_));
      }
      if (s.lambda.rows() < 1) throw InvalidSystem(where + "target space must be non-trivial");
      if (!s.lambda.allFinite()) throw InvalidSystem(where + "operator has non-finite entries");
      projectors_.push_back(s.subspace.projector());
      restricted_.push_back(s.lambda * projectors_.back());
      offsets_.push_back(offsets_.back() + s.lambda.rows());
    }
  }

  Index ambient_dim() const { return n_; }
  std::size_t size() const { return subsystems_.size(); }
  const std::vector<Subsystem<S>>& subsystems() const { return subsystems_; }
  const Subsystem<S>& operator[](std::size_t j) const { return subsystems_[j]; }

  double weight(std::size_t j) const { return subsystems_[j].weight; }
  const Subspace<S>& subspace(std::size_t j) const { return subsystems_[j].subspace; }
  const Matrix<S>& lambda(std::size_t j) const { return subsystems_[j].lambda; }

  /// π_{W_j}
  const Matrix<S>& projector(std::size_t j) const { return projectors_[j]; }
  /// Λ_j π_{W_j}
  const Matrix<S>& restricted(std::size_t j) const { return restricted_[j]; }

  /// m_j = dim H_j
  Index block_dim(std::size_t j) const { return subsystems_[j].lambda.rows(); }
  /// Offset of block j inside the stacked direct sum.
  Index block_offset(std::size_t j) const { return offsets_[j]; }
  /// Σ m_j
  Index total_block_dim() const { return offsets_.back(); }

 private:
  Index n_;
  std::vector<Subsystem<S>> subsystems_;
  std::vector<Matrix<S>> projectors_;
  std::vector<Matrix<S>> restricted_;
  std::vector<Index> offsets_;
};

/// Builds a system from raw spanning sets, orthonormalizing each W_j.
template <Field S>
struct SpanningSubsystem {
  double weight;
  Matrix<S> spanning;
  Matrix<S> lambda;
};

template <Field S>
GFusionSystem<S> make_system(Index ambient_dim, const std::vector<SpanningSubsystem<S>>& parts,
                             const Tolerances& tol = {}) {
  std::vector<Subsystem<S>> subs;
  subs.reserve(parts.size());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].spanning.rows() != ambient_dim) {
      throw InvalidSystem("subsystem " + std::to_string(j) + ": spanning set has " +
                          std::to_string(parts[j].spanning.rows()) + " rows, expected " +
                          std::to_string(ambient_dim));
    }
    subs.push_back({parts[j].weight, orthonormalize(parts[j].spanning, tol.rank, tol.ortho),
                    parts[j].lambda});
  }
  return GFusionSystem<S>(ambient_dim, std::move(subs));
}

/// Element of the direct sum ⊕ H_j; block j has length m_j.
template <Field S>
struct DirectSumVector {
  std::vector<Vector<S>> blocks;

  double squared_norm() const {
    double s = 0.0;
    for (const auto& b : blocks) s += b.squaredNorm();
    return s;
  }
};

template <Field S>
void require_shape(const GFusionSystem<S>& sys, const DirectSumVector<S>& g) {
  if (g.blocks.size() != sys.size()) {
    throw DimensionMismatch("direct-sum vector has " + std::to_string(g.blocks.size()) +
                            " blocks, system has " + std::to_string(sys.size()));
  }
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (g.blocks[j].size() != sys.block_dim(j)) {
      throw DimensionMismatch("block " + std::to_string(j) + " has length " +
                              std::to_string(g.blocks[j].size()) + ", expected " +
                              std::to_string(sys.block_dim(j)));
    }
  }
}

template <Field S>
Vector<S> flatten(const DirectSumVector<S>& g) {
  Index total = 0;
  for (const auto& b : g.blocks) total += b.size();
  Vector<S> out(total);
  Index at = 0;
  for (const auto& b : g.blocks) {
    out.segment(at, b.size()) = b;
    at += b.size();
  }
  return out;
}

template <Field S>
DirectSumVector<S> unflatten(const GFusionSystem<S>& sys, const Vector<S>& flat) {
  if (flat.size() != sys.total_block_dim()) {
    throw DimensionMismatch("flat direct-sum vector has the wrong length");
  }
  DirectSumVector<S> g;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    g.blocks.push_back(flat.segment(sys.block_offset(j), sys.block_dim(j)));
  }
  return g;
}

/// Describes the first structural difference between two systems in
/// (n, J, m_j, v_j, W_j), or nullopt when they share one structure.
template <Field S>
std::optional<std::string> structure_mismatch(const GFusionSystem<S>& a, const GFusionSystem<S>& b,
                                              double tol = 1e-9) {
  if (a.ambient_dim() != b.ambient_dim()) return "ambient dimensions differ";
  if (a.size() != b.size()) return "index sets differ in size";
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::string at = " at subsystem " + std::to_string(j);
    if (a.block_dim(j) != b.block_dim(j)) return "target dimensions differ" + at;
    if (std::abs(a.weight(j) - b.weight(j)) > tol * std::max(a.weight(j), b.weight(j))) {
      return "weights differ" + at;
    }
    if (a.subspace(j).dim() != b.subspace(j).dim()) return "subspace dimensions differ" + at;
    if ((a.projector(j) - b.projector(j)).cwiseAbs().maxCoeff() > tol) {
      return "subspaces differ" + at;
    }
  }
  return std::nullopt;
}

/// Same (W_j, v_j) as `sys` with the operators replaced.
template <Field S>
GFusionSystem<S> with_operators(const GFusionSystem<S>& sys, const std::vector<Matrix<S>>& ops) {
  if (ops.size() != sys.size()) throw DimensionMismatch("operator count differs from system size");
  std::vector<Subsystem<S>> subs;
  subs.reserve(sys.size());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    subs.push_back({sys.weight(j), sys.subspace(j), ops[j]});
  }
  return GFusionSystem<S>(sys.ambient_dim(), std::move(subs));
}

}  // namespace gfusion
