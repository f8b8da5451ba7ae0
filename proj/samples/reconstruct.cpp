// Draws a random real frame, builds its canonical dual and reconstructs a
// random vector both ways.

#include <gfusion/gfusion.hpp>

#include <cstdio>

int main() {
  using namespace gfusion;
  Rng rng(7);
  const auto sys = generate<double>(SystemKind::frame, 6, 3, rng);
  const FrameVerdict v = frame_bounds(sys);
  std::printf("optimal bounds: A = %.6f, B = %.6f\n", v.bounds->lower, v.bounds->upper);

  const auto dual = canonical_dual(sys);
  const Vector<double> f = random_unit_vector<double>(6, rng);
  const auto r = reconstruct(sys, dual, f);
  std::printf("residual (primal):  %.3e\n", r.primal_residual);
  std::printf("residual (swapped): %.3e\n", r.swapped_residual);
  return 0;
}
