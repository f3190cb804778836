#pragma once

#include <string>
#include <vector>

#include "squarepeg/curve.hpp"
#include "squarepeg/solver.hpp"

namespace squarepeg {

struct RenderOptions {
  int curve_samples = 2048;
  bool ghost_circle = true;      // faint unit circle for scale reference
  bool locus_overlay = false;    // second-diagonal locus plus bump graph
  double locus_c = 0.0;
  double locus_a = 0.02;
  int size = 800;                // square canvas, world window [-1.6, 1.6]^2
};

std::string render_svg(const Curve& curve, const std::vector<Square>& squares,
                       const RenderOptions& options = {});

}  // namespace squarepeg
