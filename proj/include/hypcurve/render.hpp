#pragma once

// Static SVG picture of V(f), V(g), the hyperbolicity region, the lines l_i and, for a pencil,
// the pixels where S(M) and C(f,e) disagree. Drawn in the affine chart of frame_for(e).

#include <optional>
#include <string>
#include <vector>

#include "hypcurve/form.hpp"
#include "hypcurve/pencil.hpp"

namespace hypcurve {

struct RenderOptions {
  int size = 400;      // pixels per side
  double extent = 0;   // half-width of the chart window; 0 picks one from the region
};

struct RenderInput {
  Form<double> f;
  Point3<double> e;
  std::optional<Form<double>> g;
  std::vector<Form<double>> lines;
  std::optional<LinearPencil<double>> pencil;
};

std::string render_svg(const RenderInput& in, const RenderOptions& options = {});

}  // namespace hypcurve
