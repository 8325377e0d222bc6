#include "hypcurve/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hypcurve/error.hpp"
#include "hypcurve/hyperbolic.hpp"
#include "hypcurve/linalg.hpp"

namespace hypcurve {

namespace {

struct Chart {
  Matrix<double> t;
  double extent = 2;
  int size = 400;

  Point3<double> at(int px, int py) const {
    const double u = extent * (2.0 * (px + 0.5) / size - 1.0);
    const double v = extent * (1.0 - 2.0 * (py + 0.5) / size);
    return {t(0, 0) + u * t(0, 1) + v * t(0, 2), t(1, 0) + u * t(1, 1) + v * t(1, 2),
            t(2, 0) + u * t(2, 1) + v * t(2, 2)};
  }
};

// Largest distance from e to the boundary of the region along 72 chart directions.
double auto_extent(const Form<double>& f, const Matrix<double>& t) {
  const double fe = f.eval(Point3<double>{t(0, 0), t(1, 0), t(2, 0)});
  double best = 0;
  for (int k = 0; k < 72; ++k) {
    const double c = std::cos(k * M_PI / 36), s = std::sin(k * M_PI / 36);
    for (double r = 1e-3; r < 1e4; r *= 1.02) {
      Point3<double> p{t(0, 0) + r * (c * t(0, 1) + s * t(0, 2)), t(1, 0) + r * (c * t(1, 1) + s * t(1, 2)),
                       t(2, 0) + r * (c * t(2, 1) + s * t(2, 2))};
      if (f.eval(p) * fe <= 0) {
        best = std::max(best, r);
        break;
      }
    }
  }
  return best > 0 ? 1.6 * best : 2.0;
}

using Mask = std::vector<std::vector<char>>;

Mask sign_boundary(const Form<double>& f, const Chart& ch) {
  const int n = ch.size;
  std::vector<std::vector<int>> sg(n, std::vector<int>(n));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double v = f.eval(ch.at(x, y));
      sg[y][x] = v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
  Mask m(n, std::vector<char>(n, 0));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      if (sg[y][x] == 0 || (x + 1 < n && sg[y][x] != sg[y][x + 1]) || (y + 1 < n && sg[y][x] != sg[y + 1][x]))
        m[y][x] = 1;
    }
  return m;
}

// Horizontal runs of set pixels as rects.
void emit_mask(std::ostringstream& os, const Mask& m, const char* color, const char* id) {
  os << "<g id=\"" << id << "\" fill=\"" << color << "\">\n";
  const int n = static_cast<int>(m.size());
  for (int y = 0; y < n; ++y) {
    int x = 0;
    while (x < n) {
      if (!m[y][x]) {
        ++x;
        continue;
      }
      int x1 = x;
      while (x1 < n && m[y][x1]) ++x1;
      os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << (x1 - x) << "\" height=\"1\"/>\n";
      x = x1;
    }
  }
  os << "</g>\n";
}

}  // namespace

std::string render_svg(const RenderInput& in, const RenderOptions& options) {
  if (options.size < 8) throw InputError("render size must be at least 8 pixels");
  Chart ch;
  ch.size = options.size;
  ch.t = frame_for(in.e);
  const Form<double> f = in.f.normalized();
  if (f.eval(in.e) == 0) throw InputError("f vanishes at e");
  ch.extent = options.extent > 0 ? options.extent : auto_extent(f, ch.t);
  const int n = ch.size;

  Mask region(n, std::vector<char>(n, 0)), mismatch(n, std::vector<char>(n, 0));
  bool any_mismatch = false;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const Point3<double> a = ch.at(x, y);
      const bool in_f = cone_contains(f, in.e, a);
      region[y][x] = in_f;
      if (in.pencil) {
        auto eig = symmetric_eigenvalues(in.pencil->at(a));
        const double scale = std::max(std::fabs(eig.front()), std::fabs(eig.back()));
        const bool in_m = eig.front() >= -1e-10 * scale;
        if (in_m != in_f) {
          mismatch[y][x] = 1;
          any_mismatch = true;
        }
      }
    }

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << n << "\" height=\"" << n << "\" viewBox=\"0 0 "
     << n << " " << n << "\" shape-rendering=\"crispEdges\">\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "<!-- chart: frame of e, window [-%.6g, %.6g]^2 -->\n", ch.extent, ch.extent);
  os << buf;
  os << "<rect width=\"" << n << "\" height=\"" << n << "\" fill=\"#ffffff\"/>\n";
  emit_mask(os, region, "#cfe3f7", "region");
  if (any_mismatch) emit_mask(os, mismatch, "#e4572e", "mismatch");
  for (std::size_t i = 0; i < in.lines.size(); ++i)
    emit_mask(os, sign_boundary(in.lines[i].normalized(), ch), "#e9a23b", ("line" + std::to_string(i + 1)).c_str());
  if (in.g) emit_mask(os, sign_boundary(in.g->normalized(), ch), "#2a9d8f", "g");
  emit_mask(os, sign_boundary(f, ch), "#111111", "f");
  os << "</svg>\n";
  return os.str();
}

}  // namespace hypcurve
