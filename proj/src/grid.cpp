#include "ppct/grid.hpp"

#include <algorithm>
#include <sstream>

namespace ppct {

GridGeometry GridGeometry::make_2d(int nx, int ny, double x0, double x1, double y0, double y1) {
  GridGeometry g;
  g.dim = 2;
  g.n = {nx, ny, 1};
  g.origin = {x0, y0, 0.0};
  g.extent = {x1 - x0, y1 - y0, 1.0};
  g.validate();
  return g;
}

GridGeometry GridGeometry::make_3d(int nx, int ny, int nz, double x0, double x1, double y0,
                                   double y1, double z0, double z1) {
  GridGeometry g;
  g.dim = 3;
  g.n = {nx, ny, nz};
  g.origin = {x0, y0, z0};
  g.extent = {x1 - x0, y1 - y0, z1 - z0};
  g.validate();
  return g;
}

double GridGeometry::min_spacing() const {
  double h = d(0);
  for (int a = 1; a < dim; ++a) h = std::min(h, d(a));
  return h;
}

double GridGeometry::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= d(a);
  return v;
}

Vec3 GridGeometry::center(int i, int j, int k) const {
  return {center(0, i), center(1, j), dim == 3 ? center(2, k) : 0.0};
}

std::size_t GridGeometry::interior_count() const {
  return static_cast<std::size_t>(n[0]) * n[1] * n[2];
}

void GridGeometry::validate() const {
  std::ostringstream os;
  if (dim != 2 && dim != 3) os << "dim must be 2 or 3, got " << dim;
  else if (ghost < 2) os << "ghost width must be >= 2, got " << ghost;
  else {
    for (int a = 0; a < 3; ++a) {
      if (n[a] < 1) { os << "axis " << a << " needs at least one cell"; break; }
      if (!(extent[a] > 0.0)) { os << "axis " << a << " has non-positive extent"; break; }
    }
    if (os.str().empty() && dim == 2 && n[2] != 1) os << "2D geometry must have nz = 1";
  }
  if (!os.str().empty()) throw ConfigurationError(os.str());
}

std::vector<double> axis_centers(const GridGeometry& g, int axis) {
  std::vector<double> c(static_cast<std::size_t>(g.n[axis]));
  for (int i = 0; i < g.n[axis]; ++i) c[static_cast<std::size_t>(i)] = g.center(axis, i);
  return c;
}

std::vector<Vec3> cell_centers(const GridGeometry& g) {
  std::vector<Vec3> c;
  c.reserve(g.interior_count());
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) c.push_back(g.center(i, j, k));
  return c;
}

//----------------------------------------------------------------------------------------

BoundarySpec BoundarySpec::all(const BoundaryCondition& c) {
  BoundarySpec s;
  s.face.fill(c);
  return s;
}

BoundarySpec& BoundarySpec::set(int axis, Side side, BoundaryCondition c) {
  face[2 * axis + static_cast<int>(side)] = std::move(c);
  return *this;
}

bool BoundarySpec::periodic(int axis) const {
  return std::holds_alternative<Periodic>(at(axis, Side::Lo)) &&
         std::holds_alternative<Periodic>(at(axis, Side::Hi));
}

void BoundarySpec::validate(int dim) const {
  static const char* names = "xyz";
  for (int a = 0; a < dim; ++a) {
    const bool lo = std::holds_alternative<Periodic>(at(a, Side::Lo));
    const bool hi = std::holds_alternative<Periodic>(at(a, Side::Hi));
    if (lo != hi)
      throw ConfigurationError(std::string("unpaired periodic face on axis ") + names[a]);
    for (int s = 0; s < 2; ++s) {
      const auto* mi = std::get_if<MaskedInflow>(&at(a, static_cast<Side>(s)));
      if (mi && !mi->mask)
        throw ConfigurationError(std::string("masked inflow without predicate on axis ") +
                                 names[a]);
    }
  }
}

}  // namespace ppct
