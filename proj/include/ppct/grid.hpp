#pragma once
//========================================================================================
// Uniform Cartesian geometry, ghosted field storage and boundary conditions.
//========================================================================================

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ppct/core.hpp"

namespace ppct {

struct GridGeometry {
  int dim = 2;
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  std::array<double, 3> extent{1.0, 1.0, 1.0};
  int ghost = 2;

  static GridGeometry make_2d(int nx, int ny, double x0, double x1, double y0, double y1);
  static GridGeometry make_3d(int nx, int ny, int nz, double x0, double x1, double y0, double y1,
                              double z0, double z1);

  double d(int axis) const { return extent[axis] / n[axis]; }
  double dx() const { return d(0); }
  double dy() const { return d(1); }
  double dz() const { return d(2); }
  double min_spacing() const;
  double cell_volume() const;

  // Valid for ghost indices too.
  double center(int axis, int i) const { return origin[axis] + (i + 0.5) * d(axis); }
  Vec3 center(int i, int j, int k) const;

  // Ghost layers actually present along an axis (none along z in 2D).
  int ghosts(int axis) const { return axis < dim ? ghost : 0; }
  std::size_t interior_count() const;

  void validate() const;
};

std::vector<double> axis_centers(const GridGeometry& g, int axis);
// Interior cell centers, x fastest.
std::vector<Vec3> cell_centers(const GridGeometry& g);

//----------------------------------------------------------------------------------------
//! \class Field
//  Dense array over the interior plus ghost region, row-major in (z, y, x).

template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const GridGeometry& g, const T& fill = T{}) : geom_(g) {
    g.validate();
    std::size_t total = 1;
    for (int a = 0; a < 3; ++a) {
      size_[a] = g.n[a] + 2 * g.ghosts(a);
      total *= static_cast<std::size_t>(size_[a]);
    }
    stride_ = {1, size_[0], static_cast<std::ptrdiff_t>(size_[0]) * size_[1]};
    offset_ = g.ghosts(0) * stride_[0] + g.ghosts(1) * stride_[1] + g.ghosts(2) * stride_[2];
    data_.assign(total, fill);
  }

  const GridGeometry& geometry() const { return geom_; }
  int dim() const { return geom_.dim; }
  int n(int axis) const { return geom_.n[axis]; }

  std::size_t index(int i, int j, int k = 0) const {
    return static_cast<std::size_t>(offset_ + i * stride_[0] + j * stride_[1] + k * stride_[2]);
  }
  std::ptrdiff_t stride(int axis) const { return stride_[axis]; }

  T& operator()(int i, int j, int k = 0) { return data_[index(i, j, k)]; }
  const T& operator()(int i, int j, int k = 0) const { return data_[index(i, j, k)]; }
  T& operator[](std::size_t idx) { return data_[idx]; }
  const T& operator[](std::size_t idx) const { return data_[idx]; }

  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  // f(i, j, k, idx) over interior cells, x fastest.
  template <class F>
  void for_interior(F&& f) const {
    for (int k = 0; k < geom_.n[2]; ++k)
      for (int j = 0; j < geom_.n[1]; ++j)
        for (int i = 0; i < geom_.n[0]; ++i) f(i, j, k, index(i, j, k));
  }

  // f(i, j, k, idx) over interior cells widened by `w` layers on every active axis.
  template <class F>
  void for_extended(int w, F&& f) const {
    const int wz = geom_.dim == 3 ? w : 0;
    for (int k = -wz; k < geom_.n[2] + wz; ++k)
      for (int j = -w; j < geom_.n[1] + w; ++j)
        for (int i = -w; i < geom_.n[0] + w; ++i) f(i, j, k, index(i, j, k));
  }

 private:
  GridGeometry geom_;
  std::array<int, 3> size_{1, 1, 1};
  std::array<std::ptrdiff_t, 3> stride_{1, 1, 1};
  std::ptrdiff_t offset_ = 0;
  std::vector<T> data_;
};

using FieldGrid = Field<CellState>;

// Interior-only copy of the values of `src` into `dst` (same geometry).
template <class T>
void copy_interior(const Field<T>& src, Field<T>& dst) {
  src.for_interior([&](int, int, int, std::size_t idx) { dst[idx] = src[idx]; });
}

//----------------------------------------------------------------------------------------
// Boundary conditions

struct Periodic {};
struct Outflow {};
struct Reflecting {};
struct Inflow {
  CellState state;
};
using SimpleCondition = std::variant<Outflow, Reflecting, Inflow>;
struct MaskedInflow {
  std::function<bool(const Vec3&)> mask;  // evaluated at the ghost cell center
  CellState inside;
  SimpleCondition outside;
};
using BoundaryCondition = std::variant<Periodic, Outflow, Reflecting, Inflow, MaskedInflow>;

enum class Side { Lo = 0, Hi = 1 };

struct BoundarySpec {
  std::array<BoundaryCondition, 6> face{};  // x-lo, x-hi, y-lo, y-hi, z-lo, z-hi

  static BoundarySpec all(const BoundaryCondition& c);
  BoundarySpec& set(int axis, Side side, BoundaryCondition c);
  const BoundaryCondition& at(int axis, Side side) const {
    return face[2 * axis + static_cast<int>(side)];
  }
  bool periodic(int axis) const;
  void validate(int dim) const;
};

// Per-type hooks used by apply_boundaries.
inline void reflect_normal(CellState& s, int axis) {
  s.m[axis] = -s.m[axis];
  s.B[axis] = -s.B[axis];
}
inline void assign_fixed(CellState& dst, const CellState& src) { dst = src; }

namespace detail {

template <class T>
void fill_simple(Field<T>& f, const SimpleCondition& c, int axis, Side side, int layer,
                 std::size_t dst) {
  const auto& g = f.geometry();
  const int n = g.n[axis];
  const std::ptrdiff_t s = f.stride(axis);
  // Offset from the ghost cell to its source along `axis`.
  const int gi = side == Side::Lo ? -1 - layer : n + layer;
  auto source = [&](int si) { return static_cast<std::size_t>(dst + (si - gi) * s); };
  if (std::holds_alternative<Outflow>(c)) {
    f[dst] = f[source(side == Side::Lo ? 0 : n - 1)];
  } else if (std::holds_alternative<Reflecting>(c)) {
    int si = side == Side::Lo ? layer : n - 1 - layer;
    si = si < 0 ? 0 : (si > n - 1 ? n - 1 : si);
    f[dst] = f[source(si)];
    reflect_normal(f[dst], axis);
  } else {
    assign_fixed(f[dst], std::get<Inflow>(c).state);
  }
}

}  // namespace detail

//----------------------------------------------------------------------------------------
//! \fn apply_boundaries
//  Faces are filled axis by axis; axes already processed contribute their ghost range,
//  so edge and corner ghosts are populated too.

template <class T>
void apply_boundaries(Field<T>& f, const BoundarySpec& spec) {
  const GridGeometry& g = f.geometry();
  spec.validate(g.dim);
  for (int axis = 0; axis < g.dim; ++axis) {
    std::array<int, 3> lo{}, hi{};
    for (int b = 0; b < 3; ++b) {
      const int w = b < axis ? g.ghosts(b) : 0;
      lo[b] = -w;
      hi[b] = g.n[b] + w;
    }
    const int n = g.n[axis];
    for (int sd = 0; sd < 2; ++sd) {
      const Side side = static_cast<Side>(sd);
      const BoundaryCondition& c = spec.at(axis, side);
      for (int layer = 0; layer < g.ghost; ++layer) {
        const int gi = side == Side::Lo ? -1 - layer : n + layer;
        lo[axis] = gi;
        hi[axis] = gi + 1;
        for (int k = lo[2]; k < hi[2]; ++k)
          for (int j = lo[1]; j < hi[1]; ++j)
            for (int i = lo[0]; i < hi[0]; ++i) {
              const std::size_t dst = f.index(i, j, k);
              if (std::holds_alternative<Periodic>(c)) {
                const int si = ((gi % n) + n) % n;
                f[dst] = f[static_cast<std::size_t>(dst + (si - gi) * f.stride(axis))];
              } else if (const auto* mi = std::get_if<MaskedInflow>(&c)) {
                if (mi->mask(g.center(i, j, k)))
                  assign_fixed(f[dst], mi->inside);
                else
                  detail::fill_simple(f, mi->outside, axis, side, layer, dst);
              } else if (std::holds_alternative<Outflow>(c)) {
                detail::fill_simple(f, SimpleCondition{Outflow{}}, axis, side, layer, dst);
              } else if (std::holds_alternative<Reflecting>(c)) {
                detail::fill_simple(f, SimpleCondition{Reflecting{}}, axis, side, layer, dst);
              } else {
                assign_fixed(f[dst], std::get<Inflow>(c).state);
              }
            }
      }
    }
  }
}

}  // namespace ppct
