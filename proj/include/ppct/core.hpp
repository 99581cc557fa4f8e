#pragma once
//========================================================================================
// State types, equation of state, admissibility and GQL helpers.
//========================================================================================

#include <cmath>
#include <stdexcept>
#include <string>

namespace ppct {

//----------------------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPhysicalState : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

//----------------------------------------------------------------------------------------
// Vec3

struct Vec3 {
  double c[3]{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

  constexpr double& operator[](int a) { return c[a]; }
  constexpr double operator[](int a) const { return c[a]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    c[0] -= o.c[0]; c[1] -= o.c[1]; c[2] -= o.c[2];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    c[0] *= s; c[1] *= s; c[2] *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec3& a, const Vec3& b) {
    return a.c[0] == b.c[0] && a.c[1] == b.c[1] && a.c[2] == b.c[2];
  }
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline double norm1(const Vec3& a) {
  return std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]);
}
inline double norm_inf(const Vec3& a) {
  return std::fmax(std::abs(a[0]), std::fmax(std::abs(a[1]), std::abs(a[2])));
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

//----------------------------------------------------------------------------------------
// States

// Euler-conserved triple (rho, m, E). Also used for the 5-component flux vector.
struct EulerState {
  double rho = 0.0;
  Vec3 m;
  double E = 0.0;

  EulerState& operator+=(const EulerState& o) {
    rho += o.rho; m += o.m; E += o.E;
    return *this;
  }
  EulerState& operator-=(const EulerState& o) {
    rho -= o.rho; m -= o.m; E -= o.E;
    return *this;
  }
  EulerState& operator*=(double s) {
    rho *= s; m *= s; E *= s;
    return *this;
  }
  friend bool operator==(const EulerState& a, const EulerState& b) {
    return a.rho == b.rho && a.m == b.m && a.E == b.E;
  }
};

inline EulerState operator+(EulerState a, const EulerState& b) { return a += b; }
inline EulerState operator-(EulerState a, const EulerState& b) { return a -= b; }
inline EulerState operator*(double s, EulerState a) { return a *= s; }

// Full cell state. E is the mechanical energy; the magnetic energy is not included.
struct CellState {
  double rho = 0.0;
  Vec3 m;
  Vec3 B;
  double E = 0.0;

  EulerState euler() const { return {rho, m, E}; }
  void set_euler(const EulerState& q) {
    rho = q.rho;
    m = q.m;
    E = q.E;
  }
  double total_energy() const { return E + 0.5 * norm2(B); }

  friend bool operator==(const CellState& a, const CellState& b) {
    return a.rho == b.rho && a.m == b.m && a.B == b.B && a.E == b.E;
  }
};

struct PrimitiveState {
  double rho = 0.0;
  Vec3 v;
  double p = 0.0;
};

struct GqlDirection {
  Vec3 v_star;
};

class GasModel {
 public:
  explicit GasModel(double gamma = 5.0 / 3.0) : gamma_(gamma) {
    if (!(gamma > 1.0)) throw ConfigurationError("gamma must be > 1, got " + std::to_string(gamma));
  }
  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

//----------------------------------------------------------------------------------------
// Conversions and predicates

inline double internal_energy(const EulerState& q) { return q.E - 0.5 * norm2(q.m) / q.rho; }

PrimitiveState cons_to_prim(const EulerState& q, const GasModel& gas);
EulerState prim_to_cons(const PrimitiveState& w, const GasModel& gas);
bool is_admissible(const EulerState& q);
bool is_admissible(const PrimitiveState& w);
double sound_speed(const PrimitiveState& w, const GasModel& gas);

// Q . n_* with n_* = (|v*|^2/2, -v*, 1).
double gql_dot(const EulerState& q, const GqlDirection& dir);
// Q . n_1 with n_1 = (1, 0, 0, 0, 0).
inline double gql_n1(const EulerState& q) { return q.rho; }

CellState make_cell(const PrimitiveState& w, const Vec3& B, const GasModel& gas);
PrimitiveState cell_primitive(const CellState& s, const GasModel& gas);

std::string describe(const EulerState& q);

}  // namespace ppct
