#pragma once
//========================================================================================
// Positivity-preserving finite-volume operator for the Euler part (B frozen):
// van Albada reconstruction on primitives, PP limiter, Lax-Friedrichs fluxes,
// forward Euler and SSP-RK2 updates.
//========================================================================================

#include <array>

#include "ppct/core.hpp"
#include "ppct/grid.hpp"

namespace ppct {

constexpr double kLimiterEps = 1e-14;

class StepRejected : public Error {
 public:
  StepRejected(const std::string& what, double admissible_dt)
      : Error(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const { return admissible_dt_; }

 private:
  double admissible_dt_;
};

struct WaveSpeeds {
  int dim = 2;
  std::array<double, 3> alpha{0.0, 0.0, 0.0};

  // sum over axes of alpha/spacing
  double rate(const GridGeometry& g) const;
  // convex weights C_x, C_y (, C_z) proportional to alpha/spacing
  std::array<double, 3> weights(const GridGeometry& g) const;
};

// Slope deltas (cell size / 2 times the van Albada slope) of the primitives along one axis.
struct PrimDelta {
  double rho = 0.0;
  Vec3 v;
  double p = 0.0;
};

struct SlopePair {
  std::array<PrimDelta, 3> axis{};
};

struct LimiterCoefficients {
  std::array<double, 3> alpha{1.0, 1.0, 1.0};
  std::array<double, 3> kappa{1.0, 1.0, 1.0};
  double beta = 1.0;

  bool inactive(int dim) const;
};

// W-bar minus (lo, face at i-1/2) and plus (hi, face at i+1/2) the limited deltas.
struct FaceStates {
  std::array<PrimitiveState, 3> lo{};
  std::array<PrimitiveState, 3> hi{};
};

enum class Reconstruction { VanAlbada, FirstOrder };

struct FvOptions {
  double q = 3.0;
  double limiter_eps = kLimiterEps;
  Reconstruction reconstruction = Reconstruction::VanAlbada;
};

// Primitives over interior and ghost cells; throws NonPhysicalState naming the first
// inadmissible cell.
Field<PrimitiveState> primitives(const FieldGrid& field, const GasModel& gas);

WaveSpeeds compute_wave_speeds(const FieldGrid& field, const GasModel& gas);
WaveSpeeds compute_wave_speeds(const Field<PrimitiveState>& prims, const GasModel& gas);

double van_albada(double back, double fwd, double eps);
// Slopes on interior cells and the first ghost layer; zero elsewhere.
Field<SlopePair> van_albada_slopes(const FieldGrid& field, const GasModel& gas);
SlopePair van_albada_slopes_at(const Field<PrimitiveState>& prims, std::size_t idx);

LimiterCoefficients pp_limit(const PrimitiveState& avg, const SlopePair& slopes,
                             const std::array<double, 3>& weights, int dim, double q,
                             const GasModel& gas, double eps = kLimiterEps);
LimiterCoefficients pp_limit(const PrimitiveState& avg, const SlopePair& slopes,
                             const WaveSpeeds& speeds, const GridGeometry& g, double q,
                             const GasModel& gas, double eps = kLimiterEps);

FaceStates limited_interface_states(const PrimitiveState& avg, const SlopePair& slopes,
                                    const LimiterCoefficients& coeffs, int dim);

EulerState euler_flux(const EulerState& q, int axis, const GasModel& gas);
// Flux from a conserved state together with its primitives; v and p are taken from `w`.
EulerState euler_flux(const EulerState& q, const PrimitiveState& w, int axis);
EulerState lax_friedrichs_flux(const EulerState& q_minus, const EulerState& q_plus, int axis,
                               double alpha, const GasModel& gas);
EulerState lax_friedrichs_flux(const EulerState& q_minus, const EulerState& q_plus, int axis,
                               const WaveSpeeds& speeds, const GasModel& gas);
// Face states carried in both forms. Only the primitives must be admissible: a face
// pressure near the limiter floor may not survive the round trip to conserved form.
EulerState lax_friedrichs_flux(const EulerState& q_minus, const PrimitiveState& w_minus,
                               const EulerState& q_plus, const PrimitiveState& w_plus, int axis,
                               double alpha);

FieldGrid euler_forward_step(const FieldGrid& field, double dt, const BoundarySpec& spec,
                             const FvOptions& opts, const GasModel& gas);
FieldGrid euler_ssprk2_step(const FieldGrid& field, double dt, const BoundarySpec& spec,
                            const FvOptions& opts, const GasModel& gas);

// Limiter coefficients of every interior cell for the current field.
Field<LimiterCoefficients> limiter_coefficients(const FieldGrid& field, const BoundarySpec& spec,
                                                const FvOptions& opts, const GasModel& gas);

std::string cell_label(int i, int j, int k);

}  // namespace ppct
