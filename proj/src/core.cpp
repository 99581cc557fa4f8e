#include "ppct/core.hpp"

#include <sstream>

namespace ppct {

std::string describe(const EulerState& q) {
  std::ostringstream os;
  os.precision(17);
  os << "(rho=" << q.rho << ", m=(" << q.m[0] << ", " << q.m[1] << ", " << q.m[2]
     << "), E=" << q.E << ")";
  return os.str();
}

PrimitiveState cons_to_prim(const EulerState& q, const GasModel& gas) {
  if (!(q.rho > 0.0)) throw NonPhysicalState("non-positive density in state " + describe(q));
  PrimitiveState w;
  w.rho = q.rho;
  w.v = (1.0 / q.rho) * q.m;
  w.p = (gas.gamma() - 1.0) * internal_energy(q);
  return w;
}

EulerState prim_to_cons(const PrimitiveState& w, const GasModel& gas) {
  EulerState q;
  q.rho = w.rho;
  q.m = w.rho * w.v;
  q.E = w.p / (gas.gamma() - 1.0) + 0.5 * w.rho * norm2(w.v);
  return q;
}

bool is_admissible(const EulerState& q) { return q.rho > 0.0 && internal_energy(q) > 0.0; }

bool is_admissible(const PrimitiveState& w) { return w.rho > 0.0 && w.p > 0.0; }

double sound_speed(const PrimitiveState& w, const GasModel& gas) {
  if (!(w.rho > 0.0) || !(w.p > 0.0)) {
    std::ostringstream os;
    os << "sound speed undefined for rho=" << w.rho << ", p=" << w.p;
    throw NonPhysicalState(os.str());
  }
  return std::sqrt(gas.gamma() * w.p / w.rho);
}

double gql_dot(const EulerState& q, const GqlDirection& dir) {
  return 0.5 * norm2(dir.v_star) * q.rho - dot(dir.v_star, q.m) + q.E;
}

CellState make_cell(const PrimitiveState& w, const Vec3& B, const GasModel& gas) {
  CellState s;
  s.set_euler(prim_to_cons(w, gas));
  s.B = B;
  return s;
}

PrimitiveState cell_primitive(const CellState& s, const GasModel& gas) {
  return cons_to_prim(s.euler(), gas);
}

}  // namespace ppct
