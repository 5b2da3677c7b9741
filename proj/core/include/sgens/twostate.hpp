#pragma once

#include "sgens/constrain.hpp"
#include "sgens/lattice.hpp"

#include <utility>

namespace sgens {

/// Restriction of a reflection-symmetric model to its lowest doublet.
/// phi2 is sign-fixed so that (phi1, q phi2) = d > 0.
struct TwoStateModel {
  double e1 = 0.0;
  double e2 = 0.0;
  double d = 0.0;
  RealWave phi1;
  RealWave phi2;
  GridSpec grid{};
  ModelParams model{};

  double splitting() const noexcept { return e2 - e1; }
  double mean_level() const noexcept { return 0.5 * (e1 + e2); }
};

TwoStateModel build_two_state(const ModelParams& model, const Grid& grid,
                              const EigenOptions& options = {});

/// (E2+E1)/2 - (E2-E1)/2 sqrt(1 - (q/d)^2), defined for |q| <= d.
double two_state_veff(const TwoStateModel& ts, double q);

/// -dV/dq of the arc. Diverges at |q| = d.
double two_state_lambda(const TwoStateModel& ts, double q);

/// (V - (E1+E2)/2) / ((E2-E1)/2) of the arc, i.e. -sqrt(1 - (q/d)^2).
double rescaled_arc(double q_over_d);

/// Energy-eigenbasis coefficients (cos t, sin t) with t = asin(q/d) / 2.
std::pair<double, double> two_state_coefficients(const TwoStateModel& ts, double q);

CoherentState two_state_coherent(const TwoStateModel& ts, double q, double p);

/// Arc tabulated on n uniform nodes over [-d, d]. lambda is +-inf at the ends.
EffectivePotentialTable two_state_table(const TwoStateModel& ts, std::size_t n);

}  // namespace sgens
