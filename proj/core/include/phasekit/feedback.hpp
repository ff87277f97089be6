#pragma once

#include "phasekit/response.hpp"
#include "phasekit/state_space.hpp"

#include <string>

namespace phasekit {

enum class CertifyMethod { small_gain, small_phase, eigenvalue };
enum class Verdict { certified, not_certified, ill_posed };

std::string to_string(CertifyMethod m);
std::string to_string(Verdict v);

/// Outcome of a feedback-stability certification run. `margin` is the minimum
/// slack over the grid: 1 - sigma*sigma for the gain test, the radian slack of
/// the two phase inequalities for the phase test.
struct Certificate {
    CertifyMethod method = CertifyMethod::small_gain;
    Verdict verdict = Verdict::not_certified;
    double margin = 0.0;
    double worst_frequency = 0.0;  // +inf marks the feedthrough limit
    FrequencyGrid grid;
};

/// Cascade realization of G(s) H(s) (H drives G).
StateSpace series(const StateSpace& g, const StateSpace& h);

/// Realization of the Gang of Four: [(I+HG)^{-1}, (I+HG)^{-1}H;
/// G(I+HG)^{-1}, G(I+HG)^{-1}H]. Throws IllPosed when I + D_H D_G is singular.
StateSpace gang_of_four(const StateSpace& g, const StateSpace& h);

/// Ground truth: the closed loop is stable iff the Gang of Four realization,
/// with hidden modes removed, is Hurwitz.
bool closed_loop_stable(const StateSpace& g, const StateSpace& h);

/// Union of both systems' default adaptive grids.
FrequencyGrid certification_grid(const StateSpace& g, const StateSpace& h);

/// sigma_max(G) sigma_max(H) < 1 at every grid frequency and at the
/// feedthrough limit.
Certificate small_gain_certify(const StateSpace& g, const StateSpace& h,
                               const FrequencyGrid& grid);

/// phi_max(G) + phi_max(H) < pi and phi_min(G) + phi_min(H) > -pi at every
/// grid frequency. Throws NotCramped (with witness) when either system lacks
/// phases somewhere on the grid.
Certificate small_phase_certify(const StateSpace& g, const StateSpace& h,
                                const FrequencyGrid& grid);

/// pi/2 - Phi_inf(G) on the default grid.
double angular_passivity_index(const StateSpace& g);

/// pi - Phi_inf(GH) on the default grid of the cascade.
double phase_margin(const StateSpace& g, const StateSpace& h);

}  // namespace phasekit
