#pragma once

#include "phasekit/matphase.hpp"
#include "phasekit/state_space.hpp"
#include "phasekit/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace phasekit {

struct FrequencyGrid {
    std::vector<double> frequencies;  // strictly increasing, nonnegative
    bool adaptive_refined = false;
};

/// One frequency of the MIMO Bode data. Phases are present only when G(j
/// omega) is cramped and its numerical range stays clear of the negative real
/// axis; they then take values in (-pi, pi).
struct BodeSample {
    double omega = 0.0;
    MagnitudeVector magnitudes;
    std::optional<PhaseVector> phases;
    bool cramped = false;
    bool touches_negative_axis = false;
};

struct SystemClassification {
    bool frequencywise_cramped = false;
    bool half_cramped = false;
    bool strongly_positive_real = false;
    bool strictly_negative_imaginary = false;
    std::optional<double> hinf_phase;            // Phi_inf, radians
    std::optional<double> separating_direction;  // radians
    FrequencyGrid grid;
};

/// Logarithmic base grid on [omega_min, omega_max] (omega = 0 prepended when
/// omega_min == 0), bisected wherever the top singular value moves by more
/// than 20% or the top phase by more than `tol` between neighbours, down to a
/// relative spacing of 1e-6.
FrequencyGrid adaptive_grid(const StateSpace& ss, double omega_min, double omega_max,
                            int base_points, double tol);

/// Default sweep covering the system's dynamics (used when callers do not
/// supply a grid).
FrequencyGrid default_grid(const StateSpace& ss);

/// Magnitude and phase data at every grid frequency. Requires a Hurwitz system.
std::vector<BodeSample> bode_data(const StateSpace& ss, const FrequencyGrid& grid);

/// H-infinity norm via bisection on the Hamiltonian imaginary-axis test,
/// accurate to `tol`; the grid supremum seeds the lower bound.
double hinf_norm(const StateSpace& ss, double tol = 1e-6);

/// H-infinity phase: max over the grid of max(phi_max, -phi_min).
/// Throws NotCramped (with witness) when any sample lacks phases.
double hinf_phase(const StateSpace& ss, const FrequencyGrid& grid);

/// True when every grid sample is cramped with its numerical range clear of
/// the negative real axis; otherwise returns the first offending frequency.
std::pair<bool, std::optional<double>> is_frequencywise_cramped(const StateSpace& ss,
                                                                const FrequencyGrid& grid);

/// Convex hull of numerical-range boundary samples over the nonnegative grid,
/// augmented with the omega -> infinity limit W(D).
HullPolygon positive_freq_hull(const StateSpace& ss, const FrequencyGrid& grid,
                               int angles_per_freq = 64);

/// Half-cramped test on the finite-frequency hull: the hull must admit a
/// separating open half-plane (relative margin kHalfPlaneEps) and avoid the
/// closed negative real axis. Returns the maximizing direction.
std::pair<bool, std::optional<double>> is_half_cramped(const StateSpace& ss);

/// Frequency-wise crampedness, half-crampedness, strong positive realness,
/// strict negative imaginariness and Phi_inf on the default grid.
SystemClassification classify(const StateSpace& ss);

/// Supporting-ray data of G(j omega) used by sweeps: crampedness info plus the
/// negative-real-axis contact flag.
struct RaySample {
    double omega = 0.0;
    double sigma_max = 0.0;
    SectorInfo sector;
    bool touches_negative_axis = false;
    bool phases_defined() const { return sector.cramped && !touches_negative_axis; }
};
RaySample sample_rays(const StateSpace& ss, double omega);

}  // namespace phasekit
