#pragma once

#include "phasekit/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace phasekit {

/// Location of the numerical range W(C) relative to the origin.
///
/// A matrix is cramped when 0 lies outside W(C). In that case W(C) sits inside
/// a sector bounded by two rays from the origin; `upper_ray` and `lower_ray`
/// are the angles of those rays measured from the positive real axis, and the
/// extreme matrix phases coincide with them.
struct SectorInfo {
    bool cramped = false;
    /// Distance from the origin to W(C); zero when the origin is inside.
    double distance_to_origin = 0.0;
    /// Mid-angle of the sector, (upper_ray + lower_ray)/2, in (-pi, pi].
    std::optional<double> mid_angle;
    /// Field angle: upper_ray - lower_ray, in [0, pi).
    std::optional<double> field_angle;
    std::optional<double> upper_ray;
    std::optional<double> lower_ray;
};

/// Matrix phases sorted non-increasing; all values lie in the open pi-interval
/// (interval_anchor, interval_anchor + pi).
struct PhaseVector {
    Vector values;
    double interval_anchor = 0.0;
};

/// Singular values sorted non-increasing.
using MagnitudeVector = Vector;

/// Sampled boundary of a compact convex set in the complex plane.
///
/// `vertices` is the counterclockwise convex hull of the sampled boundary
/// points (an inner approximation). `support_angles`/`support_values` record
/// the support function h(theta) = max Re(e^{-i theta} z) at each sampled
/// direction; the corresponding half-planes give an outer approximation.
struct HullPolygon {
    std::vector<Complex> vertices;
    std::vector<double> support_angles;
    std::vector<double> support_values;
};

/// Singular values of C, sorted descending.
MagnitudeVector singular_values(const ComplexMatrix& C);

/// Samples the boundary of the numerical range W(C) at `num_angles` uniformly
/// spaced support directions and returns the convex hull of the samples.
/// Requires num_angles >= 3.
HullPolygon numerical_range_boundary(const ComplexMatrix& C, int num_angles);

/// Decides whether 0 lies outside W(C) and, if so, locates the supporting
/// rays, the field angle and the distance from the origin to W(C).
SectorInfo crampedness(const ComplexMatrix& C);

/// Phases of a cramped matrix: half the negated eigenvalue arguments of the
/// pencil C^* x = lambda C x, unwrapped into the pi-interval centred at the
/// sector mid-angle. Throws NotCramped / NumericallySingular.
PhaseVector matrix_phases(const ComplexMatrix& C);

/// Extreme phases (min, max) computed from the supporting rays alone; an
/// independent path that must agree with the extremes of matrix_phases().
std::pair<double, double> phase_bounds(const ComplexMatrix& C);

/// Sorted partial-sum dominance with total-sum equality.
bool majorizes(const Vector& x, const Vector& y);

/// Sorted partial-product dominance with total-product equality; entries must
/// be nonnegative.
bool log_majorizes(const Vector& x, const Vector& y);

/// Eigenvalue arguments of AB, unwrapped into the 2*pi window anchored at
/// lower_ray(A) + lower_ray(B), sorted descending. Requires A, B cramped.
Vector product_eig_angles(const ComplexMatrix& A, const ComplexMatrix& B);

/// Membership in the phase cone: cramped with phases inside [alpha, beta]
/// (up to `tol` and a whole-vector 2*pi shift). Requires 0 <= beta - alpha < 2*pi.
bool in_cone(const ComplexMatrix& C, double alpha, double beta, double tol = 0.0);

/// Counterclockwise convex hull of a point cloud (monotone chain).
std::vector<Complex> convex_hull(std::vector<Complex> pts);

/// Hermitian part (C + C^*)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& C);

/// Smallest eigenvalue of the Hermitian part of e^{-i theta} C.
double rotated_min_eig(const ComplexMatrix& H1, const ComplexMatrix& H2, double theta);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace phasekit
