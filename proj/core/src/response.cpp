#include "phasekit/response.hpp"

#include "phasekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace phasekit {

namespace {

constexpr int kMaxGridPoints = 20000;

bool interval_contains_negative_axis(double lower, double upper) {
    for (int k = -1; k <= 1; ++k) {
        const double axis = kPi + 2.0 * kPi * k;
        if (lower <= axis && axis <= upper) return true;
    }
    return false;
}

struct DynamicRange {
    double lo = 0.01;
    double hi = 100.0;
};

DynamicRange dynamic_range(const StateSpace& ss) {
    DynamicRange r;
    if (ss.order() == 0) return r;
    const Eigen::VectorXcd eigs = Eigen::EigenSolver<Matrix>(ss.A, false).eigenvalues();
    double emin = std::numeric_limits<double>::infinity();
    double emax = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const double a = std::abs(eigs(i));
        if (a > 1e-12) emin = std::min(emin, a);
        emax = std::max(emax, a);
    }
    if (std::isfinite(emin)) r.lo = std::min(0.01, 0.01 * emin);
    r.hi = 100.0 * std::max(1.0, emax);
    return r;
}

double closest_point_on_segment(const Complex& a, const Complex& b, Complex* best) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = 0.0;
    if (len2 > 0.0) {
        t = std::clamp(-(a.real() * d.real() + a.imag() * d.imag()) / len2, 0.0, 1.0);
    }
    const Complex p = a + t * d;
    if (best) *best = p;
    return std::abs(p);
}

}  // namespace

RaySample sample_rays(const StateSpace& ss, double omega) {
    RaySample s;
    s.omega = omega;
    const ComplexMatrix G = freq_response(ss, omega);
    s.sigma_max = G.operatorNorm();
    s.sector = crampedness(G);
    if (s.sector.cramped) {
        s.touches_negative_axis =
            interval_contains_negative_axis(*s.sector.lower_ray, *s.sector.upper_ray);
    }
    return s;
}

FrequencyGrid adaptive_grid(const StateSpace& ss, double omega_min, double omega_max,
                            int base_points, double tol) {
    ss.validate();
    if (!(omega_min >= 0.0) || !(omega_min < omega_max) || base_points < 2) {
        throw std::invalid_argument("adaptive_grid: need 0 <= omega_min < omega_max, base_points >= 2");
    }

    std::vector<double> base;
    if (omega_min == 0.0) {
        base.push_back(0.0);
        const double lo = std::min({dynamic_range(ss).lo, omega_max / 1000.0});
        const int k = std::max(base_points - 1, 2);
        for (int i = 0; i < k; ++i) {
            base.push_back(lo * std::pow(omega_max / lo, static_cast<double>(i) / (k - 1)));
        }
    } else {
        for (int i = 0; i < base_points; ++i) {
            base.push_back(omega_min * std::pow(omega_max / omega_min,
                                                static_cast<double>(i) / (base_points - 1)));
        }
    }

    std::map<double, RaySample> cache;
    const auto metric = [&](double w) -> const RaySample& {
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, sample_rays(ss, w)).first;
        return it->second;
    };

    bool refined = false;
    std::vector<std::pair<double, double>> work;
    for (size_t i = 0; i + 1 < base.size(); ++i) work.emplace_back(base[i], base[i + 1]);
    while (!work.empty() && static_cast<int>(cache.size()) < kMaxGridPoints) {
        const auto [a, b] = work.back();
        work.pop_back();
        if (b - a <= 1e-6 * std::max(b, 1e-30)) continue;
        const RaySample& ma = metric(a);
        const RaySample& mb = metric(b);
        bool split = std::abs(ma.sigma_max - mb.sigma_max) >
                     0.2 * std::max(ma.sigma_max, mb.sigma_max);
        if (!split && ma.phases_defined() != mb.phases_defined()) split = true;
        if (!split && ma.phases_defined() && mb.phases_defined()) {
            split = std::abs(*ma.sector.upper_ray - *mb.sector.upper_ray) > tol ||
                    std::abs(*ma.sector.lower_ray - *mb.sector.lower_ray) > tol;
        }
        if (split) {
            const double mid = (a > 0.0) ? std::sqrt(a * b) : 0.5 * (a + b);
            if (mid > a && mid < b) {
                refined = true;
                work.emplace_back(a, mid);
                work.emplace_back(mid, b);
            }
        }
    }

    FrequencyGrid grid;
    grid.adaptive_refined = refined;
    grid.frequencies.reserve(cache.size() + base.size());
    for (double w : base) grid.frequencies.push_back(w);
    for (const auto& [w, s] : cache) grid.frequencies.push_back(w);
    std::sort(grid.frequencies.begin(), grid.frequencies.end());
    grid.frequencies.erase(std::unique(grid.frequencies.begin(), grid.frequencies.end()),
                           grid.frequencies.end());
    return grid;
}

FrequencyGrid default_grid(const StateSpace& ss) {
    const DynamicRange r = dynamic_range(ss);
    return adaptive_grid(ss, 0.0, r.hi, 120, 0.05);
}

std::vector<BodeSample> bode_data(const StateSpace& ss, const FrequencyGrid& grid) {
    if (!is_hurwitz(ss)) throw Unstable("bode_data: system is not Hurwitz");

    std::vector<BodeSample> out;
    out.reserve(grid.frequencies.size());
    std::optional<PhaseVector> prev;
    for (double w : grid.frequencies) {
        BodeSample s;
        s.omega = w;
        const ComplexMatrix G = freq_response(ss, w);
        s.magnitudes = singular_values(G);
        const SectorInfo sector = crampedness(G);
        s.cramped = sector.cramped;
        if (sector.cramped) {
            s.touches_negative_axis =
                interval_contains_negative_axis(*sector.lower_ray, *sector.upper_ray);
        }
        if (sector.cramped && !s.touches_negative_axis) {
            PhaseVector ph = matrix_phases(G);
            if (prev && prev->values.size() == ph.values.size()) {
                // Branch continuity: allow a whole-vector 2*pi shift toward the
                // previous sample, but never leave (-pi, pi).
                int best_k = 0;
                double best_jump = std::numeric_limits<double>::infinity();
                for (int k = -1; k <= 1; ++k) {
                    const Vector cand = ph.values.array() + 2.0 * kPi * k;
                    if (cand.maxCoeff() >= kPi || cand.minCoeff() <= -kPi) continue;
                    const double jump = (cand - prev->values).cwiseAbs().maxCoeff();
                    if (jump < best_jump) {
                        best_jump = jump;
                        best_k = k;
                    }
                }
                ph.values.array() += 2.0 * kPi * best_k;
                ph.interval_anchor += 2.0 * kPi * best_k;
            }
            prev = ph;
            s.phases = std::move(ph);
        }
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

// Largest singular value of G(j omega) reaches gamma iff the Hamiltonian has
// an imaginary-axis eigenvalue (gamma above the feedthrough gain).
bool hamiltonian_has_imaginary_eig(const StateSpace& ss, double gamma) {
    const int n = ss.order();
    const Matrix R = gamma * gamma * Matrix::Identity(ss.inputs(), ss.inputs()) -
                     ss.D.transpose() * ss.D;
    Eigen::FullPivLU<Matrix> lu(R);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return true;  // gamma at the feedthrough gain
    const Matrix Rinv = lu.inverse();
    const Matrix Acl = ss.A + ss.B * Rinv * ss.D.transpose() * ss.C;
    Matrix H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = Acl;
    H.topRightCorner(n, n) = ss.B * Rinv * ss.B.transpose();
    H.bottomLeftCorner(n, n) =
        -ss.C.transpose() *
        (Matrix::Identity(ss.outputs(), ss.outputs()) + ss.D * Rinv * ss.D.transpose()) *
        ss.C;
    H.bottomRightCorner(n, n) = -Acl.transpose();
    const Eigen::VectorXcd eigs = Eigen::EigenSolver<Matrix>(H, false).eigenvalues();
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        if (std::abs(eigs(i).real()) <= 1e-9 * scale) return true;
    }
    return false;
}

}  // namespace

double hinf_norm(const StateSpace& ss, double tol) {
    if (!is_hurwitz(ss)) throw Unstable("hinf_norm: system is not Hurwitz");
    if (tol <= 0.0) throw std::invalid_argument("hinf_norm: tol must be positive");
    const double d_gain = ss.D.size() > 0 ? ss.D.operatorNorm() : 0.0;
    if (ss.order() == 0) return d_gain;

    const DynamicRange r = dynamic_range(ss);
    double lo = d_gain;
    for (int k = 0; k < 200; ++k) {
        const double w =
            (k == 0) ? 0.0 : r.lo * std::pow(r.hi / r.lo, (k - 1) / 198.0);
        lo = std::max(lo, freq_response(ss, w).operatorNorm());
    }
    if (lo <= 0.0) return 0.0;

    double hi = 2.0 * lo + tol;
    while (hamiltonian_has_imaginary_eig(ss, hi)) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw NumericallySingular("hinf_norm: bisection diverged");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (hamiltonian_has_imaginary_eig(ss, mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double hinf_phase(const StateSpace& ss, const FrequencyGrid& grid) {
    if (!is_hurwitz(ss)) throw Unstable("hinf_phase: system is not Hurwitz");
    double phi = -std::numeric_limits<double>::infinity();
    for (double w : grid.frequencies) {
        const RaySample s = sample_rays(ss, w);
        if (!s.phases_defined()) {
            throw NotCramped("hinf_phase: phases undefined at omega = " + std::to_string(w),
                             w);
        }
        phi = std::max({phi, *s.sector.upper_ray, -*s.sector.lower_ray});
    }
    return phi;
}

std::pair<bool, std::optional<double>> is_frequencywise_cramped(const StateSpace& ss,
                                                                const FrequencyGrid& grid) {
    for (double w : grid.frequencies) {
        if (!sample_rays(ss, w).phases_defined()) return {false, w};
    }
    return {true, std::nullopt};
}

HullPolygon positive_freq_hull(const StateSpace& ss, const FrequencyGrid& grid,
                               int angles_per_freq) {
    if (!is_hurwitz(ss)) throw Unstable("positive_freq_hull: system is not Hurwitz");
    std::vector<Complex> pts;
    pts.reserve((grid.frequencies.size() + 1) * angles_per_freq);
    for (double w : grid.frequencies) {
        const HullPolygon h = numerical_range_boundary(freq_response(ss, w), angles_per_freq);
        pts.insert(pts.end(), h.vertices.begin(), h.vertices.end());
    }
    const HullPolygon hd =
        numerical_range_boundary(ss.D.cast<Complex>(), angles_per_freq);
    pts.insert(pts.end(), hd.vertices.begin(), hd.vertices.end());

    HullPolygon hull;
    hull.vertices = convex_hull(std::move(pts));
    const int k = 256;
    hull.support_angles.reserve(k);
    hull.support_values.reserve(k);
    for (int i = 0; i < k; ++i) {
        const double theta = 2.0 * kPi * i / k;
        double h = -std::numeric_limits<double>::infinity();
        for (const Complex& v : hull.vertices) {
            h = std::max(h, v.real() * std::cos(theta) + v.imag() * std::sin(theta));
        }
        hull.support_angles.push_back(theta);
        hull.support_values.push_back(h);
    }
    return hull;
}

namespace {

struct HullSeparation {
    double distance = 0.0;
    double radius = 0.0;
    double direction = 0.0;
    bool touches_negative_axis = true;
};

HullSeparation analyze_hull(const std::vector<Complex>& verts) {
    HullSeparation r;
    if (verts.empty()) return r;
    for (const Complex& v : verts) r.radius = std::max(r.radius, std::abs(v));

    // Distance from the origin: outside iff some edge separates it.
    const size_t n = verts.size();
    if (n == 1) {
        r.distance = std::abs(verts[0]);
        r.direction = std::arg(verts[0]);
    } else {
        bool outside = n == 2;
        double best = std::numeric_limits<double>::infinity();
        Complex best_p;
        for (size_t i = 0; i < n; ++i) {
            const Complex a = verts[i];
            const Complex b = verts[(i + 1) % n];
            if (n > 2) {
                const double cross = a.real() * b.imag() - a.imag() * b.real();
                if (cross < 0.0) outside = true;  // origin right of a CCW edge
            }
            Complex p;
            const double d = closest_point_on_segment(a, b, &p);
            if (d < best) {
                best = d;
                best_p = p;
            }
        }
        if (outside) {
            r.distance = best;
            r.direction = std::arg(best_p);
        } else {
            r.distance = 0.0;
        }
    }

    // Closed negative real axis: any edge crossing Im = 0 at Re <= 0?
    const double tol = 1e-12 * (1.0 + r.radius);
    r.touches_negative_axis = false;
    for (size_t i = 0; i < n; ++i) {
        const Complex a = verts[i];
        const Complex b = verts[(i + 1) % std::max<size_t>(n, 1)];
        if (std::abs(a.imag()) <= tol && a.real() <= tol) r.touches_negative_axis = true;
        if ((a.imag() > tol && b.imag() < -tol) || (a.imag() < -tol && b.imag() > tol)) {
            const double t = a.imag() / (a.imag() - b.imag());
            const double x = a.real() + t * (b.real() - a.real());
            if (x <= tol) r.touches_negative_axis = true;
        }
        if (n == 1) break;
    }
    return r;
}

}  // namespace

std::pair<bool, std::optional<double>> is_half_cramped(const StateSpace& ss) {
    if (!is_hurwitz(ss)) throw Unstable("is_half_cramped: system is not Hurwitz");
    const FrequencyGrid grid = default_grid(ss);

    // The verdict uses the finite-frequency hull only; the W(D) limit can
    // touch the origin for singular feedthrough without affecting the finite
    // sweep (the set is open there).
    std::vector<Complex> pts;
    for (double w : grid.frequencies) {
        const HullPolygon h = numerical_range_boundary(freq_response(ss, w), 64);
        pts.insert(pts.end(), h.vertices.begin(), h.vertices.end());
    }
    const HullSeparation sep = analyze_hull(convex_hull(std::move(pts)));
    if (sep.touches_negative_axis || sep.distance <= kHalfPlaneEps * sep.radius) {
        return {false, std::nullopt};
    }
    return {true, sep.direction};
}

SystemClassification classify(const StateSpace& ss) {
    if (!is_hurwitz(ss)) throw Unstable("classify: system is not Hurwitz");
    SystemClassification c;
    c.grid = default_grid(ss);

    bool fwc = true;
    bool spr = true;
    bool sni = true;
    double phi = -std::numeric_limits<double>::infinity();
    for (double w : c.grid.frequencies) {
        const ComplexMatrix G = freq_response(ss, w);
        const ComplexMatrix H = G + G.adjoint();
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eh(H, Eigen::EigenvaluesOnly);
        if (eh.eigenvalues()(0) <= 0.0) spr = false;
        if (w > 0.0) {
            const ComplexMatrix K = (G - G.adjoint()) / Complex(0.0, 1.0);
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> ek(K, Eigen::EigenvaluesOnly);
            if (ek.eigenvalues()(ek.eigenvalues().size() - 1) >= 0.0) sni = false;
        }
        const RaySample s = sample_rays(ss, w);
        if (!s.phases_defined()) {
            fwc = false;
        } else {
            phi = std::max({phi, *s.sector.upper_ray, -*s.sector.lower_ray});
        }
    }
    // Strong positive realness includes the omega -> infinity limit.
    {
        const Matrix DH = ss.D + ss.D.transpose();
        Eigen::SelfAdjointEigenSolver<Matrix> ed(DH, Eigen::EigenvaluesOnly);
        if (ss.D.size() == 0 || ed.eigenvalues()(0) <= 0.0) spr = false;
    }
    c.frequencywise_cramped = fwc;
    c.strongly_positive_real = spr;
    c.strictly_negative_imaginary = sni;
    if (fwc) c.hinf_phase = phi;
    const auto [half, dir] = is_half_cramped(ss);
    c.half_cramped = half;
    c.separating_direction = dir;
    return c;
}

}  // namespace phasekit
