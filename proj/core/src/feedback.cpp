#include "phasekit/feedback.hpp"

#include "phasekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phasekit {

std::string to_string(CertifyMethod m) {
    switch (m) {
        case CertifyMethod::small_gain:
            return "small_gain";
        case CertifyMethod::small_phase:
            return "small_phase";
        case CertifyMethod::eigenvalue:
            return "eigenvalue";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified:
            return "certified";
        case Verdict::not_certified:
            return "not_certified";
        case Verdict::ill_posed:
            return "ill_posed";
    }
    return "?";
}

StateSpace series(const StateSpace& g, const StateSpace& h) {
    g.validate();
    h.validate();
    if (g.inputs() != h.outputs()) {
        throw DimensionMismatch("series: output dimension of H must match input of G");
    }
    const int ng = g.order();
    const int nh = h.order();
    StateSpace s;
    s.A = Matrix::Zero(nh + ng, nh + ng);
    s.A.topLeftCorner(nh, nh) = h.A;
    s.A.bottomLeftCorner(ng, nh) = g.B * h.C;
    s.A.bottomRightCorner(ng, ng) = g.A;
    s.B = Matrix::Zero(nh + ng, h.inputs());
    s.B.topRows(nh) = h.B;
    s.B.bottomRows(ng) = g.B * h.D;
    s.C = Matrix::Zero(g.outputs(), nh + ng);
    s.C.leftCols(nh) = g.D * h.C;
    s.C.rightCols(ng) = g.C;
    s.D = g.D * h.D;
    return s;
}

namespace {

Matrix wellposed_inverse(const StateSpace& g, const StateSpace& h) {
    const Matrix E = Matrix::Identity(g.inputs(), g.inputs()) + h.D * g.D;
    Eigen::JacobiSVD<Matrix> svd(E, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double smax = svd.singularValues()(0);
    if (smin <= 1e-12 * std::max(1.0, smax)) {
        throw IllPosed("feedback interconnection is ill posed: I + D_H D_G is singular");
    }
    return svd.solve(Matrix::Identity(E.rows(), E.cols()));
}

}  // namespace

StateSpace gang_of_four(const StateSpace& g, const StateSpace& h) {
    g.validate();
    h.validate();
    const int m = g.inputs();
    if (g.outputs() != m || h.inputs() != m || h.outputs() != m) {
        throw DimensionMismatch("gang_of_four: systems must be square with matching size");
    }
    const Matrix Ei = wellposed_inverse(g, h);
    const int ng = g.order();
    const int nh = h.order();

    // Loop equations with u1 = E^{-1}(w1 + D_h w2 - D_h C_g x_g - C_h x_h),
    // outputs z1 = u1 and z2 = C_g x_g + D_g u1.
    StateSpace s;
    s.A = Matrix::Zero(ng + nh, ng + nh);
    s.A.topLeftCorner(ng, ng) = g.A - g.B * Ei * h.D * g.C;
    s.A.topRightCorner(ng, nh) = -g.B * Ei * h.C;
    s.A.bottomLeftCorner(nh, ng) = h.B * g.C - h.B * g.D * Ei * h.D * g.C;
    s.A.bottomRightCorner(nh, nh) = h.A - h.B * g.D * Ei * h.C;

    s.B = Matrix::Zero(ng + nh, 2 * m);
    s.B.topLeftCorner(ng, m) = g.B * Ei;
    s.B.topRightCorner(ng, m) = g.B * Ei * h.D;
    s.B.bottomLeftCorner(nh, m) = h.B * g.D * Ei;
    s.B.bottomRightCorner(nh, m) = -h.B + h.B * g.D * Ei * h.D;

    s.C = Matrix::Zero(2 * m, ng + nh);
    s.C.topLeftCorner(m, ng) = -Ei * h.D * g.C;
    s.C.topRightCorner(m, nh) = -Ei * h.C;
    s.C.bottomLeftCorner(m, ng) = g.C - g.D * Ei * h.D * g.C;
    s.C.bottomRightCorner(m, nh) = -g.D * Ei * h.C;

    s.D = Matrix::Zero(2 * m, 2 * m);
    s.D.topLeftCorner(m, m) = Ei;
    s.D.topRightCorner(m, m) = Ei * h.D;
    s.D.bottomLeftCorner(m, m) = g.D * Ei;
    s.D.bottomRightCorner(m, m) = g.D * Ei * h.D;
    return s;
}

bool closed_loop_stable(const StateSpace& g, const StateSpace& h) {
    const StateSpace gof = gang_of_four(g, h);
    return is_hurwitz(remove_hidden_modes(gof));
}

FrequencyGrid certification_grid(const StateSpace& g, const StateSpace& h) {
    const FrequencyGrid a = default_grid(g);
    const FrequencyGrid b = default_grid(h);
    FrequencyGrid u;
    u.adaptive_refined = a.adaptive_refined || b.adaptive_refined;
    u.frequencies = a.frequencies;
    u.frequencies.insert(u.frequencies.end(), b.frequencies.begin(), b.frequencies.end());
    std::sort(u.frequencies.begin(), u.frequencies.end());
    u.frequencies.erase(std::unique(u.frequencies.begin(), u.frequencies.end()),
                        u.frequencies.end());
    return u;
}

Certificate small_gain_certify(const StateSpace& g, const StateSpace& h,
                               const FrequencyGrid& grid) {
    if (!is_hurwitz(g) || !is_hurwitz(h)) {
        throw Unstable("small_gain_certify: both systems must be Hurwitz");
    }
    Certificate cert;
    cert.method = CertifyMethod::small_gain;
    cert.grid = grid;
    try {
        wellposed_inverse(g, h);
    } catch (const IllPosed&) {
        cert.verdict = Verdict::ill_posed;
        return cert;
    }

    double margin = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (double w : grid.frequencies) {
        const double slack = 1.0 - freq_response(g, w).operatorNorm() *
                                       freq_response(h, w).operatorNorm();
        if (slack < margin) {
            margin = slack;
            worst = w;
        }
    }
    const double d_slack =
        1.0 - (g.D.size() > 0 ? g.D.operatorNorm() : 0.0) *
                  (h.D.size() > 0 ? h.D.operatorNorm() : 0.0);
    if (d_slack < margin) {
        margin = d_slack;
        worst = std::numeric_limits<double>::infinity();
    }
    cert.margin = margin;
    cert.worst_frequency = worst;
    cert.verdict = margin > 0.0 ? Verdict::certified : Verdict::not_certified;
    return cert;
}

Certificate small_phase_certify(const StateSpace& g, const StateSpace& h,
                                const FrequencyGrid& grid) {
    if (!is_hurwitz(g) || !is_hurwitz(h)) {
        throw Unstable("small_phase_certify: both systems must be Hurwitz");
    }
    Certificate cert;
    cert.method = CertifyMethod::small_phase;
    cert.grid = grid;
    try {
        wellposed_inverse(g, h);
    } catch (const IllPosed&) {
        cert.verdict = Verdict::ill_posed;
        return cert;
    }

    double margin = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (double w : grid.frequencies) {
        const RaySample sg = sample_rays(g, w);
        const RaySample sh = sample_rays(h, w);
        if (!sg.phases_defined() || !sh.phases_defined()) {
            throw NotCramped("small_phase_certify: phases undefined at omega = " +
                                 std::to_string(w),
                             w);
        }
        // Both one-sided conditions are checked explicitly.
        const double slack_hi = kPi - *sg.sector.upper_ray - *sh.sector.upper_ray;
        const double slack_lo = kPi + *sg.sector.lower_ray + *sh.sector.lower_ray;
        const double slack = std::min(slack_hi, slack_lo);
        if (slack < margin) {
            margin = slack;
            worst = w;
        }
    }
    cert.margin = margin;
    cert.worst_frequency = worst;
    cert.verdict = margin > 0.0 ? Verdict::certified : Verdict::not_certified;
    return cert;
}

double angular_passivity_index(const StateSpace& g) {
    return kPi / 2.0 - hinf_phase(g, default_grid(g));
}

double phase_margin(const StateSpace& g, const StateSpace& h) {
    const StateSpace gh = series(g, h);
    if (!is_hurwitz(gh)) throw Unstable("phase_margin: series interconnection is not Hurwitz");
    return kPi - hinf_phase(gh, default_grid(gh));
}

}  // namespace phasekit
