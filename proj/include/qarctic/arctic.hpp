#pragma once

#include "qarctic/density.hpp"
#include "qarctic/errors.hpp"

#include <optional>
#include <vector>

namespace qarctic {

enum class Branch { right, left, gap_window, filled_window };

const char* branch_name(Branch b);

// Open interval of admissible real t on which x(t) is real. Anchors index breakpoints()
// and mark finite endpoints located at qq^theta; -1 means 0 or infinity.
struct TDomain {
    double lo, hi;
    Branch branch;
    int piece = -1;  // first piece of the window
    int sign = 1;    // sign of x(t) on the domain
    int lo_anchor = -1, hi_anchor = -1;
};

std::vector<TDomain> t_domains(const StartDensity& d, double qq);

// t, optionally written as qq^breakpoint[anchor] * (1 + rel) so that t - endpoint is exact.
struct TParam {
    double t = 0;
    int anchor = -1;
    double rel = 0;

    static TParam plain(double t) { return {t, -1, 0}; }
    static TParam near(const StartDensity& d, double qq, int anchor, double rel);
};

struct XEval {
    int sign = 1;
    double log_abs_x = 0;
    double L = 0;            // t x'(t) / x(t)
    double dprime = 0;       // L + 1 - x
    double one_minus_x = 0;
    double dprime_scale = 0;  // size of the terms cancelling in dprime

    double x() const;
};

XEval eval_x(const StartDensity& d, double qq, const TParam& t);
double x_of_t(const StartDensity& d, double qq, double t);
double dx_dt(const StartDensity& d, double qq, double t);
// Direct numerical integration of the defining integral; principal value inside filled windows.
double x_of_t_quadrature(const StartDensity& d, double qq, double t);

std::optional<TDomain> find_domain(const StartDensity& d, double qq, double t);

struct ArcticPoint {
    double X, Y;
};

ArcticPoint arctic_point(const StartDensity& d, double qq, const TParam& t);
ArcticPoint arctic_point(const StartDensity& d, double qq, double t);

struct CurvePoint {
    double t, X, Y;
    int anchor = -1;
    double rel = 0;

    TParam param() const { return {t, anchor, rel}; }
};

struct Curve {
    std::vector<CurvePoint> points;
    std::vector<double> dropped;  // t values skipped as singular
    bool self_intersects = false;
};

struct SamplingOptions {
    int n_samples = 2000;
    double efolds = 40;       // extent of |t| beyond the finite scales, in e-folds
    int refine_steps = 160;   // geometric approach to finite endpoints
    double refine_ratio = 1.0 / 8;  // rel = 10^(-k * ratio)
};

Curve arctic_curve(const StartDensity& d, double qq, const TDomain& dom, const SamplingOptions& opt = {});
// Union of all domains, in the order returned by t_domains.
std::vector<Curve> arctic_curves(const StartDensity& d, double qq, const SamplingOptions& opt = {});

bool polyline_self_intersects(const std::vector<CurvePoint>& pts);

// The line of the tangent family for a fixed t, sampled over X in [xlo, xhi].
Curve tangent_curve(const StartDensity& d, double qq, double t, int n_samples, double xlo, double xhi);
double family_residual(const StartDensity& d, double qq, const TParam& t, double X, double Y);
double family_residual(const StartDensity& d, double qq, double t, double X, double Y);

struct ScalingVars {
    double xi, z;
    double mu, phi;  // tangency point on the geodesic, (mu, 1 + phi)
};

ScalingVars exit_params_right(const StartDensity& d, double qq, double t);
ScalingVars exit_params_left(const StartDensity& d, double qq, double t);
// Bisection on the right branch for the t with z(t) = z.
double right_t_for_z(const StartDensity& d, double qq, double z);

// Free-path trajectory from (0, 1 + z) to (xi, 1), sampled over X in [0, xi].
Curve geodesic(double qq, double xi, double z, int n_samples);
double geodesic_residual(double qq, double xi, double z, double X, double Y);
double reflected_geodesic_residual(double qq, double alpha1, double xi, double z, double X, double Y);

double action_S0(const StartDensity& d, double qq, double t, double xi);
double action_S1(double qq, double xi, double z);
double action_S1_tilde(double qq, double alpha1, double xi, double z);

struct SaddleResidual {
    double dt;   // t dS0/dt
    double dxi;  // d(S0 + S1)/dxi, or with S1 tilde on the left
};

SaddleResidual saddle_residual_right(const StartDensity& d, double qq, double t, double eps = 1e-5);
SaddleResidual saddle_residual_left(const StartDensity& d, double qq, double t, double eps = 1e-5);

}  // namespace qarctic
