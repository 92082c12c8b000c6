#include "qarctic/arctic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qarctic {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double check_qq(double qq) {
    if (!(qq > 0) || qq == 1 || !std::isfinite(qq)) throw DomainError("qq must be positive, finite and different from 1");
    return std::log(qq);
}

double integrate(const auto& f, double a, double b) {
    if (a == b) return 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

// -w/(1-w) - log1p(-w)
double g_term(double w) {
    if (std::fabs(w) < 1e-2) {
        double s = 0, pw = w;
        for (int k = 2; k <= 30; ++k) {
            pw *= w;
            s -= (k - 1.0) / k * pw;
        }
        return s;
    }
    return -w / (1 - w) - std::log1p(-w);
}

// expm1(y) - y
double expm1_minus(double y) {
    if (std::fabs(y) < 1e-2) {
        double s = 0, term = y;
        for (int k = 2; k <= 20; ++k) {
            term *= y / k;
            s += term;
        }
        return s;
    }
    return std::expm1(y) - y;
}

// log(expm1(y) / y), smooth through y = 0
double log_expm1_ratio(double y) {
    if (std::fabs(y) < 1e-5) return y / 2 + y * y / 24;
    if (y > 30) return y + std::log1p(-std::exp(-y)) - std::log(y);
    return std::log(std::expm1(y) / y);
}

// integral over [a, b] of log|expm1(lam v)| dv
double log_expm1_integral(double lam, double a, double b) {
    auto F = [&](double v) { return v == 0 ? 0.0 : v * std::log(std::fabs(lam * v)) - v; };
    return F(b) - F(a) + integrate([&](double v) { return log_expm1_ratio(lam * v); }, a, b);
}

struct EndLog {
    bool theta_mode;  // log|t - A| = theta lq + small
    double big;       // ln|t| in large mode
    double small;
    int sign;
    double tt;        // t / (t - A)
    double w;         // t / A (theta mode) or A / t (large mode)
    bool anchored;
};

EndLog end_log(const StartDensity& d, double lq, const TParam& tp, int k) {
    const double theta = d.breakpoints()[k];
    const double A = std::exp(theta * lq);
    EndLog e{};
    if (tp.anchor == k) {
        e.theta_mode = true;
        e.anchored = true;
        e.small = std::log(std::fabs(tp.rel));
        e.sign = tp.rel > 0 ? 1 : -1;
        e.tt = (1 + tp.rel) / tp.rel;
        return e;
    }
    const double t = tp.t;
    if (std::fabs(t) < A) {
        e.theta_mode = true;
        e.w = t / A;
        e.small = std::log1p(-e.w);
        e.sign = -1;
        e.tt = -e.w / (1 - e.w);
    } else {
        e.theta_mode = false;
        e.w = A / t;
        e.big = std::log(std::fabs(t));
        e.small = std::log1p(-e.w);
        e.sign = t > 0 ? 1 : -1;
        e.tt = 1 / (1 - e.w);
    }
    return e;
}

bool in_open(double t, double lo, double hi) { return t > lo && t < hi; }

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::right: return "right";
        case Branch::left: return "left";
        case Branch::gap_window: return "gap";
        case Branch::filled_window: return "filled";
    }
    return "?";
}

std::vector<TDomain> t_domains(const StartDensity& d, double qq) {
    const double lq = check_qq(qq);
    const auto& br = d.breakpoints();
    const int K = static_cast<int>(br.size()) - 1;
    auto B = [&](int k) { return std::exp(br[k] * lq); };
    std::vector<TDomain> out;
    if (qq > 1) {
        out.push_back({B(K), inf, Branch::right, -1, 1, K, -1});
        out.push_back({-inf, 1, Branch::left, -1, 1, -1, 0});
    } else {
        out.push_back({-inf, B(K), Branch::right, -1, 1, -1, K});
        out.push_back({1, inf, Branch::left, -1, 1, 0, -1});
    }
    auto window = [&](int lo_k, int hi_k, Branch b, int piece, int sign) {
        TDomain w{B(lo_k), B(hi_k), b, piece, sign, lo_k, hi_k};
        if (qq < 1) {
            std::swap(w.lo, w.hi);
            std::swap(w.lo_anchor, w.hi_anchor);
        }
        out.push_back(w);
    };
    const auto& ps = d.pieces();
    for (size_t m = 0; m < ps.size(); ++m) {
        if (ps[m].jump) {
            window(ps[m].lo, ps[m].hi, Branch::gap_window, static_cast<int>(m), 1);
            continue;
        }
        if (ps[m].p != 1 || (m > 0 && !ps[m - 1].jump && ps[m - 1].p == 1)) continue;
        size_t e = m;
        while (e + 1 < ps.size() && !ps[e + 1].jump && ps[e + 1].p == 1) ++e;
        bool edge = ps[m].lo == 0 || ps[e].hi == K;
        if (edge && !d.all_unit_slopes()) continue;
        window(ps[m].lo, ps[e].hi, Branch::filled_window, static_cast<int>(m), -1);
    }
    return out;
}

std::optional<TDomain> find_domain(const StartDensity& d, double qq, double t) {
    for (const auto& dom : t_domains(d, qq))
        if (in_open(t, dom.lo, dom.hi)) return dom;
    return std::nullopt;
}

TParam TParam::near(const StartDensity& d, double qq, int anchor, double rel) {
    return {std::exp(d.breakpoints().at(anchor) * std::log(qq)) * (1 + rel), anchor, rel};
}

double XEval::x() const { return sign * std::exp(log_abs_x); }

XEval eval_x(const StartDensity& d, double qq, const TParam& tp) {
    const double lq = check_qq(qq);
    if (tp.anchor < 0) {
        auto dom = find_domain(d, qq, tp.t);
        if (!dom) {
            // distinguish the unsupported edge windows from points where x(t) is not real
            for (const auto& p : d.pieces()) {
                if (p.jump || p.p != 1) continue;
                double a = std::exp(p.theta0 * lq), b = std::exp(p.theta1 * lq);
                if (in_open(tp.t, std::min(a, b), std::max(a, b)))
                    throw UnsupportedConfiguration("x(t): unit-slope edge segment next to a curved segment is not supported");
            }
            throw DomainError("x(t) is not real at this t");
        }
    }
    XEval r;
    double lx = 0, L = 0, LmLx = 0;
    bool all_small = true;
    for (const auto& p : d.pieces()) {
        if (p.jump) continue;
        EndLog s = end_log(d, lq, tp, p.lo), e = end_log(d, lq, tp, p.hi);
        const double ip = 1 / p.p;
        if (e.sign * s.sign < 0) {
            if (p.p != 1) throw DomainError("x(t) is not real at this t");
            r.sign = -r.sign;
        }
        double piece_lx;
        if (s.theta_mode && e.theta_mode) piece_lx = ip * (e.small - s.small);
        else if (!s.theta_mode && !e.theta_mode) piece_lx = ip * (e.small - s.small) - p.gamma * lq;
        else {
            double le = e.theta_mode ? p.theta1 * lq + e.small : e.big + e.small;
            double ls = s.theta_mode ? p.theta0 * lq + s.small : s.big + s.small;
            piece_lx = ip * (le - ls) - p.gamma * lq;
        }
        double piece_L;
        if (s.theta_mode && e.theta_mode && !s.anchored && !e.anchored)
            piece_L = ip * (s.w - e.w) / ((1 - e.w) * (1 - s.w));
        else if (!s.theta_mode && !e.theta_mode)
            piece_L = ip * (e.w - s.w) / ((1 - e.w) * (1 - s.w));
        else piece_L = ip * (e.tt - s.tt);
        if (s.theta_mode && e.theta_mode && !s.anchored && !e.anchored) LmLx += ip * (g_term(e.w) - g_term(s.w));
        else all_small = false;
        lx += piece_lx;
        L += piece_L;
    }
    r.log_abs_x = lx;
    r.L = L;
    if (r.sign > 0) {
        r.one_minus_x = -std::expm1(lx);
        if (all_small) {
            double h = expm1_minus(lx);
            r.dprime = LmLx - h;
            r.dprime_scale = std::fabs(LmLx) + std::fabs(h);
        } else {
            r.dprime = L - std::expm1(lx);
            r.dprime_scale = std::fabs(L) + std::fabs(r.one_minus_x);
        }
    } else {
        r.one_minus_x = 1 + std::exp(lx);
        r.dprime = L + r.one_minus_x;
        r.dprime_scale = std::fabs(L) + std::fabs(r.one_minus_x);
    }
    return r;
}

double x_of_t(const StartDensity& d, double qq, double t) { return eval_x(d, qq, TParam::plain(t)).x(); }

double dx_dt(const StartDensity& d, double qq, double t) {
    const double lq = check_qq(qq);
    double x = x_of_t(d, qq, t), s = 0;
    for (const auto& p : d.pieces()) {
        if (p.jump) continue;
        s += (1 / (t - std::exp(p.theta1 * lq)) - 1 / (t - std::exp(p.theta0 * lq))) / p.p;
    }
    return x * s;
}

double x_of_t_quadrature(const StartDensity& d, double qq, double t) {
    const double lq = check_qq(qq);
    auto dom = find_domain(d, qq, t);
    if (!dom) throw DomainError("x(t) is not real at this t");
    double I = 0;
    for (const auto& p : d.pieces()) {
        if (p.jump) continue;
        const double tau = t > 0 ? std::log(t) / lq : -inf;
        if (t > 0 && tau > p.theta0 && tau < p.theta1) {
            // principal value around the point where qq^alpha(u) = t
            const double us = p.u0 + (tau - p.theta0) / p.p;
            const double c = p.p * lq;
            auto reg = [&](double u) {
                double y = c * (u - us);
                double v = std::fabs(y) < 1e-6 ? -0.5 + y / 12 : 1 / std::expm1(y) - 1 / y;
                return -v / t;
            };
            I += integrate(reg, p.u0, us) + integrate(reg, us, p.u1);
            I += -std::log(std::fabs((p.u1 - us) / (p.u0 - us))) / (t * c);
        } else {
            I += integrate([&](double u) { return 1 / (t - std::exp((p.theta0 + p.p * (u - p.u0)) * lq)); }, p.u0, p.u1);
        }
    }
    return dom->sign * std::exp(-t * I * lq);
}

ArcticPoint arctic_point(const StartDensity& d, double qq, const TParam& tp) {
    const double lq = std::log(qq);
    XEval e = eval_x(d, qq, tp);
    if (!(std::fabs(e.dprime) > 1e-14 * e.dprime_scale))
        throw SingularPoint("arctic point: vanishing denominator");
    const double a = tp.t * e.L / e.dprime;
    const double x = e.x();
    const double b = e.one_minus_x * e.one_minus_x / (x * e.dprime);
    if (!(a > 0) || !(b > -1) || !std::isfinite(a) || !std::isfinite(b))
        throw SingularPoint("arctic point: logarithm of a non-positive number");
    return {std::log(a) / lq, std::log1p(b) / lq};
}

ArcticPoint arctic_point(const StartDensity& d, double qq, double t) { return arctic_point(d, qq, TParam::plain(t)); }

bool polyline_self_intersects(const std::vector<CurvePoint>& pts) {
    auto orient = [](const CurvePoint& a, const CurvePoint& b, const CurvePoint& c) {
        double v = (b.X - a.X) * (c.Y - a.Y) - (b.Y - a.Y) * (c.X - a.X);
        return (v > 0) - (v < 0);
    };
    const size_t n = pts.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        double xmin = std::min(pts[i].X, pts[i + 1].X), xmax = std::max(pts[i].X, pts[i + 1].X);
        double ymin = std::min(pts[i].Y, pts[i + 1].Y), ymax = std::max(pts[i].Y, pts[i + 1].Y);
        for (size_t j = i + 2; j + 1 < n; ++j) {
            if (std::max(pts[j].X, pts[j + 1].X) < xmin || std::min(pts[j].X, pts[j + 1].X) > xmax ||
                std::max(pts[j].Y, pts[j + 1].Y) < ymin || std::min(pts[j].Y, pts[j + 1].Y) > ymax)
                continue;
            int o1 = orient(pts[i], pts[i + 1], pts[j]), o2 = orient(pts[i], pts[i + 1], pts[j + 1]);
            int o3 = orient(pts[j], pts[j + 1], pts[i]), o4 = orient(pts[j], pts[j + 1], pts[i + 1]);
            if (o1 * o2 < 0 && o3 * o4 < 0) return true;
        }
    }
    return false;
}

Curve arctic_curve(const StartDensity& d, double qq, const TDomain& dom, const SamplingOptions& opt) {
    const double lq = check_qq(qq);
    const double lmin = std::min(0.0, d.alpha1() * lq), lmax = std::max(0.0, d.alpha1() * lq);
    struct Sample {
        TParam tp;
        double key;
    };
    std::vector<Sample> ts;
    auto grid = [&](double la, double lb, int sgn) {
        for (int k = 0; k < opt.n_samples; ++k) {
            double t = sgn * std::exp(la + (lb - la) * (k + 0.5) / opt.n_samples);
            ts.push_back({TParam::plain(t), 0});
        }
    };
    if (dom.lo < 0) grid(lmin - opt.efolds, lmax + opt.efolds, -1);
    if (dom.hi > 0) {
        double a = std::max(dom.lo, 0.0);
        grid(a > 0 ? std::log(a) : lmin - opt.efolds, std::isfinite(dom.hi) ? std::log(dom.hi) : lmax + opt.efolds, 1);
    }
    for (int k = 1; k <= opt.refine_steps; ++k) {
        double rel = std::pow(10.0, -k * opt.refine_ratio);
        for (auto [anchor, r] : {std::pair{dom.lo_anchor, rel}, std::pair{dom.hi_anchor, -rel}}) {
            if (anchor < 0) continue;
            TParam tp = TParam::near(d, qq, anchor, r);
            if (in_open(tp.t, dom.lo, dom.hi)) ts.push_back({tp, r});
        }
    }
    std::sort(ts.begin(), ts.end(), [](const Sample& a, const Sample& b) {
        return a.tp.t != b.tp.t ? a.tp.t < b.tp.t : a.key < b.key;
    });
    Curve c;
    for (const auto& s : ts) {
        try {
            ArcticPoint p = arctic_point(d, qq, s.tp);
            c.points.push_back({s.tp.t, p.X, p.Y, s.tp.anchor, s.tp.rel});
        } catch (const DomainError&) {
            c.dropped.push_back(s.tp.t);
        }
    }
    if (dom.branch == Branch::gap_window || dom.branch == Branch::filled_window)
        c.self_intersects = polyline_self_intersects(c.points);
    return c;
}

std::vector<Curve> arctic_curves(const StartDensity& d, double qq, const SamplingOptions& opt) {
    std::vector<Curve> out;
    for (const auto& dom : t_domains(d, qq)) out.push_back(arctic_curve(d, qq, dom, opt));
    return out;
}

double family_residual(const StartDensity& d, double qq, double t, double X, double Y) {
    return family_residual(d, qq, TParam::plain(t), X, Y);
}

Curve tangent_curve(const StartDensity& d, double qq, double t, int n_samples, double xlo, double xhi) {
    const double lq = check_qq(qq);
    if (t == 0) throw DomainError("tangent_curve: t must be nonzero");
    const double x = x_of_t(d, qq, t);
    Curve c;
    for (int k = 0; k < n_samples; ++k) {
        double X = n_samples == 1 ? xlo : xlo + (xhi - xlo) * k / (n_samples - 1);
        double arg = (1 - (1 - x) / t * std::exp(X * lq)) / x;
        if (arg > 0) c.points.push_back({t, X, std::log(arg) / lq});
        else c.dropped.push_back(X);
    }
    return c;
}

double family_residual(const StartDensity& d, double qq, const TParam& t, double X, double Y) {
    const double lq = std::log(qq);
    XEval e = eval_x(d, qq, t);
    const double a = e.x() * std::exp(Y * lq), b = e.one_minus_x / t.t * std::exp(X * lq);
    return (a + b - 1) / std::max({std::fabs(a), std::fabs(b), 1.0});
}

ScalingVars exit_params_right(const StartDensity& d, double qq, double t) {
    const double lq = check_qq(qq);
    XEval e = eval_x(d, qq, TParam::plain(t));
    if (e.sign < 0) throw DomainError("exit parameters need x(t) > 0");
    const double qx1 = std::expm1(e.log_abs_x + lq);  // qq x - 1
    const double ratio = t * qx1 / -e.one_minus_x;
    const double zarg = -e.one_minus_x / t;  // (t + x - 1)/t - 1
    if (!(ratio > 0) || !(zarg > -1)) throw DomainError("exit parameters are not real at this t");
    ArcticPoint p = arctic_point(d, qq, t);
    return {std::log(ratio) / lq, (std::log1p(zarg) - e.log_abs_x) / lq - 1, p.X, p.Y - 1};
}

ScalingVars exit_params_left(const StartDensity& d, double qq, double t) {
    const double lq = check_qq(qq);
    XEval e = eval_x(d, qq, TParam::plain(t));
    if (e.sign < 0) throw DomainError("exit parameters need x(t) > 0");
    const double qx1 = std::expm1(e.log_abs_x + lq);
    const double ratio = t * qx1 / -e.one_minus_x;
    const double den = t * e.x() + std::exp(d.alpha1() * lq) * e.one_minus_x;
    const double zr = t / den;
    if (!(ratio > 0) || !(zr > 0) || !std::isfinite(zr)) throw DomainError("exit parameters are not real at this t");
    ArcticPoint p = arctic_point(d, qq, t);
    return {std::log(ratio) / lq, std::log(zr) / lq - 1, p.X, p.Y - 1};
}

double right_t_for_z(const StartDensity& d, double qq, double z) {
    const double lq = check_qq(qq);
    const double B = std::exp(d.alpha1() * lq), dir = qq > 1 ? 1 : -1;
    auto t_of = [&](double s) { return B + dir * std::exp(s); };
    auto f = [&](double s) { return exit_params_right(d, qq, t_of(s)).z - z; };
    double lo = std::log(B) - 30, hi = std::log(B) + 25;
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0) throw NonConvergence("right_t_for_z: z is not bracketed on the right branch");
    for (int k = 0; k < 200 && hi - lo > 1e-13; ++k) {
        double mid = (lo + hi) / 2, fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return t_of((lo + hi) / 2);
}

Curve geodesic(double qq, double xi, double z, int n_samples) {
    const double lq = check_qq(qq);
    Curve c;
    for (int k = 0; k < n_samples; ++k) {
        double X = n_samples == 1 ? 0 : xi * k / (n_samples - 1);
        double ratio = std::expm1(X * lq) / std::expm1(xi * lq);
        double arg = std::expm1(z * lq) * (1 - ratio);
        if (arg > -1) c.points.push_back({0, X, 1 + std::log1p(arg) / lq});
        else c.dropped.push_back(X);
    }
    return c;
}

double geodesic_residual(double qq, double xi, double z, double X, double Y) {
    const double lq = std::log(qq);
    return std::expm1(X * lq) / std::expm1(xi * lq) + std::expm1((Y - 1) * lq) / std::expm1(z * lq) - 1;
}

double reflected_geodesic_residual(double qq, double alpha1, double xi, double z, double X, double Y) {
    const double lq = std::log(qq);
    return std::expm1(-(alpha1 + Y - X) * lq) / std::expm1(-(alpha1 + 1 - xi) * lq) +
           std::expm1(-(Y - 1) * lq) / std::expm1(-z * lq) - 1;
}

double action_S0(const StartDensity& d, double qq, double t, double xi) {
    const double lq = check_qq(qq);
    double s = (xi - 0.5) * lq;
    if (t > 0) {
        // t qq^(u - xi) - 1 = expm1((u - us) lq)
        const double us = xi - std::log(t) / lq;
        s += log_expm1_integral(lq, -us, 1 - us);
    } else {
        s += integrate([&](double u) { return std::log1p(-t * std::exp((u - xi) * lq)); }, 0, 1);
    }
    for (const auto& p : d.pieces()) {
        if (p.jump) continue;
        auto f = [&](double u) { return std::log(std::fabs(t - std::exp((p.theta0 + p.p * (u - p.u0)) * lq))); };
        const double tau = t > 0 ? std::log(t) / lq : -inf;
        if (t > 0 && tau > p.theta0 && tau < p.theta1) {
            const double us = p.u0 + (tau - p.theta0) / p.p;
            s -= integrate(f, p.u0, us) + integrate(f, us, p.u1);
        } else {
            s -= integrate(f, p.u0, p.u1);
        }
    }
    return s;
}

double action_S1(double qq, double xi, double z) {
    const double lq = check_qq(qq);
    return log_expm1_integral(lq, z, xi + z) - log_expm1_integral(lq, 0, xi);
}

double action_S1_tilde(double qq, double alpha1, double xi, double z) {
    const double lq = check_qq(qq);
    return z * (xi + z / 2) * lq + action_S1(qq, alpha1 + 1 - xi, z);
}

SaddleResidual saddle_residual_right(const StartDensity& d, double qq, double t, double eps) {
    ScalingVars v = exit_params_right(d, qq, t);
    SaddleResidual r;
    r.dt = (action_S0(d, qq, t * (1 + eps), v.xi) - action_S0(d, qq, t * (1 - eps), v.xi)) / (2 * eps);
    auto F = [&](double xi) { return action_S0(d, qq, t, xi) + action_S1(qq, xi, v.z); };
    r.dxi = (F(v.xi + eps) - F(v.xi - eps)) / (2 * eps);
    return r;
}

SaddleResidual saddle_residual_left(const StartDensity& d, double qq, double t, double eps) {
    ScalingVars v = exit_params_left(d, qq, t);
    SaddleResidual r;
    r.dt = (action_S0(d, qq, t * (1 + eps), v.xi) - action_S0(d, qq, t * (1 - eps), v.xi)) / (2 * eps);
    auto F = [&](double xi) { return action_S0(d, qq, t, xi) + action_S1_tilde(qq, d.alpha1(), xi, v.z); };
    r.dxi = (F(v.xi + eps) - F(v.xi - eps)) / (2 * eps);
    return r;
}

}  // namespace qarctic
