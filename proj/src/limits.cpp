#include "qarctic/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qarctic {

std::vector<Pt> m_vertices(const StartDensity& d) {
    std::vector<Pt> v;
    const auto& th = d.breakpoints();
    const auto& U = d.breakpoint_u();
    for (size_t i = 0; i < th.size(); ++i) v.push_back({1 + th[i] - U[i], 1 - U[i]});
    return v;
}

std::vector<Pt> n_vertices(const StartDensity& d) {
    std::vector<Pt> v;
    const auto& th = d.breakpoints();
    const auto& U = d.breakpoint_u();
    for (size_t i = 0; i < th.size(); ++i) v.push_back({th[i], U[i]});
    return v;
}

std::vector<Polyline> limit_curve(const StartDensity& d, Limit which) {
    const double a1 = d.alpha1();
    if (d.is_hexagon()) {
        const double g = d.pieces()[0].gamma, dl = d.pieces()[1].delta;
        if (which == Limit::q_to_0)
            return {{{g, 0}, {1, 1 - g}}, {{1, 1 - g}, {1, 1}}, {{1, 1 - g}, {1 + dl, 1 - g}}};
        return {{{g, g}, {g + dl, g}}, {{g + dl, 0}, {g + dl, g}}, {{g + dl, g}, {1 + dl, 1}}};
    }
    if (which == Limit::q_to_0) return {{{0, 0}, {1, 1}}, m_vertices(d)};
    return {n_vertices(d), {{a1, 1}, {a1, 0}}};
}

Polyline window_limit(const StartDensity& d, const TDomain& window, Limit which) {
    const auto& pc = d.pieces()[window.piece];
    int s = pc.lo, e = pc.hi;
    if (window.branch == Branch::filled_window) {
        size_t m = window.piece;
        while (m + 1 < d.pieces().size() && !d.pieces()[m + 1].jump && d.pieces()[m + 1].p == 1) ++m;
        e = d.pieces()[m].hi;
    }
    auto V = which == Limit::q_to_0 ? m_vertices(d) : n_vertices(d);
    const auto& th = d.breakpoints();
    return {{th[s], 0}, V[s], V[e], {th[e], 0}};
}

std::vector<Polyline> curve_polylines(const Curve& c) {
    std::vector<Polyline> out;
    Polyline cur;
    size_t di = 0;
    for (const auto& p : c.points) {
        bool gap = false;
        while (di < c.dropped.size() && c.dropped[di] < p.t) {
            gap = true;
            ++di;
        }
        if (gap && !cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
        cur.push_back({p.X, p.Y});
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

namespace {

double seg_dist(const Pt& p, const Pt& a, const Pt& b) {
    double dx = b.x - a.x, dy = b.y - a.y;
    double l2 = dx * dx + dy * dy;
    double s = l2 > 0 ? std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / l2, 0.0, 1.0) : 0.0;
    return std::hypot(p.x - a.x - s * dx, p.y - a.y - s * dy);
}

double dist_to(const Pt& p, const std::vector<Polyline>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pl : b) {
        if (pl.size() == 1) best = std::min(best, std::hypot(p.x - pl[0].x, p.y - pl[0].y));
        for (size_t i = 0; i + 1 < pl.size(); ++i) best = std::min(best, seg_dist(p, pl[i], pl[i + 1]));
    }
    return best;
}

double directed(const std::vector<Polyline>& a, const std::vector<Polyline>& b, double h) {
    double worst = 0;
    for (const auto& pl : a) {
        if (pl.size() == 1) worst = std::max(worst, dist_to(pl[0], b));
        for (size_t i = 0; i + 1 < pl.size(); ++i) {
            const Pt &p = pl[i], &q = pl[i + 1];
            int k = std::max(1, static_cast<int>(std::ceil(std::hypot(q.x - p.x, q.y - p.y) / h)));
            for (int j = 0; j <= k; ++j) {
                double s = static_cast<double>(j) / k;
                worst = std::max(worst, dist_to({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)}, b));
            }
        }
    }
    return worst;
}

}  // namespace

double hausdorff_distance(const std::vector<Polyline>& a, const std::vector<Polyline>& b, double h) {
    return std::max(directed(a, b, h), directed(b, a, h));
}

}  // namespace qarctic
