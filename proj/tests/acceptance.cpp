#include "qarctic/limits.hpp"
#include "qarctic/nilp.hpp"
#include "qarctic/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace qarctic;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int k, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s\n", k, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

StartDensity linear2() { return StartDensity({{1, 2}}); }
StartDensity three_slopes() { return StartDensity({{1. / 3, 2}, {1. / 3, 4}, {1. / 3, 2}}); }
StartDensity unit_middle() { return StartDensity({{1. / 3, 2}, {1. / 3, 1}, {1. / 3, 2}}); }
StartDensity gap_middle() { return StartDensity({{0.5, 2}, {0.5, 2}}, {{0.5, 1}}); }
StartDensity hexagon() { return StartDensity({{1. / 3, 1}, {2. / 3, 1}}, {{1. / 3, 1}}); }

StartSequence random_sequence(std::mt19937_64& rng, int nmax, long amax) {
    int n = std::uniform_int_distribution<int>(1, nmax)(rng);
    std::vector<long> pool;
    for (long v = 1; v <= amax; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<long> a{0};
    a.insert(a.end(), pool.begin(), pool.begin() + n);
    std::sort(a.begin(), a.end());
    return StartSequence(a);
}

Rational random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> D(1, 12);
    for (;;) {
        Rational q(D(rng), D(rng));
        q.canonicalize();
        if (q != 1) return q;
    }
}

std::vector<StartSequence> all_sequences(int n, long max_last) {
    std::vector<StartSequence> out;
    std::vector<long> a{0};
    std::function<void()> rec = [&] {
        if (static_cast<int>(a.size()) == n + 1) {
            out.emplace_back(a);
            return;
        }
        for (long x = a.back() + 1; x <= max_last; ++x) {
            a.push_back(x);
            rec();
            a.pop_back();
        }
    };
    rec();
    return out;
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

std::vector<double> sample_ts(const TDomain& dom, int n, std::mt19937_64& rng) {
    std::vector<double> out;
    std::uniform_real_distribution<double> U(0.02, 0.98);
    for (int k = 0; k < n; ++k) {
        double u = U(rng);
        double t;
        if (std::isinf(dom.lo) && std::isinf(dom.hi)) t = std::tan(M_PI * (u - 0.5)) * 10;
        else if (std::isinf(dom.lo)) t = dom.hi - std::exp(12 * u - 4);
        else if (std::isinf(dom.hi)) t = dom.lo + std::exp(12 * u - 4);
        else t = dom.lo + (dom.hi - dom.lo) * u;
        out.push_back(t);
    }
    return out;
}

bool well_inside(const TDomain& dom, double t) {
    for (double e : {dom.lo, dom.hi})
        if (std::isfinite(e) && std::fabs(t - e) < 0.05 * std::fabs(e)) return false;
    return true;
}

std::vector<Polyline> branch_polylines(const StartDensity& d, double qq, Branch b) {
    std::vector<Polyline> out;
    for (const auto& dom : t_domains(d, qq))
        if (dom.branch == b)
            for (auto& p : curve_polylines(arctic_curve(d, qq, dom))) out.push_back(std::move(p));
    return out;
}

void criterion1() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
        StartSequence s = random_sequence(rng, 6, 18);
        QPolynomial z = partition_det(s);
        for (int j = 0; j < 10; ++j) {
            Rational q = random_q(rng);
            if (poly_eval(z, q) != partition_product(s, q)) ++bad;
        }
    }
    double sec = seconds_since(t0);
    report(1, bad == 0 && sec < 10, std::to_string(bad) + " mismatches in 500 cases, " + fmt("%.2f s (limit 10 s)", sec));
}

void criterion2() {
    auto t0 = Clock::now();
    int bad = 0, count = 0;
    for (const auto& s : all_sequences(2, 5)) {
        auto configs = enumerate_configs(s);
        QPolynomial z = partition_det(s);
        for (Rational q : {Rational(1, 3), Rational(2, 5), Rational(2), Rational(7, 2)}) {
            Rational sum = 0;
            for (const auto& c : configs) sum += rational_pow(q, c.area);
            if (sum != poly_eval(z, q)) ++bad;
            ++count;
        }
    }
    double sec = seconds_since(t0);
    report(2, bad == 0 && sec < 5,
           std::to_string(bad) + " mismatches in " + std::to_string(count) + " cases, " + fmt("%.2f s (limit 5 s)", sec));
}

void criterion3() {
    std::mt19937_64 rng(303);
    int bad = 0;
    for (int i = 0; i < 60; ++i) {
        StartSequence s = random_sequence(rng, 5, 14);
        QPolynomial z = partition_det(s), zd = partition_det(dual_sequence(s));
        long e = zident_exponent(s);
        for (long k = 0; k <= std::max<long>(z.degree(), e); ++k)
            if (z.coeff(k) != (e - k >= 0 ? zd.coeff(e - k) : BigInt(0))) {
                ++bad;
                break;
            }
    }
    report(3, bad == 0, std::to_string(bad) + " of 60 random sequences violate the symmetry");
}

void criterion4() {
    int bad = 0, count = 0;
    for (int n = 1; n <= 3; ++n)
        for (const auto& s : all_sequences(n, 6)) {
            QPolynomial z = partition_det(s);
            for (long ell = 0; ell <= s.last(); ++ell) {
                auto configs = enumerate_configs(s, ExitSpec{ell, std::nullopt});
                for (Rational q : {Rational(1, 3), Rational(2, 5), Rational(2), Rational(7, 2)}) {
                    Rational brute = 0;
                    for (const auto& c : configs) brute += rational_pow(q, c.area);
                    brute /= poly_eval(z, q);
                    if (one_point_H(s, ell, q) != brute || one_point_H_det(s, ell, q) != brute) ++bad;
                    ++count;
                }
            }
        }
    report(4, bad == 0, std::to_string(bad) + " disagreements in " + std::to_string(count) + " cases");
}

void criterion5() {
    int bad = 0, count = 0;
    for (int n = 1; n <= 4; ++n)
        for (const auto& s : all_sequences(n, n + 4))
            for (Rational q : {Rational(1, 3), Rational(2, 5), Rational(2), Rational(7, 2)})
                for (long ell = n + 1; ell <= s.last(); ++ell) {
                    if (one_point_H(s, ell, q) + one_point_Htilde(s, ell - 1, q) != 1) ++bad;
                    ++count;
                }
    report(5, bad == 0, std::to_string(bad) + " violations in " + std::to_string(count) + " cases");
}

void criterion6() {
    std::mt19937_64 rng(606);
    StartDensity d = linear2();
    double worst_closed = 0, worst_quad = 0;
    int count = 0;
    for (double qq : {3.0, 1.0 / 3}) {
        auto doms = t_domains(d, qq);
        for (size_t i = 0; i < doms.size(); ++i)
            for (double t : sample_ts(doms[i], 25, rng)) {
                double x = x_of_t(d, qq, t);
                double direct = std::sqrt((t - qq * qq) / (t - 1)) / qq;
                worst_closed = std::max(worst_closed, rel_err(x, direct));
                worst_quad = std::max(worst_quad, rel_err(x, x_of_t_quadrature(d, qq, t)));
                ++count;
            }
    }
    report(6, worst_closed <= 1e-8 && worst_quad <= 1e-8,
           std::to_string(count) + " t over both qq; max rel err vs closed form " + fmt("%.2e", worst_closed) +
               ", vs quadrature " + fmt("%.2e", worst_quad) + " (tol 1e-8)");
}

void criterion7() {
    StartDensity d = linear2();
    auto far = arctic_point(d, 3, 1e8);
    auto near = arctic_point(d, 3, 9 * (1 + 1e-8));
    auto mfar = arctic_point(d, 1.0 / 3, -1e8);
    auto mnear = arctic_point(d, 1.0 / 3, (1.0 / 9) * (1 - 1e-8));
    double e1 = std::hypot(far.X - std::log(6) / std::log(3), far.Y - 1);
    double e2 = std::hypot(near.X - 2, near.Y);
    double e3 = std::hypot(mfar.X - std::log(2.0 / 9) / std::log(1.0 / 3), mfar.Y - 1);
    double e4 = std::hypot(mnear.X - 2, mnear.Y);
    double worst = std::max({e1, e2, e3, e4});
    report(7, worst <= 1e-3,
           "qq=3: " + fmt("%.2e", e1) + ", " + fmt("%.2e", e2) + "; qq=1/3: " + fmt("%.2e", e3) + ", " +
               fmt("%.2e", e4) + " (tol 1e-3)");
}

void criterion8() {
    double worst = 0;
    size_t fewest = SIZE_MAX;
    for (const auto& d : {linear2(), three_slopes()})
        for (double qq : {3.0, 1.0 / 3}) {
            SamplingOptions opt;
            opt.n_samples = 200;
            opt.refine_steps = 0;
            for (const auto& dom : t_domains(d, qq)) {
                Curve c = arctic_curve(d, qq, dom, opt);
                fewest = std::min(fewest, c.points.size());
                for (const auto& p : c.points)
                    worst = std::max(worst, std::fabs(family_residual(d, qq, p.param(), p.X, p.Y)));
            }
        }
    report(8, worst <= 1e-10 && fewest >= 200,
           "max residual " + fmt("%.2e", worst) + " (tol 1e-10), fewest points per branch " + std::to_string(fewest));
}

void criterion9() {
    double worst = 0;
    int fewest = 1 << 30;
    std::mt19937_64 rng(909);
    for (const auto& d : {linear2(), three_slopes()})
        for (double qq : {3.0, 1.0 / 3}) {
            auto doms = t_domains(d, qq);
            for (int side = 0; side < 2; ++side) {
                int used = 0;
                for (int round = 0; round < 100 && used < 20; ++round)
                    for (double t : sample_ts(doms[side], 20, rng)) {
                        if (used == 20) break;
                        if (!well_inside(doms[side], t)) continue;
                        SaddleResidual r;
                        try {
                            r = side == 0 ? saddle_residual_right(d, qq, t) : saddle_residual_left(d, qq, t);
                        } catch (const DomainError&) {
                            continue;
                        }
                        ++used;
                        worst = std::max({worst, std::fabs(r.dt), std::fabs(r.dxi)});
                    }
                fewest = std::min(fewest, used);
            }
        }
    report(9, worst <= 1e-6 && fewest == 20,
           "max residual " + fmt("%.2e", worst) + " (tol 1e-6), fewest t per branch " + std::to_string(fewest));
}

void criterion10() {
    auto t0 = Clock::now();
    const int n = 30;
    std::vector<long> a;
    for (long i = 0; i <= n; ++i) a.push_back(2 * i);
    StartSequence s(a);
    const double qq = 3, z = 0.5;
    StartDensity d = linear2();
    double t = right_t_for_z(d, qq, z);
    double xi = exit_params_right(d, qq, t).xi;
    long ell = most_likely_exit(s, static_cast<long>(std::lround(z * n)), std::pow(qq, 1.0 / n));
    double diff = std::fabs(static_cast<double>(ell) / n - xi);
    double sec = seconds_since(t0);
    report(10, diff <= 0.1 && sec < 30,
           "ell/n=" + fmt("%.4f", static_cast<double>(ell) / n) + " xi=" + fmt("%.4f", xi) + " diff " +
               fmt("%.4f", diff) + " (tol 0.1), " + fmt("%.2f s (limit 30 s)", sec));
}

void criterion11() {
    auto t0 = Clock::now();
    StartSequence s({0, 1, 3});
    const double q = 0.7;
    auto configs = enumerate_configs(s);
    double z = 0;
    for (const auto& e : configs) z += std::pow(q, e.area);
    ChainOptions opt;
    opt.sweeps = 1000000;
    opt.seed = 11;
    opt.track_configs = true;
    opt.keep_series = false;
    auto res = run_chain(s, q, opt);
    double total = static_cast<double>(res.density.sweeps);
    double tv = 0;
    for (const auto& e : configs) {
        auto it = res.visits.find(heights_of(e.config));
        double f = it == res.visits.end() ? 0 : it->second / total;
        tv += std::fabs(std::pow(q, e.area) / z - f) / 2;
    }
    double sec = seconds_since(t0);
    report(11, tv <= 0.01 && sec < 60, "TV " + fmt("%.2e", tv) + " (tol 0.01), " + fmt("%.2f s (limit 60 s)", sec));
}

void criterion12() {
    StartDensity d = three_slopes();
    auto M = limit_curve(d, Limit::q_to_0)[1];
    auto N = limit_curve(d, Limit::q_to_inf)[0];
    std::vector<double> right, left;
    for (double qq : {1e-1, 1e-2, 1e-3, 1e-4}) right.push_back(hausdorff_distance(branch_polylines(d, qq, Branch::right), {M}));
    for (double qq : {1e1, 1e2, 1e3}) left.push_back(hausdorff_distance(branch_polylines(d, qq, Branch::left), {N}));
    bool mono = std::is_sorted(right.rbegin(), right.rend()) && std::is_sorted(left.rbegin(), left.rend());
    std::ostringstream os;
    os << "right vs M at qq=1e-1..1e-4:";
    for (double h : right) os << ' ' << fmt("%.3f", h);
    os << "; left vs N at qq=1e1..1e3:";
    for (double h : left) os << ' ' << fmt("%.3f", h);
    os << " (tol 0.05 at the last), monotone " << (mono ? "yes" : "no");
    report(12, right.back() <= 0.05 && left.back() <= 0.05 && mono, os.str());
}

void criterion13() {
    StartDensity d = hexagon();
    auto full = [&](double qq) {
        std::vector<Polyline> out;
        for (const auto& c : arctic_curves(d, qq))
            for (auto& p : curve_polylines(c)) out.push_back(std::move(p));
        return out;
    };
    double h0 = hausdorff_distance(full(1e-3), limit_curve(d, Limit::q_to_0));
    double hi = hausdorff_distance(full(1e3), limit_curve(d, Limit::q_to_inf));
    report(13, h0 <= 0.05 && hi <= 0.05,
           "qq=1e-3: " + fmt("%.3f", h0) + ", qq=1e3: " + fmt("%.3f", hi) + " (tol 0.05)");
}

void criterion14() {
    std::ostringstream os;
    bool pass = true;
    for (auto [name, d] : {std::pair{"filled", unit_middle()}, std::pair{"gap", gap_middle()}}) {
        for (auto [qq, which] : {std::pair{1e-5, Limit::q_to_0}, std::pair{1e4, Limit::q_to_inf}}) {
            std::vector<TDomain> windows;
            for (const auto& dom : t_domains(d, qq))
                if (dom.branch == Branch::gap_window || dom.branch == Branch::filled_window) windows.push_back(dom);
            if (windows.size() != 1) {
                pass = false;
                os << name << " qq=" << qq << ": " << windows.size() << " windows; ";
                continue;
            }
            Curve c = arctic_curve(d, qq, windows[0]);
            double h = c.points.empty() ? INFINITY
                                        : hausdorff_distance(curve_polylines(c), {window_limit(d, windows[0], which)});
            pass = pass && !c.points.empty() && h <= 0.1;
            os << name << " qq=" << qq << ": " << fmt("%.3f", h) << "; ";
        }
    }
    os << "(tol 0.1)";
    report(14, pass, os.str());
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria = {criterion1,  criterion2,  criterion3,  criterion4, criterion5,
                                                         criterion6,  criterion7,  criterion8,  criterion9, criterion10,
                                                         criterion11, criterion12, criterion13, criterion14};
    for (size_t k = 0; k < criteria.size(); ++k) {
        try {
            criteria[k]();
        } catch (const std::exception& e) {
            report(static_cast<int>(k + 1), false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
