#include "qarctic/shell.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

namespace qarctic {

namespace fs = std::filesystem;

namespace {

using Rows = std::vector<std::vector<std::string>>;

std::string emit(Report& rep, const CommandOptions& opt, const std::string& name,
                 const std::vector<std::string>& header, const Rows& rows) {
    fs::create_directories(opt.out_dir);
    std::string path = (fs::path(opt.out_dir) / name).string();
    std::ofstream os(path, std::ios::binary);
    write_csv(os, header, rows);
    if (!os) throw std::runtime_error("cannot write " + path);
    rep.files.push_back(path);
    return path;
}

void emit_text(Report& rep, const CommandOptions& opt, const std::string& name, const std::string& text) {
    fs::create_directories(opt.out_dir);
    std::string path = (fs::path(opt.out_dir) / name).string();
    std::ofstream os(path, std::ios::binary);
    os << text;
    if (!os) throw std::runtime_error("cannot write " + path);
    rep.files.push_back(path);
}

const FiniteModel& need_finite(const ModelConfig& cfg, const char* cmd) {
    if (!cfg.finite) throw ConfigError({std::string(cmd) + " needs a \"finite\" model"});
    return *cfg.finite;
}

const ScaledModel& need_scaled(const ModelConfig& cfg, const char* cmd) {
    if (!cfg.scaled) throw ConfigError({std::string(cmd) + " needs a \"scaled\" model"});
    return *cfg.scaled;
}

std::string seq_text(const StartSequence& s) {
    std::string t;
    for (int i = 0; i <= s.n(); ++i) t += (i ? " " : "") + std::to_string(s[i]);
    return t;
}

std::string domain_file(const TDomain& dom) {
    std::string name = std::string("arctic_") + branch_name(dom.branch);
    if (dom.piece >= 0) name += "_" + std::to_string(dom.piece);
    return name + ".csv";
}

// Deterministic interior samples of a t-domain, away from finite endpoints.
std::vector<double> domain_samples(const TDomain& dom, int k) {
    std::vector<double> out;
    for (int i = 0; i < k; ++i) {
        double u = 0.05 + 0.9 * (i + 0.5) / k;
        double t;
        if (std::isinf(dom.lo)) t = dom.hi - std::max(1.0, std::fabs(dom.hi)) * std::exp(10 * u - 2);
        else if (std::isinf(dom.hi)) t = dom.lo + std::max(1.0, std::fabs(dom.lo)) * std::exp(10 * u - 2);
        else t = dom.lo + (dom.hi - dom.lo) * u;
        out.push_back(t);
    }
    return out;
}

Polyline to_polyline(const Curve& c) {
    Polyline p;
    for (const auto& q : c.points) p.push_back({q.X, q.Y});
    return p;
}

}  // namespace

Report cmd_exact(const ModelConfig& cfg, const CommandOptions& opt) {
    const FiniteModel& m = need_finite(cfg, "exact");
    const StartSequence& s = m.seq;
    Report rep;
    QPolynomial z = partition_det(s);
    Rows coeffs;
    for (long k = 0; k <= z.degree(); ++k) coeffs.push_back({std::to_string(k), z.coeff(k).get_str()});
    emit(rep, opt, "partition.csv", {"power", "coefficient"}, coeffs);

    QPolynomial zd = partition_det(dual_sequence(s));
    const long e = zident_exponent(s);
    bool zident = true;
    for (long k = 0; k <= std::max<long>(z.degree(), e); ++k)
        if (z.coeff(k) != (e - k >= 0 ? zd.coeff(e - k) : BigInt(0))) zident = false;
    rep.ok = zident;

    Rows summary = {{"n", std::to_string(s.n())}, {"a", seq_text(s)}, {"q", m.q_text}};
    Rows H, Ht;
    if (m.q_exact) {
        const Rational& q = *m.q_exact;
        Rational zv = poly_eval(z, q);
        bool prod = zv == partition_product(s, q);
        rep.ok = rep.ok && prod;
        summary.push_back({"Z", to_string(zv)});
        summary.push_back({"Z_float", format_double(zv.get_d())});
        summary.push_back({"det_equals_product", prod ? "pass" : "fail"});
        for (long l = 0; l <= s.last(); ++l) {
            Rational h = one_point_H(s, l, q);
            H.push_back({std::to_string(l), to_string(h), format_double(h.get_d())});
        }
        for (long l = s.n(); l <= s.last() + s.n(); ++l) {
            Rational h = one_point_Htilde(s, l, q);
            Ht.push_back({std::to_string(l), to_string(h), format_double(h.get_d())});
        }
        emit(rep, opt, "one_point.csv", {"ell", "H", "H_float"}, H);
        emit(rep, opt, "one_point_tilde.csv", {"ell", "Htilde", "Htilde_float"}, Ht);
    } else {
        summary.push_back({"Z_float", format_double(poly_eval(z, m.q))});
        for (long l = 0; l <= s.last(); ++l) H.push_back({std::to_string(l), format_double(one_point_H(s, l, m.q))});
        emit(rep, opt, "one_point.csv", {"ell", "H_float"}, H);
        summary.push_back({"Htilde", "needs a rational q"});
    }
    summary.push_back({"zident_exponent", std::to_string(e)});
    summary.push_back({"zident", zident ? "pass" : "fail"});
    emit(rep, opt, "summary.csv", {"quantity", "value"}, summary);
    for (auto& r : summary) rep.summary.push_back({r[0], r[1]});
    return rep;
}

Report cmd_sample(const ModelConfig& cfg, const CommandOptions& opt) {
    const FiniteModel& m = need_finite(cfg, "sample");
    ChainOptions co;
    co.sweeps = cfg.task.sweeps;
    co.burn_in = cfg.task.burn_in;
    co.seed = cfg.task.seed;
    co.init = cfg.task.init;
    ChainResult res = run_chain(m.seq, m.q, co);
    Report rep;
    Rows dens;
    for (long y = 0; y < res.density.height; ++y)
        for (long x = 0; x < res.density.width; ++x)
            dens.push_back({std::to_string(x), std::to_string(y), std::to_string(res.density.at(x, y))});
    emit(rep, opt, "density.csv", {"x", "y", "count"}, dens);
    Rows series;
    for (size_t k = 0; k < res.area_series.size(); ++k)
        series.push_back({std::to_string(res.burn_in + static_cast<long>(k)), std::to_string(res.area_series[k])});
    emit(rep, opt, "area_series.csv", {"sweep", "area"}, series);
    rep.summary = {{"sweeps", std::to_string(co.sweeps)},
                   {"burn_in", std::to_string(res.burn_in)},
                   {"seed", std::to_string(co.seed)},
                   {"mean_area", format_double(res.mean_area)},
                   {"acceptance_rate", format_double(res.acceptance_rate)}};
    Rows summary;
    for (auto& [k, v] : rep.summary) summary.push_back({k, v});
    emit(rep, opt, "summary.csv", {"quantity", "value"}, summary);
    return rep;
}

Report cmd_arctic(const ModelConfig& cfg, const CommandOptions& opt) {
    const ScaledModel& m = need_scaled(cfg, "arctic");
    StartDensity d = m.density();
    SamplingOptions so;
    so.n_samples = cfg.task.samples;
    so.efolds = cfg.task.efolds;
    Report rep;
    std::vector<SvgLayer> layers;
    const double a1 = d.alpha1();
    layers.push_back({{{{0, 0}, {a1, 0}, {a1, 1}, {0, 1}, {0, 0}}}, "#999999", 1});
    Limit lim = m.qq < 1 ? Limit::q_to_0 : Limit::q_to_inf;
    layers.push_back({limit_curve(d, lim), "#bbbbbb", 1});
    for (const auto& dom : t_domains(d, m.qq)) {
        Curve c = arctic_curve(d, m.qq, dom, so);
        Rows rows;
        for (const auto& p : c.points)
            rows.push_back({branch_name(dom.branch), format_double(p.t), format_double(p.X), format_double(p.Y)});
        std::string file = domain_file(dom);
        emit(rep, opt, file, {"branch", "t", "X", "Y"}, rows);
        std::string key = file.substr(0, file.size() - 4);
        rep.summary.push_back({key + ".points", std::to_string(c.points.size())});
        rep.summary.push_back({key + ".singular_skipped", std::to_string(c.dropped.size())});
        if (dom.branch == Branch::gap_window || dom.branch == Branch::filled_window)
            rep.summary.push_back({key + ".self_intersects", c.self_intersects ? "yes" : "no"});
        std::string color = dom.branch == Branch::right ? "#1f5fbf" : dom.branch == Branch::left ? "#c0392b" : "#e67e22";
        layers.push_back({curve_polylines(c), color, 2});
    }
    SvgLayer tangents{{}, "#27ae60", 0.7};
    for (size_t i = 0; i < cfg.task.tangent_t.size(); ++i) {
        double t = cfg.task.tangent_t[i];
        Curve c = tangent_curve(d, m.qq, t, so.n_samples, 0, a1);
        Rows rows;
        for (const auto& p : c.points) rows.push_back({format_double(t), format_double(p.X), format_double(p.Y)});
        emit(rep, opt, "tangent_" + std::to_string(i) + ".csv", {"t", "X", "Y"}, rows);
        tangents.lines.push_back(to_polyline(c));
    }
    layers.push_back(tangents);
    SvgLayer geos{{}, "#8e44ad", 0.7};
    double zmax = 0;
    for (size_t i = 0; i < cfg.task.geodesic_t.size(); ++i) {
        double t = cfg.task.geodesic_t[i];
        auto dom = find_domain(d, m.qq, t);
        if (!dom || dom->branch != Branch::right) throw DomainError("geodesic_t values must lie on the right branch");
        ScalingVars v = exit_params_right(d, m.qq, t);
        Curve c = geodesic(m.qq, v.xi, v.z, so.n_samples);
        Rows rows;
        for (const auto& p : c.points) rows.push_back({format_double(t), format_double(p.X), format_double(p.Y)});
        emit(rep, opt, "geodesic_" + std::to_string(i) + ".csv", {"t", "X", "Y"}, rows);
        rep.summary.push_back({"geodesic_" + std::to_string(i) + ".xi", format_double(v.xi)});
        rep.summary.push_back({"geodesic_" + std::to_string(i) + ".z", format_double(v.z)});
        geos.lines.push_back(to_polyline(c));
        zmax = std::max(zmax, v.z);
    }
    layers.push_back(geos);
    if (opt.svg) emit_text(rep, opt, "arctic.svg", render_svg(layers, a1 + zmax, 1 + zmax));
    return rep;
}

Report cmd_limits(const ModelConfig& cfg, const CommandOptions& opt) {
    const ScaledModel& m = need_scaled(cfg, "limits");
    StartDensity d = m.density();
    Report rep;
    Rows rows;
    std::vector<SvgLayer> layers;
    for (Limit lim : {Limit::q_to_0, Limit::q_to_inf}) {
        const char* name = lim == Limit::q_to_0 ? "q_to_0" : "q_to_inf";
        auto pls = limit_curve(d, lim);
        for (const auto& dom : t_domains(d, m.qq))
            if (dom.branch == Branch::gap_window || dom.branch == Branch::filled_window)
                pls.push_back(window_limit(d, dom, lim));
        for (size_t k = 0; k < pls.size(); ++k)
            for (size_t i = 0; i < pls[k].size(); ++i)
                rows.push_back({name, std::to_string(k), std::to_string(i), format_double(pls[k][i].x),
                                format_double(pls[k][i].y)});
        layers.push_back({pls, lim == Limit::q_to_0 ? "#1f5fbf" : "#c0392b", 1.5});
    }
    emit(rep, opt, "limits.csv", {"limit", "polyline", "index", "X", "Y"}, rows);
    Rows verts;
    auto M = m_vertices(d), N = n_vertices(d);
    for (size_t i = 0; i < M.size(); ++i) verts.push_back({"M", std::to_string(i), format_double(M[i].x), format_double(M[i].y)});
    for (size_t i = 0; i < N.size(); ++i) verts.push_back({"N", std::to_string(i), format_double(N[i].x), format_double(N[i].y)});
    emit(rep, opt, "vertices.csv", {"kind", "i", "X", "Y"}, verts);
    rep.summary.push_back({"polylines", std::to_string(rows.empty() ? 0 : std::stoi(rows.back()[1]) + 1)});
    if (opt.svg) emit_text(rep, opt, "limits.svg", render_svg(layers, d.alpha1() + 1, 1));
    return rep;
}

Report cmd_verify(const ModelConfig& cfg, const CommandOptions& opt) {
    Report rep;
    Rows rows;
    auto add = [&](const std::string& name, bool pass, double residual, const std::string& tol) {
        rows.push_back({name, pass ? "pass" : "fail", format_double(residual), tol});
        rep.ok = rep.ok && pass;
    };
    if (cfg.finite) {
        const StartSequence& s = cfg.finite->seq;
        QPolynomial z = partition_det(s);
        std::vector<Rational> qs = {Rational(1, 3), Rational(2), Rational(7, 2)};
        if (cfg.finite->q_exact) qs.push_back(*cfg.finite->q_exact);
        bool prod = true;
        for (const auto& q : qs) prod = prod && poly_eval(z, q) == partition_product(s, q);
        add("det_equals_product", prod, prod ? 0 : 1, "exact");
        QPolynomial zd = partition_det(dual_sequence(s));
        bool zid = true;
        for (const auto& q : qs)
            zid = zid && poly_eval(z, q) == rational_pow(q, zident_exponent(s)) * poly_eval(zd, Rational(1) / q);
        add("zident", zid, zid ? 0 : 1, "exact");
        if (cfg.finite->q_exact) {
            const Rational& q = *cfg.finite->q_exact;
            bool comp = true, det = true;
            double fl = 0;
            for (long l = 0; l <= s.last(); ++l) {
                Rational h = one_point_H(s, l, q);
                det = det && h == one_point_H_det(s, l, q);
                if (l >= s.n() + 1) comp = comp && h + one_point_Htilde(s, l - 1, q) == 1;
                fl = std::max(fl, std::fabs(one_point_H(s, l, q.get_d()) - h.get_d()));
            }
            add("one_point_residue_equals_det", det, det ? 0 : 1, "exact");
            add("complementarity", comp, comp ? 0 : 1, "exact");
            add("float_one_point", fl <= 1e-9, fl, "1e-9");
            if (s.n() <= 3 && s.last() <= 8) {
                Rational sum = 0;
                for (const auto& e : enumerate_configs(s)) sum += rational_pow(q, e.area);
                bool bf = sum == poly_eval(z, q);
                add("brute_force_partition", bf, bf ? 0 : 1, "exact");
            }
        }
    }
    if (cfg.scaled) {
        const ScaledModel& m = *cfg.scaled;
        StartDensity d = m.density();
        SamplingOptions so;
        so.n_samples = std::min(cfg.task.samples, 400);
        so.efolds = cfg.task.efolds;
        double env = 0, quad = 0, deriv = 0, saddle = 0;
        long singular = 0;
        int saddle_points = 0;
        for (const auto& dom : t_domains(d, m.qq)) {
            Curve c = arctic_curve(d, m.qq, dom, so);
            singular += static_cast<long>(c.dropped.size());
            for (const auto& p : c.points) env = std::max(env, std::fabs(family_residual(d, m.qq, p.param(), p.X, p.Y)));
            for (double t : domain_samples(dom, 10)) {
                double x = x_of_t(d, m.qq, t);
                quad = std::max(quad, std::fabs(x - x_of_t_quadrature(d, m.qq, t)) / std::fabs(x));
                double h = 1e-6 * std::max(std::fabs(t), 1e-3);
                double fd = (x_of_t(d, m.qq, t + h) - x_of_t(d, m.qq, t - h)) / (2 * h);
                deriv = std::max(deriv, std::fabs(dx_dt(d, m.qq, t) - fd) / std::max(std::fabs(fd), 1e-8));
                if (dom.branch != Branch::right && dom.branch != Branch::left) continue;
                try {
                    SaddleResidual r = dom.branch == Branch::right ? saddle_residual_right(d, m.qq, t)
                                                                   : saddle_residual_left(d, m.qq, t);
                    saddle = std::max({saddle, std::fabs(r.dt), std::fabs(r.dxi)});
                    ++saddle_points;
                } catch (const DomainError&) {
                }
            }
            if (dom.branch == Branch::gap_window || dom.branch == Branch::filled_window)
                rows.push_back({std::string("self_intersection_") + branch_name(dom.branch) + "_" + std::to_string(dom.piece),
                                "info", c.self_intersects ? "1" : "0", "-"});
        }
        add("envelope_residual", env <= 1e-10, env, "1e-10");
        add("closed_form_vs_quadrature", quad <= 1e-8, quad, "1e-8");
        add("derivative_vs_finite_difference", deriv <= 1e-6, deriv, "1e-6");
        add("saddle_residual", saddle <= 1e-6 && saddle_points > 0, saddle, "1e-6");
        rows.push_back({"singular_points_skipped", "info", std::to_string(singular), "-"});
    }
    emit(rep, opt, "verify.csv", {"invariant", "status", "residual", "tolerance"}, rows);
    for (const auto& r : rows) rep.summary.push_back({r[0], r[1] + " " + r[2]});
    return rep;
}

}  // namespace qarctic
