#include "qarctic/nilp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace qarctic {

std::vector<std::string> validate_sequence(const std::vector<long>& a) {
    std::vector<std::string> errs;
    if (a.empty()) {
        errs.push_back("sequence must contain at least a_0");
        return errs;
    }
    if (a[0] != 0) errs.push_back("a_0 must be 0");
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] <= a[i - 1])
            errs.push_back("sequence not strictly increasing at index " + std::to_string(i));
    return errs;
}

StartSequence::StartSequence(std::vector<long> a) : a_(std::move(a)) {
    auto errs = validate_sequence(a_);
    if (!errs.empty()) {
        std::string msg = "invalid start sequence:";
        for (const auto& e : errs) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }
}

PolyMatrix lgv_matrix(const StartSequence& seq) {
    const int n = seq.n();
    PolyMatrix m(n + 1, std::vector<QPolynomial>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) m[i][j] = q_binomial(seq[i] + j, j);
    return m;
}

QPolynomial partition_det(const StartSequence& seq) { return poly_det(lgv_matrix(seq)); }

static void check_q(const Rational& q) {
    if (q <= 0 || q == 1) throw std::invalid_argument("q must be positive and different from 1");
}

Rational partition_product(const StartSequence& seq, const Rational& q) {
    check_q(q);
    const long n = seq.n();
    Rational num = 1, den = 1;
    std::vector<Rational> qa(n + 1), qi(n + 1);
    for (long i = 0; i <= n; ++i) {
        qa[i] = rational_pow(q, seq[i]);
        qi[i] = rational_pow(q, i);
    }
    for (long i = 0; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) {
            num *= qa[j] - qa[i];
            den *= qi[j] - qi[i];
        }
    Rational r = rational_pow(q, n * (n + 1) * (2 * n + 1) / 6) * num / den;
    r.canonicalize();
    return r;
}

StartSequence dual_sequence(const StartSequence& seq) {
    const int n = seq.n();
    std::vector<long> d(n + 1);
    for (int i = 0; i <= n; ++i) d[i] = seq.last() - seq[n - i];
    return StartSequence(d);
}

long zident_exponent(const StartSequence& seq) {
    const long n = seq.n();
    return n * (n + 1) * (3 * seq.last() + n + 2) / 6;
}

namespace {

// Residue sum at t = q^{a_k} of prod_s (t - q^{a_s})^{-1} prod_{s in [s_lo, s_hi]} (t q^{s-ell} - 1).
Rational residue_sum(const StartSequence& seq, long ell, const Rational& q, long s_lo, long s_hi,
                     const std::vector<int>& poles) {
    const int n = seq.n();
    std::vector<Rational> t(n + 1);
    for (int s = 0; s <= n; ++s) t[s] = rational_pow(q, seq[s]);
    Rational total = 0;
    for (int k : poles) {
        Rational num = 1, den = 1;
        for (int s = 0; s <= n; ++s)
            if (s != k) den *= t[k] - t[s];
        for (long s = s_lo; s <= s_hi; ++s) num *= rational_pow(q, seq[k] + s - ell) - 1;
        total += num / den;
    }
    total.canonicalize();
    return total;
}

void check_ell_H(const StartSequence& seq, long ell) {
    if (ell < 0 || ell > seq.last())
        throw std::invalid_argument("exit abscissa out of range [0, a_n]");
}

void check_ell_Htilde(const StartSequence& seq, long ell) {
    if (ell < seq.n() || ell > seq.last() + seq.n())
        throw std::invalid_argument("exit abscissa out of range [n, a_n + n]");
}

}  // namespace

Rational one_point_H(const StartSequence& seq, long ell, const Rational& q, PoleSet poles) {
    check_q(q);
    check_ell_H(seq, ell);
    const long n = seq.n();
    const long cut = poles == PoleSet::minimal ? ell : ell - n;
    std::vector<int> ks;
    for (int k = 0; k <= n; ++k)
        if (seq[k] >= cut) ks.push_back(k);
    Rational r = rational_pow(q, n * ell - n * (n + 1) / 2) * residue_sum(seq, ell, q, 1, n, ks);
    r.canonicalize();
    return r;
}

Rational one_point_H_det(const StartSequence& seq, long ell, const Rational& q) {
    check_q(q);
    check_ell_H(seq, ell);
    const int n = seq.n();
    PolyMatrix m = lgv_matrix(seq);
    for (int i = 0; i <= n; ++i) {
        long top = seq[i] + n - ell;
        m[i][n] = top < 0 ? QPolynomial() : QPolynomial::monomial(n * ell) * q_binomial(top, n);
    }
    Rational r = poly_eval(poly_det(m), q) / poly_eval(partition_det(seq), q);
    r.canonicalize();
    return r;
}

Rational one_point_Htilde(const StartSequence& seq, long ell, const Rational& q, PoleSet poles) {
    check_q(q);
    check_ell_Htilde(seq, ell);
    const long n = seq.n();
    const long cut = poles == PoleSet::minimal ? ell - n : ell;
    std::vector<int> ks;
    for (int k = 0; k <= n; ++k)
        if (seq[k] <= cut) ks.push_back(k);
    Rational r =
        rational_pow(q, n * ell - n * (n - 1) / 2) * residue_sum(seq, ell, q, 0, n - 1, ks);
    r.canonicalize();
    return r;
}

namespace {

// Floating-point residue sum, same integrand as residue_sum, with prefactor q^{pref}.
double residue_sum(const StartSequence& seq, long ell, double q, long s_lo, long s_hi,
                   std::vector<int> poles, double pref) {
    const int n = seq.n();
    const double lq = std::log(q);
    std::sort(poles.begin(), poles.end(), [&](int i, int j) { return (seq[i] < seq[j]) == (q > 1); });
    double total = 0;
    for (int k : poles) {
        double logmag = pref * lq;
        int sign = 1;
        for (int s = 0; s <= n; ++s) {
            if (s == k) continue;
            double d = std::exp(seq[s] * lq) * std::expm1((seq[k] - seq[s]) * lq);
            if (d < 0) sign = -sign;
            logmag -= std::log(std::fabs(d));
        }
        for (long s = s_lo; s <= s_hi; ++s) {
            double f = std::expm1((seq[k] + s - ell) * lq);
            if (f == 0) {
                sign = 0;
                break;
            }
            if (f < 0) sign = -sign;
            logmag += std::log(std::fabs(f));
        }
        if (sign != 0) total += sign * std::exp(logmag);
    }
    return total;
}

}  // namespace

double one_point_H(const StartSequence& seq, long ell, double q) {
    if (!(q > 0) || q == 1) throw std::invalid_argument("q must be positive and different from 1");
    check_ell_H(seq, ell);
    const long n = seq.n();
    std::vector<int> direct, complement;
    for (int k = 0; k <= n; ++k) {
        if (seq[k] >= ell) direct.push_back(k);
        if (seq[k] <= ell - 1 - n) complement.push_back(k);
    }
    if (direct.size() <= complement.size())
        return residue_sum(seq, ell, q, 1, n, direct, n * ell - n * (n + 1) / 2.0);
    // H_{n,l} = 1 - Htilde_{n,l-1}, the shorter residue sum
    const long lt = ell - 1;
    return 1.0 - residue_sum(seq, lt, q, 0, n - 1, complement, n * lt - n * (n - 1) / 2.0);
}

Rational free_weight_Y(long ell, long r, const Rational& q) {
    if (r < 1) throw std::invalid_argument("free_weight_Y: r must be at least 1");
    if (ell < 0) throw std::invalid_argument("free_weight_Y: ell must be nonnegative");
    return rational_pow(q, ell) * poly_eval(q_binomial(ell + r - 1, ell), q);
}

double free_weight_Y(long ell, long r, double q) {
    if (r < 1) throw std::invalid_argument("free_weight_Y: r must be at least 1");
    if (ell < 0) throw std::invalid_argument("free_weight_Y: ell must be nonnegative");
    const double lq = std::log(q);
    double lw = ell * lq;
    for (long s = 1; s <= ell; ++s)
        lw += std::log(std::expm1((s + r - 1) * lq) / std::expm1(s * lq));
    return std::exp(lw);
}

Rational free_weight_Ytilde(long ell, long r, long a_n, long n, const Rational& q) {
    if (r < 1) throw std::invalid_argument("free_weight_Ytilde: r must be at least 1");
    if (ell < n || ell > a_n + n)
        throw std::invalid_argument("free_weight_Ytilde: ell out of range [n, a_n + n]");
    const long lt = a_n + n - ell;
    return rational_pow(q, r * (ell + 1) + r * (r - 1) / 2) * poly_eval(q_binomial(lt + r - 1, lt), q);
}

Rational perturbed_partition(const StartSequence& seq, long r, const Rational& q) {
    Rational total = 0;
    for (long ell = 0; ell <= seq.last(); ++ell)
        total += one_point_H(seq, ell, q) * free_weight_Y(ell, r, q);
    total.canonicalize();
    return total;
}

std::vector<double> exit_weights(const StartSequence& seq, long r, double q) {
    std::vector<double> w;
    for (long ell = 0; ell <= seq.last(); ++ell)
        w.push_back(one_point_H(seq, ell, q) * free_weight_Y(ell, r, q));
    return w;
}

long most_likely_exit(const StartSequence& seq, long r, double q) {
    auto w = exit_weights(seq, r, q);
    return std::max_element(w.begin(), w.end()) - w.begin();
}

long LatticePath::area() const {
    long x = x0, total = 0;
    for (Step s : steps) {
        switch (s) {
            case Step::N: total += x; break;
            case Step::W: --x; break;
            case Step::E: ++x; break;
            case Step::NE: total += x + 1; ++x; break;
        }
    }
    return total;
}

std::vector<std::pair<long, long>> LatticePath::vertices() const {
    std::vector<std::pair<long, long>> v{{x0, y0}};
    long x = x0, y = y0;
    for (Step s : steps) {
        switch (s) {
            case Step::N: ++y; break;
            case Step::W: --x; break;
            case Step::E: ++x; break;
            case Step::NE: ++x; ++y; break;
        }
        v.emplace_back(x, y);
    }
    return v;
}

long PathConfig::area() const {
    long t = 0;
    for (const auto& p : paths) t += p.area();
    return t;
}

std::vector<long> PathConfig::path_areas() const {
    std::vector<long> r;
    for (const auto& p : paths) r.push_back(p.area());
    return r;
}

std::vector<std::string> check_config(const PathConfig& c) {
    std::vector<std::string> errs;
    const long n = static_cast<long>(c.seq.size()) - 1;
    if (static_cast<long>(c.paths.size()) != n + 1) {
        errs.push_back("path count does not match sequence");
        return errs;
    }
    const long an = c.seq.back();
    std::set<std::pair<long, long>> seen;
    for (long i = 0; i <= n; ++i) {
        const auto& p = c.paths[i];
        for (Step s : p.steps) {
            bool ok = c.family == Family::first ? (s == Step::W || s == Step::N)
                                                : (s == Step::E || s == Step::NE);
            if (!ok) errs.push_back("path " + std::to_string(i) + " uses a foreign step");
        }
        auto v = p.vertices();
        std::pair<long, long> start, end;
        if (c.family == Family::first) {
            start = {c.seq[i], 0};
            end = {0, i};
        } else {
            start = {c.seq[n - i], 0};
            end = {an + i, i};
        }
        if (v.front() != start) errs.push_back("path " + std::to_string(i) + " has wrong start");
        if (v.back() != end) errs.push_back("path " + std::to_string(i) + " has wrong end");
        for (const auto& pt : v)
            if (!seen.insert(pt).second)
                errs.push_back("path " + std::to_string(i) + " shares a vertex");
    }
    return errs;
}

namespace {

struct Enumerator {
    const StartSequence& seq;
    std::optional<ExitSpec> exit;
    std::set<std::pair<long, long>> occupied;
    std::vector<LatticePath> paths;
    std::vector<Enumerated> out;

    void path(int i) {
        const int n = seq.n();
        if (i > n) {
            PathConfig c{Family::first, seq.a(), paths};
            out.push_back({c, c.area()});
            return;
        }
        LatticePath p{seq[i], 0, {}};
        long tx = 0, ty = i;
        if (i == n && exit) {
            tx = exit->ell;
            ty = n;
        }
        walk(i, p, seq[i], 0, tx, ty);
    }

    void walk(int i, LatticePath& p, long x, long y, long tx, long ty) {
        if (occupied.count({x, y})) return;
        occupied.insert({x, y});
        if (x == tx && y == ty) {
            if (i == seq.n() && exit && exit->r) {
                tail(i, p, x, y + 1);
            } else {
                paths.push_back(p);
                path(i + 1);
                paths.pop_back();
            }
        } else {
            if (x > tx) {
                p.steps.push_back(Step::W);
                walk(i, p, x - 1, y, tx, ty);
                p.steps.pop_back();
            }
            if (y < ty) {
                p.steps.push_back(Step::N);
                walk(i, p, x, y + 1, tx, ty);
                p.steps.pop_back();
            }
        }
        occupied.erase({x, y});
    }

    // Free part of the top path above y = n: first step north, then any west/north path.
    void tail(int i, LatticePath& p, long x, long y) {
        p.steps.push_back(Step::N);
        free_walk(i, p, x, y, seq.n() + *exit->r);
        p.steps.pop_back();
    }

    void free_walk(int i, LatticePath& p, long x, long y, long ty) {
        if (x == 0 && y == ty) {
            paths.push_back(p);
            path(i + 1);
            paths.pop_back();
            return;
        }
        if (x > 0) {
            p.steps.push_back(Step::W);
            free_walk(i, p, x - 1, y, ty);
            p.steps.pop_back();
        }
        if (y < ty) {
            p.steps.push_back(Step::N);
            free_walk(i, p, x, y + 1, ty);
            p.steps.pop_back();
        }
    }
};

}  // namespace

std::vector<Enumerated> enumerate_configs(const StartSequence& seq, std::optional<ExitSpec> exit) {
    if (seq.n() > 3 || seq.last() > 8)
        throw std::length_error("enumerate_configs: size limit n <= 3, a_n <= 8 exceeded");
    if (exit) {
        if (exit->ell < 0 || exit->ell > seq.last())
            throw std::invalid_argument("exit abscissa out of range [0, a_n]");
        if (exit->r && *exit->r < 1) throw std::invalid_argument("exit shift r must be at least 1");
    }
    Enumerator e{seq, exit, {}, {}, {}};
    e.path(0);
    return e.out;
}

namespace {

// North steps per row y, as sorted abscissas.
std::map<long, std::vector<long>> north_steps_by_row(const PathConfig& c) {
    std::map<long, std::vector<long>> rows;
    for (const auto& p : c.paths) {
        long x = p.x0, y = p.y0;
        for (Step s : p.steps) {
            if (s == Step::N) rows[y].push_back(x), ++y;
            else if (s == Step::W) --x;
            else if (s == Step::NE) rows[y].push_back(x + 1), ++x, ++y;
            else ++x;
        }
    }
    for (auto& [y, xs] : rows) std::sort(xs.begin(), xs.end());
    return rows;
}

}  // namespace

PathConfig to_second_family(const PathConfig& config) {
    if (config.family != Family::first)
        throw std::invalid_argument("to_second_family expects a first-family configuration");
    const long n = static_cast<long>(config.seq.size()) - 1;
    const long an = config.seq.back();
    std::set<std::pair<long, long>> north;
    for (const auto& [y, xs] : north_steps_by_row(config))
        for (long x : xs) north.insert({x, y});
    PathConfig out{Family::second, config.seq, {}};
    for (long i = 0; i <= n; ++i) {
        LatticePath p{config.seq[n - i], 0, {}};
        long X = p.x0, y = 0;
        while (X < an + i) {
            if (north.count({X + 1, y})) {
                p.steps.push_back(Step::NE);
                ++y;
            } else {
                p.steps.push_back(Step::E);
            }
            ++X;
        }
        if (y != i) throw std::logic_error("to_second_family: path did not reach its endpoint");
        out.paths.push_back(std::move(p));
    }
    return out;
}

PathConfig from_second_family(const PathConfig& config) {
    if (config.family != Family::second)
        throw std::invalid_argument("from_second_family expects a second-family configuration");
    const long n = static_cast<long>(config.seq.size()) - 1;
    auto rows = north_steps_by_row(config);
    PathConfig out{Family::first, config.seq, {}};
    for (long i = 0; i <= n; ++i) {
        LatticePath p{config.seq[i], 0, {}};
        long x = p.x0;
        for (long y = 0; y < i; ++y) {
            const auto& xs = rows[y];
            long target = xs.at(i - y - 1);
            for (; x > target; --x) p.steps.push_back(Step::W);
            if (x != target) throw std::logic_error("from_second_family: inconsistent rows");
            p.steps.push_back(Step::N);
        }
        for (; x > 0; --x) p.steps.push_back(Step::W);
        out.paths.push_back(std::move(p));
    }
    return out;
}

PathConfig reflect_R(const PathConfig& config) {
    const long an = config.seq.back();
    StartSequence dual = dual_sequence(StartSequence(config.seq));
    PathConfig out{config.family == Family::first ? Family::second : Family::first, dual.a(), {}};
    for (const auto& p : config.paths) {
        LatticePath q{an + p.y0 - p.x0, p.y0, {}};
        for (Step s : p.steps) {
            switch (s) {
                case Step::E: q.steps.push_back(Step::W); break;
                case Step::NE: q.steps.push_back(Step::N); break;
                case Step::W: q.steps.push_back(Step::E); break;
                case Step::N: q.steps.push_back(Step::NE); break;
            }
        }
        out.paths.push_back(std::move(q));
    }
    return out;
}

}  // namespace qarctic
