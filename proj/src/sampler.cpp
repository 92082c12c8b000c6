#include "qarctic/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qarctic {

Heights heights_of(const PathConfig& c) {
    if (c.family != Family::first) throw std::invalid_argument("heights_of expects a first-family configuration");
    Heights h(c.paths.size());
    for (size_t i = 0; i < c.paths.size(); ++i) {
        long x = c.paths[i].x0;
        for (Step s : c.paths[i].steps) {
            if (s == Step::N) h[i].push_back(x);
            else --x;
        }
    }
    return h;
}

PathConfig config_of(const std::vector<long>& seq, const Heights& h) {
    PathConfig c{Family::first, seq, {}};
    for (size_t i = 0; i < h.size(); ++i) {
        LatticePath p{seq[i], 0, {}};
        long x = seq[i];
        for (long target : h[i]) {
            for (; x > target; --x) p.steps.push_back(Step::W);
            p.steps.push_back(Step::N);
        }
        for (; x > 0; --x) p.steps.push_back(Step::W);
        c.paths.push_back(std::move(p));
    }
    return c;
}

long heights_area(const Heights& h) {
    long t = 0;
    for (const auto& row : h) t = std::accumulate(row.begin(), row.end(), t);
    return t;
}

McState init_state(const StartSequence& seq, InitMode mode, std::uint64_t seed) {
    McState s;
    s.seq = seq.a();
    s.heights.resize(seq.n() + 1);
    for (int i = 1; i <= seq.n(); ++i)
        for (int y = 0; y < i; ++y)
            s.heights[i].push_back(mode == InitMode::max_area ? seq[i] : seq[i - 1 - y] + 1 + y);
    s.area = heights_area(s.heights);
    s.rng_seed = seed;
    s.rng.seed(seed);
    return s;
}

bool proposable(const std::vector<long>& seq, const Heights& h, const Proposal& p) {
    const int n = static_cast<int>(seq.size()) - 1;
    const int i = p.path, y = p.row;
    if (i < 1 || i > n || y < 0 || y >= i) return false;
    const long v = h[i][y] + p.dir;
    const long above = y + 1 < i ? h[i][y + 1] : 0;
    const long below = y > 0 ? h[i][y - 1] : seq[i];
    if (v < above || v > below) return false;
    // path i-1 leaves row y at h[i-1][y-1] (its start a_{i-1} when y = 0); path i+1 enters row y+1 at h[i+1][y+1]
    const long left = y > 0 ? h[i - 1][y - 1] : seq[i - 1];
    if (v <= left) return false;
    if (i < n && v >= h[i + 1][y + 1]) return false;
    return true;
}

double acceptance(double q, int delta_area) {
    return std::min(1.0, std::pow(q, delta_area));
}

void mc_step(McState& state, double q) {
    const int n = static_cast<int>(state.seq.size()) - 1;
    ++state.step_count;
    if (n == 0) return;
    // uniform over north steps, so rows of longer paths are proportionally likelier
    const long total = static_cast<long>(n) * (n + 1) / 2;
    long k = std::uniform_int_distribution<long>(0, total - 1)(state.rng);
    int i = 1;
    while (k >= i) k -= i++;
    Proposal p{i, static_cast<int>(k), std::uniform_int_distribution<int>(0, 1)(state.rng) ? 1 : -1};
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(state.rng);
    if (!proposable(state.seq, state.heights, p)) return;
    if (u >= acceptance(q, p.dir)) return;
    state.heights[p.path][p.row] += p.dir;
    state.area += p.dir;
    ++state.accepted;
}

double integrated_autocorrelation(const std::vector<long>& series) {
    const size_t m = series.size();
    if (m < 4) return 1.0;
    double mean = std::accumulate(series.begin(), series.end(), 0.0) / m;
    double var = 0;
    for (long v : series) var += (v - mean) * (v - mean);
    var /= m;
    if (var == 0) return 1.0;
    double tau = 1.0;
    for (size_t lag = 1; lag < m / 2; ++lag) {
        double c = 0;
        for (size_t t = 0; t + lag < m; ++t) c += (series[t] - mean) * (series[t + lag] - mean);
        double rho = c / ((m - lag) * var);
        if (rho <= 0) break;
        tau += 2 * rho;
        if (lag >= 5 * tau) break;
    }
    return tau;
}

long default_burn_in(const StartSequence& seq, double q, std::uint64_t seed) {
    McState s = init_state(seq, InitMode::max_area, seed ^ 0x9e3779b97f4a7c15ULL);
    const long sweep = static_cast<long>(seq.n()) * (seq.n() + 1) / 2;
    std::vector<long> series;
    for (int k = 0; k < 2000; ++k) {
        for (long j = 0; j < sweep; ++j) mc_step(s, q);
        series.push_back(s.area);
    }
    return static_cast<long>(std::ceil(10 * integrated_autocorrelation(series)));
}

ChainResult run_chain(const StartSequence& seq, double q, const ChainOptions& opt) {
    if (!(q > 0)) throw std::invalid_argument("run_chain: q must be positive");
    ChainResult res;
    res.burn_in = opt.burn_in ? *opt.burn_in : default_burn_in(seq, q, opt.seed);
    if (res.burn_in < 0 || opt.sweeps <= res.burn_in)
        throw std::invalid_argument("run_chain: need sweeps > burn_in >= 0");
    McState s = init_state(seq, opt.init, opt.seed);
    const long sweep = std::max<long>(1, static_cast<long>(seq.n()) * (seq.n() + 1) / 2);
    DensityField& d = res.density;
    d.width = seq.last() + 1;
    d.height = seq.n();
    d.counts.assign(d.width * d.height, 0);
    double area_sum = 0;
    for (long k = 0; k < opt.sweeps; ++k) {
        for (long j = 0; j < sweep; ++j) mc_step(s, q);
        if (k < res.burn_in) continue;
        if (opt.keep_series) res.area_series.push_back(s.area);
        area_sum += s.area;
        for (size_t i = 1; i < s.heights.size(); ++i)
            for (size_t y = 0; y < s.heights[i].size(); ++y) ++d.counts[y * d.width + s.heights[i][y]];
        ++d.sweeps;
        if (opt.track_configs) ++res.visits[s.heights];
    }
    res.mean_area = d.sweeps ? area_sum / d.sweeps : 0;
    res.acceptance_rate = s.step_count ? static_cast<double>(s.accepted) / s.step_count : 0;
    return res;
}

}  // namespace qarctic
