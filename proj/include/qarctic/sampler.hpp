#pragma once

#include "qarctic/nilp.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace qarctic {

// heights[i][y] is the abscissa of the north step of path i in row y (0 <= y < i);
// path 0 is the single point (0,0) and has no rows.
using Heights = std::vector<std::vector<long>>;

Heights heights_of(const PathConfig& c);
PathConfig config_of(const std::vector<long>& seq, const Heights& h);
long heights_area(const Heights& h);

struct McState {
    std::vector<long> seq;
    Heights heights;
    long area = 0;
    std::uint64_t rng_seed = 0;
    std::uint64_t step_count = 0;
    std::uint64_t accepted = 0;
    std::mt19937_64 rng;

    PathConfig config() const { return config_of(seq, heights); }
};

enum class InitMode { min_area, max_area };

McState init_state(const StartSequence& seq, InitMode mode, std::uint64_t seed);

struct Proposal {
    int path;
    int row;
    int dir;
};

// Whether shifting heights[path][row] by dir keeps a valid non-intersecting configuration.
bool proposable(const std::vector<long>& seq, const Heights& h, const Proposal& p);
double acceptance(double q, int delta_area);

// One proposal; the state is updated in place.
void mc_step(McState& state, double q);

struct DensityField {
    long width = 0;
    long height = 0;
    std::vector<std::uint64_t> counts;  // index y * width + x
    std::uint64_t sweeps = 0;

    std::uint64_t at(long x, long y) const { return counts[y * width + x]; }
};

struct ChainResult {
    std::vector<long> area_series;
    double mean_area = 0;
    double acceptance_rate = 0;
    long burn_in = 0;
    std::map<Heights, std::uint64_t> visits;
    DensityField density;
};

struct ChainOptions {
    long sweeps = 1000;
    std::optional<long> burn_in;
    std::uint64_t seed = 1;
    InitMode init = InitMode::max_area;
    bool track_configs = false;
    bool keep_series = true;
};

double integrated_autocorrelation(const std::vector<long>& series);
long default_burn_in(const StartSequence& seq, double q, std::uint64_t seed);

ChainResult run_chain(const StartSequence& seq, double q, const ChainOptions& opt);

}  // namespace qarctic
