#pragma once

#include "qarctic/limits.hpp"
#include "qarctic/nilp.hpp"
#include "qarctic/sampler.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qarctic {

struct FiniteModel {
    StartSequence seq{std::vector<long>{0}};
    std::optional<Rational> q_exact;  // absent when q = qq^(1/n)
    double q = 0;
    std::string q_text;
};

struct ScaledModel {
    std::vector<Segment> segments;
    std::vector<JumpSpec> jumps;
    double qq = 0;

    StartDensity density() const { return StartDensity(segments, jumps); }
};

struct TaskParams {
    long sweeps = 10000;
    std::optional<long> burn_in;
    std::uint64_t seed = 1;
    InitMode init = InitMode::max_area;
    int samples = 2000;
    double efolds = 40;
    long exit_r = 1;
    std::vector<double> tangent_t;
    std::vector<double> geodesic_t;
};

struct ModelConfig {
    std::optional<FiniteModel> finite;
    std::optional<ScaledModel> scaled;
    TaskParams task;
};

struct ConfigError : std::invalid_argument {
    std::vector<std::string> errors;
    explicit ConfigError(std::vector<std::string> errs);
};

ModelConfig parse_config(const std::string& text);
ModelConfig load_config(const std::string& path);

std::string format_double(double v);
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
// Rows including the header; fields are split on commas.
std::vector<std::vector<std::string>> read_csv(std::istream& is);

struct SvgLayer {
    std::vector<Polyline> lines;
    std::string color;
    double width = 1;
};

// Flat polyline rendering of (X,Y) in [0, xmax] x [0, ymax], Y pointing up.
std::string render_svg(const std::vector<SvgLayer>& layers, double xmax, double ymax);

struct CommandOptions {
    std::string out_dir = ".";
    bool svg = false;
};

struct Report {
    std::vector<std::string> files;
    std::vector<std::pair<std::string, std::string>> summary;
    bool ok = true;
};

Report cmd_exact(const ModelConfig& cfg, const CommandOptions& opt);
Report cmd_sample(const ModelConfig& cfg, const CommandOptions& opt);
Report cmd_arctic(const ModelConfig& cfg, const CommandOptions& opt);
Report cmd_limits(const ModelConfig& cfg, const CommandOptions& opt);
Report cmd_verify(const ModelConfig& cfg, const CommandOptions& opt);

}  // namespace qarctic
