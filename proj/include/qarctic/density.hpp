#pragma once

#include <string>
#include <vector>

namespace qarctic {

struct Segment {
    double gamma;
    double p;
};

struct JumpSpec {
    double u;
    double delta;
};

// Lists every violated invariant; empty when the profile is valid.
std::vector<std::string> validate_density(const std::vector<Segment>& segments,
                                          const std::vector<JumpSpec>& jumps);

// Piecewise-linear profile alpha(u) with exact jumps, stored as an ordered list of pieces.
class StartDensity {
public:
    struct Piece {
        bool jump = false;
        double gamma = 0;  // width in u (0 for jumps)
        double p = 0;      // slope (0 for jumps)
        double delta = 0;  // jump height (0 for segments)
        double u0 = 0, u1 = 0;
        double theta0 = 0, theta1 = 0;
        int lo = 0, hi = 0;  // indices into breakpoints()
    };

    StartDensity(std::vector<Segment> segments, std::vector<JumpSpec> jumps = {});

    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<JumpSpec>& jumps() const { return jumps_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    // Distinct values of alpha at piece boundaries, increasing, from 0 to alpha(1).
    const std::vector<double>& breakpoints() const { return breaks_; }
    double alpha1() const { return breaks_.back(); }
    // Cumulative u at each breakpoint (the U_i of the limit polylines).
    const std::vector<double>& breakpoint_u() const { return break_u_; }

    // Two unit-slope segments separated by a jump.
    bool is_hexagon() const;
    // Every linear piece has slope 1, so x(t) is rational in t.
    bool all_unit_slopes() const;

private:
    std::vector<Segment> segments_;
    std::vector<JumpSpec> jumps_;
    std::vector<Piece> pieces_;
    std::vector<double> breaks_;
    std::vector<double> break_u_;
};

double alpha_eval(const StartDensity& d, double u);

}  // namespace qarctic
