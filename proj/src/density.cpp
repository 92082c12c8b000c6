#include "qarctic/density.hpp"

#include "qarctic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qarctic {

std::vector<std::string> validate_density(const std::vector<Segment>& segments,
                                          const std::vector<JumpSpec>& jumps) {
    std::vector<std::string> err;
    if (segments.empty()) err.push_back("at least one segment is required");
    double total = 0;
    for (size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        if (!std::isfinite(s.gamma) || !(s.gamma > 0))
            err.push_back("segment " + std::to_string(i) + ": width gamma must be positive");
        if (!std::isfinite(s.p) || !(s.p >= 1))
            err.push_back("segment " + std::to_string(i) + ": slope p must be at least 1");
        total += s.gamma;
    }
    if (!segments.empty() && std::fabs(total - 1) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "segment widths must sum to 1 (got " << total << ")";
        err.push_back(os.str());
    }
    double prev = 0;
    for (size_t j = 0; j < jumps.size(); ++j) {
        const JumpSpec& J = jumps[j];
        std::string tag = "jump " + std::to_string(j);
        if (!std::isfinite(J.delta) || !(J.delta > 0)) err.push_back(tag + ": height delta must be positive");
        if (!std::isfinite(J.u) || !(J.u > 0 && J.u < 1)) {
            err.push_back(tag + ": location must lie strictly inside (0,1)");
            continue;
        }
        if (J.u <= prev && j > 0) err.push_back(tag + ": locations must be strictly increasing");
        prev = J.u;
        // a jump must sit on a segment boundary
        double u = 0;
        bool on_boundary = false;
        for (size_t i = 0; i + 1 < segments.size(); ++i) {
            u += segments[i].gamma;
            if (std::fabs(u - J.u) <= 1e-12) on_boundary = true;
        }
        if (!on_boundary) err.push_back(tag + ": location must coincide with a boundary between segments");
    }
    return err;
}

StartDensity::StartDensity(std::vector<Segment> segments, std::vector<JumpSpec> jumps)
    : segments_(std::move(segments)), jumps_(std::move(jumps)) {
    auto err = validate_density(segments_, jumps_);
    if (!err.empty()) {
        std::string msg = "invalid start density:";
        for (const auto& e : err) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
    double u = 0, theta = 0;
    size_t next_jump = 0;
    breaks_.push_back(0);
    break_u_.push_back(0);
    for (size_t i = 0; i < segments_.size(); ++i) {
        Piece p;
        p.gamma = segments_[i].gamma;
        p.p = segments_[i].p;
        p.u0 = u;
        p.theta0 = theta;
        u = i + 1 == segments_.size() ? 1.0 : u + p.gamma;
        theta += p.p * p.gamma;
        p.u1 = u;
        p.theta1 = theta;
        p.lo = static_cast<int>(breaks_.size()) - 1;
        breaks_.push_back(theta);
        break_u_.push_back(u);
        p.hi = p.lo + 1;
        pieces_.push_back(p);
        if (next_jump < jumps_.size() && std::fabs(jumps_[next_jump].u - u) <= 1e-12) {
            Piece J;
            J.jump = true;
            J.delta = jumps_[next_jump].delta;
            J.u0 = J.u1 = u;
            J.theta0 = theta;
            theta += J.delta;
            J.theta1 = theta;
            J.lo = static_cast<int>(breaks_.size()) - 1;
            breaks_.push_back(theta);
            break_u_.push_back(u);
            J.hi = J.lo + 1;
            pieces_.push_back(J);
            ++next_jump;
        }
    }
}

bool StartDensity::is_hexagon() const {
    return pieces_.size() == 3 && !pieces_[0].jump && pieces_[0].p == 1 && pieces_[1].jump && !pieces_[2].jump &&
           pieces_[2].p == 1;
}

bool StartDensity::all_unit_slopes() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.jump || p.p == 1; });
}

double alpha_eval(const StartDensity& d, double u) {
    if (!(u >= 0 && u <= 1)) throw DomainError("alpha_eval: u must lie in [0,1]");
    double a = 0;
    for (const auto& p : d.pieces()) {
        if (p.jump) {
            if (u >= p.u0) a = p.theta1;
            continue;
        }
        if (u < p.u0) break;
        a = p.theta0 + p.p * (std::min(u, p.u1) - p.u0);
    }
    return a;
}

}  // namespace qarctic
