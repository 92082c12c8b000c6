#pragma once

#include "qarctic/qpoly.hpp"

#include <optional>
#include <vector>

namespace qarctic {

class StartSequence {
public:
    explicit StartSequence(std::vector<long> a);

    const std::vector<long>& a() const { return a_; }
    long operator[](int i) const { return a_[i]; }
    int n() const { return static_cast<int>(a_.size()) - 1; }
    long last() const { return a_.back(); }
    friend bool operator==(const StartSequence&, const StartSequence&) = default;

private:
    std::vector<long> a_;
};

// Lists every violated invariant; empty when a is a valid start sequence.
std::vector<std::string> validate_sequence(const std::vector<long>& a);

PolyMatrix lgv_matrix(const StartSequence& seq);
QPolynomial partition_det(const StartSequence& seq);
Rational partition_product(const StartSequence& seq, const Rational& q);
StartSequence dual_sequence(const StartSequence& seq);

// Exponent of the prefactor relating Z(a; q) and Z(dual a; 1/q).
long zident_exponent(const StartSequence& seq);

enum class PoleSet { minimal, extended };

Rational one_point_H(const StartSequence& seq, long ell, const Rational& q,
                     PoleSet poles = PoleSet::minimal);
Rational one_point_H_det(const StartSequence& seq, long ell, const Rational& q);
Rational one_point_Htilde(const StartSequence& seq, long ell, const Rational& q,
                          PoleSet poles = PoleSet::minimal);

double one_point_H(const StartSequence& seq, long ell, double q);

Rational free_weight_Y(long ell, long r, const Rational& q);
Rational free_weight_Ytilde(long ell, long r, long a_n, long n, const Rational& q);
double free_weight_Y(long ell, long r, double q);

Rational perturbed_partition(const StartSequence& seq, long r, const Rational& q);

// Summands H_{n,l} Y_{l,r} for l = 0..a_n, evaluated in double precision.
std::vector<double> exit_weights(const StartSequence& seq, long r, double q);
long most_likely_exit(const StartSequence& seq, long r, double q);

enum class Family { first, second };
enum class Step : char { W = 'W', N = 'N', E = 'E', NE = 'U' };

// First family: integer vertices. Second family: a stored abscissa X stands for X + 1/2.
struct LatticePath {
    long x0 = 0;
    long y0 = 0;
    std::vector<Step> steps;

    long area() const;
    std::vector<std::pair<long, long>> vertices() const;
    friend bool operator==(const LatticePath&, const LatticePath&) = default;
};

struct PathConfig {
    Family family = Family::first;
    std::vector<long> seq;
    std::vector<LatticePath> paths;

    long area() const;
    std::vector<long> path_areas() const;
    friend bool operator==(const PathConfig&, const PathConfig&) = default;
};

struct ExitSpec {
    long ell = 0;
    std::optional<long> r;
};

struct Enumerated {
    PathConfig config;
    long area;
};

std::vector<Enumerated> enumerate_configs(const StartSequence& seq,
                                          std::optional<ExitSpec> exit = std::nullopt);

// Returns the list of problems (empty when valid): endpoints, step set, vertex disjointness.
std::vector<std::string> check_config(const PathConfig& c);

PathConfig to_second_family(const PathConfig& config);
PathConfig from_second_family(const PathConfig& config);
PathConfig reflect_R(const PathConfig& config);

}  // namespace qarctic
