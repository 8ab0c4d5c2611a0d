#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setqm/entangle.hpp"
#include "setqm/gf2.hpp"
#include "setqm/loginfo.hpp"
#include "setqm/measure.hpp"

namespace setqm {

struct ReportStep {
    std::string description;
    std::string state;
    /// Outcome label -> probability; sums to 1 when present.
    std::vector<std::pair<std::string, Rational>> distribution;
    /// Rendered matrix entries, row by row.
    std::vector<std::vector<std::string>> matrix;
};

struct ExperimentReport {
    std::string name;
    std::vector<ReportStep> steps;
    std::vector<std::pair<std::string, Rational>> values;
    std::vector<std::pair<std::string, bool>> verdicts;

    /// Throws DomainError for unknown names.
    const Rational& value(std::string_view key) const;
    bool verdict(std::string_view key) const;
};

// --- Two-slit --------------------------------------------------------------

/// The fixed setup: positions {a,b,c}, slits at a and c, one period of
/// dynamics {a}->{a,b}, {b}->{a,b,c}, {c}->{b,c}, prepared state {a,c}.
BitMatrix two_slit_dynamics();

/// Wall distribution with or without a position measurement at the slits.
ExperimentReport two_slit(bool measure_at_slits);

/// Same procedure for any non-singular dynamics and nonempty initial state
/// (written in the standard basis the dynamics acts on).
ExperimentReport two_slit(const BitMatrix& dynamics, const BitVector& initial, bool measure_at_slits);

// --- Bell ------------------------------------------------------------------

/// The three bases of Z_2^2 over {a,b}: U, U' (a'={a,b}, b'={b}) and
/// U'' (a''={a,b}, b''={a}).
std::array<Basis, 3> bell_bases();

/// Left factor measured in `left` with outcome `x`; the right factor then
/// holds the row of x and is measured in `right` with outcome `y`. The
/// composite state is read in the product basis left x left, where all of
/// its pairs are taken as equiprobable.
struct SequentialResult {
    Rational left_probability;
    BitVector right_state;  // written in `left`
    Rational right_probability;
    Rational joint;
};

SequentialResult sequential_probability(const ProductSubset& state, const Basis& left, std::size_t x,
                                        const Basis& right, std::size_t y);

/// Outcome (x, y, z) probabilities over three two-outcome tests, indexed
/// [x][y][z] with index 0 for the first label (a, a', a'').
class TripleDistribution {
public:
    explicit TripleDistribution(std::array<std::array<std::array<Rational, 2>, 2>, 2> p);
    const Rational& at(std::size_t x, std::size_t y, std::size_t z) const { return p_[x][y][z]; }

private:
    std::array<std::array<std::array<Rational, 2>, 2>, 2> p_;
};

struct InequalityCheck {
    Rational lhs;  // Pr(a,a') + Pr(b',b'')
    Rational rhs;  // Pr(a,b'')
    bool holds;
};

InequalityCheck bell_marginal_inequality(const TripleDistribution& joint);

/// Pr(x,y,z) = Pr(x) Pr(y) Pr(z) from the left-hand outcome probabilities
/// of `state` in each of the three bases.
TripleDistribution counterfactual_triple(const ProductSubset& state, const std::array<Basis, 3>& bases);

/// The entangled state {(a,a),(b,b)} in U x U.
ProductSubset bell_state();

ExperimentReport bell_experiment();

// --- Measurement cascade ---------------------------------------------------

/// Lueders updates of `start` by each partition in turn, with entropy deltas,
/// compared against a single update by the join of all of them.
ExperimentReport measurement_cascade(const SetDensityMatrix& start, const std::vector<Partition>& measurements);

/// Uniform {a,b,c}: indiscrete, then chi_{b,c}, then chi_{a,b}.
ExperimentReport measurement_cascade();

}  // namespace setqm
