#include "setqm/experiments.hpp"

#include <bit>

#include "setqm/error.hpp"

namespace setqm {

const Rational& ExperimentReport::value(std::string_view key) const {
    for (const auto& [k, v] : values) {
        if (k == key) {
            return v;
        }
    }
    throw DomainError("report '" + name + "' has no value '" + std::string(key) + "'");
}

bool ExperimentReport::verdict(std::string_view key) const {
    for (const auto& [k, v] : verdicts) {
        if (k == key) {
            return v;
        }
    }
    throw DomainError("report '" + name + "' has no verdict '" + std::string(key) + "'");
}

namespace {

// Pr({u} | S) for every element u of S's basis, zeros included.
std::vector<std::pair<std::string, Rational>> position_distribution(const BitVector& s) {
    const auto& labels = s.basis().labels();
    const Attribute position = Attribute::from_partition(s.basis(), Partition::discrete(labels));
    const auto dist = born(s, position);
    std::vector<std::pair<std::string, Rational>> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const Outcome* o = dist.find(Rational(static_cast<long>(i)));
        out.emplace_back(labels.label(i), o ? o->probability : Rational(0));
    }
    return out;
}

std::vector<std::vector<std::string>> render(const SetDensityMatrix& rho) {
    std::vector<std::vector<std::string>> m(rho.dimension());
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        for (std::size_t j = 0; j < rho.dimension(); ++j) {
            m[i].push_back(format_entry(rho, i, j));
        }
    }
    return m;
}

}  // namespace

// --- Two-slit --------------------------------------------------------------

BitMatrix two_slit_dynamics() {
    return BitMatrix{{1, 1, 0}, {1, 1, 1}, {0, 1, 1}};
}

ExperimentReport two_slit(bool measure_at_slits) {
    const Basis u = Basis::standard(Universe({"a", "b", "c"}));
    return two_slit(two_slit_dynamics(), parse_ket("{a,c}", u), measure_at_slits);
}

ExperimentReport two_slit(const BitMatrix& dynamics, const BitVector& initial, bool measure_at_slits) {
    const Basis& basis = initial.basis();
    if (!dynamics.square() || dynamics.rows() != basis.dimension()) {
        throw DomainError("dynamics dimension does not match the state");
    }
    if (dynamics.rank() != dynamics.rows()) {
        throw DomainError("dynamics matrix is singular mod 2");
    }
    if (initial.empty()) {
        throw DomainError("cannot prepare the empty state");
    }
    const auto& labels = basis.labels();
    auto evolve = [&](const BitVector& s) { return BitVector(basis, dynamics.apply(s.bits())); };

    ExperimentReport report;
    report.name = measure_at_slits ? "twoslit (measured at slits)" : "twoslit (no slit measurement)";
    report.steps.push_back({"prepare at slits", to_string(initial), {}, {}});

    std::vector<Rational> wall(labels.size(), Rational(0));
    if (measure_at_slits) {
        const auto slits = position_distribution(initial);
        report.steps.push_back({"measure position at slits", to_string(initial), slits, {}});
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (slits[i].second == 0) {
                continue;
            }
            const BitVector at_slit(basis, Mask{1} << i);
            const BitVector evolved = evolve(at_slit);
            const auto at_wall = position_distribution(evolved);
            report.steps.push_back({"evolve " + to_string(at_slit) + " -> " + to_string(evolved) +
                                        " and measure at wall",
                                    to_string(evolved), at_wall, {}});
            for (std::size_t k = 0; k < labels.size(); ++k) {
                wall[k] += slits[i].second * at_wall[k].second;
            }
        }
    } else {
        const BitVector evolved = evolve(initial);
        const auto at_wall = position_distribution(evolved);
        report.steps.push_back({"evolve " + to_string(initial) + " -> " + to_string(evolved) + " and measure at wall",
                                to_string(evolved), at_wall, {}});
        for (std::size_t k = 0; k < labels.size(); ++k) {
            wall[k] = at_wall[k].second;
        }
    }
    std::vector<std::pair<std::string, Rational>> final_dist;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        final_dist.emplace_back(labels.label(k), wall[k]);
        report.values.emplace_back("Pr(" + labels.label(k) + ")", wall[k]);
    }
    report.steps.push_back({"wall distribution", "", final_dist, {}});
    return report;
}

// --- Bell ------------------------------------------------------------------

std::array<Basis, 3> bell_bases() {
    const Universe ref({"a", "b"});
    return {Basis::standard(ref, "U"),
            validate_basis("U'", {"a'", "b'"}, ref, std::vector<ElementSet>{{0, 1}, {1}}),
            validate_basis("U''", {"a''", "b''"}, ref, std::vector<ElementSet>{{0, 1}, {0}})};
}

ProductSubset bell_state() {
    const Basis u = bell_bases()[0];
    return parse_product_subset("{(a,a),(b,b)}", u, u);
}

SequentialResult sequential_probability(const ProductSubset& state, const Basis& left, std::size_t x,
                                        const Basis& right, std::size_t y) {
    const ProductSubset in_left = express(state, left, left);
    const std::size_t total = in_left.count();
    if (total == 0) {
        throw DomainError("cannot measure the empty composite state");
    }
    if (x >= left.dimension() || y >= right.dimension()) {
        throw DomainError("outcome index out of range");
    }
    const Mask row = in_left.row(x);
    SequentialResult r{Rational(static_cast<long>(std::popcount(row)), static_cast<long>(total)),
                       BitVector(left, row), Rational(0), Rational(0)};
    if (row != 0) {
        const BitVector rewritten = express(r.right_state, right);
        r.right_probability = Rational(rewritten.contains(y) ? 1 : 0, static_cast<long>(rewritten.count()));
        r.joint = r.left_probability * r.right_probability;
    }
    return r;
}

TripleDistribution::TripleDistribution(std::array<std::array<std::array<Rational, 2>, 2>, 2> p) : p_(std::move(p)) {
    Rational total = 0;
    for (const auto& plane : p_) {
        for (const auto& row : plane) {
            for (const auto& v : row) {
                if (v < 0) {
                    throw DomainError("negative probability in triple distribution");
                }
                total += v;
            }
        }
    }
    if (total != 1) {
        throw DomainError("triple distribution sums to " + to_string(total) + ", not 1");
    }
}

InequalityCheck bell_marginal_inequality(const TripleDistribution& p) {
    InequalityCheck c;
    c.lhs = p.at(0, 0, 0) + p.at(0, 0, 1) + p.at(0, 1, 1) + p.at(1, 1, 1);
    c.rhs = p.at(0, 0, 1) + p.at(0, 1, 1);
    c.holds = c.lhs >= c.rhs;
    return c;
}

TripleDistribution counterfactual_triple(const ProductSubset& state, const std::array<Basis, 3>& bases) {
    std::array<std::array<Rational, 2>, 3> marginal;
    for (std::size_t k = 0; k < 3; ++k) {
        if (bases[k].dimension() != 2) {
            throw DomainError("counterfactual triple needs two-outcome bases");
        }
        const ProductSubset s = express(state, bases[k], bases[k]);
        const auto total = static_cast<long>(s.count());
        if (total == 0) {
            throw DomainError("cannot measure the empty composite state");
        }
        for (std::size_t x = 0; x < 2; ++x) {
            marginal[k][x] = Rational(static_cast<long>(std::popcount(s.row(x))), total);
        }
    }
    std::array<std::array<std::array<Rational, 2>, 2>, 2> p;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            for (std::size_t z = 0; z < 2; ++z) {
                p[x][y][z] = marginal[0][x] * marginal[1][y] * marginal[2][z];
            }
        }
    }
    return TripleDistribution(p);
}

ExperimentReport bell_experiment() {
    const auto bases = bell_bases();
    const ProductSubset state = bell_state();

    ExperimentReport report;
    report.name = "bell";
    std::string forms;
    for (const auto& b : bases) {
        forms += (forms.empty() ? "" : " = ") + to_string(express(state, b, b));
    }
    report.steps.push_back({"prepare entangled state", forms, {}, {}});

    // State-outcome table, one row per nonzero ket.
    for (const char* ket : {"{a,b}", "{b}", "{a}"}) {
        const BitVector v = parse_ket(ket, bases[0]);
        std::string names;
        for (const auto& b : bases) {
            names += (names.empty() ? "" : " = ") + to_string(express(v, b));
        }
        for (const auto& b : bases) {
            report.steps.push_back({"state-outcome table: " + b.name() + "-measurement", names,
                                    position_distribution(express(v, b)), {}});
        }
    }

    struct Pair {
        std::size_t left_basis, x, right_basis, y;
    };
    const Pair pairs[] = {{0, 0, 1, 0}, {1, 1, 2, 1}, {0, 0, 2, 1}};
    std::vector<Rational> pr;
    for (const auto& q : pairs) {
        const Basis& lb = bases[q.left_basis];
        const Basis& rb = bases[q.right_basis];
        const auto r = sequential_probability(state, lb, q.x, rb, q.y);
        const std::string key = "Pr(" + lb.labels().label(q.x) + "," + rb.labels().label(q.y) + ")";
        report.steps.push_back({key + ": " + lb.name() + "-measurement of the left factor",
                                to_string(express(state, lb, lb)),
                                {{lb.labels().label(q.x), r.left_probability},
                                 {"other", 1 - r.left_probability}},
                                {}});
        if (!r.right_state.empty()) {
            const BitVector right_state = express(r.right_state, rb);
            report.steps.push_back({key + ": right factor collapsed to " + to_string(r.right_state) + ", " +
                                        rb.name() + "-measurement",
                                    to_string(right_state), position_distribution(right_state), {}});
        }
        report.values.emplace_back(key, r.joint);
        pr.push_back(r.joint);
    }
    const Rational lhs = pr[0] + pr[1];
    const Rational rhs = pr[2];
    report.values.emplace_back("lhs", lhs);
    report.values.emplace_back("rhs", rhs);

    const auto counterfactual = counterfactual_triple(state, bases);
    const auto check = bell_marginal_inequality(counterfactual);
    report.values.emplace_back("counterfactual Pr(a,a',a'')", counterfactual.at(0, 0, 0));
    report.values.emplace_back("counterfactual lhs", check.lhs);
    report.values.emplace_back("counterfactual rhs", check.rhs);

    report.verdicts.emplace_back("violated", !(lhs >= rhs));
    report.verdicts.emplace_back("counterfactual_holds", check.holds);
    return report;
}

// --- Measurement cascade ---------------------------------------------------

ExperimentReport measurement_cascade(const SetDensityMatrix& start, const std::vector<Partition>& measurements) {
    ExperimentReport report;
    report.name = "cascade";
    report.steps.push_back({"initial density matrix, h = " + to_string(quantum_logical_entropy(start)),
                            to_string(start.partition()), {}, render(start)});
    report.values.emplace_back("h_initial", quantum_logical_entropy(start));

    SetDensityMatrix rho = start;
    Partition combined = start.partition();
    Rational total = 0;
    bool deltas_match = true;
    for (std::size_t k = 0; k < measurements.size(); ++k) {
        const SetDensityMatrix next = luders_update(rho, measurements[k]);
        const Rational delta = entropy_delta(rho, next);
        const Rational zeroed = zeroed_coherence(rho, next);
        deltas_match = deltas_match && delta == zeroed;
        total += delta;
        const std::string n = std::to_string(k + 1);
        report.steps.push_back({"measure by " + to_string(measurements[k]) + ": delta h = " + to_string(delta),
                                to_string(next.partition()), {}, render(next)});
        report.values.emplace_back("delta_step" + n, delta);
        report.values.emplace_back("zeroed_step" + n, zeroed);
        combined = join(combined, measurements[k]);
        rho = next;
    }
    const SetDensityMatrix one_shot = luders_update(start, combined);
    const Rational one_shot_delta = entropy_delta(start, one_shot);
    const Rational one_shot_zeroed = zeroed_coherence(start, one_shot);
    report.steps.push_back({"single measurement by " + to_string(combined) + ": delta h = " + to_string(one_shot_delta),
                            to_string(one_shot.partition()), {}, render(one_shot)});
    report.values.emplace_back("delta_total", total);
    report.values.emplace_back("delta_one_shot", one_shot_delta);
    report.values.emplace_back("zeroed_one_shot", one_shot_zeroed);
    report.values.emplace_back("h_final", quantum_logical_entropy(rho));
    report.verdicts.emplace_back("telescopes", total == one_shot_delta);
    report.verdicts.emplace_back("deltas_equal_zeroed", deltas_match && one_shot_delta == one_shot_zeroed);
    return report;
}

ExperimentReport measurement_cascade() {
    const Universe u({"a", "b", "c"});
    const Basis basis = Basis::standard(u);
    const auto start = density_matrix(Partition::indiscrete(u), ProbabilityVector::uniform(3));
    return measurement_cascade(start, {attribute_partition(Attribute::characteristic(parse_ket("{b,c}", basis))),
                                       attribute_partition(Attribute::characteristic(parse_ket("{a,b}", basis)))});
}

}  // namespace setqm
