// Acceptance gate: one PASS/FAIL line per criterion. Exact comparisons
// throughout; the only tolerances are the wall-clock limits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "setqm/entangle.hpp"
#include "setqm/experiments.hpp"
#include "setqm/gf2.hpp"
#include "setqm/groups.hpp"
#include "setqm/loginfo.hpp"
#include "setqm/measure.hpp"
#include "setqm/partition.hpp"

using namespace setqm;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = true;
    std::string first_failure;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Rational q(long n, long d = 1) { return Rational(n, d); }

const Universe abc({"a", "b", "c"});

Basis u3() { return Basis::standard(abc); }
Basis u3_prime() {
    return validate_basis("U'", {"a'", "b'", "c'"}, abc, std::vector<ElementSet>{{0, 1}, {1, 2}, {0, 1, 2}});
}
Basis u3_double_prime() {
    return validate_basis("U''", {"a''", "b''", "c''"}, abc, std::vector<ElementSet>{{2}, {0}, {1}});
}

// --- criteria --------------------------------------------------------------

Check lattice_regression(double& elapsed) {
    Check c;
    const auto t0 = Clock::now();
    const Partition pi = parse_partition("{{a},{b,c}}", abc);
    const Partition sigma = parse_partition("{{a,b},{c}}", abc);
    const bool join_top = join(pi, sigma) == Partition::discrete(abc);
    const std::size_t d0 = dit_set(Partition::indiscrete(abc)).count();
    const std::size_t d1 = dit_set(pi).count();
    const std::size_t d2 = dit_set(Partition::discrete(abc)).count();
    elapsed = ms_since(t0);
    c.expect(join_top, "join is not the discrete partition");
    c.expect(d0 == 0 && d1 == 4 && d2 == 6, "dit counts differ from 0/4/6");
    c.expect(elapsed < 1.0, "slower than 1 ms");
    return c;
}

Check entropy_regression() {
    Check c;
    c.expect(logical_entropy(Partition::indiscrete(abc)) == 0, "h(bottom) != 0");
    c.expect(logical_entropy(parse_partition("{{a},{b,c}}", abc)) == q(4, 9), "h({{a},{b,c}}) != 4/9");
    c.expect(logical_entropy(Partition::discrete(abc)) == q(2, 3), "h(top) != 2/3");
    const auto p = ProbabilityVector::uniform(3);
    c.expect(quantum_logical_entropy(density_matrix(parse_partition("{{a},{b,c}}", abc), p)) == q(4, 9),
             "h(rho) != 4/9");
    return c;
}

Check density_measurement() {
    Check c;
    const auto r = measurement_cascade();
    c.expect(r.value("delta_step1") == q(4, 9), "first delta != 4/9");
    c.expect(r.value("delta_step2") == q(2, 9), "second delta != 2/9");
    c.expect(r.value("delta_one_shot") == q(2, 3), "one-shot delta != 2/3");
    c.expect(r.value("delta_step1") + r.value("delta_step2") == r.value("delta_one_shot"), "deltas do not add up");
    c.expect(r.value("zeroed_step1") == q(4, 9) && r.value("zeroed_step2") == q(2, 9) &&
                 r.value("zeroed_one_shot") == q(2, 3),
             "zeroed off-diagonals differ from deltas");
    return c;
}

Check gf2_commutators() {
    Check c;
    const Basis u = u3();
    const Basis up = u3_prime();
    c.expect(conversion_matrix(up, u) == BitMatrix{{1, 0, 1}, {1, 1, 1}, {0, 1, 1}}, "C[U<-U'] wrong");
    c.expect(conversion_matrix(u, up) == BitMatrix{{0, 1, 1}, {1, 1, 0}, {1, 1, 1}}, "C[U'<-U] wrong");
    const BitMatrix f = projection_matrix(parse_ket("{b,c}", u));
    const BitMatrix g = change_basis(projection_matrix(parse_ket("{a',b'}", up)), up, u);
    c.expect(g == BitMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, "{a',b'} projection in U wrong");
    const auto gf = commutes(g, f);
    c.expect(gf.mn == BitMatrix{{0, 1, 1}, {0, 0, 1}, {0, 1, 0}}, "g f product wrong");
    c.expect(gf.nm == BitMatrix{{0, 0, 0}, {1, 0, 1}, {1, 1, 0}}, "f g product wrong");
    c.expect(!gf.commute, "projections should not commute");
    const Basis upp = u3_double_prime();
    const BitMatrix h = change_basis(projection_matrix(parse_ket("{a'',b''}", upp)), upp, u);
    c.expect(commutes(f, h).commute, "U'' projections should commute");
    c.expect(attributes_commute(Attribute::characteristic(parse_ket("{b,c}", u)),
                                Attribute::characteristic(parse_ket("{a'',b''}", upp)), u),
             "U'' attributes should commute");
    return c;
}

Check entanglement_census(double& elapsed) {
    Check c;
    const auto t0 = Clock::now();
    const Basis ab = Basis::standard(Universe({"a", "b"}));
    int entangled = 0;
    int separated = 0;
    for (Mask bits = 1; bits < 16; ++bits) {
        const ProductSubset s(ab, ab, {bits & 3, bits >> 2});
        (is_separated(s) ? separated : entangled)++;
    }
    c.expect(entangled == 6 && separated == 9, "census differs from 6 entangled / 9 separated");

    // Independence checked cell by cell with integer arithmetic: N * [x,y] == row(x) * col(y).
    const Basis x3 = Basis::standard(Universe::range(3), "X");
    int checked = 0;
    for (Mask bits = 1; bits < 512; ++bits) {
        const ProductSubset s(x3, x3, {bits & 7, (bits >> 3) & 7, bits >> 6});
        const long n = static_cast<long>(s.count());
        bool independent = true;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                long row = 0;
                long col = 0;
                for (std::size_t k = 0; k < 3; ++k) {
                    row += s.contains(i, k);
                    col += s.contains(k, j);
                }
                independent = independent && n * (s.contains(i, j) ? 1 : 0) == row * col;
            }
        }
        c.expect(is_separated(s) == independent, "proposition fails on " + to_string(s));
        c.expect(is_correlated(equiprobable_joint(s)) == !independent, "is_correlated disagrees on " + to_string(s));
        ++checked;
    }
    elapsed = ms_since(t0);
    c.expect(checked == 511, "did not visit 511 subsets");
    c.expect(elapsed < 1000.0, "slower than 1 s");
    return c;
}

Check two_slit_criterion() {
    Check c;
    const auto m = two_slit(true);
    const auto f = two_slit(false);
    c.expect(m.value("Pr(a)") == q(1, 4) && m.value("Pr(b)") == q(1, 2) && m.value("Pr(c)") == q(1, 4),
             "measured distribution differs from (1/4, 1/2, 1/4)");
    c.expect(f.value("Pr(a)") == q(1, 2) && f.value("Pr(b)") == 0 && f.value("Pr(c)") == q(1, 2),
             "free distribution differs from (1/2, 0, 1/2)");
    std::vector<std::size_t> sizes;
    for (const auto& cycle : orbit_decomposition(two_slit_dynamics())) {
        sizes.push_back(cycle.size());
    }
    c.expect(sizes == std::vector<std::size_t>{4, 2, 1}, "orbit sizes differ from {4,2,1}");
    return c;
}

Check bell_criterion() {
    Check c;
    const auto r = bell_experiment();
    c.expect(r.value("Pr(a,a')") == q(1, 4), "Pr(a,a') != 1/4");
    c.expect(r.value("Pr(b',b'')") == 0, "Pr(b',b'') != 0");
    c.expect(r.value("Pr(a,b'')") == q(1, 2), "Pr(a,b'') != 1/2");
    c.expect(r.verdict("violated"), "inequality not violated");

    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> weight(0, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<std::array<std::array<Rational, 2>, 2>, 2> p;
        long w[8];
        long total = 0;
        for (long& x : w) {
            x = weight(rng);
            total += x;
        }
        if (total == 0) {
            w[0] = total = 1;
        }
        for (std::size_t k = 0; k < 8; ++k) {
            p[k >> 2][(k >> 1) & 1][k & 1] = Rational(w[k], total);
        }
        c.expect(bell_marginal_inequality(TripleDistribution(p)).holds, "random joint violates the inequality");
    }
    return c;
}

Check groups_criterion() {
    Check c;
    const Universe u6 = Universe::range(6);
    const auto ex1 = generate(u6, {parse_permutation("(0,3)(1,4)(2,5)", u6)});
    c.expect(to_string(orbits(ex1)) == "{{0,3},{1,4},{2,5}}", "example 1 orbits wrong");
    std::vector<Rational> mod3;
    for (long i = 0; i < 6; ++i) {
        mod3.emplace_back(i % 3);
    }
    const Attribute f = Attribute::on_universe(u6, mod3);
    c.expect(commutes_with(f, ex1), "n mod 3 does not commute");
    c.expect(csca_orbits({f}, ex1).complete, "n mod 3 is not complete");

    const Universe u12 = Universe::range(12);
    const auto ex2 = generate(u12, {parse_permutation("(0,6)(1,7)(2,8)(3,9)(4,10)(5,11)", u12)});
    c.expect(orbits(ex2).block_count() == 6, "example 2 does not have six orbits");
    std::vector<Rational> m2;
    std::vector<Rational> m3;
    for (long i = 0; i < 12; ++i) {
        m2.emplace_back(i % 2);
        m3.emplace_back(i % 3);
    }
    const auto cs = csca_orbits({Attribute::on_universe(u12, m2), Attribute::on_universe(u12, m3)}, ex2);
    c.expect(cs.complete, "(n mod 2, n mod 3) not complete");
    const std::map<std::string, std::string> expected = {{"{0,6}", "|0,0>"}, {"{4,10}", "|0,1>"},
                                                          {"{2,8}", "|0,2>"}, {"{3,9}", "|1,0>"},
                                                          {"{1,7}", "|1,1>"}, {"{5,11}", "|1,2>"}};
    std::map<std::string, std::string> got;
    for (const auto& [orbit, tuple] : cs.kets) {
        got[format_subset(orbit, u12)] = format_ket(tuple);
    }
    c.expect(got == expected, "|r,s> table differs");
    return c;
}

Check property_suites() {
    Check c;
    // Lattice side, every pair of partitions for n <= 4.
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto all = enumerate_partitions(Universe::range(n));
        for (const auto& s : all) {
            const Relation ds = dit_set(s);
            c.expect(ds.is_partition_relation(), "dit set is not a partition relation");
            c.expect(interior(ds) == ds && closure(indit_set(s)) == indit_set(s), "interior/closure fixed points");
            for (const auto& p : all) {
                const Relation dp = dit_set(p);
                c.expect(dit_set(join(s, p)) == relation_union(ds, dp), "join dit set");
                c.expect(dit_set(meet(s, p)) == interior(relation_intersection(ds, dp)), "meet dit set");
                c.expect(dit_set(implication(s, p)) == interior(relation_union(ds.complement(), dp)),
                         "implication dit set");
                c.expect((implication(s, p) == Partition::discrete(s.universe())) == refines(s, p),
                         "implication vs refinement");
                c.expect(refines(s, p) == ds.subset_of(dp), "refinement vs dit inclusion");
                const Relation r = relation_union(ds, dp.complement());
                c.expect(interior(interior(r)) == interior(r) && interior(r).subset_of(r), "interior algebra");
                c.expect(closure(closure(r)) == closure(r) && r.subset_of(closure(r)), "closure algebra");
            }
        }
    }
    // Measurement side.
    for (std::size_t n = 1; n <= 4; ++n) {
        const Universe ref = Universe::range(n);
        const Basis b = Basis::standard(ref);
        const auto all = enumerate_partitions(ref);
        const auto uniform = ProbabilityVector::uniform(n);
        const auto bottom = density_matrix(Partition::indiscrete(ref), uniform);
        for (const auto& pf : all) {
            const Attribute f = Attribute::from_partition(b, pf);
            for (const auto& pg : all) {
                const Attribute g = Attribute::from_partition(b, pg);
                const Attribute fg = Attribute::from_partition(b, join(pf, pg));
                for (Mask s = 1; s < (Mask{1} << n); ++s) {
                    const BitVector st(b, s);
                    std::size_t norms = 0;
                    std::map<Mask, Rational> two;
                    for (const auto& o1 : born(st, f).outcomes) {
                        norms += norm_squared(o1.post_state);
                        for (const auto& o2 : born(o1.post_state, g).outcomes) {
                            two[o2.post_state.bits()] += o1.probability * o2.probability;
                        }
                    }
                    c.expect(norms == norm_squared(st), "Pythagorean identity");
                    std::map<Mask, Rational> one;
                    for (const auto& o : born(st, fg).outcomes) {
                        one[o.post_state.bits()] = o.probability;
                    }
                    c.expect(one == two, "sequential composition");
                }
                // Two-step path through pf then join(pf, pg) telescopes to the one-shot delta.
                const auto mid = luders_update(bottom, pf);
                const auto end = luders_update(mid, pg);
                c.expect(entropy_delta(bottom, mid) + entropy_delta(mid, end) ==
                             entropy_delta(bottom, luders_update(bottom, join(pf, pg))),
                         "entropy telescoping");
                c.expect(entropy_delta(mid, end) == zeroed_coherence(mid, end), "delta vs zeroed coherence");
            }
        }
    }
    // Set-Schur lemma on random actions.
    std::mt19937 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const Universe u = Universe::range(n);
        std::vector<std::size_t> map(n);
        for (std::size_t i = 0; i < n; ++i) {
            map[i] = i;
        }
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::swap(map[pick(rng)], map[pick(rng)]);
        std::swap(map[pick(rng)], map[pick(rng)]);
        const auto rep = generate(u, {Permutation(u, map)});
        const Partition orb = orbits(rep);
        std::vector<Rational> on_orbits(n);
        std::vector<Rational> injective(n);
        for (std::size_t i = 0; i < n; ++i) {
            on_orbits[i] = static_cast<long>(orb.block_of(i));
            injective[i] = static_cast<long>(i);
        }
        c.expect(attribute_decomposition(Attribute::on_universe(u, on_orbits), rep).size() == orb.block_count(),
                 "orbit-constant attribute did not decompose");
        if (!orb.is_discrete()) {
            bool witnessed = false;
            try {
                attribute_decomposition(Attribute::on_universe(u, injective), rep);
            } catch (const SchurViolation& v) {
                witnessed = orb.same_block(v.first(), v.second()) && v.first() != v.second();
            }
            c.expect(witnessed, "non-commuting attribute without a witness");
        }
    }
    return c;
}

}  // namespace

int main() {
    const auto start = Clock::now();
    int failures = 0;
    auto report = [&](int id, const char* name, const Check& c, const std::string& extra) {
        std::printf("criterion %d: %s  %s%s%s\n", id, c.ok ? "PASS" : "FAIL", name, extra.c_str(),
                    c.ok ? "" : (" -- " + c.first_failure).c_str());
        failures += c.ok ? 0 : 1;
    };
    auto timed = [](const std::function<Check()>& f, double& ms) {
        const auto t0 = Clock::now();
        Check c = f();
        ms = ms_since(t0);
        return c;
    };
    char buf[64];

    double t1 = 0;
    const Check c1 = lattice_regression(t1);
    std::snprintf(buf, sizeof buf, " (%.3f ms, limit 1 ms)", t1);
    report(1, "lattice regression", c1, buf);

    double t = 0;
    report(2, "entropy regression", timed(entropy_regression, t), "");
    report(3, "density-matrix measurement", timed(density_measurement, t), "");
    report(4, "GF(2) commutator table", timed(gf2_commutators, t), "");

    double t5 = 0;
    const Check c5 = entanglement_census(t5);
    std::snprintf(buf, sizeof buf, " (%.1f ms, limit 1000 ms)", t5);
    report(5, "entanglement census", c5, buf);

    report(6, "two-slit", timed(two_slit_criterion, t), "");
    report(7, "Bell violation", timed(bell_criterion, t), "");
    report(8, "group orbits", timed(groups_criterion, t), "");

    double t9 = 0;
    Check c9 = timed(property_suites, t9);
    const double total = ms_since(start);
    c9.expect(total < 30000.0, "acceptance run slower than 30 s");
    std::snprintf(buf, sizeof buf, " (%.0f ms; whole run %.0f ms, limit 30 s)", t9, total);
    report(9, "property suites", c9, buf);

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
