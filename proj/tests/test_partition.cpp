#include <doctest.h>

#include <queue>
#include <set>

#include "setqm/error.hpp"
#include "setqm/partition.hpp"

using namespace setqm;

namespace {

const Universe abc({"a", "b", "c"});

Relation relation_of(const Universe& u, std::initializer_list<std::pair<const char*, const char*>> pairs) {
    Relation r(u);
    for (const auto& [x, y] : pairs) {
        r.set(u.index_of(x), u.index_of(y));
    }
    return r;
}

// Components of the graph linking elements that share a block in either partition.
std::vector<std::size_t> bfs_components(const Partition& p, const Partition& q) {
    const std::size_t n = p.universe().size();
    std::vector<std::size_t> comp(n, n);
    std::size_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != n) {
            continue;
        }
        std::queue<std::size_t> todo;
        todo.push(s);
        comp[s] = next;
        while (!todo.empty()) {
            const std::size_t u = todo.front();
            todo.pop();
            for (std::size_t v = 0; v < n; ++v) {
                if (comp[v] == n && (p.same_block(u, v) || q.same_block(u, v))) {
                    comp[v] = next;
                    todo.push(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

// Warshall on the reflexive symmetric hull.
Relation warshall_equivalence(const Relation& r) {
    const std::size_t n = r.dimension();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = i == j || r.contains(i, j) || r.contains(j, i);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] = m[i][j] || (m[i][k] && m[k][j]);
            }
        }
    }
    Relation out(r.universe());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.set(i, j, m[i][j]);
        }
    }
    return out;
}

// Stirling numbers of the second kind, summed.
std::size_t bell_number(std::size_t n) {
    std::vector<std::vector<std::size_t>> s(n + 1, std::vector<std::size_t>(n + 1, 0));
    s[0][0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 1; k <= i; ++k) {
            s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        total += s[n][k];
    }
    return total;
}

}  // namespace

TEST_CASE("dit and indit sets of the small examples") {
    const Partition pi = parse_partition("{{a},{b,c}}", abc);
    CHECK(dit_set(pi) == relation_of(abc, {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}}));
    CHECK(dit_set(Partition::indiscrete(abc)).count() == 0);
    CHECK(dit_set(Partition::discrete(abc)).count() == 6);

    CHECK(indit_set(pi) == relation_of(abc, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"b", "c"}, {"c", "b"}}));
    CHECK(indit_set(Partition::discrete(abc)) == Relation::diagonal(abc));
    CHECK(indit_set(Partition::indiscrete(abc)) == Relation::full(abc));
}

TEST_CASE("refinement") {
    const Partition pi = parse_partition("{{a},{b,c}}", abc);
    CHECK(refines(Partition::indiscrete(abc), pi));
    CHECK(refines(pi, Partition::discrete(abc)));
    CHECK_FALSE(refines(pi, parse_partition("{{a,b},{c}}", abc)));
    CHECK_THROWS_AS(refines(pi, Partition::discrete(Universe({"x", "y", "z"}))), DomainError);
}

TEST_CASE("join, meet and implication on the three-element examples") {
    const Partition pi = parse_partition("{{a},{b,c}}", abc);
    const Partition sigma = parse_partition("{{a,b},{c}}", abc);
    const Partition bottom = Partition::indiscrete(abc);
    const Partition top = Partition::discrete(abc);

    CHECK(join(pi, sigma) == top);
    CHECK(join(pi, bottom) == pi);
    CHECK(join(pi, pi) == pi);

    CHECK(meet(pi, sigma) == bottom);
    CHECK(meet(pi, top) == pi);
    CHECK(meet(pi, pi) == pi);

    CHECK(implication(pi, pi) == top);
    CHECK(implication(bottom, pi) == top);
    CHECK(implication(pi, bottom) == bottom);
}

TEST_CASE("closure and interior examples") {
    CHECK(closure(Relation(abc)) == Relation::diagonal(abc));
    CHECK(closure(relation_of(abc, {{"a", "b"}})) ==
          relation_of(abc, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "a"}}));
    const Relation e = indit_set(parse_partition("{{a,c},{b}}", abc));
    CHECK(closure(e) == e);

    const Relation off_diagonal = Relation::diagonal(abc).complement();
    CHECK(interior(off_diagonal) == off_diagonal);
    const Partition pi = parse_partition("{{a},{b,c}}", abc);
    const Partition sigma = parse_partition("{{a,b},{c}}", abc);
    CHECK(interior(relation_intersection(dit_set(pi), dit_set(sigma))).count() == 0);
    CHECK(interior(Relation(abc)).count() == 0);
}

TEST_CASE("logical_op reproduces join, meet and implication") {
    const Partition pi = parse_partition("{{a},{b,c}}", abc);
    const Partition sigma = parse_partition("{{a,b},{c}}", abc);
    CHECK(logical_op({BooleanOp::kOr}, pi, sigma) == join(pi, sigma));
    CHECK(logical_op({BooleanOp::kAnd}, pi, sigma) == meet(pi, sigma));
    CHECK(logical_op({BooleanOp::kImplies}, sigma, pi) == implication(sigma, pi));
}

TEST_CASE("enumeration matches Bell numbers and yields distinct partitions") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto all = enumerate_partitions(Universe::range(n));
        CHECK(all.size() == bell_number(n));
        std::set<std::string> seen;
        for (const auto& p : all) {
            seen.insert(to_string(p));
        }
        CHECK(seen.size() == all.size());
    }
    CHECK(enumerate_partitions(abc).size() == 5);
    CHECK(enumerate_partitions(Universe::range(4)).size() == 15);
    CHECK_THROWS_AS(enumerate_partitions(Universe::range(13)), DomainError);
}

TEST_CASE("partition text round-trips and reports positions") {
    const Partition pi = parse_partition(" { {a} , {b,c} } ", abc);
    CHECK(to_string(pi) == "{{a},{b,c}}");
    CHECK(parse_partition(to_string(pi), abc) == pi);
    CHECK(to_string(parse_partition("{{c,b},{a}}", abc)) == "{{a},{b,c}}");
    CHECK(parse_partition("{{x,y},{z}}").universe().labels() == std::vector<std::string>{"x", "y", "z"});

    CHECK_THROWS_AS(parse_partition("{{a},{b}}", abc), ParseError);       // misses c
    CHECK_THROWS_AS(parse_partition("{{a,b},{b,c}}", abc), ParseError);   // overlap
    try {
        parse_partition("{{a},{b,c}", abc);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 10);
    }
    CHECK_THROWS_AS(parse_universe("{a,a}"), ParseError);
    CHECK_THROWS_AS(parse_universe("{a,$}"), ParseError);
}

// --- exhaustive properties -------------------------------------------------

TEST_CASE("refinement agrees with dit-set inclusion, n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto all = enumerate_partitions(Universe::range(n));
        for (const auto& s : all) {
            for (const auto& p : all) {
                const bool blockwise = std::all_of(p.blocks().begin(), p.blocks().end(), [&](const auto& b) {
                    return std::all_of(b.begin(), b.end(), [&](std::size_t u) { return s.same_block(b[0], u); });
                });
                CHECK(refines(s, p) == blockwise);
                CHECK(refines(s, p) == dit_set(s).subset_of(dit_set(p)));
                CHECK((implication(s, p) == Partition::discrete(s.universe())) == refines(s, p));
            }
        }
    }
}

TEST_CASE("dit-set representation of the operations, n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto all = enumerate_partitions(Universe::range(n));
        for (const auto& p : all) {
            for (const auto& s : all) {
                CHECK(dit_set(join(p, s)) == relation_union(dit_set(p), dit_set(s)));
                CHECK(dit_set(meet(p, s)) == interior(relation_intersection(dit_set(p), dit_set(s))));
                CHECK(dit_set(implication(s, p)) == interior(relation_union(dit_set(s).complement(), dit_set(p))));

                const auto comp = bfs_components(p, s);
                CHECK(meet(p, s) == Partition::from_keys(p.universe(), comp));
            }
        }
    }
}

TEST_CASE("dit sets are partition relations, n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const auto& p : enumerate_partitions(Universe::range(n))) {
            const Relation d = dit_set(p);
            CHECK(d.is_symmetric());
            CHECK(d.is_irreflexive());
            CHECK(d.is_partition_relation());
            CHECK(indit_set(p).is_equivalence());
            CHECK(partition_from_dit_set(d) == p);
            CHECK(partition_from_equivalence(indit_set(p)) == p);
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t w = 0; w < n; ++w) {
                    if (!d.contains(u, w)) {
                        continue;
                    }
                    for (std::size_t v = 0; v < n; ++v) {
                        CHECK((d.contains(u, v) || d.contains(v, w)));
                    }
                }
            }
        }
    }
}

TEST_CASE("closure and interior algebra over every relation, n <= 3") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const Universe u = Universe::range(n);
        const std::size_t cells = n * n;
        std::vector<Relation> all;
        for (std::uint32_t bits = 0; bits < (1U << cells); ++bits) {
            Relation r(u);
            for (std::size_t k = 0; k < cells; ++k) {
                r.set(k / n, k % n, ((bits >> k) & 1U) != 0);
            }
            all.push_back(r);
        }
        for (const auto& r : all) {
            const Relation c = closure(r);
            const Relation i = interior(r);
            CHECK(c == warshall_equivalence(r));
            CHECK(r.subset_of(c));
            CHECK(closure(c) == c);
            CHECK(i.subset_of(r));
            CHECK(i.is_irreflexive());
            CHECK(i.is_partition_relation());
            CHECK(interior(i) == i);
        }
        // Monotone on a sample of comparable pairs.
        for (std::size_t a = 0; a < all.size(); a += 7) {
            for (std::size_t b = 0; b < all.size(); b += 5) {
                if (all[a].subset_of(all[b])) {
                    CHECK(closure(all[a]).subset_of(closure(all[b])));
                    CHECK(interior(all[a]).subset_of(interior(all[b])));
                }
            }
        }
    }
}

TEST_CASE("lattice laws over all triples, n <= 3") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto all = enumerate_partitions(Universe::range(n));
        for (const auto& x : all) {
            for (const auto& y : all) {
                CHECK(join(x, y) == join(y, x));
                CHECK(meet(x, y) == meet(y, x));
                CHECK(join(x, meet(x, y)) == x);
                CHECK(meet(x, join(x, y)) == x);
                for (const auto& z : all) {
                    CHECK(join(join(x, y), z) == join(x, join(y, z)));
                    CHECK(meet(meet(x, y), z) == meet(x, meet(y, z)));
                }
            }
        }
    }
}
