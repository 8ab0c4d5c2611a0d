#include <doctest.h>

#include <map>

#include "setqm/measure.hpp"

using namespace setqm;

namespace {

const Universe abc({"a", "b", "c"});

Rational q(long n, long d = 1) { return Rational(n, d); }

Basis u_basis() { return Basis::standard(abc); }
Basis u_prime() {
    return validate_basis("U'", {"a'", "b'", "c'"}, abc, std::vector<ElementSet>{{0, 1}, {1, 2}, {0, 1, 2}});
}
Basis u_double_prime() {
    return validate_basis("U''", {"a''", "b''", "c''"}, abc, std::vector<ElementSet>{{2}, {0}, {1}});
}

Attribute chi(const char* subset, const Basis& b) { return Attribute::characteristic(parse_ket(subset, b)); }

}  // namespace

TEST_CASE("brackets and norms") {
    const Basis u = u_basis();
    for (const char* x : {"{a}", "{b}", "{c}"}) {
        for (const char* y : {"{a}", "{b}", "{c}"}) {
            CHECK(bracket(parse_ket(x, u), parse_ket(y, u)) == (std::string(x) == y ? 1U : 0U));
        }
    }
    const BitVector s = parse_ket("{a,c}", u);
    CHECK(bracket(s, s) == 2);
    CHECK(bracket(parse_ket("{a,b}", u), parse_ket("{b,c}", u)) == 1);
    CHECK_THROWS_AS(bracket(s, parse_ket("{a'}", u_prime())), DomainError);

    CHECK(norm_squared(parse_ket("{a'}", u_prime()), u) == 2);
    CHECK(norm_squared(parse_ket("{a'}", u_prime())) == 1);
    CHECK(norm_squared(parse_ket("{}", u)) == 0);
    CHECK(norm_squared(parse_ket("{a,b,c}", u)) == 3);
}

TEST_CASE("Born rule and projection") {
    const Basis u = u_basis();
    const BitVector all = parse_ket("{a,b,c}", u);
    const Attribute ordinal = Attribute::on_universe(abc, {q(1), q(2), q(3)});

    const auto d1 = born(all, ordinal);
    REQUIRE(d1.outcomes.size() == 3);
    for (const auto& o : d1.outcomes) {
        CHECK(o.probability == q(1, 3));
        CHECK(o.post_state.count() == 1);
    }
    CHECK(to_string(measure(all, ordinal, q(3))) == "{c}");

    const auto d2 = born(all, chi("{b,c}", u));
    CHECK(d2.find(q(0))->probability == q(1, 3));
    CHECK(to_string(d2.find(q(0))->post_state) == "{a}");
    CHECK(d2.find(q(1))->probability == q(2, 3));
    CHECK(to_string(measure(all, chi("{b,c}", u), q(1))) == "{b,c}");

    const BitVector bc = parse_ket("{b,c}", u);
    const auto d3 = born(bc, chi("{a,b}", u));
    CHECK(d3.find(q(1))->probability == q(1, 2));
    CHECK(to_string(d3.find(q(1))->post_state) == "{b}");
    CHECK(d3.find(q(0))->probability == q(1, 2));
    CHECK(to_string(measure(bc, chi("{a,b}", u), q(0))) == "{c}");

    CHECK_THROWS_AS(born(parse_ket("{}", u), ordinal), DomainError);
    CHECK_THROWS_AS(born(parse_ket("{a'}", u_prime()), ordinal), DomainError);
    CHECK_THROWS_AS(measure(bc, ordinal, q(1)), DomainError);
}

TEST_CASE("attribute partitions and parsing") {
    CHECK(to_string(attribute_partition(chi("{b,c}", u_basis()))) == "{{a},{b,c}}");
    CHECK(attribute_partition(Attribute::on_universe(abc, {q(5), q(5), q(5)})).is_indiscrete());
    CHECK(attribute_partition(Attribute::on_universe(abc, {q(1), q(2), q(3)})).is_discrete());

    const Attribute f = parse_attribute("a:0, b:1/2, c:1", u_basis());
    CHECK(f.value(1) == q(1, 2));
    CHECK(f.eigenvalues() == std::vector<Rational>{q(0), q(1, 2), q(1)});
    CHECK_THROWS_AS(parse_attribute("a:0,b:1", u_basis()), ParseError);
    CHECK_THROWS_AS(parse_attribute("a:0,b:1,c:x", u_basis()), ParseError);
}

TEST_CASE("commuting attributes across bases") {
    const Basis u = u_basis();
    const Attribute f = chi("{b,c}", u);
    const Attribute g = chi("{a',b'}", u_prime());
    const Attribute h = chi("{a'',b''}", u_double_prime());

    CHECK_FALSE(attributes_commute(f, g, u));
    CHECK_FALSE(attributes_commute(g, f, u));
    CHECK(attributes_commute(f, h, u));
    CHECK(attributes_commute(h, f, u));
    CHECK(attributes_commute(f, f, u));
    // Reference basis does not matter.
    CHECK_FALSE(attributes_commute(f, g, u_prime()));
    CHECK(attributes_commute(f, h, u_prime()));

    // The simplified compatibility test agrees on these examples.
    CHECK(compatible_by_domain(f, g) == attributes_commute(f, g, u));
    CHECK(compatible_by_domain(f, h) == attributes_commute(f, h, u));
    CHECK(compatible_by_domain(f, f));
}

TEST_CASE("simultaneous eigenbasis of the commuting pair") {
    const Basis u = u_basis();
    const auto w = simultaneous_eigenbasis(chi("{b,c}", u), chi("{a'',b''}", u_double_prime()), u);
    REQUIRE(w.has_value());
    CHECK(w->same_vectors_as(u));
    CHECK(w->same_vectors_as(u_double_prime()));
    CHECK(to_string(express(parse_ket("{a}", u), u_double_prime())) == "{b''}");
    CHECK(to_string(express(parse_ket("{b}", u), u_double_prime())) == "{c''}");
    CHECK(to_string(express(parse_ket("{c}", u), u_double_prime())) == "{a''}");

    CHECK_FALSE(simultaneous_eigenbasis(chi("{b,c}", u), chi("{a',b'}", u_prime()), u).has_value());
}

TEST_CASE("complete sets of compatible attributes") {
    const Basis u = u_basis();
    const auto r = csca_check({chi("{b,c}", u), chi("{a,b}", u)});
    REQUIRE(r.complete);
    CHECK(format_ket(r.kets[0]) == "|0,1>");
    CHECK(format_ket(r.kets[1]) == "|1,1>");
    CHECK(format_ket(r.kets[2]) == "|1,0>");

    CHECK(csca_check({Attribute::on_universe(abc, {q(1), q(2), q(3)})}).complete);

    const auto partial = csca_check({chi("{b,c}", u)});
    CHECK_FALSE(partial.complete);
    CHECK(partial.witness == ElementSet{1, 2});

    CHECK_THROWS_AS(csca_check({chi("{b,c}", u), chi("{a'}", u_prime())}), DomainError);
}

// --- exhaustive properties -------------------------------------------------

TEST_CASE("Born probabilities sum to one and norms add up, n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Universe ref = Universe::range(n);
        const Basis b = Basis::standard(ref);
        for (const auto& pi : enumerate_partitions(ref)) {
            const Attribute f = Attribute::from_partition(b, pi);
            for (Mask s = 1; s < (Mask{1} << n); ++s) {
                const BitVector state(b, s);
                const auto d = born(state, f);
                CHECK(d.total() == 1);
                std::size_t norms = 0;
                for (const auto& o : d.outcomes) {
                    norms += norm_squared(o.post_state);
                }
                CHECK(norms == norm_squared(state));
            }
        }
    }
}

TEST_CASE("sequential measurement composes to a single join measurement, n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Universe ref = Universe::range(n);
        const Basis b = Basis::standard(ref);
        const auto all = enumerate_partitions(ref);
        for (const auto& pf : all) {
            const Attribute f = Attribute::from_partition(b, pf);
            for (const auto& pg : all) {
                const Attribute g = Attribute::from_partition(b, pg);
                const Attribute fg = Attribute::from_partition(b, join(pf, pg));
                for (Mask s = 1; s < (Mask{1} << n); ++s) {
                    const BitVector state(b, s);
                    std::map<Mask, Rational> two_step;
                    for (const auto& o1 : born(state, f).outcomes) {
                        for (const auto& o2 : born(o1.post_state, g).outcomes) {
                            two_step[o2.post_state.bits()] += o1.probability * o2.probability;
                        }
                    }
                    std::map<Mask, Rational> one_step;
                    for (const auto& o : born(state, fg).outcomes) {
                        one_step[o.post_state.bits()] = o.probability;
                    }
                    CHECK(two_step == one_step);
                }
            }
        }
    }
}
