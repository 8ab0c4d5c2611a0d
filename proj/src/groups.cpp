#include "setqm/groups.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "disjoint_sets.hpp"
#include "scanner.hpp"
#include "setqm/error.hpp"

namespace setqm {

Permutation::Permutation(Universe universe, std::vector<std::size_t> mapping)
    : universe_(std::move(universe)), map_(std::move(mapping)) {
    if (map_.size() != universe_.size()) {
        throw DomainError("permutation size does not match its universe");
    }
    std::vector<bool> hit(map_.size(), false);
    for (std::size_t v : map_) {
        if (v >= map_.size() || hit[v]) {
            throw DomainError("mapping is not a bijection");
        }
        hit[v] = true;
    }
}

Permutation Permutation::identity(Universe universe) {
    std::vector<std::size_t> m(universe.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = i;
    }
    return Permutation(std::move(universe), std::move(m));
}

Permutation Permutation::after(const Permutation& other) const {
    if (!(universe_ == other.universe_)) {
        throw DomainError("composing permutations of different universes");
    }
    std::vector<std::size_t> m(map_.size());
    for (std::size_t u = 0; u < m.size(); ++u) {
        m[u] = map_[other.map_[u]];
    }
    return Permutation(universe_, std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> m(map_.size());
    for (std::size_t u = 0; u < m.size(); ++u) {
        m[map_[u]] = u;
    }
    return Permutation(universe_, std::move(m));
}

bool Permutation::is_identity() const {
    for (std::size_t u = 0; u < map_.size(); ++u) {
        if (map_[u] != u) {
            return false;
        }
    }
    return true;
}

Permutation parse_permutation(std::string_view text, const Universe& universe) {
    detail::Scanner in(text);
    std::vector<std::size_t> m(universe.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = i;
    }
    std::vector<bool> moved(universe.size(), false);
    auto element = [&]() {
        in.skip_space();
        const std::size_t at = in.position();
        const std::string label = in.label();
        const auto i = universe.find(label);
        if (!i) {
            in.fail_at("'" + label + "' is not an element of " + to_string(universe), at);
        }
        return std::make_pair(*i, at);
    };
    if (in.peek() == '(') {
        while (in.accept('(')) {
            if (in.accept(')')) {
                continue;
            }
            std::vector<std::pair<std::size_t, std::size_t>> cycle;
            do {
                cycle.push_back(element());
            } while (in.accept(','));
            in.expect(')');
            for (std::size_t k = 0; k < cycle.size(); ++k) {
                const auto [u, at] = cycle[k];
                if (moved[u]) {
                    in.fail_at("element appears in more than one cycle", at);
                }
                moved[u] = true;
                m[u] = cycle[(k + 1) % cycle.size()].first;
            }
        }
        in.expect_end();
    } else {
        do {
            const auto [u, at] = element();
            in.expect(':');
            const auto [v, at_v] = element();
            if (moved[u]) {
                in.fail_at("image given twice", at);
            }
            moved[u] = true;
            m[u] = v;
        } while (in.accept(','));
        in.expect_end();
    }
    try {
        return Permutation(universe, std::move(m));
    } catch (const DomainError& e) {
        in.fail_at(e.what(), 0);
    }
}

std::string to_string(const Permutation& p) {
    std::string out;
    std::vector<bool> seen(p.mapping().size(), false);
    for (std::size_t start = 0; start < seen.size(); ++start) {
        if (seen[start] || p(start) == start) {
            continue;
        }
        out += "(";
        for (std::size_t u = start; !seen[u]; u = p(u)) {
            seen[u] = true;
            out += (u == start ? "" : ",") + p.universe().label(u);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

// --- SetRepresentation -----------------------------------------------------

bool SetRepresentation::contains(const Permutation& p) const {
    return std::find(elements_.begin(), elements_.end(), p) != elements_.end();
}

SetRepresentation generate(const Universe& universe, const std::vector<Permutation>& generators) {
    for (const auto& g : generators) {
        if (!(g.universe() == universe)) {
            throw DomainError("generator acts on a different universe");
        }
    }
    const Permutation id = Permutation::identity(universe);
    std::set<std::vector<std::size_t>> seen{id.mapping()};
    std::vector<Permutation> elements{id};
    std::deque<Permutation> frontier{id};
    while (!frontier.empty()) {
        const Permutation x = frontier.front();
        frontier.pop_front();
        for (const auto& g : generators) {
            Permutation y = g.after(x);
            if (seen.insert(y.mapping()).second) {
                if (seen.size() > kMaxGroupOrder) {
                    throw DomainError("generated group exceeds " + std::to_string(kMaxGroupOrder) + " elements");
                }
                elements.push_back(y);
                frontier.push_back(std::move(y));
            }
        }
    }
    std::sort(elements.begin() + 1, elements.end());
    return SetRepresentation(universe, std::move(elements));
}

Partition orbits(const SetRepresentation& rep) {
    detail::DisjointSets sets(rep.universe().size());
    for (const auto& g : rep.elements()) {
        for (std::size_t u = 0; u < rep.universe().size(); ++u) {
            sets.unite(u, g(u));
        }
    }
    return Partition::from_keys(rep.universe(), sets.roots());
}

namespace {

void require_domain(const Attribute& f, const SetRepresentation& rep) {
    if (!(f.basis().labels() == rep.universe())) {
        throw DomainError("attribute is not defined on the represented set");
    }
}

}  // namespace

bool commutes_with(const Attribute& f, const SetRepresentation& rep) {
    require_domain(f, rep);
    for (const auto& g : rep.elements()) {
        for (std::size_t u = 0; u < rep.universe().size(); ++u) {
            if (f.value(g(u)) != f.value(u)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<OrbitValue> attribute_decomposition(const Attribute& f, const SetRepresentation& rep) {
    require_domain(f, rep);
    std::vector<OrbitValue> out;
    const Partition orb = orbits(rep);
    for (const auto& orbit : orb.blocks()) {
        const Rational& value = f.value(orbit.front());
        for (std::size_t u : orbit) {
            if (f.value(u) != value) {
                const auto& labels = rep.universe();
                throw SchurViolation("attribute does not commute with the group: f(" + labels.label(orbit.front()) +
                                         ") = " + to_string(value) + " but f(" + labels.label(u) +
                                         ") = " + to_string(f.value(u)) + " on orbit " +
                                         format_subset(orbit, labels),
                                     orbit, orbit.front(), u);
            }
        }
        out.push_back({orbit, value});
    }
    return out;
}

OrbitCsca csca_orbits(const std::vector<Attribute>& attributes, const SetRepresentation& rep) {
    if (attributes.empty()) {
        throw DomainError("CSCA check needs at least one attribute");
    }
    std::vector<std::vector<OrbitValue>> decompositions;
    for (const auto& f : attributes) {
        decompositions.push_back(attribute_decomposition(f, rep));
    }
    OrbitCsca result;
    const std::size_t orbit_count = decompositions.front().size();
    for (std::size_t o = 0; o < orbit_count; ++o) {
        std::vector<Rational> ket;
        for (const auto& d : decompositions) {
            ket.push_back(d[o].value);
        }
        result.kets.emplace_back(decompositions.front()[o].orbit, std::move(ket));
    }
    result.complete = true;
    for (std::size_t a = 0; a < orbit_count && result.complete; ++a) {
        for (std::size_t b = a + 1; b < orbit_count; ++b) {
            if (result.kets[a].second == result.kets[b].second) {
                result.complete = false;
                result.witness = {result.kets[a].first, result.kets[b].first};
                break;
            }
        }
    }
    return result;
}

// --- Abstract groups -------------------------------------------------------

GroupTable::GroupTable(Universe elements, std::vector<std::vector<std::size_t>> product)
    : elements_(std::move(elements)), product_(std::move(product)) {
    const std::size_t n = elements_.size();
    if (n > kMaxOrder) {
        throw DomainError("group tables are limited to order " + std::to_string(kMaxOrder));
    }
    if (product_.size() != n) {
        throw DomainError("multiplication table must be n x n");
    }
    for (const auto& row : product_) {
        if (row.size() != n) {
            throw DomainError("multiplication table must be n x n");
        }
        for (std::size_t v : row) {
            if (v >= n) {
                throw DomainError("multiplication table is not closed");
            }
        }
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool is_identity = true;
        for (std::size_t a = 0; a < n && is_identity; ++a) {
            is_identity = product_[e][a] == a && product_[a][e] == a;
        }
        if (is_identity) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) {
        throw DomainError("multiplication table has no identity");
    }
    for (std::size_t a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (std::size_t b = 0; b < n && !has_inverse; ++b) {
            has_inverse = product_[a][b] == identity_ && product_[b][a] == identity_;
        }
        if (!has_inverse) {
            throw DomainError("element '" + elements_.label(a) + "' has no inverse");
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (product_[product_[a][b]][c] != product_[a][product_[b][c]]) {
                    throw DomainError("multiplication table is not associative");
                }
            }
        }
    }
}

GroupTable GroupTable::cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            t[a][b] = (a + b) % n;
        }
    }
    return GroupTable(Universe::range(n), std::move(t));
}

namespace {

Permutation left_multiplication(const GroupTable& group, std::size_t g) {
    std::vector<std::size_t> m(group.order());
    for (std::size_t x = 0; x < m.size(); ++x) {
        m[x] = group.multiply(g, x);
    }
    return Permutation(group.elements(), std::move(m));
}

}  // namespace

SetRepresentation cayley(const GroupTable& group) {
    std::vector<Permutation> gens;
    for (std::size_t g = 0; g < group.order(); ++g) {
        gens.push_back(left_multiplication(group, g));
    }
    return generate(group.elements(), gens);
}

Partition subgroup_orbits(const GroupTable& group, const ElementSet& subgroup) {
    if (std::find(subgroup.begin(), subgroup.end(), group.identity()) == subgroup.end()) {
        throw DomainError("subset does not contain the identity, so it is not a subgroup");
    }
    for (std::size_t a : subgroup) {
        for (std::size_t b : subgroup) {
            const std::size_t ab = group.multiply(a, b);
            if (std::find(subgroup.begin(), subgroup.end(), ab) == subgroup.end()) {
                throw DomainError("subset is not closed under multiplication, so it is not a subgroup");
            }
        }
    }
    std::vector<Permutation> gens;
    for (std::size_t h : subgroup) {
        gens.push_back(left_multiplication(group, h));
    }
    return orbits(generate(group.elements(), gens));
}

}  // namespace setqm
