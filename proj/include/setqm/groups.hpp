#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "setqm/measure.hpp"
#include "setqm/partition.hpp"

namespace setqm {

/// Bijection of a universe onto itself.
class Permutation {
public:
    Permutation(Universe universe, std::vector<std::size_t> mapping);

    static Permutation identity(Universe universe);

    const Universe& universe() const { return universe_; }
    const std::vector<std::size_t>& mapping() const { return map_; }
    std::size_t operator()(std::size_t u) const { return map_.at(u); }

    /// (*this after other)(u) = (*this)(other(u)).
    Permutation after(const Permutation& other) const;
    Permutation inverse() const;
    bool is_identity() const;

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.map_ == b.map_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.map_ < b.map_; }

private:
    Universe universe_;
    std::vector<std::size_t> map_;
};

/// Cycle notation "(0,3)(1,4)(2,5)" or explicit images "0:3,3:0"; elements
/// not mentioned are fixed.
Permutation parse_permutation(std::string_view text, const Universe& universe);
/// Cycle notation; "()" for the identity.
std::string to_string(const Permutation& p);

inline constexpr std::size_t kMaxGroupOrder = 100000;

/// A finite group acting by permutations, held as its full element set
/// (identity first, the rest in lexicographic order of their images).
class SetRepresentation {
public:
    const Universe& universe() const { return universe_; }
    const std::vector<Permutation>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    bool contains(const Permutation& p) const;

private:
    SetRepresentation(Universe universe, std::vector<Permutation> elements)
        : universe_(std::move(universe)), elements_(std::move(elements)) {}

    Universe universe_;
    std::vector<Permutation> elements_;

    friend SetRepresentation generate(const Universe& universe, const std::vector<Permutation>& generators);
};

/// Closure of the generators under composition (inverses follow by
/// finiteness). Throws DomainError past kMaxGroupOrder elements.
SetRepresentation generate(const Universe& universe, const std::vector<Permutation>& generators);

/// u ~ u' iff some group element maps u to u'.
Partition orbits(const SetRepresentation& rep);

/// f(R_g(u)) = f(u) for every g and u.
bool commutes_with(const Attribute& f, const SetRepresentation& rep);

/// A non-commuting attribute: it takes different values at `first` and
/// `second`, both inside `orbit`.
class SchurViolation : public DomainError {
public:
    SchurViolation(const std::string& message, ElementSet orbit, std::size_t first, std::size_t second)
        : DomainError(message), orbit_(std::move(orbit)), first_(first), second_(second) {}
    const ElementSet& orbit() const { return orbit_; }
    std::size_t first() const { return first_; }
    std::size_t second() const { return second_; }

private:
    ElementSet orbit_;
    std::size_t first_;
    std::size_t second_;
};

struct OrbitValue {
    ElementSet orbit;
    Rational value;
};

/// f = sum over orbits of value * chi_orbit. Throws SchurViolation when f is
/// not constant on some orbit.
std::vector<OrbitValue> attribute_decomposition(const Attribute& f, const SetRepresentation& rep);

struct OrbitCsca {
    bool complete = false;
    /// Each orbit with its eigenvalue tuple (filled in both cases).
    std::vector<std::pair<ElementSet, std::vector<Rational>>> kets;
    /// When incomplete: two orbits sharing one tuple.
    std::pair<ElementSet, ElementSet> witness;
};

/// Whether the attributes' joint eigenvalue tuples tell the orbits apart.
/// Throws SchurViolation if some attribute does not commute with `rep`.
OrbitCsca csca_orbits(const std::vector<Attribute>& attributes, const SetRepresentation& rep);

/// Abstract finite group given by its multiplication table:
/// product(a, b) = index of a*b.
class GroupTable {
public:
    /// Checks closure, identity, inverses and (up to order 64) associativity.
    GroupTable(Universe elements, std::vector<std::vector<std::size_t>> product);

    /// Z_n with labels "0".."n-1".
    static GroupTable cyclic(std::size_t n);

    static constexpr std::size_t kMaxOrder = 64;

    const Universe& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    std::size_t multiply(std::size_t a, std::size_t b) const { return product_[a][b]; }
    std::size_t identity() const { return identity_; }

private:
    Universe elements_;
    std::vector<std::vector<std::size_t>> product_;
    std::size_t identity_ = 0;
};

/// Left multiplication R_g(x) = g x on the group's own elements.
SetRepresentation cayley(const GroupTable& group);

/// Orbits of the subgroup's Cayley action: the right cosets H g.
/// Throws DomainError if `subgroup` is not a subgroup.
Partition subgroup_orbits(const GroupTable& group, const ElementSet& subgroup);

}  // namespace setqm
