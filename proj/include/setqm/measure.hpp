#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setqm/gf2.hpp"
#include "setqm/partition.hpp"
#include "setqm/rational.hpp"

namespace setqm {

/// Real-valued (here: rational-valued) function on the elements of its
/// home basis.
class Attribute {
public:
    /// One value per basis element, in basis order.
    Attribute(Basis home, std::vector<Rational> values);

    /// Values keyed by basis label; must cover every label.
    static Attribute from_map(Basis home, const std::map<std::string, Rational>& values);
    /// chi_S on the basis S is written in.
    static Attribute characteristic(const BitVector& s);
    /// Value = block index; its partition is `pi` (on the basis labels).
    static Attribute from_partition(Basis home, const Partition& pi);
    /// Attribute on a plain set, using the standard basis named "U".
    static Attribute on_universe(const Universe& u, std::vector<Rational> values);

    const Basis& basis() const { return basis_; }
    const Rational& value(std::size_t i) const { return values_.at(i); }
    const std::vector<Rational>& values() const { return values_; }

    /// Distinct values, ascending.
    std::vector<Rational> eigenvalues() const;
    /// f^-1(r) as a vector of the home basis.
    BitVector preimage(const Rational& r) const;

private:
    Basis basis_;
    std::vector<Rational> values_;
};

/// "a:0,b:1,c:1" (labels from the basis, values rational).
Attribute parse_attribute(std::string_view text, const Basis& home);

struct Outcome {
    Rational value;
    Rational probability;
    BitVector post_state;
};

/// Outcomes with nonzero probability, ascending by value.
struct OutcomeDistribution {
    std::vector<Outcome> outcomes;

    const Outcome* find(const Rational& value) const;
    Rational total() const;
};

/// <T|S> = |T cap S| in the basis both are written in.
std::size_t bracket(const BitVector& t, const BitVector& s);

/// |S|, i.e. the squared basis-dependent norm in S's own basis.
std::size_t norm_squared(const BitVector& s);
/// Squared norm after rewriting S in `basis`.
std::size_t norm_squared(const BitVector& s, const Basis& basis);

/// Pr(r | S) = |f^-1(r) cap S| / |S| with post-state f^-1(r) cap S.
OutcomeDistribution born(const BitVector& s, const Attribute& f);

/// Post-state f^-1(r) cap S. Throws DomainError for a zero-probability outcome.
BitVector measure(const BitVector& s, const Attribute& f, const Rational& r);

/// Blocks are the nonempty preimages, on the labels of f's home basis.
Partition attribute_partition(const Attribute& f);

/// All projections f^-1(r) cap () and g^-1(s) cap (), rewritten in
/// `reference`, commute pairwise.
bool attributes_commute(const Attribute& f, const Attribute& g, const Basis& reference);

/// Simplified compatibility: f and g are defined on the same set of basis
/// vectors (possibly under different labels).
bool compatible_by_domain(const Attribute& f, const Attribute& g);

/// For commuting f and g, a basis of simultaneous eigenvectors built from the
/// images of the products of their projections. Empty if they do not commute.
std::optional<Basis> simultaneous_eigenbasis(const Attribute& f, const Attribute& g, const Basis& reference,
                                             std::string name = "W");

/// Outcome of a complete-set-of-compatible-attributes check.
struct CscaResult {
    bool complete = false;
    /// When complete: per basis element, its eigenvalue tuple.
    std::vector<std::vector<Rational>> kets;
    /// When incomplete: a block of the join with two or more elements.
    ElementSet witness;
};

/// Throws DomainError unless every attribute shares one home basis.
CscaResult csca_check(const std::vector<Attribute>& attributes);

/// "|0,1>"
std::string format_ket(const std::vector<Rational>& values);

}  // namespace setqm
