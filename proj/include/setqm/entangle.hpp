#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "setqm/gf2.hpp"
#include "setqm/loginfo.hpp"

namespace setqm {

/// Subset of X x Y, with each factor written in a basis. Row i is the set of
/// right-hand elements paired with left-hand element i.
class ProductSubset {
public:
    ProductSubset(Basis left, Basis right);
    ProductSubset(Basis left, Basis right, std::vector<Mask> rows);

    const Basis& left() const { return left_; }
    const Basis& right() const { return right_; }
    std::size_t left_size() const { return left_.dimension(); }
    std::size_t right_size() const { return right_.dimension(); }

    const std::vector<Mask>& rows() const { return rows_; }
    Mask row(std::size_t i) const { return rows_.at(i); }
    bool contains(std::size_t i, std::size_t j) const { return ((rows_.at(i) >> j) & 1U) != 0; }
    void set(std::size_t i, std::size_t j, bool present = true);

    std::size_t count() const;
    bool empty() const { return count() == 0; }
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

    friend bool operator==(const ProductSubset&, const ProductSubset&) = default;

private:
    Basis left_;
    Basis right_;
    std::vector<Mask> rows_;
};

/// "{(a,a),(b,b)}"
ProductSubset parse_product_subset(std::string_view text, const Basis& left, const Basis& right);
std::string to_string(const ProductSubset& s);

/// Projections of S onto each factor.
std::pair<BitVector, BitVector> supports(const ProductSubset& s);

/// S equals the product of its supports.
bool is_separated(const ProductSubset& s);

/// Every row and every column holds exactly one pair.
bool is_bijection_graph(const ProductSubset& s);

/// The same subset written in the product basis left x right, by converting
/// each factor and extending linearly (C_L S C_R^T over Z_2).
ProductSubset express(const ProductSubset& s, const Basis& left, const Basis& right);

/// |X| x |Y| matrix of exact probabilities summing to 1.
class JointDistribution {
public:
    JointDistribution(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rational& at(std::size_t i, std::size_t j) const { return p_[i * cols_ + j]; }
    /// Row-major.
    ProbabilityVector flattened() const { return ProbabilityVector(p_); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> p_;
};

/// Uniform on S, zero elsewhere. Throws DomainError for empty S.
JointDistribution equiprobable_joint(const ProductSubset& s);

std::pair<ProbabilityVector, ProbabilityVector> marginals(const JointDistribution& j);

/// Pr(x) Pr(y).
JointDistribution product_of_marginals(const JointDistribution& j);

/// Some cell differs from the product of its marginals.
bool is_correlated(const JointDistribution& j);

/// Logical divergence between the equiprobable joint on S and the product
/// of its marginals.
Rational entanglement_measure(const ProductSubset& s);

struct ProductKetTable {
    std::vector<std::pair<Basis, Basis>> bases;
    std::vector<std::vector<ProductSubset>> rows;
};

/// Every subset of X x Y written in each product basis left[k] x right[k].
/// Rows are ordered by the subset's row masks in the first product basis.
ProductKetTable product_ket_table(const std::vector<Basis>& left, const std::vector<Basis>& right);

}  // namespace setqm
