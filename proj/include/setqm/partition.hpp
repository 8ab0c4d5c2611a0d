#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace setqm {

/// Finite, ordered set of distinct element labels. Element i is the i-th
/// label; this ordering fixes every matrix index in the library.
///
/// Labels match `[A-Za-z0-9_']+`. Copies share the label storage.
class Universe {
public:
    explicit Universe(std::vector<std::string> labels);

    /// Labels "0", "1", ..., "n-1".
    static Universe range(std::size_t n);

    std::size_t size() const { return data_->labels.size(); }
    const std::string& label(std::size_t i) const { return data_->labels.at(i); }
    const std::vector<std::string>& labels() const { return data_->labels; }

    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws DomainError for unknown labels.
    std::size_t index_of(std::string_view label) const;

    friend bool operator==(const Universe& a, const Universe& b) {
        return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
    }

private:
    struct Data {
        std::vector<std::string> labels;
        std::unordered_map<std::string, std::size_t> index;
    };
    std::shared_ptr<const Data> data_;
};

bool is_valid_label(std::string_view label);

/// Sorted, duplicate-free element indices.
using ElementSet = std::vector<std::size_t>;

/// A partition of a Universe. Stored canonically: blocks are sorted
/// internally and ordered by least element, so two partitions are equal
/// exactly when they have the same blocks.
class Partition {
public:
    using Block = ElementSet;

    /// Validates disjointness, coverage and non-emptiness.
    Partition(Universe universe, const std::vector<Block>& blocks);

    /// `key[i]` is any tag for element i; elements with equal tags share a block.
    template <typename Key>
    static Partition from_keys(Universe universe, const std::vector<Key>& key);

    /// The one-block partition, bottom of the refinement order.
    static Partition indiscrete(Universe universe);
    /// All singletons, top of the refinement order.
    static Partition discrete(Universe universe);

    const Universe& universe() const { return universe_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    std::size_t block_of(std::size_t element) const { return block_of_.at(element); }
    bool same_block(std::size_t i, std::size_t j) const { return block_of_.at(i) == block_of_.at(j); }

    bool is_discrete() const { return blocks_.size() == universe_.size(); }
    bool is_indiscrete() const { return blocks_.size() == 1; }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.block_of_ == b.block_of_ && a.universe_ == b.universe_;
    }

private:
    Partition(Universe universe, std::vector<std::size_t> restricted_growth);

    Universe universe_;
    std::vector<std::size_t> block_of_;  // restricted growth string
    std::vector<Block> blocks_;
};

template <typename Key>
Partition Partition::from_keys(Universe universe, const std::vector<Key>& key) {
    std::vector<std::size_t> rgs(key.size());
    std::vector<const Key*> seen;
    for (std::size_t i = 0; i < key.size(); ++i) {
        std::size_t b = 0;
        while (b < seen.size() && !(*seen[b] == key[i])) {
            ++b;
        }
        if (b == seen.size()) {
            seen.push_back(&key[i]);
        }
        rgs[i] = b;
    }
    return Partition(std::move(universe), std::move(rgs));
}

/// Subset of U x U as a dense n x n boolean matrix.
class Relation {
public:
    explicit Relation(Universe universe);

    static Relation diagonal(Universe universe);
    static Relation full(Universe universe);

    const Universe& universe() const { return universe_; }
    std::size_t dimension() const { return universe_.size(); }

    bool contains(std::size_t i, std::size_t j) const { return bits_[i * dimension() + j] != 0; }
    void set(std::size_t i, std::size_t j, bool present = true) { bits_[i * dimension() + j] = present; }

    std::size_t count() const;
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

    Relation complement() const;
    bool subset_of(const Relation& other) const;

    bool is_reflexive() const;
    bool is_irreflexive() const;
    bool is_symmetric() const;
    bool is_transitive() const;
    bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }
    /// Irreflexive, symmetric and anti-transitive: the complement of an
    /// equivalence relation.
    bool is_partition_relation() const;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.bits_ == b.bits_ && a.universe_ == b.universe_;
    }

private:
    Universe universe_;
    std::vector<std::uint8_t> bits_;
};

/// One of the sixteen binary boolean functions, as a truth table:
/// bit (2a + b) holds op(a, b).
struct BooleanOp {
    std::uint8_t table;

    bool operator()(bool a, bool b) const { return ((table >> ((a ? 2 : 0) + (b ? 1 : 0))) & 1U) != 0; }

    static constexpr std::uint8_t kOr = 0b1110;
    static constexpr std::uint8_t kAnd = 0b1000;
    static constexpr std::uint8_t kImplies = 0b1011;  // not a, or b
};

Relation combine(BooleanOp op, const Relation& a, const Relation& b);
Relation relation_union(const Relation& a, const Relation& b);
Relation relation_intersection(const Relation& a, const Relation& b);

/// Ordered pairs in distinct blocks.
Relation dit_set(const Partition& pi);
/// Ordered pairs in a common block (the equivalence relation of `pi`).
Relation indit_set(const Partition& pi);

/// True when `fine` refines `coarse` (coarse precedes fine in the lattice):
/// every block of `fine` lies inside a block of `coarse`.
bool refines(const Partition& coarse, const Partition& fine);

/// Blocks are the nonempty pairwise intersections.
Partition join(const Partition& pi, const Partition& sigma);
/// Connected components of the "shares a block in either" graph.
Partition meet(const Partition& pi, const Partition& sigma);
/// `pi` with every block contained in some block of `sigma` discretized.
Partition implication(const Partition& sigma, const Partition& pi);

/// Reflexive-symmetric-transitive closure.
Relation closure(const Relation& r);
/// Largest partition relation inside `r`.
Relation interior(const Relation& r);

/// The partition whose indit set is the equivalence relation `e`.
Partition partition_from_equivalence(const Relation& e);
/// The partition whose dit set is the partition relation `d`.
Partition partition_from_dit_set(const Relation& d);

/// Partition with dit set interior(op(dit(pi), dit(sigma))).
Partition logical_op(BooleanOp op, const Partition& pi, const Partition& sigma);

inline constexpr std::size_t kMaxEnumerationSize = 12;

/// Visits every partition of `universe` once, in restricted-growth-string
/// order. Returning false from the visitor stops the walk.
void for_each_partition(const Universe& universe, const std::function<bool(const Partition&)>& visit);
std::vector<Partition> enumerate_partitions(const Universe& universe);

// Text forms: universe "{a,b,c}", subset "{a,c}", partition "{{a},{b,c}}".
Universe parse_universe(std::string_view text);
ElementSet parse_subset(std::string_view text, const Universe& universe);
Partition parse_partition(std::string_view text, const Universe& universe);
/// Universe taken from the labels in order of first appearance.
Partition parse_partition(std::string_view text);

std::string to_string(const Universe& universe);
std::string format_subset(const ElementSet& subset, const Universe& universe);
std::string to_string(const Partition& pi);
std::string to_string(const Relation& r);

}  // namespace setqm
