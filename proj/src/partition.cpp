#include "setqm/partition.hpp"

#include <algorithm>
#include <sstream>

#include "disjoint_sets.hpp"
#include "scanner.hpp"
#include "setqm/error.hpp"

namespace setqm {

bool is_valid_label(std::string_view label) {
    return !label.empty() && std::all_of(label.begin(), label.end(), detail::Scanner::label_char);
}

Universe::Universe(std::vector<std::string> labels) {
    if (labels.empty()) {
        throw DomainError("universe must have at least one element");
    }
    auto data = std::make_shared<Data>();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!is_valid_label(labels[i])) {
            throw DomainError("invalid element label '" + labels[i] + "'");
        }
        if (!data->index.emplace(labels[i], i).second) {
            throw DomainError("duplicate element label '" + labels[i] + "'");
        }
    }
    data->labels = std::move(labels);
    data_ = std::move(data);
}

Universe Universe::range(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
    }
    return Universe(std::move(labels));
}

std::optional<std::size_t> Universe::find(std::string_view label) const {
    const auto it = data_->index.find(std::string(label));
    if (it == data_->index.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t Universe::index_of(std::string_view label) const {
    if (auto i = find(label)) {
        return *i;
    }
    throw DomainError("'" + std::string(label) + "' is not an element of " + to_string(*this));
}

// --- Partition -------------------------------------------------------------

Partition::Partition(Universe universe, std::vector<std::size_t> rgs)
    : universe_(std::move(universe)), block_of_(std::move(rgs)) {
    if (block_of_.size() != universe_.size()) {
        throw DomainError("block assignment does not match universe size");
    }
    for (std::size_t i = 0; i < block_of_.size(); ++i) {
        if (block_of_[i] >= blocks_.size()) {
            blocks_.resize(block_of_[i] + 1);
        }
        blocks_[block_of_[i]].push_back(i);
    }
}

Partition::Partition(Universe universe, const std::vector<Block>& blocks) : universe_(std::move(universe)) {
    const std::size_t n = universe_.size();
    std::vector<std::size_t> owner(n, n);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw DomainError("partition blocks must be nonempty");
        }
        for (std::size_t e : blocks[b]) {
            if (e >= n) {
                throw DomainError("block element out of range");
            }
            if (owner[e] != n) {
                throw DomainError("element '" + universe_.label(e) + "' appears in more than one block");
            }
            owner[e] = b;
        }
    }
    for (std::size_t e = 0; e < n; ++e) {
        if (owner[e] == n) {
            throw DomainError("element '" + universe_.label(e) + "' is not covered by any block");
        }
    }
    *this = from_keys(universe_, owner);
}

Partition Partition::indiscrete(Universe universe) {
    const std::size_t n = universe.size();
    return Partition(std::move(universe), std::vector<std::size_t>(n, 0));
}

Partition Partition::discrete(Universe universe) {
    std::vector<std::size_t> rgs(universe.size());
    for (std::size_t i = 0; i < rgs.size(); ++i) {
        rgs[i] = i;
    }
    return Partition(std::move(universe), std::move(rgs));
}

// --- Relation --------------------------------------------------------------

Relation::Relation(Universe universe)
    : universe_(std::move(universe)), bits_(universe_.size() * universe_.size(), 0) {}

Relation Relation::diagonal(Universe universe) {
    Relation r(std::move(universe));
    for (std::size_t i = 0; i < r.dimension(); ++i) {
        r.set(i, i);
    }
    return r;
}

Relation Relation::full(Universe universe) {
    Relation r(std::move(universe));
    std::fill(r.bits_.begin(), r.bits_.end(), 1);
    return r;
}

std::size_t Relation::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < dimension(); ++i) {
        for (std::size_t j = 0; j < dimension(); ++j) {
            if (contains(i, j)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

Relation Relation::complement() const {
    Relation r(*this);
    for (auto& b : r.bits_) {
        b = b ? 0 : 1;
    }
    return r;
}

bool Relation::subset_of(const Relation& other) const {
    if (!(universe_ == other.universe_)) {
        throw DomainError("relations over different universes");
    }
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k] && !other.bits_[k]) {
            return false;
        }
    }
    return true;
}

bool Relation::is_reflexive() const {
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (!contains(i, i)) {
            return false;
        }
    }
    return true;
}

bool Relation::is_irreflexive() const {
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (contains(i, i)) {
            return false;
        }
    }
    return true;
}

bool Relation::is_symmetric() const {
    for (std::size_t i = 0; i < dimension(); ++i) {
        for (std::size_t j = i + 1; j < dimension(); ++j) {
            if (contains(i, j) != contains(j, i)) {
                return false;
            }
        }
    }
    return true;
}

bool Relation::is_transitive() const {
    const std::size_t n = dimension();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!contains(i, j)) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (contains(j, k) && !contains(i, k)) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool Relation::is_partition_relation() const {
    if (!is_irreflexive() || !is_symmetric()) {
        return false;
    }
    const std::size_t n = dimension();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!contains(i, k)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (!contains(i, j) && !contains(j, k)) {
                    return false;
                }
            }
        }
    }
    return true;
}

namespace {

void require_same(const Universe& a, const Universe& b) {
    if (!(a == b)) {
        throw DomainError("universe mismatch: " + to_string(a) + " vs " + to_string(b));
    }
}

}  // namespace

Relation combine(BooleanOp op, const Relation& a, const Relation& b) {
    require_same(a.universe(), b.universe());
    Relation r(a.universe());
    for (std::size_t i = 0; i < r.dimension(); ++i) {
        for (std::size_t j = 0; j < r.dimension(); ++j) {
            r.set(i, j, op(a.contains(i, j), b.contains(i, j)));
        }
    }
    return r;
}

Relation relation_union(const Relation& a, const Relation& b) {
    return combine(BooleanOp{BooleanOp::kOr}, a, b);
}

Relation relation_intersection(const Relation& a, const Relation& b) {
    return combine(BooleanOp{BooleanOp::kAnd}, a, b);
}

// --- Lattice operations ----------------------------------------------------

Relation dit_set(const Partition& pi) {
    Relation r(pi.universe());
    const std::size_t n = r.dimension();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r.set(i, j, !pi.same_block(i, j));
        }
    }
    return r;
}

Relation indit_set(const Partition& pi) {
    return dit_set(pi).complement();
}

bool refines(const Partition& coarse, const Partition& fine) {
    require_same(coarse.universe(), fine.universe());
    for (const auto& block : fine.blocks()) {
        const std::size_t home = coarse.block_of(block.front());
        for (std::size_t e : block) {
            if (coarse.block_of(e) != home) {
                return false;
            }
        }
    }
    return true;
}

Partition join(const Partition& pi, const Partition& sigma) {
    require_same(pi.universe(), sigma.universe());
    std::vector<std::pair<std::size_t, std::size_t>> key(pi.universe().size());
    for (std::size_t i = 0; i < key.size(); ++i) {
        key[i] = {pi.block_of(i), sigma.block_of(i)};
    }
    return Partition::from_keys(pi.universe(), key);
}

Partition meet(const Partition& pi, const Partition& sigma) {
    require_same(pi.universe(), sigma.universe());
    detail::DisjointSets sets(pi.universe().size());
    for (const Partition* p : {&pi, &sigma}) {
        for (const auto& block : p->blocks()) {
            for (std::size_t e : block) {
                sets.unite(block.front(), e);
            }
        }
    }
    return Partition::from_keys(pi.universe(), sets.roots());
}

Partition implication(const Partition& sigma, const Partition& pi) {
    require_same(pi.universe(), sigma.universe());
    const std::size_t n = pi.universe().size();
    // Keys: (block, element) for discretized blocks, (block, n) otherwise.
    std::vector<std::pair<std::size_t, std::size_t>> key(n);
    for (const auto& block : pi.blocks()) {
        const std::size_t home = sigma.block_of(block.front());
        const bool inside = std::all_of(block.begin(), block.end(),
                                        [&](std::size_t e) { return sigma.block_of(e) == home; });
        for (std::size_t e : block) {
            key[e] = {pi.block_of(e), inside ? e : n};
        }
    }
    return Partition::from_keys(pi.universe(), key);
}

Relation closure(const Relation& r) {
    const std::size_t n = r.dimension();
    detail::DisjointSets sets(n);
    for (const auto& [i, j] : r.pairs()) {
        sets.unite(i, j);
    }
    const auto root = sets.roots();
    Relation out(r.universe());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.set(i, j, root[i] == root[j]);
        }
    }
    return out;
}

Relation interior(const Relation& r) {
    return closure(r.complement()).complement();
}

Partition partition_from_equivalence(const Relation& e) {
    if (!e.is_equivalence()) {
        throw DomainError("relation is not an equivalence relation");
    }
    const std::size_t n = e.dimension();
    std::vector<std::size_t> key(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t first = 0;
        while (!e.contains(i, first)) {
            ++first;
        }
        key[i] = first;
    }
    return Partition::from_keys(e.universe(), key);
}

Partition partition_from_dit_set(const Relation& d) {
    return partition_from_equivalence(d.complement());
}

Partition logical_op(BooleanOp op, const Partition& pi, const Partition& sigma) {
    return partition_from_dit_set(interior(combine(op, dit_set(pi), dit_set(sigma))));
}

// --- Enumeration -----------------------------------------------------------

void for_each_partition(const Universe& universe, const std::function<bool(const Partition&)>& visit) {
    const std::size_t n = universe.size();
    if (n > kMaxEnumerationSize) {
        throw DomainError("partition enumeration is limited to " + std::to_string(kMaxEnumerationSize) +
                          " elements, got " + std::to_string(n));
    }
    // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i)).
    std::vector<std::size_t> rgs(n, 0);
    std::vector<std::size_t> prefix_max(n, 0);
    while (true) {
        if (!visit(Partition::from_keys(universe, rgs))) {
            return;
        }
        std::size_t i = n - 1;
        while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++rgs[i];
        prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
        for (std::size_t k = i + 1; k < n; ++k) {
            rgs[k] = 0;
            prefix_max[k] = prefix_max[i];
        }
    }
}

std::vector<Partition> enumerate_partitions(const Universe& universe) {
    std::vector<Partition> out;
    for_each_partition(universe, [&](const Partition& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

// --- Text forms ------------------------------------------------------------

namespace {

std::vector<std::pair<std::string, std::size_t>> parse_label_list(detail::Scanner& in) {
    std::vector<std::pair<std::string, std::size_t>> out;
    in.expect('{');
    if (in.accept('}')) {
        return out;
    }
    do {
        in.skip_space();
        const std::size_t at = in.position();
        out.emplace_back(in.label(), at);
    } while (in.accept(','));
    in.expect('}');
    return out;
}

ElementSet resolve(const detail::Scanner& in, const std::vector<std::pair<std::string, std::size_t>>& labels,
                   const Universe& universe, std::vector<std::uint8_t>& used) {
    ElementSet out;
    for (const auto& [label, at] : labels) {
        const auto i = universe.find(label);
        if (!i) {
            in.fail_at("'" + label + "' is not an element of " + to_string(universe), at);
        }
        if (used[*i]) {
            in.fail_at("element '" + label + "' repeated", at);
        }
        used[*i] = 1;
        out.push_back(*i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::pair<std::string, std::size_t>>> parse_block_list(detail::Scanner& in) {
    std::vector<std::vector<std::pair<std::string, std::size_t>>> blocks;
    in.expect('{');
    if (in.accept('}')) {
        return blocks;
    }
    do {
        blocks.push_back(parse_label_list(in));
    } while (in.accept(','));
    in.expect('}');
    in.expect_end();
    return blocks;
}

}  // namespace

Universe parse_universe(std::string_view text) {
    detail::Scanner in(text);
    const auto labels = parse_label_list(in);
    in.expect_end();
    if (labels.empty()) {
        in.fail_at("universe must be nonempty", 0);
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        for (std::size_t m = 0; m < k; ++m) {
            if (labels[m].first == labels[k].first) {
                in.fail_at("duplicate element '" + labels[k].first + "'", labels[k].second);
            }
        }
        names.push_back(labels[k].first);
    }
    return Universe(std::move(names));
}

ElementSet parse_subset(std::string_view text, const Universe& universe) {
    detail::Scanner in(text);
    const auto labels = parse_label_list(in);
    in.expect_end();
    std::vector<std::uint8_t> used(universe.size(), 0);
    return resolve(in, labels, universe, used);
}

Partition parse_partition(std::string_view text, const Universe& universe) {
    detail::Scanner in(text);
    const auto raw = parse_block_list(in);
    std::vector<std::uint8_t> used(universe.size(), 0);
    std::vector<Partition::Block> blocks;
    for (const auto& block : raw) {
        if (block.empty()) {
            in.fail_at("empty block", 0);
        }
        blocks.push_back(resolve(in, block, universe, used));
    }
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (!used[i]) {
            in.fail_at("element '" + universe.label(i) + "' is not covered by any block", text.size());
        }
    }
    return Partition(universe, blocks);
}

Partition parse_partition(std::string_view text) {
    detail::Scanner probe(text);
    const auto raw = parse_block_list(probe);
    std::vector<std::string> names;
    for (const auto& block : raw) {
        for (const auto& [label, at] : block) {
            if (std::find(names.begin(), names.end(), label) == names.end()) {
                names.push_back(label);
            }
        }
    }
    if (names.empty()) {
        probe.fail_at("partition of an empty universe", 0);
    }
    return parse_partition(text, Universe(std::move(names)));
}

std::string to_string(const Universe& universe) {
    std::string out = "{";
    for (std::size_t i = 0; i < universe.size(); ++i) {
        out += (i ? "," : "") + universe.label(i);
    }
    return out + "}";
}

std::string format_subset(const ElementSet& subset, const Universe& universe) {
    std::string out = "{";
    for (std::size_t k = 0; k < subset.size(); ++k) {
        out += (k ? "," : "") + universe.label(subset[k]);
    }
    return out + "}";
}

std::string to_string(const Partition& pi) {
    std::string out = "{";
    for (std::size_t b = 0; b < pi.blocks().size(); ++b) {
        out += (b ? "," : "") + format_subset(pi.blocks()[b], pi.universe());
    }
    return out + "}";
}

std::string to_string(const Relation& r) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [i, j] : r.pairs()) {
        out << (first ? "" : ",") << "(" << r.universe().label(i) << "," << r.universe().label(j) << ")";
        first = false;
    }
    out << "}";
    return out.str();
}

}  // namespace setqm
