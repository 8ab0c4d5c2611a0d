#include "setqm/entangle.hpp"

#include <bit>

#include "scanner.hpp"
#include "setqm/error.hpp"

namespace setqm {

ProductSubset::ProductSubset(Basis left, Basis right)
    : left_(std::move(left)), right_(std::move(right)), rows_(left_.dimension(), 0) {}

ProductSubset::ProductSubset(Basis left, Basis right, std::vector<Mask> rows)
    : left_(std::move(left)), right_(std::move(right)), rows_(std::move(rows)) {
    if (rows_.size() != left_.dimension()) {
        throw DomainError("product subset needs one row per left-hand element");
    }
    const Mask allowed = right_.dimension() >= 64 ? ~Mask{0} : (Mask{1} << right_.dimension()) - 1;
    for (Mask r : rows_) {
        if (r & ~allowed) {
            throw DomainError("product subset row exceeds the right-hand factor");
        }
    }
}

void ProductSubset::set(std::size_t i, std::size_t j, bool present) {
    if (j >= right_size()) {
        throw DomainError("right-hand index out of range");
    }
    const Mask bit = Mask{1} << j;
    rows_.at(i) = present ? (rows_.at(i) | bit) : (rows_.at(i) & ~bit);
}

std::size_t ProductSubset::count() const {
    std::size_t n = 0;
    for (Mask r : rows_) {
        n += static_cast<std::size_t>(std::popcount(r));
    }
    return n;
}

std::vector<std::pair<std::size_t, std::size_t>> ProductSubset::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < left_size(); ++i) {
        for (std::size_t j = 0; j < right_size(); ++j) {
            if (contains(i, j)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

ProductSubset parse_product_subset(std::string_view text, const Basis& left, const Basis& right) {
    detail::Scanner in(text);
    ProductSubset s(left, right);
    in.expect('{');
    if (!in.accept('}')) {
        do {
            in.expect('(');
            in.skip_space();
            const std::size_t at_x = in.position();
            const std::string x = in.label();
            in.expect(',');
            in.skip_space();
            const std::size_t at_y = in.position();
            const std::string y = in.label();
            in.expect(')');
            const auto i = left.labels().find(x);
            if (!i) {
                in.fail_at("'" + x + "' is not an element of the left factor", at_x);
            }
            const auto j = right.labels().find(y);
            if (!j) {
                in.fail_at("'" + y + "' is not an element of the right factor", at_y);
            }
            s.set(*i, *j);
        } while (in.accept(','));
        in.expect('}');
    }
    in.expect_end();
    return s;
}

std::string to_string(const ProductSubset& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [i, j] : s.pairs()) {
        out += first ? "(" : ",(";
        out += s.left().labels().label(i) + "," + s.right().labels().label(j) + ")";
        first = false;
    }
    return out + "}";
}

std::pair<BitVector, BitVector> supports(const ProductSubset& s) {
    Mask left = 0;
    Mask right = 0;
    for (std::size_t i = 0; i < s.left_size(); ++i) {
        if (s.row(i)) {
            left |= Mask{1} << i;
            right |= s.row(i);
        }
    }
    return {BitVector(s.left(), left), BitVector(s.right(), right)};
}

bool is_separated(const ProductSubset& s) {
    const auto [left, right] = supports(s);
    for (std::size_t i = 0; i < s.left_size(); ++i) {
        const Mask expected = left.contains(i) ? right.bits() : Mask{0};
        if (s.row(i) != expected) {
            return false;
        }
    }
    return true;
}

bool is_bijection_graph(const ProductSubset& s) {
    if (s.left_size() != s.right_size()) {
        return false;
    }
    Mask columns = 0;
    for (Mask r : s.rows()) {
        if (std::popcount(r) != 1 || (columns & r)) {
            return false;
        }
        columns |= r;
    }
    return true;
}

ProductSubset express(const ProductSubset& s, const Basis& left, const Basis& right) {
    const BitMatrix cl = conversion_matrix(s.left(), left);
    const BitMatrix cr = conversion_matrix(s.right(), right);
    const BitMatrix m = cl * BitMatrix::from_rows(s.right_size(), s.rows()) * cr.transpose();
    std::vector<Mask> rows(m.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = m.row(i);
    }
    return ProductSubset(left, right, std::move(rows));
}

// --- Distributions ---------------------------------------------------------

JointDistribution::JointDistribution(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), p_(std::move(entries)) {
    if (p_.size() != rows_ * cols_) {
        throw DomainError("joint distribution has the wrong number of entries");
    }
    ProbabilityVector check(p_);  // validates sign and total
}

JointDistribution equiprobable_joint(const ProductSubset& s) {
    const std::size_t n = s.count();
    if (n == 0) {
        throw DomainError("equiprobable distribution on the empty subset");
    }
    const Rational each(1, static_cast<long>(n));
    std::vector<Rational> p(s.left_size() * s.right_size(), Rational(0));
    for (const auto& [i, j] : s.pairs()) {
        p[i * s.right_size() + j] = each;
    }
    return JointDistribution(s.left_size(), s.right_size(), std::move(p));
}

std::pair<ProbabilityVector, ProbabilityVector> marginals(const JointDistribution& j) {
    std::vector<Rational> x(j.rows(), Rational(0));
    std::vector<Rational> y(j.cols(), Rational(0));
    for (std::size_t r = 0; r < j.rows(); ++r) {
        for (std::size_t c = 0; c < j.cols(); ++c) {
            x[r] += j.at(r, c);
            y[c] += j.at(r, c);
        }
    }
    return {ProbabilityVector(std::move(x)), ProbabilityVector(std::move(y))};
}

JointDistribution product_of_marginals(const JointDistribution& j) {
    const auto [x, y] = marginals(j);
    std::vector<Rational> p;
    p.reserve(j.rows() * j.cols());
    for (std::size_t r = 0; r < j.rows(); ++r) {
        for (std::size_t c = 0; c < j.cols(); ++c) {
            p.push_back(x[r] * y[c]);
        }
    }
    return JointDistribution(j.rows(), j.cols(), std::move(p));
}

bool is_correlated(const JointDistribution& j) {
    const auto product = product_of_marginals(j);
    for (std::size_t r = 0; r < j.rows(); ++r) {
        for (std::size_t c = 0; c < j.cols(); ++c) {
            if (j.at(r, c) != product.at(r, c)) {
                return true;
            }
        }
    }
    return false;
}

Rational entanglement_measure(const ProductSubset& s) {
    const auto joint = equiprobable_joint(s);
    return logical_divergence(joint.flattened(), product_of_marginals(joint).flattened());
}

ProductKetTable product_ket_table(const std::vector<Basis>& left, const std::vector<Basis>& right) {
    if (left.empty() || left.size() != right.size()) {
        throw DomainError("product ket table needs matching, nonempty lists of left and right bases");
    }
    for (std::size_t k = 0; k < left.size(); ++k) {
        if (left[k].dimension() != left.front().dimension() || right[k].dimension() != right.front().dimension()) {
            throw DomainError("product bases have mismatched dimensions");
        }
    }
    const std::size_t n = left.front().dimension();
    const std::size_t m = right.front().dimension();
    if (n * m > 20) {
        throw DomainError("product ket table enumerates 2^(|X||Y|) rows; |X||Y| <= 20 supported");
    }
    ProductKetTable table;
    for (std::size_t k = 0; k < left.size(); ++k) {
        table.bases.emplace_back(left[k], right[k]);
    }
    const Mask row_mask = (Mask{1} << m) - 1;
    for (Mask code = 0; code < (Mask{1} << (n * m)); ++code) {
        std::vector<Mask> rows(n);
        for (std::size_t i = 0; i < n; ++i) {
            rows[i] = (code >> (i * m)) & row_mask;
        }
        const ProductSubset first(left.front(), right.front(), std::move(rows));
        std::vector<ProductSubset> row;
        for (const auto& [l, r] : table.bases) {
            row.push_back(express(first, l, r));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace setqm
