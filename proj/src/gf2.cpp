#include "setqm/gf2.hpp"

#include <algorithm>
#include <bit>
#include <string_view>

#include "scanner.hpp"

namespace setqm {

namespace {

void require_dimension(std::size_t n) {
    if (n > kMaxDimension) {
        throw DomainError("dimension " + std::to_string(n) + " exceeds the supported maximum of " +
                          std::to_string(kMaxDimension));
    }
}

Mask low_bits(std::size_t n) {
    return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

}  // namespace

// --- BitMatrix -------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_(rows, 0) {
    require_dimension(cols);
}

BitMatrix::BitMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0), row_(rows.size(), 0) {
    require_dimension(cols_);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DomainError("ragged matrix literal");
        }
        std::size_t j = 0;
        for (int v : r) {
            set(i, j++, (v & 1) != 0);
        }
        ++i;
    }
}

BitMatrix BitMatrix::identity(std::size_t n) {
    return diagonal(n, low_bits(n));
}

BitMatrix BitMatrix::diagonal(std::size_t n, Mask diag) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, ((diag >> i) & 1U) != 0);
    }
    return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, const std::vector<Mask>& columns) {
    require_dimension(rows);
    BitMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            m.set(i, j, ((columns[j] >> i) & 1U) != 0);
        }
    }
    return m;
}

BitMatrix BitMatrix::from_rows(std::size_t cols, const std::vector<Mask>& rows) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] & ~low_bits(cols)) {
            throw DomainError("row has bits beyond the column count");
        }
        m.row_[i] = rows[i];
    }
    return m;
}

void BitMatrix::set(std::size_t i, std::size_t j, bool v) {
    const Mask bit = Mask{1} << j;
    row_[i] = v ? (row_[i] | bit) : (row_[i] & ~bit);
}

Mask BitMatrix::column(std::size_t j) const {
    Mask c = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        c |= static_cast<Mask>(get(i, j)) << i;
    }
    return c;
}

Mask BitMatrix::apply(Mask v) const {
    Mask out = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        out |= static_cast<Mask>(std::popcount(row_[i] & v) & 1) << i;
    }
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t.set(j, i, get(i, j));
        }
    }
    return t;
}

std::size_t BitMatrix::rank() const {
    std::vector<Mask> r = row_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < r.size(); ++col) {
        const Mask bit = Mask{1} << col;
        auto pivot = std::find_if(r.begin() + static_cast<std::ptrdiff_t>(rank), r.end(),
                                  [bit](Mask x) { return (x & bit) != 0; });
        if (pivot == r.end()) {
            continue;
        }
        std::iter_swap(r.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k != rank && (r[k] & bit)) {
                r[k] ^= r[rank];
            }
        }
        ++rank;
    }
    return rank;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw DomainError("matrix shapes do not compose");
    }
    BitMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        Mask acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a.get(i, k)) {
                acc ^= b.row_[k];
            }
        }
        out.row_[i] = acc;
    }
    return out;
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw DomainError("matrix shapes differ");
    }
    BitMatrix out = a;
    for (std::size_t i = 0; i < a.rows_; ++i) {
        out.row_[i] ^= b.row_[i];
    }
    return out;
}

BitMatrix inverse_mod2(const BitMatrix& m) {
    if (!m.square()) {
        throw DomainError("only square matrices have inverses");
    }
    const std::size_t n = m.rows();
    // Gauss-Jordan on [m | I], both halves as row masks.
    std::vector<Mask> left(n), right(n);
    for (std::size_t i = 0; i < n; ++i) {
        left[i] = m.row(i);
        right[i] = Mask{1} << i;
    }
    for (std::size_t col = 0; col < n; ++col) {
        const Mask bit = Mask{1} << col;
        std::size_t pivot = col;
        while (pivot < n && !(left[pivot] & bit)) {
            ++pivot;
        }
        if (pivot == n) {
            throw DomainError("matrix is singular mod 2");
        }
        std::swap(left[col], left[pivot]);
        std::swap(right[col], right[pivot]);
        for (std::size_t k = 0; k < n; ++k) {
            if (k != col && (left[k] & bit)) {
                left[k] ^= left[col];
                right[k] ^= right[col];
            }
        }
    }
    BitMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv.set(i, j, ((right[i] >> j) & 1U) != 0);
        }
    }
    return inv;
}

std::string to_string(const BitMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out += j ? "," : "";
            out += m.get(i, j) ? '1' : '0';
        }
        out += "]";
    }
    return out + "]";
}

// --- Basis -----------------------------------------------------------------

Mask to_mask(const ElementSet& s) {
    Mask m = 0;
    for (std::size_t e : s) {
        require_dimension(e + 1);
        m |= Mask{1} << e;
    }
    return m;
}

ElementSet to_elements(Mask m, std::size_t n) {
    ElementSet out;
    for (std::size_t i = 0; i < n; ++i) {
        if ((m >> i) & 1U) {
            out.push_back(i);
        }
    }
    return out;
}

Basis Basis::standard(Universe reference, std::string name) {
    std::vector<Mask> vectors(reference.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        vectors[i] = Mask{1} << i;
    }
    return validate_basis(std::move(name), reference.labels(), reference, vectors);
}

bool Basis::same_vectors_as(const Basis& other) const {
    if (!(reference() == other.reference())) {
        return false;
    }
    std::vector<Mask> a = vectors(), b = other.vectors();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

bool operator==(const Basis& a, const Basis& b) {
    if (a.d_ == b.d_) {
        return true;
    }
    return a.name() == b.name() && a.labels() == b.labels() && a.reference() == b.reference() &&
           a.vectors() == b.vectors();
}

Basis validate_basis(std::string name, std::vector<std::string> labels, const Universe& reference,
                     const std::vector<Mask>& vectors) {
    const std::size_t n = reference.size();
    require_dimension(n);
    if (vectors.size() != n || labels.size() != n) {
        throw DomainError("a basis of a " + std::to_string(n) + "-element universe needs exactly " +
                          std::to_string(n) + " labelled vectors");
    }
    // Eliminate while tracking which inputs each reduced row combines.
    std::vector<Mask> pivots;
    std::vector<Mask> leads;
    std::vector<Mask> combos;  // bit k = input vector k
    for (std::size_t k = 0; k < n; ++k) {
        if (vectors[k] & ~low_bits(n)) {
            throw DomainError("basis vector outside the reference universe");
        }
        Mask v = vectors[k];
        Mask combo = Mask{1} << k;
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            if (v & leads[p]) {
                v ^= pivots[p];
                combo ^= combos[p];
            }
        }
        if (v == 0) {
            throw DependentVectorsError("vectors are linearly dependent mod 2", to_elements(combo, n));
        }
        // Keep pivots reduced against the new lead bit.
        const Mask lead = v & (~v + 1);
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            if (pivots[p] & lead) {
                pivots[p] ^= v;
                combos[p] ^= combo;
            }
        }
        pivots.push_back(v);
        leads.push_back(lead);
        combos.push_back(combo);
    }
    auto d = std::make_shared<Basis::Data>(Basis::Data{std::move(name), Universe(std::move(labels)), reference, vectors});
    return Basis(std::move(d));
}

Basis validate_basis(std::string name, std::vector<std::string> labels, const Universe& reference,
                     const std::vector<ElementSet>& vectors) {
    std::vector<Mask> masks;
    masks.reserve(vectors.size());
    for (const auto& s : vectors) {
        masks.push_back(to_mask(s));
    }
    return validate_basis(std::move(name), std::move(labels), reference, masks);
}

// --- BitVector -------------------------------------------------------------

BitVector::BitVector(Basis basis, Mask bits) : basis_(std::move(basis)), bits_(bits) {
    if (bits_ & ~low_bits(basis_.dimension())) {
        throw DomainError("vector has coordinates outside basis " + basis_.name());
    }
}

BitVector::BitVector(Basis basis, const ElementSet& elements) : BitVector(std::move(basis), to_mask(elements)) {}

std::size_t BitVector::count() const {
    return static_cast<std::size_t>(std::popcount(bits_));
}

Mask BitVector::reference_bits() const {
    Mask out = 0;
    for (std::size_t i = 0; i < basis_.dimension(); ++i) {
        if (contains(i)) {
            out ^= basis_.vector(i);
        }
    }
    return out;
}

void require_same_basis(const BitVector& s, const BitVector& t) {
    if (!(s.basis() == t.basis())) {
        throw DomainError("vectors are written in different bases (" + s.basis().name() + " vs " +
                          t.basis().name() + "); convert explicitly first");
    }
}

BitVector add(const BitVector& s, const BitVector& t) {
    require_same_basis(s, t);
    return BitVector(s.basis(), s.bits() ^ t.bits());
}

BitVector operator+(const BitVector& s, const BitVector& t) {
    return add(s, t);
}

namespace {

void require_common_reference(const Basis& a, const Basis& b) {
    if (!(a.reference() == b.reference())) {
        throw DomainError("bases " + a.name() + " and " + b.name() + " describe different spaces");
    }
}

}  // namespace

BitVector express(const BitVector& v, const Basis& target) {
    require_common_reference(v.basis(), target);
    return BitVector(target, inverse_mod2(target.matrix()).apply(v.reference_bits()));
}

BitVector parse_ket(std::string_view text, const Basis& basis) {
    return BitVector(basis, parse_subset(text, basis.labels()));
}

Basis parse_basis(std::string_view text, const Universe& reference) {
    detail::Scanner in(text);
    const std::string name = in.label();
    in.expect(':');
    std::vector<std::string> labels;
    std::vector<Mask> vectors;
    do {
        const std::size_t at = (in.skip_space(), in.position());
        std::string label = in.label();
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
            in.fail_at("label '" + label + "' repeated", at);
        }
        labels.push_back(std::move(label));
        in.expect('=');
        in.expect('{');
        Mask v = 0;
        if (!in.accept('}')) {
            do {
                const std::size_t el = (in.skip_space(), in.position());
                const std::string element = in.label();
                const auto i = reference.find(element);
                if (!i) {
                    in.fail_at("'" + element + "' is not an element of " + to_string(reference), el);
                }
                v |= Mask{1} << *i;
            } while (in.accept(','));
            in.expect('}');
        }
        vectors.push_back(v);
    } while (in.accept(';'));
    in.expect_end();
    if (vectors.size() != reference.size()) {
        in.fail_at("basis " + name + " needs " + std::to_string(reference.size()) + " vectors, got " +
                       std::to_string(vectors.size()),
                   text.size());
    }
    return validate_basis(name, std::move(labels), reference, vectors);
}

BitMatrix parse_bit_matrix(std::string_view text) {
    detail::Scanner in(text);
    std::vector<std::vector<int>> rows;
    in.expect('[');
    do {
        in.expect('[');
        std::vector<int> row;
        do {
            const char c = in.peek();
            if (c != '0' && c != '1') {
                in.fail("expected 0 or 1");
            }
            in.accept(c);
            row.push_back(c - '0');
        } while (in.accept(','));
        if (!rows.empty() && row.size() != rows.front().size()) {
            in.fail("row length differs from the first row");
        }
        in.expect(']');
        rows.push_back(std::move(row));
    } while (in.accept(','));
    in.expect(']');
    in.expect_end();
    if (rows.size() > kMaxDimension || rows.front().size() > kMaxDimension) {
        throw DomainError("matrix exceeds " + std::to_string(kMaxDimension) + " rows or columns");
    }
    BitMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m.set(i, j, rows[i][j] != 0);
        }
    }
    return m;
}

std::string to_string(const BitVector& v) {
    return format_subset(v.elements(), v.basis().labels());
}

BitMatrix conversion_matrix(const Basis& from, const Basis& to) {
    require_common_reference(from, to);
    return inverse_mod2(to.matrix()) * from.matrix();
}

BitMatrix projection_matrix(const BitVector& s) {
    return BitMatrix::diagonal(s.basis().dimension(), s.bits());
}

BitMatrix change_basis(const BitMatrix& m, const Basis& from, const Basis& to) {
    if (!m.square() || m.rows() != from.dimension()) {
        throw DomainError("matrix dimension does not match basis " + from.name());
    }
    return conversion_matrix(from, to) * m * conversion_matrix(to, from);
}

CommutatorCheck commutes(const BitMatrix& m, const BitMatrix& n) {
    if (!m.square() || m.rows() != n.rows() || m.cols() != n.cols()) {
        throw DomainError("commutator needs square matrices of the same shape");
    }
    CommutatorCheck out{false, m * n, n * m};
    out.commute = out.mn == out.nm;
    return out;
}

std::vector<std::vector<Mask>> orbit_decomposition(const BitMatrix& a) {
    if (!a.square()) {
        throw DomainError("dynamics must be square");
    }
    const std::size_t n = a.rows();
    if (n > 20) {
        throw DomainError("orbit decomposition enumerates 2^n vectors; n <= 20 supported");
    }
    if (a.rank() != n) {
        throw DomainError("dynamics matrix is singular mod 2");
    }
    const Mask count = Mask{1} << n;
    std::vector<std::uint8_t> seen(count, 0);
    std::vector<std::vector<Mask>> cycles;
    for (Mask start = 1; start < count; ++start) {
        if (seen[start]) {
            continue;
        }
        std::vector<Mask> cycle;
        for (Mask v = start; !seen[v]; v = a.apply(v)) {
            seen[v] = 1;
            cycle.push_back(v);
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

Basis image_basis(const BitMatrix& a, const Basis& basis, std::string name) {
    if (!a.square() || a.rows() != basis.dimension()) {
        throw DomainError("dynamics dimension does not match basis");
    }
    std::vector<Mask> images;
    for (Mask v : basis.vectors()) {
        images.push_back(a.apply(v));
    }
    std::vector<std::string> labels;
    for (const auto& l : basis.labels().labels()) {
        labels.push_back(l + "'");
    }
    return validate_basis(std::move(name), std::move(labels), basis.reference(), images);
}

KetTable ket_table(const std::vector<Basis>& bases) {
    if (bases.empty()) {
        throw DomainError("ket table needs at least one basis");
    }
    for (const auto& b : bases) {
        require_common_reference(bases.front(), b);
    }
    const std::size_t n = bases.front().dimension();
    if (n > 20) {
        throw DomainError("ket table enumerates 2^n rows; n <= 20 supported");
    }
    KetTable table{bases, {}};
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        const BitVector first(bases.front(), m);
        std::vector<BitVector> row;
        row.reserve(bases.size());
        for (const auto& b : bases) {
            row.push_back(express(first, b));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace setqm
