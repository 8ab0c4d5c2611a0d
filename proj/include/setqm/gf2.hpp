#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "setqm/error.hpp"
#include "setqm/partition.hpp"

namespace setqm {

/// Vectors of Z_2^n are stored as bit masks (bit i = coordinate i), which
/// caps the dimension.
inline constexpr std::size_t kMaxDimension = 64;

using Mask = std::uint64_t;

/// Dense matrix over the two-element field. Column-vector convention:
/// M * v, with column j the image of the j-th basis vector.
class BitMatrix {
public:
    BitMatrix(std::size_t rows, std::size_t cols);
    /// Rows of 0/1 entries.
    BitMatrix(std::initializer_list<std::initializer_list<int>> rows);

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_columns(std::size_t rows, const std::vector<Mask>& columns);
    static BitMatrix diagonal(std::size_t n, Mask diag);
    static BitMatrix from_rows(std::size_t cols, const std::vector<Mask>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    bool get(std::size_t i, std::size_t j) const { return ((row_[i] >> j) & 1U) != 0; }
    void set(std::size_t i, std::size_t j, bool v);
    Mask row(std::size_t i) const { return row_[i]; }
    Mask column(std::size_t j) const;

    /// M * v for a column vector given as a mask.
    Mask apply(Mask v) const;
    BitMatrix transpose() const;
    std::size_t rank() const;

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
    friend BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Mask> row_;
};

/// Throws DomainError if `m` is singular or not square.
BitMatrix inverse_mod2(const BitMatrix& m);

/// "[[1,0,1],[1,1,1],[0,1,1]]"
std::string to_string(const BitMatrix& m);

/// Rejection of a dependent vector list. `witness` lists indices of input
/// vectors whose sum is zero.
class DependentVectorsError : public DomainError {
public:
    DependentVectorsError(const std::string& message, std::vector<std::size_t> witness)
        : DomainError(message), witness_(std::move(witness)) {}
    const std::vector<std::size_t>& witness() const { return witness_; }

private:
    std::vector<std::size_t> witness_;
};

/// Named basis of Z_2^n. Its vectors are expressed in the coordinates of a
/// reference universe (the standard singleton basis); its own elements
/// carry labels such as a', b', c'.
class Basis {
public:
    /// The singleton basis of `reference`, labelled by the reference labels.
    static Basis standard(Universe reference, std::string name = "U");

    const std::string& name() const { return d_->name; }
    /// Labels of the basis elements, as a universe.
    const Universe& labels() const { return d_->labels; }
    const Universe& reference() const { return d_->reference; }
    std::size_t dimension() const { return d_->vectors.size(); }
    /// The i-th basis vector in reference coordinates.
    Mask vector(std::size_t i) const { return d_->vectors.at(i); }
    const std::vector<Mask>& vectors() const { return d_->vectors; }

    /// Columns are the basis vectors in reference coordinates.
    BitMatrix matrix() const { return BitMatrix::from_columns(dimension(), d_->vectors); }

    /// Same set of vectors, ignoring labels and order.
    bool same_vectors_as(const Basis& other) const;

    friend bool operator==(const Basis& a, const Basis& b);

private:
    struct Data {
        std::string name;
        Universe labels;
        Universe reference;
        std::vector<Mask> vectors;
    };
    explicit Basis(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;

    friend Basis validate_basis(std::string name, std::vector<std::string> labels, const Universe& reference,
                                const std::vector<Mask>& vectors);
};

/// Accepts n linearly independent vectors of Z_2^n (n = |reference|).
/// Throws DependentVectorsError with a zero-sum combination otherwise.
Basis validate_basis(std::string name, std::vector<std::string> labels, const Universe& reference,
                     const std::vector<Mask>& vectors);
/// Same, with the vectors as subsets of the reference universe.
Basis validate_basis(std::string name, std::vector<std::string> labels, const Universe& reference,
                     const std::vector<ElementSet>& vectors);

Mask to_mask(const ElementSet& s);
ElementSet to_elements(Mask m, std::size_t n);

/// A subset of a basis' element labels, i.e. a vector of Z_2^n written in
/// that basis. Operations on vectors from different bases are rejected.
class BitVector {
public:
    BitVector(Basis basis, Mask bits);
    BitVector(Basis basis, const ElementSet& elements);

    const Basis& basis() const { return basis_; }
    Mask bits() const { return bits_; }
    bool contains(std::size_t i) const { return ((bits_ >> i) & 1U) != 0; }
    std::size_t count() const;
    bool empty() const { return bits_ == 0; }
    ElementSet elements() const { return to_elements(bits_, basis_.dimension()); }

    /// Coordinates of the same abstract vector in the reference universe.
    Mask reference_bits() const;

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    Basis basis_;
    Mask bits_;
};

/// Throws DomainError unless both vectors are written in the same basis.
void require_same_basis(const BitVector& s, const BitVector& t);

/// Symmetric difference.
BitVector add(const BitVector& s, const BitVector& t);
BitVector operator+(const BitVector& s, const BitVector& t);

/// The same abstract vector rewritten in `target`.
BitVector express(const BitVector& v, const Basis& target);

BitVector parse_ket(std::string_view text, const Basis& basis);

/// "U':a'={a,b};b'={b,c};c'={a,b,c}": a name, then each label with its
/// vector as a subset of `reference`.
Basis parse_basis(std::string_view text, const Universe& reference);

/// "[[1,0,1],[1,1,1],[0,1,1]]"
BitMatrix parse_bit_matrix(std::string_view text);
/// "{a',b'}"
std::string to_string(const BitVector& v);

/// C_{to<-from}: column j holds the `to`-coordinates of from-vector j.
BitMatrix conversion_matrix(const Basis& from, const Basis& to);

/// Matrix of S cap () in S's own basis: diagonal selecting S's coordinates.
BitMatrix projection_matrix(const BitVector& s);

/// C_{to<-from} * m * C_{from<-to}.
BitMatrix change_basis(const BitMatrix& m, const Basis& from, const Basis& to);

struct CommutatorCheck {
    bool commute;
    BitMatrix mn;  // m * n
    BitMatrix nm;  // n * m
};

CommutatorCheck commutes(const BitMatrix& m, const BitMatrix& n);

/// Cycles of a non-singular map on the 2^n - 1 nonzero vectors, each
/// starting at its smallest mask, ordered by that mask.
std::vector<std::vector<Mask>> orbit_decomposition(const BitMatrix& a);

/// Basis whose i-th vector is a applied to the i-th vector of `basis`.
Basis image_basis(const BitMatrix& a, const Basis& basis, std::string name);

/// One row per vector of Z_2^n; entry k is that vector written in bases[k].
struct KetTable {
    std::vector<Basis> bases;
    std::vector<std::vector<BitVector>> rows;
};

/// Rows are ordered by the vector's mask in the first basis.
KetTable ket_table(const std::vector<Basis>& bases);

}  // namespace setqm
