#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "setqm/partition.hpp"
#include "setqm/rational.hpp"

namespace setqm {

/// Exact finite probability distribution: nonnegative, sums to exactly 1.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<Rational> entries);

    static ProbabilityVector uniform(std::size_t n);
    static ProbabilityVector point_mass(std::size_t n, std::size_t at);

    std::size_t size() const { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Rational>& entries() const { return entries_; }

    friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

private:
    std::vector<Rational> entries_;
};

/// 1 - sum over blocks of p_B^2: the probability that two independent
/// draws from `p` land in different blocks.
Rational logical_entropy(const Partition& pi, const ProbabilityVector& p);
/// Logical entropy under the uniform distribution.
Rational logical_entropy(const Partition& pi);
/// 1 - sum p_i^2.
Rational logical_entropy(const ProbabilityVector& p);

/// Logical divergence sum (p_i - q_i)^2. Zero iff p == q.
Rational logical_divergence(const ProbabilityVector& p, const ProbabilityVector& q);

/// Density matrix of a partition under point probabilities: diagonal p_i,
/// off-diagonal sqrt(p_i p_j) on the indit set and zero elsewhere.
///
/// Only squared entries are ever needed, so the matrix keeps the partition
/// and the distribution and reports squared entries exactly.
class SetDensityMatrix {
public:
    SetDensityMatrix(Partition pi, ProbabilityVector p);

    const Partition& partition() const { return partition_; }
    const ProbabilityVector& probabilities() const { return p_; }
    const Universe& universe() const { return partition_.universe(); }
    std::size_t dimension() const { return p_.size(); }

    const Rational& diagonal(std::size_t i) const { return p_[i]; }
    /// True when (i, j) is in the indit set (the entry is not forced to zero).
    bool coherent(std::size_t i, std::size_t j) const { return partition_.same_block(i, j); }
    /// rho_ij squared.
    Rational squared_entry(std::size_t i, std::size_t j) const;
    /// rho_ij itself, when it is rational.
    std::optional<Rational> entry(std::size_t i, std::size_t j) const;

    Rational trace() const;
    /// tr(rho^2) = sum over i, j of rho_ij^2.
    Rational purity() const;

    friend bool operator==(const SetDensityMatrix&, const SetDensityMatrix&) = default;

private:
    Partition partition_;
    ProbabilityVector p_;
};

/// Entry (i, j) as text: the exact rational, or "sqrt(q)" when irrational.
std::string format_entry(const SetDensityMatrix& rho, std::size_t i, std::size_t j);

SetDensityMatrix density_matrix(const Partition& pi, const ProbabilityVector& p);

/// 1 - tr(rho^2); equals logical_entropy(pi, p) for rho = density_matrix(pi, p).
Rational quantum_logical_entropy(const SetDensityMatrix& rho);

/// Measurement by `sigma`: zero the off-diagonals that `sigma` distinguishes.
SetDensityMatrix luders_update(const SetDensityMatrix& rho, const Partition& sigma);

/// h(after) - h(before). Both must share universe and diagonal.
Rational entropy_delta(const SetDensityMatrix& before, const SetDensityMatrix& after);

/// Sum of squared off-diagonal entries present in `before` but zero in `after`.
Rational zeroed_coherence(const SetDensityMatrix& before, const SetDensityMatrix& after);

/// Hermitian, unit trace complex density matrix (tolerance 1e-9).
class ComplexDensityMatrix {
public:
    static constexpr double kTolerance = 1e-9;

    explicit ComplexDensityMatrix(Eigen::MatrixXcd entries);

    /// |psi><psi| for the normalized `psi`.
    static ComplexDensityMatrix pure(const Eigen::VectorXcd& psi);
    /// sum_k weight_k |psi_k><psi_k| with each psi_k normalized.
    static ComplexDensityMatrix mixture(const std::vector<double>& weights, const std::vector<Eigen::VectorXcd>& states);

    const Eigen::MatrixXcd& entries() const { return m_; }
    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }

    bool is_pure() const;

private:
    Eigen::MatrixXcd m_;
};

/// 1 - tr(rho^2).
double quantum_logical_entropy(const ComplexDensityMatrix& rho);

/// sum over i != j of (rho_ii rho_jj - |rho_ij|^2); the same value as
/// quantum_logical_entropy computed entry by entry.
double distinction_probability_sum(const ComplexDensityMatrix& rho);

/// Zero the entries (i, j) with i, j in different blocks of `sigma`.
ComplexDensityMatrix decohere(const ComplexDensityMatrix& rho, const Partition& sigma);

}  // namespace setqm
