#include "setqm/loginfo.hpp"

#include <cmath>

#include "setqm/error.hpp"

namespace setqm {

ProbabilityVector::ProbabilityVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw DomainError("probability vector must be nonempty");
    }
    Rational total = 0;
    for (const auto& e : entries_) {
        if (e < 0) {
            throw DomainError("negative probability " + to_string(e));
        }
        total += e;
    }
    if (total != 1) {
        throw DomainError("probabilities sum to " + to_string(total) + ", not 1");
    }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
    if (n == 0) {
        throw DomainError("probability vector must be nonempty");
    }
    return ProbabilityVector(std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
}

ProbabilityVector ProbabilityVector::point_mass(std::size_t n, std::size_t at) {
    if (at >= n) {
        throw DomainError("point mass index out of range");
    }
    std::vector<Rational> e(n, Rational(0));
    e[at] = 1;
    return ProbabilityVector(std::move(e));
}

namespace {

void require_sized(const Universe& u, const ProbabilityVector& p) {
    if (u.size() != p.size()) {
        throw DomainError("distribution has " + std::to_string(p.size()) + " entries for a universe of " +
                          std::to_string(u.size()));
    }
}

}  // namespace

Rational logical_entropy(const Partition& pi, const ProbabilityVector& p) {
    require_sized(pi.universe(), p);
    Rational sum_sq = 0;
    for (const auto& block : pi.blocks()) {
        Rational pb = 0;
        for (std::size_t e : block) {
            pb += p[e];
        }
        sum_sq += pb * pb;
    }
    return 1 - sum_sq;
}

Rational logical_entropy(const Partition& pi) {
    return logical_entropy(pi, ProbabilityVector::uniform(pi.universe().size()));
}

Rational logical_entropy(const ProbabilityVector& p) {
    Rational sum_sq = 0;
    for (const auto& e : p.entries()) {
        sum_sq += e * e;
    }
    return 1 - sum_sq;
}

Rational logical_divergence(const ProbabilityVector& p, const ProbabilityVector& q) {
    if (p.size() != q.size()) {
        throw DomainError("divergence of distributions with different lengths");
    }
    Rational d = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Rational diff = p[i] - q[i];
        d += diff * diff;
    }
    return d;
}

// --- SetDensityMatrix ------------------------------------------------------

SetDensityMatrix::SetDensityMatrix(Partition pi, ProbabilityVector p) : partition_(std::move(pi)), p_(std::move(p)) {
    require_sized(partition_.universe(), p_);
}

Rational SetDensityMatrix::squared_entry(std::size_t i, std::size_t j) const {
    if (i == j) {
        return p_[i] * p_[i];
    }
    return coherent(i, j) ? Rational(p_[i] * p_[j]) : Rational(0);
}

std::optional<Rational> SetDensityMatrix::entry(std::size_t i, std::size_t j) const {
    if (i == j) {
        return p_[i];
    }
    return exact_sqrt(squared_entry(i, j));
}

Rational SetDensityMatrix::trace() const {
    Rational t = 0;
    for (const auto& e : p_.entries()) {
        t += e;
    }
    return t;
}

Rational SetDensityMatrix::purity() const {
    Rational s = 0;
    for (std::size_t i = 0; i < dimension(); ++i) {
        for (std::size_t j = 0; j < dimension(); ++j) {
            s += squared_entry(i, j);
        }
    }
    return s;
}

std::string format_entry(const SetDensityMatrix& rho, std::size_t i, std::size_t j) {
    if (const auto e = rho.entry(i, j)) {
        return to_string(*e);
    }
    return "sqrt(" + to_string(rho.squared_entry(i, j)) + ")";
}

SetDensityMatrix density_matrix(const Partition& pi, const ProbabilityVector& p) {
    return SetDensityMatrix(pi, p);
}

Rational quantum_logical_entropy(const SetDensityMatrix& rho) {
    return 1 - rho.purity();
}

SetDensityMatrix luders_update(const SetDensityMatrix& rho, const Partition& sigma) {
    return SetDensityMatrix(join(rho.partition(), sigma), rho.probabilities());
}

namespace {

void require_comparable(const SetDensityMatrix& before, const SetDensityMatrix& after) {
    if (!(before.universe() == after.universe())) {
        throw DomainError("density matrices over different universes");
    }
    if (!(before.probabilities() == after.probabilities())) {
        throw DomainError("density matrices have different diagonals");
    }
}

}  // namespace

Rational entropy_delta(const SetDensityMatrix& before, const SetDensityMatrix& after) {
    require_comparable(before, after);
    return quantum_logical_entropy(after) - quantum_logical_entropy(before);
}

Rational zeroed_coherence(const SetDensityMatrix& before, const SetDensityMatrix& after) {
    require_comparable(before, after);
    Rational s = 0;
    for (std::size_t i = 0; i < before.dimension(); ++i) {
        for (std::size_t j = 0; j < before.dimension(); ++j) {
            if (i != j && before.coherent(i, j) && !after.coherent(i, j)) {
                s += before.squared_entry(i, j);
            }
        }
    }
    return s;
}

// --- ComplexDensityMatrix --------------------------------------------------

ComplexDensityMatrix::ComplexDensityMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw DomainError("density matrix must be square and nonempty");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
        throw DomainError("density matrix is not Hermitian");
    }
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        if (m_(i, i).real() < -kTolerance) {
            throw DomainError("density matrix has a negative diagonal entry");
        }
    }
    if (std::abs(m_.trace() - std::complex<double>(1.0, 0.0)) > kTolerance) {
        throw DomainError("density matrix trace is not 1");
    }
}

ComplexDensityMatrix ComplexDensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw DomainError("zero state vector");
    }
    const Eigen::VectorXcd unit = psi / norm;
    return ComplexDensityMatrix(unit * unit.adjoint());
}

ComplexDensityMatrix ComplexDensityMatrix::mixture(const std::vector<double>& weights,
                                                   const std::vector<Eigen::VectorXcd>& states) {
    if (weights.size() != states.size() || states.empty()) {
        throw DomainError("mixture needs one weight per state");
    }
    const Eigen::Index n = states.front().size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (weights[k] < 0.0 || states[k].size() != n) {
            throw DomainError("invalid mixture component");
        }
        const Eigen::VectorXcd unit = states[k] / states[k].norm();
        m += weights[k] * (unit * unit.adjoint());
    }
    return ComplexDensityMatrix(std::move(m));
}

bool ComplexDensityMatrix::is_pure() const {
    return std::abs(quantum_logical_entropy(*this)) <= kTolerance;
}

double quantum_logical_entropy(const ComplexDensityMatrix& rho) {
    return 1.0 - (rho.entries() * rho.entries()).trace().real();
}

double distinction_probability_sum(const ComplexDensityMatrix& rho) {
    const auto& m = rho.entries();
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) {
                s += m(i, i).real() * m(j, j).real() - std::norm(m(i, j));
            }
        }
    }
    return s;
}

ComplexDensityMatrix decohere(const ComplexDensityMatrix& rho, const Partition& sigma) {
    if (sigma.universe().size() != rho.dimension()) {
        throw DomainError("partition size does not match density matrix");
    }
    Eigen::MatrixXcd m = rho.entries();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!sigma.same_block(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
                m(i, j) = 0.0;
            }
        }
    }
    return ComplexDensityMatrix(std::move(m));
}

}  // namespace setqm
