#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "casq/ast.hpp"

namespace casq {

/// Dense 2^n x 2^n complex matrix, qubit 0 most significant.
class UnitaryMatrix {
  public:
    UnitaryMatrix() = default;
    explicit UnitaryMatrix(std::size_t qubits);

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return std::size_t(1) << n_; }

    std::complex<double>& at(std::size_t r, std::size_t c) { return a_[r * dim() + c]; }
    const std::complex<double>& at(std::size_t r, std::size_t c) const {
        return a_[r * dim() + c];
    }

    /// Left-multiply by a single-qubit gate at qubit q.
    void apply1(std::size_t q, const std::complex<double> g[2][2]);
    /// Left-multiply by CX(control, target).
    void apply_cx(std::size_t c, std::size_t t);

    UnitaryMatrix operator*(const UnitaryMatrix& o) const;
    UnitaryMatrix adjoint() const;
    double unitarity_defect() const; // ||U^dag U - I||_inf

  private:
    std::size_t n_ = 0;
    std::vector<std::complex<double>> a_;
};

/// Behaviour limits of the brute-force oracle.
inline constexpr std::size_t simcheck_max_qubits = 10;

/// Unitary of a measurement-free program. Gates resolve recursively through
/// their declaration bodies down to the U/CX primitives, so qelib1 gates get
/// their exact standard matrices. Throws std::invalid_argument on measure,
/// reset, classical control, oracle calls, or programs over the qubit cap.
UnitaryMatrix unitary(const Program& p);

/// Permutation matrix moving the bit at position p to position perm[p].
UnitaryMatrix permutation_matrix(const std::vector<std::size_t>& perm);

/// True iff ||a - e^{i phi} P b||_inf < tol, with phi chosen from the
/// largest-magnitude entry ratio and P the optional qubit permutation.
bool equiv(const UnitaryMatrix& a, const UnitaryMatrix& b, bool up_to_phase,
           const std::vector<std::size_t>* perm = nullptr, double tol = 1e-8);

} // namespace casq
