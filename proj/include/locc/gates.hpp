#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "locc/qcore.hpp"

namespace locc::gates {

/// CNOT on (control, target), control the more significant subsystem.
Unitary xor_qubit();
/// |x, y> -> |x, y + x mod dim> on (control, target).
Unitary xor_qudit(std::size_t dim);
Unitary hadamard();
Unitary pauli_x();
Unitary pauli_y();
Unitary pauli_z();
/// diag(1, e^{i theta})
Unitary phase(double theta);
/// F[k][x] = e^{2 pi i k x / dim} / sqrt(dim)
Unitary fourier(std::size_t dim);
/// diag(e^{-2 pi i k l / dim}) over l; undoes the phase left by fourier outcome k.
Unitary phase_correction(std::size_t dim, std::size_t k);
/// Maps indices[v] -> indices[(v + shift) mod |indices|]; identity elsewhere.
Unitary cyclic_shift(std::size_t dim, const std::vector<std::size_t>& indices, std::size_t shift);
/// |x> -> |perm[x]>
Unitary permutation(const std::vector<std::size_t>& perm);
/// diag(phases); each entry must have unit modulus.
Unitary diagonal(const std::vector<Amplitude>& phases);

/// Extends prescribed columns (column index -> image) to a full unitary.
/// Remaining columns come from Gram-Schmidt over the standard basis in
/// ascending order, skipping candidates with residual norm below 1e-9.
/// Throws DomainError when the prescription is not orthonormal.
Unitary complete_to_unitary(std::size_t dim, const std::map<std::size_t, std::vector<Amplitude>>& prescribed);

}  // namespace locc::gates
