#pragma once

#include <qdft/fermion.hpp>
#include <qdft/pauli.hpp>

#include <cstdint>
#include <string>

namespace qdft {

PauliSum map_jordan_wigner(const FermionOperator& op);

/// Parity encoding: qubit j stores the parity of modes 0..j.
PauliSum map_parity(const FermionOperator& op);

/// Qubit positions fixed by particle-number symmetry in the parity encoding
/// with blocked spin ordering: cumulative alpha parity and total parity.
struct ParityQubits {
  int alpha = 0;
  int total = 0;
};
ParityQubits parity_symmetry_qubits(int n_qubits);

/// Replaces Z on the two parity qubits by (-1)^n_alpha and (-1)^n_electrons
/// and removes both qubits. Throws NotReducibleError when a term carries X or
/// Y on either of them.
PauliSum two_qubit_reduction(const PauliSum& parity_op, int n_electrons, int n_alpha);

/// Computational-basis index conversions between occupation (Jordan-Wigner)
/// and parity encodings.
std::uint64_t occupation_to_parity(std::uint64_t occupation, int n_modes);
std::uint64_t parity_to_occupation(std::uint64_t parity, int n_modes);

/// Basis index in the reduced register for a full parity index whose two
/// symmetry qubits are dropped, and its inverse given the sector.
std::uint64_t drop_parity_qubits(std::uint64_t parity_index, int n_modes);
std::uint64_t restore_parity_qubits(std::uint64_t reduced_index, int n_modes, int n_electrons, int n_alpha);

enum class QubitEncoding { JordanWigner, Parity, ParityReduced };

std::string to_string(QubitEncoding e);
QubitEncoding parse_encoding(const std::string& text);

/// Encodes a fermion operator, reducing in the (n_electrons, n_alpha) sector
/// when the encoding is ParityReduced.
PauliSum map_fermion_operator(const FermionOperator& op, QubitEncoding encoding, int n_electrons, int n_alpha);

/// Computational basis index of a determinant (occupation bit mask) under
/// the encoding.
std::uint64_t encode_determinant(std::uint64_t occupation, int n_modes, QubitEncoding encoding);

int encoded_qubits(int n_modes, QubitEncoding encoding);

}  // namespace qdft
