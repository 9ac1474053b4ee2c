// Copyright 2026 The eprapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPR_PAULI_HPP
#define EPR_PAULI_HPP

#include <bit>
#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace epr {

inline constexpr int kMaxPauliQubits = 64;
inline constexpr int kMaxDenseQubits = 12;

/// Phase-free Pauli monomial in symplectic form.
///
/// Per site, (x, z) = (1, 0) is X, (0, 1) is Z and (1, 1) is Y, with the
/// convention Y = i X Z. The operator represented by masks (x, z) is
/// i^{|x & z|} X^x Z^z, which is Hermitian.
struct PauliString {
    int num_qubits = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    static PauliString identity(int num_qubits);
    /// Single-site operator; letter is one of 'X', 'Y', 'Z'.
    static PauliString single(int num_qubits, int qubit, char letter);
    /// Parses "X1*Y3" style text (1-based qubits) or "I" for the identity.
    /// Throws std::invalid_argument on malformed text or labels beyond num_qubits.
    static PauliString parse(std::string_view text, int num_qubits);

    int weight() const { return std::popcount(x | z); }
    bool is_identity() const { return (x | z) == 0; }
    /// 'I', 'X', 'Y' or 'Z' on the given site.
    char letter(int qubit) const;
    /// Renders like "X1*Y3" with 1-based qubit labels; the identity is "I".
    std::string to_string() const;

    bool operator==(const PauliString &) const = default;
    auto operator<=>(const PauliString &) const = default;
};

/// Power of i: kPlusOne = i^0, kPlusI = i^1, kMinusOne = i^2, kMinusI = i^3.
enum class Phase : std::uint8_t { kPlusOne = 0, kPlusI = 1, kMinusOne = 2, kMinusI = 3 };

struct PhasedPauli {
    Phase phase = Phase::kPlusOne;
    PauliString op;

    bool is_real() const { return (static_cast<int>(phase) & 1) == 0; }
    /// +1 or -1 for real phases.
    int sign() const { return phase == Phase::kPlusOne ? 1 : -1; }
    std::complex<double> value() const;
};

/// Exact product a * b = phase * c with c canonical.
PhasedPauli multiply(const PauliString &a, const PauliString &b);

/// True iff a * b is Hermitian, i.e. the product phase is +-1.
bool is_hermitian_product(const PauliString &a, const PauliString &b);

bool commutes(const PauliString &a, const PauliString &b);

/// Monomials of weight <= k in a fixed order: identity, then weight 1 by
/// qubit (X < Y < Z), then weight 2 by qubit pair and letter pair.
std::vector<PauliString> enumerate_basis(int num_qubits, int level);

/// Size of enumerate_basis(num_qubits, level).
std::size_t basis_size(int num_qubits, int level);

/// Tensor-product matrix in the computational basis; qubit q is bit q of the
/// basis index.
Eigen::MatrixXcd dense_matrix(const PauliString &p);

}  // namespace epr

template <>
struct std::hash<epr::PauliString> {
    std::size_t operator()(const epr::PauliString &p) const noexcept {
        std::uint64_t h = p.x * 0x9E3779B97F4A7C15ull;
        h ^= p.z + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(p.num_qubits));
    }
};

#endif
