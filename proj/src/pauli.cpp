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

#include "epr/pauli.hpp"

#include <cctype>
#include <complex>
#include <stdexcept>

namespace epr {

namespace {

void check_qubit_count(int num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxPauliQubits) {
        throw std::invalid_argument("qubit count must be in [0, " + std::to_string(kMaxPauliQubits) + "]");
    }
}

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

constexpr char kLetters[3] = {'X', 'Y', 'Z'};

void set_letter(PauliString &p, int q, char letter) {
    switch (letter) {
        case 'X':
            p.x |= bit(q);
            break;
        case 'Y':
            p.x |= bit(q);
            p.z |= bit(q);
            break;
        case 'Z':
            p.z |= bit(q);
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
    }
}

}  // namespace

PauliString PauliString::identity(int num_qubits) {
    check_qubit_count(num_qubits);
    return PauliString{num_qubits, 0, 0};
}

PauliString PauliString::single(int num_qubits, int qubit, char letter) {
    check_qubit_count(num_qubits);
    if (qubit < 0 || qubit >= num_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    PauliString p{num_qubits, 0, 0};
    set_letter(p, qubit, letter);
    return p;
}

PauliString PauliString::parse(std::string_view text, int num_qubits) {
    check_qubit_count(num_qubits);
    PauliString p{num_qubits, 0, 0};
    if (text == "I") {
        return p;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos++])));
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (start == pos) {
            throw std::invalid_argument("missing qubit label in '" + std::string(text) + "'");
        }
        const int q = std::stoi(std::string(text.substr(start, pos - start))) - 1;
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("qubit label out of range in '" + std::string(text) + "'");
        }
        if (((p.x | p.z) & bit(q)) != 0) {
            throw std::invalid_argument("repeated qubit in '" + std::string(text) + "'");
        }
        set_letter(p, q, letter);
        if (pos < text.size()) {
            if (text[pos] != '*') {
                throw std::invalid_argument("expected '*' in '" + std::string(text) + "'");
            }
            ++pos;
        }
    }
    return p;
}

char PauliString::letter(int qubit) const {
    const bool xb = (x >> qubit) & 1u;
    const bool zb = (z >> qubit) & 1u;
    if (xb && zb) {
        return 'Y';
    }
    if (xb) {
        return 'X';
    }
    return zb ? 'Z' : 'I';
}

std::string PauliString::to_string() const {
    if (is_identity()) {
        return "I";
    }
    std::string out;
    for (int q = 0; q < num_qubits; ++q) {
        const char c = letter(q);
        if (c == 'I') {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += c;
        out += std::to_string(q + 1);
    }
    return out;
}

std::complex<double> PhasedPauli::value() const {
    switch (phase) {
        case Phase::kPlusOne:
            return {1.0, 0.0};
        case Phase::kPlusI:
            return {0.0, 1.0};
        case Phase::kMinusOne:
            return {-1.0, 0.0};
        case Phase::kMinusI:
            return {0.0, -1.0};
    }
    return {};
}

PhasedPauli multiply(const PauliString &a, const PauliString &b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::invalid_argument("multiply: mismatched qubit counts");
    }
    PauliString c{a.num_qubits, a.x ^ b.x, a.z ^ b.z};
    // (i^ya X^xa Z^za)(i^yb X^xb Z^zb) = i^(ya+yb) (-1)^|za & xb| X^(xa^xb) Z^(za^zb)
    const int exponent = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) - std::popcount(c.x & c.z) +
                         2 * std::popcount(a.z & b.x);
    return PhasedPauli{static_cast<Phase>(((exponent % 4) + 4) % 4), c};
}

bool commutes(const PauliString &a, const PauliString &b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::invalid_argument("commutes: mismatched qubit counts");
    }
    return ((std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1) == 0;
}

bool is_hermitian_product(const PauliString &a, const PauliString &b) {
    // The product of two Hermitian Paulis is Hermitian iff they commute.
    return commutes(a, b);
}

std::size_t basis_size(int num_qubits, int level) {
    const std::size_t n = static_cast<std::size_t>(num_qubits);
    std::size_t size = 1 + 3 * n;
    if (level >= 2) {
        size += 9 * n * (n - (n > 0 ? 1 : 0)) / 2;
    }
    return size;
}

std::vector<PauliString> enumerate_basis(int num_qubits, int level) {
    if (level != 1 && level != 2) {
        throw std::invalid_argument("enumerate_basis supports levels 1 and 2");
    }
    if (num_qubits < 1) {
        throw std::invalid_argument("enumerate_basis needs at least one qubit");
    }
    check_qubit_count(num_qubits);
    std::vector<PauliString> out;
    out.reserve(basis_size(num_qubits, level));
    out.push_back(PauliString::identity(num_qubits));
    for (int q = 0; q < num_qubits; ++q) {
        for (char c : kLetters) {
            out.push_back(PauliString::single(num_qubits, q, c));
        }
    }
    if (level == 2) {
        for (int i = 0; i < num_qubits; ++i) {
            for (int j = i + 1; j < num_qubits; ++j) {
                for (char a : kLetters) {
                    for (char b : kLetters) {
                        PauliString p{num_qubits, 0, 0};
                        set_letter(p, i, a);
                        set_letter(p, j, b);
                        out.push_back(p);
                    }
                }
            }
        }
    }
    return out;
}

Eigen::MatrixXcd dense_matrix(const PauliString &p) {
    if (p.num_qubits > kMaxDenseQubits) {
        throw std::invalid_argument("dense_matrix supports at most " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    Eigen::Matrix2cd site[4];
    site[0] << 1, 0, 0, 1;   // I
    site[1] << 0, 1, 1, 0;   // X
    site[2] << 0, -i, i, 0;  // Y
    site[3] << 1, 0, 0, -1;  // Z

    const std::size_t dim = std::size_t{1} << p.num_qubits;
    Eigen::MatrixXcd out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            C entry(1.0, 0.0);
            for (int q = 0; q < p.num_qubits && entry != C(0.0, 0.0); ++q) {
                int which = 0;
                switch (p.letter(q)) {
                    case 'X':
                        which = 1;
                        break;
                    case 'Y':
                        which = 2;
                        break;
                    case 'Z':
                        which = 3;
                        break;
                    default:
                        which = 0;
                }
                entry *= site[which]((r >> q) & 1u, (c >> q) & 1u);
            }
            out(r, c) = entry;
        }
    }
    return out;
}

}  // namespace epr
