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

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace epr {
namespace {

PauliString random_pauli(std::mt19937_64 &rng, int n) {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    return PauliString{n, rng() & mask, rng() & mask};
}

TEST(PauliString, Basics) {
    const PauliString id = PauliString::identity(3);
    EXPECT_TRUE(id.is_identity());
    EXPECT_EQ(id.x, 0u);
    EXPECT_EQ(id.z, 0u);
    const PauliString p = PauliString::parse("X1*Y3", 3);
    EXPECT_EQ(p.weight(), 2);
    EXPECT_EQ(p.letter(0), 'X');
    EXPECT_EQ(p.letter(1), 'I');
    EXPECT_EQ(p.letter(2), 'Y');
    EXPECT_EQ(PauliString::parse(p.to_string(), 3), p);
    EXPECT_THROW(PauliString::parse("Q1", 2), std::invalid_argument);
    EXPECT_THROW(PauliString::parse("X5", 2), std::invalid_argument);
}

TEST(Multiply, SingleQubitAlgebra) {
    const PhasedPauli r = multiply(PauliString::single(1, 0, 'X'), PauliString::single(1, 0, 'Y'));
    EXPECT_EQ(r.phase, Phase::kPlusI);
    EXPECT_EQ(r.op, PauliString::single(1, 0, 'Z'));
}

TEST(Multiply, TwoQubitPhaseProduct) {
    const PhasedPauli r = multiply(PauliString::parse("X1*X2", 2), PauliString::parse("Y1*Y2", 2));
    EXPECT_EQ(r.phase, Phase::kMinusOne);
    EXPECT_EQ(r.op, PauliString::parse("Z1*Z2", 2));
}

TEST(Multiply, Involution) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const PauliString a = random_pauli(rng, 5);
        const PhasedPauli r = multiply(a, a);
        EXPECT_EQ(r.phase, Phase::kPlusOne);
        EXPECT_TRUE(r.op.is_identity());
    }
}

TEST(Multiply, RejectsQubitMismatch) {
    EXPECT_THROW(multiply(PauliString::identity(2), PauliString::identity(3)), std::invalid_argument);
}

TEST(HermitianProduct, Examples) {
    const PauliString x1 = PauliString::single(2, 0, 'X');
    EXPECT_TRUE(is_hermitian_product(x1, x1));
    EXPECT_FALSE(is_hermitian_product(x1, PauliString::single(2, 0, 'Y')));
    EXPECT_TRUE(is_hermitian_product(PauliString::parse("X1*X2", 2), PauliString::parse("Y1*Y2", 2)));
}

TEST(Multiply, ReversedOrderDiffersBySignOnly) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        const PauliString a = random_pauli(rng, 4);
        const PauliString b = random_pauli(rng, 4);
        const PhasedPauli ab = multiply(a, b);
        const PhasedPauli ba = multiply(b, a);
        EXPECT_EQ(ab.op, ba.op);
        const std::complex<double> ratio = ab.value() / ba.value();
        if (commutes(a, b)) {
            EXPECT_EQ(ab.phase, ba.phase);
        } else {
            EXPECT_NEAR(ratio.real(), -1.0, 0.0);
        }
        EXPECT_EQ(ab.is_real(), commutes(a, b));
    }
}

TEST(DenseMatrix, Examples) {
    const Eigen::MatrixXcd z = dense_matrix(PauliString::single(1, 0, 'Z'));
    EXPECT_EQ(z(0, 0), std::complex<double>(1.0));
    EXPECT_EQ(z(1, 1), std::complex<double>(-1.0));
    EXPECT_EQ(z(0, 1), std::complex<double>(0.0));
    EXPECT_TRUE(dense_matrix(PauliString::identity(2)).isIdentity());
    // Y = i X Z under the chosen convention.
    const Eigen::MatrixXcd y = dense_matrix(PauliString::single(1, 0, 'Y'));
    EXPECT_EQ(y(1, 0), std::complex<double>(0.0, 1.0));
    EXPECT_EQ(y(0, 1), std::complex<double>(0.0, -1.0));
}

TEST(DenseMatrix, MatchesMultiplyOracle) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const PauliString a = random_pauli(rng, n);
        const PauliString b = random_pauli(rng, n);
        const PhasedPauli c = multiply(a, b);
        const Eigen::MatrixXcd lhs = dense_matrix(a) * dense_matrix(b);
        const Eigen::MatrixXcd rhs = c.value() * dense_matrix(c.op);
        EXPECT_EQ((lhs - rhs).cwiseAbs().maxCoeff(), 0.0) << a.to_string() << " * " << b.to_string();
    }
}

TEST(Multiply, AssociativeIncludingPhase) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 200; ++k) {
        const PauliString a = random_pauli(rng, 3);
        const PauliString b = random_pauli(rng, 3);
        const PauliString c = random_pauli(rng, 3);
        const PhasedPauli ab = multiply(a, b);
        const PhasedPauli bc = multiply(b, c);
        const PhasedPauli left = multiply(ab.op, c);
        const PhasedPauli right = multiply(a, bc.op);
        EXPECT_EQ(left.op, right.op);
        EXPECT_EQ(ab.value() * left.value(), bc.value() * right.value());
    }
}

TEST(EnumerateBasis, Counts) {
    EXPECT_EQ(enumerate_basis(2, 2).size(), 16u);
    EXPECT_EQ(enumerate_basis(4, 2).size(), 67u);
    EXPECT_EQ(basis_size(14, 2), 862u);
    const auto b = enumerate_basis(1, 1);
    ASSERT_EQ(b.size(), 4u);
    EXPECT_TRUE(b[0].is_identity());
    EXPECT_EQ(b[1].letter(0), 'X');
    EXPECT_EQ(b[2].letter(0), 'Y');
    EXPECT_EQ(b[3].letter(0), 'Z');
}

TEST(EnumerateBasis, NoDuplicatesAndBoundedWeight) {
    for (int n = 1; n <= 6; ++n) {
        const auto basis = enumerate_basis(n, 2);
        EXPECT_EQ(basis.size(), basis_size(n, 2));
        std::set<PauliString> seen(basis.begin(), basis.end());
        EXPECT_EQ(seen.size(), basis.size());
        for (const PauliString &p : basis) {
            EXPECT_LE(p.weight(), 2);
        }
    }
    EXPECT_THROW(enumerate_basis(3, 3), std::invalid_argument);
    EXPECT_THROW(enumerate_basis(0, 2), std::invalid_argument);
}

}  // namespace
}  // namespace epr
