// Copyright 2026 The quatpath Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quatpath/order.hpp"

#include <vector>

#include "quatpath/errors.hpp"
#include "quatpath/ntheory.hpp"

namespace quatpath {

bool is_order(const Lattice &L, const QuatAlgebra &B)
{
    if (!L.contains(B.one())) {
        return false;
    }
    const auto basis = L.basis();
    for (const auto &a : basis) {
        for (const auto &b : basis) {
            if (!L.contains(B.mul(a, b))) {
                return false;
            }
        }
    }
    return true;
}

OrderLattice OrderLattice::from_lattice(const QuatAlgebra &B, Lattice L)
{
    if (!is_order(L, B)) {
        throw InvalidInput("lattice is not an order");
    }
    return OrderLattice(B, std::move(L));
}

OrderLattice OrderLattice::closure(const QuatAlgebra &B, std::span<const QuatElement> generators)
{
    std::vector<QuatElement> gens(generators.begin(), generators.end());
    gens.push_back(B.one());
    for (const auto &g : gens) {
        Rational n = B.nrd(g);
        Rational t = trd(g);
        if (n.get_den() != 1 || t.get_den() != 1) {
            throw InvalidInput("order generator " + g.to_string() + " is not integral");
        }
    }
    Lattice L = Lattice::from_generators(gens);
    // Integral generators generate a finitely generated ring, so this stops;
    // the cap only guards against misuse.
    for (int round = 0; round < 16; ++round) {
        std::vector<QuatElement> next;
        const auto basis = L.basis();
        for (const auto &a : basis) {
            next.push_back(a);
            for (const auto &b : basis) {
                next.push_back(B.mul(a, b));
            }
        }
        Lattice grown = Lattice::from_generators(next);
        if (grown == L) {
            return OrderLattice(B, std::move(L));
        }
        L = std::move(grown);
    }
    throw InvalidInput("order closure did not stabilize");
}

Integer OrderLattice::reduced_discriminant() const
{
    Rational det = determinant(trace_gram(L_, B_));
    if (det < 0) {
        det = -det;
    }
    if (det.get_den() != 1 || !ntheory::is_square(det.get_num())) {
        throw VerificationFailed("order discriminant " + det.get_str() + " is not a square integer");
    }
    return ntheory::isqrt(det.get_num());
}

Lattice suborder_lattice(const QuatAlgebra &B)
{
    const QuatElement w = B.omega();
    const std::array<QuatElement, 4> gens = {B.one(), w, B.j(), B.mul(w, B.j())};
    return Lattice::from_generators(gens);
}

SpecialOrder build_special_order(const Integer &p)
{
    QuatAlgebra B = QuatAlgebra::for_prime(p);
    const Rational half(1, 2);
    std::vector<QuatElement> gens;
    switch (B.kind) {
    case SpecialCase::gaussian:
        gens = {B.i(), (B.one() + B.j()) * half, (B.i() + B.k()) * half};
        break;
    case SpecialCase::sqrt_minus_2:
        gens = {B.i(), (B.one() + B.j() + B.k()) * half, (B.i() + 2 * B.j() + B.k()) * Rational(1, 4)};
        break;
    case SpecialCase::odd_prime_q:
        gens = {(B.one() + B.i()) * half, B.j(), (Rational(*B.c) * B.i() + B.k()) / Rational(B.q)};
        break;
    }
    OrderLattice O = OrderLattice::closure(B, gens);
    if (!O.is_maximal()) {
        throw VerificationFailed("special order for p = " + p.get_str() + " is not maximal");
    }
    PrincipalForm f = B.norm_form();
    return {std::move(B), std::move(O), std::move(f)};
}

} // namespace quatpath
