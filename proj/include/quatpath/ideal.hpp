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

#pragma once

#include "quatpath/ntheory.hpp"
#include "quatpath/order.hpp"

namespace quatpath {

/// An integral left ideal of an order. The reduced norm is computed and
/// checked on construction.
class LeftIdeal {
  public:
    LeftIdeal() = default;

    /// Throws NotAnIdeal if L is not an integral left O-ideal with square
    /// index.
    static LeftIdeal from_lattice(const OrderLattice &O, Lattice L);

    const OrderLattice &left_order() const { return O_; }
    const QuatAlgebra &algebra() const { return O_.algebra(); }
    const Lattice &lattice() const { return L_; }
    std::array<QuatElement, 4> basis() const { return L_.basis(); }
    const Integer &norm() const { return norm_; }
    bool contains(const QuatElement &x) const { return L_.contains(x); }

    /// q_I(x) = nrd(x) / Nrd(I).
    Rational normalized_norm(const QuatElement &x) const { return algebra().nrd(x) / Rational(norm_); }

    friend bool operator==(const LeftIdeal &a, const LeftIdeal &b) { return a.O_ == b.O_ && a.L_ == b.L_; }

  private:
    LeftIdeal(OrderLattice O, Lattice L, Integer n) : O_(std::move(O)), L_(std::move(L)), norm_(std::move(n)) {}

    OrderLattice O_;
    Lattice L_;
    Integer norm_{1};
};

/// O N + O alpha.
LeftIdeal left_ideal_from_pair(const OrderLattice &O, const Integer &N, const QuatElement &alpha);

/// The order itself as its own unit ideal.
LeftIdeal unit_ideal(const OrderLattice &O);

inline const Integer &reduced_norm(const LeftIdeal &I) { return I.norm(); }

Lattice conj_ideal(const LeftIdeal &I);
Lattice mul_ideals(const Lattice &a, const Lattice &b, const QuatAlgebra &B);
Lattice scale(const Lattice &L, const Rational &c);

/// Largest integer n with L contained in n * ref (gcd of the coordinates of
/// L's basis in ref's basis). Throws InvalidInput unless L is inside ref.
Integer content_in(const Lattice &L, const Lattice &ref);

/// I * conj(alpha) / Nrd(I), a left ideal of the same order with reduced norm
/// q_I(alpha). Throws ElementNotInIdeal unless alpha is a nonzero element of I.
LeftIdeal rescale_by_element(const LeftIdeal &I, const QuatElement &alpha);

/// Divides an integral ideal by its integer content.
LeftIdeal primitive_part(const LeftIdeal &I);

OrderLattice right_order(const LeftIdeal &I);

/// I * J for J a left ideal of the right order of I.
LeftIdeal product(const LeftIdeal &I, const LeftIdeal &J);

/// The primitive ideal with left order O1, right order O2 and reduced norm
/// [O1 : O1 n O2]. All properties are checked (VerificationFailed otherwise).
LeftIdeal connecting_ideal(const OrderLattice &O1, const OrderLattice &O2);

/// An ideal of the right order of I with reduced norm ell, drawn uniformly
/// enough for test data: O_R ell + O_R alpha for random alpha with ell | nrd.
LeftIdeal random_prime_norm_step(const OrderLattice &O, const Integer &ell, Rng &rng);

/// Composes `steps` random norm-ell ideals starting from O, rejecting
/// backtracking so that the result has reduced norm ell^steps.
LeftIdeal random_walk_ideal(const OrderLattice &O, const Integer &ell, unsigned steps, Rng &rng);

} // namespace quatpath
