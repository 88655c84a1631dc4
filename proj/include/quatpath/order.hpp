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

#include <span>

#include "quatpath/lattice.hpp"

namespace quatpath {

/// An order of B_{p,inf}: a full-rank lattice containing 1 and closed under
/// multiplication. Construction validates both properties.
class OrderLattice {
  public:
    OrderLattice() = default;

    /// Wraps a lattice that is already an order; throws InvalidInput otherwise.
    static OrderLattice from_lattice(const QuatAlgebra &B, Lattice L);

    /// Smallest order containing the generators (and 1). Throws InvalidInput
    /// if the generators are not integral.
    static OrderLattice closure(const QuatAlgebra &B, std::span<const QuatElement> generators);

    const QuatAlgebra &algebra() const { return B_; }
    const Lattice &lattice() const { return L_; }
    std::array<QuatElement, 4> basis() const { return L_.basis(); }
    bool contains(const QuatElement &x) const { return L_.contains(x); }

    /// Square root of |det trd(e_r conj(e_s))|.
    Integer reduced_discriminant() const;
    bool is_maximal() const { return reduced_discriminant() == B_.p; }

    friend bool operator==(const OrderLattice &a, const OrderLattice &b) { return a.L_ == b.L_ && a.B_ == b.B_; }

  private:
    OrderLattice(QuatAlgebra B, Lattice L) : B_(std::move(B)), L_(std::move(L)) {}

    QuatAlgebra B_;
    Lattice L_;
};

/// True when L contains 1 and every product of basis elements lies in L.
bool is_order(const Lattice &L, const QuatAlgebra &B);

struct SpecialOrder {
    QuatAlgebra B;
    OrderLattice O;
    PrincipalForm f;
};

/// The special p-extremal maximal order for a prime p >= 5. Maximality is
/// checked before returning (VerificationFailed otherwise).
SpecialOrder build_special_order(const Integer &p);

/// The suborder R + Rj = Z<1, omega, j, omega j>.
Lattice suborder_lattice(const QuatAlgebra &B);

} // namespace quatpath
