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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "quatpath/quaternion.hpp"

namespace quatpath {

using Vec4 = Coords<Integer>;
using Mat4 = std::array<Vec4, 4>;
using RatMat4 = std::array<Coords<Rational>, 4>;

/// Inverse of a rational 4x4 matrix; throws RankDeficient when singular.
RatMat4 inverse(const RatMat4 &m);
Rational determinant(RatMat4 m);
RatMat4 transpose(const RatMat4 &m);

/// Row-style Hermite normal form of an integer generator list: upper
/// triangular, positive diagonal, entries right of the diagonal in
/// [0, diagonal of their column). Throws RankDeficient below rank 4.
Mat4 hnf_integer(std::span<const Vec4> generators);

/// A full-rank lattice in B_{p,inf}, stored as rows / denominator with the
/// rows in Hermite normal form and the denominator as small as possible.
/// Two lattices are equal exactly when their representations are.
class Lattice {
  public:
    Lattice() = default;

    static Lattice from_generators(std::span<const QuatElement> generators);
    static Lattice from_integer_generators(const Integer &denominator, std::span<const Vec4> generators);

    const Integer &denominator() const { return den_; }
    const Mat4 &rows() const { return rows_; }

    QuatElement basis_element(std::size_t i) const;
    std::array<QuatElement, 4> basis() const;

    /// Integer coordinates of x in the basis, or nullopt when x is not in
    /// the lattice.
    std::optional<Vec4> coordinates(const QuatElement &x) const;
    bool contains(const QuatElement &x) const { return coordinates(x).has_value(); }
    bool contains(const Lattice &other) const;

    /// Covolume with respect to Z^4 = Z<1, i, j, k> coordinates.
    Rational volume() const;

    Lattice scaled(const Rational &c) const;

    friend bool operator==(const Lattice &, const Lattice &) = default;

  private:
    Lattice(Integer den, Mat4 rows) : den_(std::move(den)), rows_(std::move(rows)) {}
    static Lattice normalized(Integer den, Mat4 rows);

    Integer den_{1};
    Mat4 rows_{};
};

/// Canonical basis of the lattice spanned by the given elements.
inline Lattice hnf(std::span<const QuatElement> rows) { return Lattice::from_generators(rows); }

Lattice conj(const Lattice &L);
Lattice sum(const Lattice &a, const Lattice &b);
/// Lattice generated by all products x * y, x in a, y in b.
Lattice product(const Lattice &a, const Lattice &b, const QuatAlgebra &B);
/// The lattice a * x for a single element x.
Lattice right_multiply(const Lattice &a, const QuatElement &x, const QuatAlgebra &B);
Lattice left_multiply(const QuatElement &x, const Lattice &a, const QuatAlgebra &B);
/// Dual with respect to the coordinate dot product on {1, i, j, k}.
Lattice dual(const Lattice &L);
Lattice intersection(const Lattice &a, const Lattice &b);
/// [super : sub] as a rational (an integer when sub is contained in super).
Rational index(const Lattice &sub, const Lattice &super);

/// {x : L x in L} and {x : x L in L}.
Lattice right_stabilizer(const Lattice &L, const QuatAlgebra &B);
Lattice left_stabilizer(const Lattice &L, const QuatAlgebra &B);

/// Gram matrix trd(e_r conj(e_s)) of the basis.
RatMat4 trace_gram(const Lattice &L, const QuatAlgebra &B);

} // namespace quatpath
