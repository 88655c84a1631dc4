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

#include <optional>
#include <vector>

#include "quatpath/ideal.hpp"

namespace quatpath {

using IntGram = std::array<std::array<Integer, 4>, 4>;

/// Rows of `transform` are coefficient vectors over the input basis; `gram`
/// is the Gram matrix of those rows.
struct BasisTransform {
    Mat4 transform;
    IntGram gram;
};

/// LLL with delta = 99/100 on a positive definite integral Gram matrix.
/// The first `frozen` basis vectors are kept in place.
BasisTransform lll_reduce(const IntGram &gram, std::size_t frozen = 0);

/// Greedy Minkowski reduction: vector k is a shortest vector extending the
/// first k - 1 to a basis. In rank 4 the result attains the successive minima.
BasisTransform minkowski_transform(const IntGram &gram);

/// Every nonzero v with v^T G v <= bound, one of each pair +-v. Meant for
/// tests and small bounds.
std::vector<Vec4> short_vectors(const IntGram &gram, const Integer &bound);

/// Integral Gram matrix of the bilinear form trd(x conj(y)) / divisor on the
/// lattice basis; throws InvalidInput if it is not integral.
IntGram norm_gram(const Lattice &L, const QuatAlgebra &B, const Integer &divisor);

struct ReducedBasis {
    std::array<QuatElement, 4> elements;
    /// nrd(elements[i]) / divisor, ascending.
    std::array<Integer, 4> norms;
};

/// Minkowski-reduced basis of L for the form nrd(x) / divisor.
ReducedBasis minkowski_reduce(const Lattice &L, const QuatAlgebra &B, const Integer &divisor);

/// Minkowski-reduced basis of I for q_I.
ReducedBasis minkowski_reduce(const LeftIdeal &I);

/// beta with J = I beta when the two ideals are in the same left ideal class.
std::optional<QuatElement> equivalence_witness(const LeftIdeal &I, const LeftIdeal &J);

inline bool is_equivalent(const LeftIdeal &I, const LeftIdeal &J) { return equivalence_witness(I, J).has_value(); }

} // namespace quatpath
