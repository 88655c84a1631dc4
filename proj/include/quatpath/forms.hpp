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

#include <gmpxx.h>

namespace quatpath {

using Integer = mpz_class;
using Rational = mpq_class;

/// Principal binary quadratic form f(x,y) = a x^2 + b xy + c y^2 of
/// discriminant D < 0, with a = 1 and b in {0, 1}.
struct PrincipalForm {
    Integer D;
    Integer a{1};
    Integer b{0};
    Integer c{1};

    /// The principal form of discriminant D (D = 0 or 1 mod 4, D < 0).
    static PrincipalForm of_discriminant(const Integer &D);

    Integer operator()(const Integer &x, const Integer &y) const { return a * x * x + b * x * y + c * y * y; }

    /// f(u + v) - f(u) - f(v).
    Integer polar(const Integer &x0, const Integer &y0, const Integer &x1, const Integer &y1) const
    {
        return 2 * a * x0 * x1 + b * (x0 * y1 + y0 * x1) + 2 * c * y0 * y1;
    }

    friend bool operator==(const PrincipalForm &, const PrincipalForm &) = default;
};

} // namespace quatpath
