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
#include <ostream>
#include <string>

#include "quatpath/forms.hpp"

namespace quatpath {

/// Coordinates over {1, i, j, k}, generic in the scalar.
template <typename Scalar> using Coords = std::array<Scalar, 4>;

/// Product in the algebra i^2 = -q, j^2 = -p, k = ij = -ji.
template <typename Scalar>
Coords<Scalar> quat_mul(const Coords<Scalar> &x, const Coords<Scalar> &y, const Integer &p, const Integer &q)
{
    Coords<Scalar> z;
    z[0] = x[0] * y[0] - q * x[1] * y[1] - p * x[2] * y[2] - p * q * x[3] * y[3];
    z[1] = x[0] * y[1] + x[1] * y[0] + p * (x[2] * y[3] - x[3] * y[2]);
    z[2] = x[0] * y[2] + x[2] * y[0] + q * (x[3] * y[1] - x[1] * y[3]);
    z[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    return z;
}

template <typename Scalar> Coords<Scalar> quat_conj(const Coords<Scalar> &x) { return {x[0], -x[1], -x[2], -x[3]}; }

template <typename Scalar> Scalar quat_nrd(const Coords<Scalar> &x, const Integer &p, const Integer &q)
{
    return x[0] * x[0] + q * x[1] * x[1] + p * x[2] * x[2] + p * q * x[3] * x[3];
}

/// trd(x * conj(y)), the polar form of nrd.
template <typename Scalar>
Scalar quat_bilinear(const Coords<Scalar> &x, const Coords<Scalar> &y, const Integer &p, const Integer &q)
{
    return 2 * (x[0] * y[0] + q * x[1] * y[1] + p * x[2] * y[2] + p * q * x[3] * y[3]);
}

/// An element of B_{p,inf} with exact rational coordinates over {1, i, j, k}.
class QuatElement {
  public:
    QuatElement() : c_{Rational(0), Rational(0), Rational(0), Rational(0)} {}
    QuatElement(Rational x0, Rational x1, Rational x2, Rational x3) : c_{x0, x1, x2, x3} {}
    explicit QuatElement(const Coords<Rational> &c) : c_(c) {}
    static QuatElement scalar(const Rational &r) { return {r, 0, 0, 0}; }

    const Rational &operator[](std::size_t i) const { return c_[i]; }
    Rational &operator[](std::size_t i) { return c_[i]; }
    const Coords<Rational> &coords() const { return c_; }

    QuatElement &operator+=(const QuatElement &o);
    QuatElement &operator-=(const QuatElement &o);
    QuatElement &operator*=(const Rational &s);
    QuatElement &operator/=(const Rational &s);

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    /// Least common denominator of the coordinates.
    Integer denominator() const;

    friend bool operator==(const QuatElement &a, const QuatElement &b) { return a.c_ == b.c_; }
    friend QuatElement operator+(QuatElement a, const QuatElement &b) { return a += b; }
    friend QuatElement operator-(QuatElement a, const QuatElement &b) { return a -= b; }
    friend QuatElement operator-(const QuatElement &a) { return QuatElement{-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]}; }
    friend QuatElement operator*(QuatElement a, const Rational &s) { return a *= s; }
    friend QuatElement operator*(const Rational &s, QuatElement a) { return a *= s; }
    friend QuatElement operator/(QuatElement a, const Rational &s) { return a /= s; }

    std::string to_string() const;

  private:
    Coords<Rational> c_;
};

std::ostream &operator<<(std::ostream &os, const QuatElement &x);

/// Which quadratic ring R = O n Q(i) the special order is built around.
enum class SpecialCase {
    gaussian,     ///< p = 3 mod 4, q = 1, R = Z[i], D = -4
    sqrt_minus_2, ///< p = 5 mod 8, q = 2, R = Z[sqrt(-2)], D = -8
    odd_prime_q,  ///< p = 1 mod 8, q = 3 mod 4 prime with (-p|q) = 1, D = -q
};

std::string to_string(SpecialCase c);
SpecialCase special_case_from_string(const std::string &s);

/// The presentation i^2 = -q, j^2 = -p, k = ij = -ji of B_{p,inf} together
/// with the distinguished quadratic ring R = Z[omega] of discriminant D.
struct QuatAlgebra {
    Integer p;
    Integer q;
    Integer D;
    SpecialCase kind = SpecialCase::gaussian;
    /// Root of x^2 + p mod q, present for odd_prime_q only.
    std::optional<Integer> c;

    /// Presentation for a prime p >= 5, choosing q as the smallest admissible
    /// value (sequential search over primes q = 3 mod 4 when p = 1 mod 8).
    static QuatAlgebra for_prime(const Integer &p);

    /// Checks the congruence conditions tying p, q, D and the case together.
    void validate() const;

    bool omega_is_half_integral() const { return kind == SpecialCase::odd_prime_q; }

    QuatElement one() const { return {1, 0, 0, 0}; }
    QuatElement i() const { return {0, 1, 0, 0}; }
    QuatElement j() const { return {0, 0, 1, 0}; }
    QuatElement k() const { return {0, 0, 0, 1}; }

    /// Generator of R: i, or (1 + i)/2 when D is odd.
    QuatElement omega() const;

    /// Principal form f(x, y) = nrd(x + y omega).
    PrincipalForm norm_form() const;

    /// x1 + y1 omega + (x2 + y2 omega) j.
    QuatElement from_suborder(const Integer &x1, const Integer &y1, const Integer &x2, const Integer &y2) const;

    QuatElement mul(const QuatElement &a, const QuatElement &b) const;
    Rational nrd(const QuatElement &a) const { return quat_nrd(a.coords(), p, q); }

    friend bool operator==(const QuatAlgebra &, const QuatAlgebra &) = default;
};

QuatElement conj(const QuatElement &a);
Rational trd(const QuatElement &a);
inline Rational nrd(const QuatElement &a, const QuatAlgebra &B) { return B.nrd(a); }
inline QuatElement mul(const QuatElement &a, const QuatElement &b, const QuatAlgebra &B) { return B.mul(a, b); }

/// Inverse conj(a) / nrd(a); throws InvalidInput for a = 0.
QuatElement inverse(const QuatElement &a, const QuatAlgebra &B);

/// Principal form attached to B; equals B.norm_form().
PrincipalForm suborder_norm_form(const QuatAlgebra &B);

} // namespace quatpath
