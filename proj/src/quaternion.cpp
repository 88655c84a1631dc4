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

#include "quatpath/quaternion.hpp"

#include <sstream>

#include "quatpath/errors.hpp"
#include "quatpath/ntheory.hpp"

namespace quatpath {

PrincipalForm PrincipalForm::of_discriminant(const Integer &D)
{
    if (D >= 0) {
        throw InvalidInput("principal form needs a negative discriminant");
    }
    Integer r = ntheory::mod(D, 4);
    PrincipalForm f;
    f.D = D;
    if (r == 0) {
        f.b = 0;
        f.c = -D / 4;
    } else if (r == 1) {
        f.b = 1;
        f.c = (1 - D) / 4;
    } else {
        throw InvalidInput("discriminant must be 0 or 1 mod 4");
    }
    return f;
}

QuatElement &QuatElement::operator+=(const QuatElement &o)
{
    for (std::size_t i = 0; i < 4; ++i) {
        c_[i] += o.c_[i];
    }
    return *this;
}

QuatElement &QuatElement::operator-=(const QuatElement &o)
{
    for (std::size_t i = 0; i < 4; ++i) {
        c_[i] -= o.c_[i];
    }
    return *this;
}

QuatElement &QuatElement::operator*=(const Rational &s)
{
    for (auto &x : c_) {
        x *= s;
    }
    return *this;
}

QuatElement &QuatElement::operator/=(const Rational &s)
{
    if (s == 0) {
        throw InvalidInput("division of a quaternion by zero");
    }
    for (auto &x : c_) {
        x /= s;
    }
    return *this;
}

Integer QuatElement::denominator() const
{
    Integer d = 1;
    for (const auto &x : c_) {
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    }
    return d;
}

std::string QuatElement::to_string() const
{
    std::ostringstream os;
    os << '(' << c_[0] << ", " << c_[1] << ", " << c_[2] << ", " << c_[3] << ')';
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const QuatElement &x) { return os << x.to_string(); }

std::string to_string(SpecialCase c)
{
    switch (c) {
    case SpecialCase::gaussian:
        return "gaussian";
    case SpecialCase::sqrt_minus_2:
        return "sqrt_minus_2";
    case SpecialCase::odd_prime_q:
        return "odd_prime_q";
    }
    return "unknown";
}

SpecialCase special_case_from_string(const std::string &s)
{
    if (s == "gaussian") {
        return SpecialCase::gaussian;
    }
    if (s == "sqrt_minus_2") {
        return SpecialCase::sqrt_minus_2;
    }
    if (s == "odd_prime_q") {
        return SpecialCase::odd_prime_q;
    }
    throw InvalidInput("unknown algebra case '" + s + "'");
}

QuatAlgebra QuatAlgebra::for_prime(const Integer &p)
{
    if (p < 5 || !ntheory::is_prime(p)) {
        throw InvalidInput("p must be a prime >= 5, got " + p.get_str());
    }
    QuatAlgebra B;
    B.p = p;
    Integer r8 = ntheory::mod(p, 8);
    if (ntheory::mod(p, 4) == 3) {
        B.kind = SpecialCase::gaussian;
        B.q = 1;
        B.D = -4;
    } else if (r8 == 5) {
        B.kind = SpecialCase::sqrt_minus_2;
        B.q = 2;
        B.D = -8;
    } else {
        B.kind = SpecialCase::odd_prime_q;
        // Under GRH the first admissible q is below 2 log(p)^2; 16x that is
        // a generous cap.
        const double lp = ntheory::log2(p) * 0.6931471805599453;
        const Integer cap = Integer(static_cast<unsigned long>(32.0 * lp * lp) + 64);
        Integer q = 3;
        while (q <= cap) {
            if (ntheory::is_prime(q) && ntheory::kronecker(-p, q) == 1) {
                break;
            }
            q += 4;
        }
        if (q > cap) {
            throw SearchExhausted("no prime q = 3 mod 4 with (-p|q) = 1 below " + cap.get_str());
        }
        B.q = q;
        B.D = -q;
        B.c = ntheory::sqrt_mod_prime(-p, q);
    }
    B.validate();
    return B;
}

void QuatAlgebra::validate() const
{
    using ntheory::mod;
    auto fail = [](const std::string &why) { throw InvalidInput("inconsistent algebra: " + why); };
    if (p < 5 || !ntheory::is_prime(p)) {
        fail("p must be a prime >= 5");
    }
    switch (kind) {
    case SpecialCase::gaussian:
        if (mod(p, 4) != 3 || q != 1 || D != -4) {
            fail("gaussian case needs p = 3 mod 4, q = 1, D = -4");
        }
        break;
    case SpecialCase::sqrt_minus_2:
        if (mod(p, 8) != 5 || q != 2 || D != -8) {
            fail("sqrt_minus_2 case needs p = 5 mod 8, q = 2, D = -8");
        }
        break;
    case SpecialCase::odd_prime_q:
        if (mod(p, 4) != 1 || mod(q, 4) != 3 || !ntheory::is_prime(q) || D != -q ||
            ntheory::kronecker(-p, q) != 1) {
            fail("odd_prime_q case needs p = 1 mod 4, q = 3 mod 4 prime, (-p|q) = 1, D = -q");
        }
        if (!c || mod(*c * *c + p, q) != 0) {
            fail("c must be a root of x^2 + p mod q");
        }
        break;
    }
    if (ntheory::kronecker(D, p) == 1) {
        fail("p must not split in R");
    }
}

QuatElement QuatAlgebra::omega() const
{
    if (omega_is_half_integral()) {
        return {Rational(1, 2), Rational(1, 2), 0, 0};
    }
    return i();
}

PrincipalForm QuatAlgebra::norm_form() const { return PrincipalForm::of_discriminant(D); }

QuatElement QuatAlgebra::from_suborder(const Integer &x1, const Integer &y1, const Integer &x2,
                                       const Integer &y2) const
{
    QuatElement w = omega();
    QuatElement alpha = QuatElement::scalar(Rational(x1)) + w * Rational(y1);
    QuatElement beta = QuatElement::scalar(Rational(x2)) + w * Rational(y2);
    return alpha + mul(beta, j());
}

QuatElement QuatAlgebra::mul(const QuatElement &a, const QuatElement &b) const
{
    return QuatElement(quat_mul(a.coords(), b.coords(), p, q));
}

QuatElement conj(const QuatElement &a) { return QuatElement(quat_conj(a.coords())); }

Rational trd(const QuatElement &a) { return 2 * a[0]; }

QuatElement inverse(const QuatElement &a, const QuatAlgebra &B)
{
    Rational n = B.nrd(a);
    if (n == 0) {
        throw InvalidInput("zero has no inverse");
    }
    return conj(a) / n;
}

PrincipalForm suborder_norm_form(const QuatAlgebra &B) { return B.norm_form(); }

} // namespace quatpath
