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

#include <catch2/catch_amalgamated.hpp>

#include "quatpath/errors.hpp"
#include "quatpath/ntheory.hpp"
#include "quatpath/order.hpp"

using namespace quatpath;

namespace {

QuatElement random_element(Rng &rng, long bound, long den)
{
    QuatElement x;
    for (std::size_t i = 0; i < 4; ++i) {
        long v = static_cast<long>(ntheory::uniform_below(rng, 2 * bound + 1)) - bound;
        x[i] = Rational(v, den);
        x[i].canonicalize();
    }
    return x;
}

Integer random_prime_in_class(Rng &rng, unsigned bits, int residue, int modulus)
{
    while (true) {
        Integer p = ntheory::random_prime(rng, bits);
        if (ntheory::mod(p, modulus) == residue) {
            return p;
        }
    }
}

} // namespace

TEST_CASE("presentation relations", "[quatalg]")
{
    auto B = QuatAlgebra::for_prime(7);
    CHECK(B.mul(B.i(), B.j()) == B.k());
    CHECK(B.mul(B.j(), B.i()) == -B.k());
    CHECK(B.mul(B.i(), B.i()) == QuatElement::scalar(-B.q));
    CHECK(B.mul(B.j(), B.j()) == QuatElement::scalar(-B.p));
    QuatElement a = B.one() + B.i();
    QuatElement b = B.one() - B.i();
    CHECK(B.mul(a, b) == QuatElement::scalar(1 + B.q));
}

TEST_CASE("conjugation, trace and norm", "[quatalg]")
{
    auto B = QuatAlgebra::for_prime(7);
    CHECK(B.nrd(B.one()) == 1);
    CHECK(trd(B.j()) == 0);
    CHECK(B.nrd(QuatElement(1, 1, 1, 1)) == 16);

    Rng rng(11);
    for (Integer p : {Integer(7), Integer(13), Integer(17), Integer(1009)}) {
        auto A = QuatAlgebra::for_prime(p);
        for (int t = 0; t < 200; ++t) {
            QuatElement x = random_element(rng, 50, 6);
            QuatElement y = random_element(rng, 50, 4);
            CHECK(A.mul(x, conj(x)) == QuatElement::scalar(A.nrd(x)));
            CHECK(conj(A.mul(x, y)) == A.mul(conj(y), conj(x)));
            CHECK(QuatElement::scalar(trd(x)) == x + conj(x));
            CHECK(A.mul(A.mul(x, y), x) == A.mul(x, A.mul(y, x)));
        }
    }
}

TEST_CASE("nrd is multiplicative on 1000 pairs", "[quatalg][property]")
{
    Rng rng(12);
    auto B = QuatAlgebra::for_prime(Integer("1000000000000000003"));
    for (int t = 0; t < 1000; ++t) {
        QuatElement x = random_element(rng, 1000000, 1 + static_cast<long>(ntheory::uniform_below(rng, 12)));
        QuatElement y = random_element(rng, 1000000, 1 + static_cast<long>(ntheory::uniform_below(rng, 12)));
        REQUIRE(B.nrd(B.mul(x, y)) == B.nrd(x) * B.nrd(y));
    }
}

TEST_CASE("algebra cases and q search", "[quatalg]")
{
    auto B7 = QuatAlgebra::for_prime(7);
    CHECK(B7.kind == SpecialCase::gaussian);
    CHECK(B7.q == 1);
    CHECK(B7.D == -4);

    auto B13 = QuatAlgebra::for_prime(13);
    CHECK(B13.kind == SpecialCase::sqrt_minus_2);
    CHECK(B13.q == 2);
    CHECK(B13.D == -8);

    auto B17 = QuatAlgebra::for_prime(17);
    CHECK(B17.kind == SpecialCase::odd_prime_q);
    CHECK(B17.q == 3);
    CHECK(B17.D == -3);
    REQUIRE(B17.c);
    CHECK(*B17.c == 1);

    // 73: (-73|3) = (2|3) = -1, (-73|7) = (4|7) = 1.
    auto B73 = QuatAlgebra::for_prime(73);
    CHECK(B73.q == 7);

    CHECK_THROWS_AS(QuatAlgebra::for_prime(2), InvalidInput);
    CHECK_THROWS_AS(QuatAlgebra::for_prime(3), InvalidInput);
    CHECK_THROWS_AS(QuatAlgebra::for_prime(4), InvalidInput);
    CHECK_THROWS_AS(QuatAlgebra::for_prime(91), InvalidInput);

    QuatAlgebra bad = B17;
    bad.q = 7;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("principal norm forms", "[quatalg]")
{
    auto f4 = PrincipalForm::of_discriminant(-4);
    CHECK((f4.a == 1 && f4.b == 0 && f4.c == 1));
    auto f8 = PrincipalForm::of_discriminant(-8);
    CHECK((f8.a == 1 && f8.b == 0 && f8.c == 2));
    auto f3 = PrincipalForm::of_discriminant(-3);
    CHECK((f3.a == 1 && f3.b == 1 && f3.c == 1));
    for (long D : {-3L, -4L, -7L, -8L, -11L, -19L, -43L}) {
        auto f = PrincipalForm::of_discriminant(D);
        CHECK(f.b * f.b - 4 * f.a * f.c == D);
    }
    CHECK(suborder_norm_form(QuatAlgebra::for_prime(13)) == f8);
}

TEST_CASE("norm form identity on the suborder, 1000 tuples", "[quatalg][property]")
{
    Rng rng(13);
    for (Integer p : {Integer(1019), Integer(1013), Integer(1009), Integer("1152921504606847009")}) {
        auto B = QuatAlgebra::for_prime(p);
        auto f = B.norm_form();
        for (int t = 0; t < 250; ++t) {
            Integer v[4];
            for (auto &x : v) {
                x = ntheory::next_prime_candidate(rng, -100000, 100000);
            }
            QuatElement g = B.from_suborder(v[0], v[1], v[2], v[3]);
            REQUIRE(B.nrd(g) == Rational(f(v[0], v[1]) + p * f(v[2], v[3])));
        }
    }
}

TEST_CASE("special order examples", "[quatalg]")
{
    auto s7 = build_special_order(7);
    const std::array<QuatElement, 4> g7 = {QuatElement(1, 0, 0, 0), QuatElement(0, 1, 0, 0),
                                           QuatElement(Rational(1, 2), 0, Rational(1, 2), 0),
                                           QuatElement(0, Rational(1, 2), 0, Rational(1, 2))};
    CHECK(s7.O.lattice() == Lattice::from_generators(g7));
    CHECK(s7.O.reduced_discriminant() == 7);

    auto s13 = build_special_order(13);
    CHECK(s13.O.contains(QuatElement(Rational(1, 2), 0, Rational(1, 2), Rational(1, 2))));
    CHECK(s13.O.contains(QuatElement(0, Rational(1, 4), Rational(1, 2), Rational(1, 4))));
    CHECK(s13.O.reduced_discriminant() == 13);

    auto s17 = build_special_order(17);
    CHECK(s17.O.contains(QuatElement(Rational(1, 2), Rational(1, 2), 0, 0)));
    CHECK(s17.O.contains(QuatElement(0, Rational(1, 3), 0, Rational(1, 3))));
    // Gram determinant oracle computed independently from the basis.
    Rational det = determinant(trace_gram(s17.O.lattice(), s17.B));
    CHECK((det == 289 || det == -289));
}

TEST_CASE("special orders are maximal for 100 primes per class", "[quatalg][property]")
{
    Rng rng(14);
    const std::array<std::pair<int, int>, 3> classes = {{{3, 4}, {5, 8}, {1, 8}}};
    for (auto [res, modulus] : classes) {
        for (int t = 0; t < 100; ++t) {
            unsigned bits = 8 + static_cast<unsigned>(ntheory::uniform_below(rng, 90));
            Integer p = random_prime_in_class(rng, bits, res, modulus);
            auto s = build_special_order(p);
            REQUIRE(s.O.reduced_discriminant() == p);
            REQUIRE(s.O.contains(s.B.one()));
            REQUIRE(is_order(s.O.lattice(), s.B));
            Rational idx = index(suborder_lattice(s.B), s.O.lattice());
            REQUIRE(idx == Rational(-s.B.D));
        }
    }
}
