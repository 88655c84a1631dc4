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

#include <set>
#include <vector>

#include "quatpath/errors.hpp"
#include "quatpath/ntheory.hpp"

using namespace quatpath;
using namespace quatpath::ntheory;

namespace {

std::vector<bool> sieve(std::size_t n)
{
    std::vector<bool> prime(n + 1, true);
    prime[0] = false;
    if (n >= 1) {
        prime[1] = false;
    }
    for (std::size_t i = 2; i * i <= n; ++i) {
        if (prime[i]) {
            for (std::size_t j = i * i; j <= n; j += i) {
                prime[j] = false;
            }
        }
    }
    return prime;
}

/// Every m <= bound of the form a x^2 + b xy + c y^2 over all integers x, y.
std::vector<bool> representable(long a, long b, long c, long bound)
{
    std::vector<bool> hit(bound + 1, false);
    // Positive definite: a f(x, y) >= (4ac - b^2) y^2 / 4, so |y| is bounded.
    const long disc = 4 * a * c - b * b;
    long ymax = 0;
    while (disc * (ymax + 1) * (ymax + 1) <= 4 * a * bound) {
        ++ymax;
    }
    for (long y = -ymax; y <= ymax; ++y) {
        for (long x = -2000; x <= 2000; ++x) {
            long v = a * x * x + b * x * y + c * y * y;
            if (v >= 0 && v <= bound) {
                hit[v] = true;
            }
        }
    }
    return hit;
}

} // namespace

TEST_CASE("is_prime small values", "[ntheory]")
{
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(341));
    CHECK_FALSE(is_prime(561));
    CHECK(is_prime(Integer("18446744073709551557")));
    CHECK_FALSE(is_prime(Integer("3825123056546413051")));
    // 2^127 - 1 and a composite neighbour above 2^64.
    Integer m127 = pow(Integer(2), 127) - 1;
    CHECK(is_prime(m127));
    CHECK_FALSE(is_prime(m127 * 3));
    CHECK(is_prime(m127, {PrimalityCertainty::Kind::deterministic, 32}));
}

TEST_CASE("is_prime matches a sieve up to 10^6", "[ntheory][oracle]")
{
    const std::size_t n = 1000000;
    auto prime = sieve(n);
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        if (is_prime(Integer(static_cast<unsigned long>(k))) != prime[k]) {
            ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("kronecker symbol", "[ntheory]")
{
    CHECK(kronecker(-1, 7) == -1);
    CHECK(kronecker(-17, 3) == 1);
    for (int n = 3; n < 200; n += 2) {
        CHECK(kronecker(1, n) == 1);
    }
    CHECK_THROWS_AS(kronecker(3, 0), InvalidInput);
    // Legendre symbol against squares mod small primes.
    for (long P : {3L, 5L, 7L, 11L, 13L, 101L}) {
        std::set<long> squares;
        for (long x = 1; x < P; ++x) {
            squares.insert(x * x % P);
        }
        for (long a = 1; a < P; ++a) {
            CHECK(kronecker(a, P) == (squares.count(a) ? 1 : -1));
        }
    }
}

TEST_CASE("sqrt_mod_prime", "[ntheory][oracle]")
{
    CHECK(sqrt_mod_prime(0, 11) == Integer(0));
    auto r = sqrt_mod_prime(2, 7);
    REQUIRE(r);
    CHECK((*r == 3 || *r == 4));
    CHECK_FALSE(sqrt_mod_prime(3, 7));

    auto prime = sieve(2000);
    for (long P = 2; P < 2000; ++P) {
        if (!prime[P]) {
            continue;
        }
        for (long a = 0; a < P; ++a) {
            auto s = sqrt_mod_prime(a, P);
            if (s) {
                CHECK(*s >= 0);
                CHECK(*s < P);
                CHECK(mod(*s * *s - a, P) == 0);
            } else {
                CHECK(kronecker(a, P) == -1);
            }
        }
    }
}

TEST_CASE("sqrt_mod_prime on large primes", "[ntheory]")
{
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        Integer P = random_prime(rng, 100);
        Integer x = next_prime_candidate(rng, 1, P - 1);
        Integer a = mod(x * x, P);
        auto s = sqrt_mod_prime(a, P);
        REQUIRE(s);
        CHECK(mod(*s * *s - a, P) == 0);
    }
}

TEST_CASE("sqrt_mod_prime_power agrees with exhaustive search", "[ntheory][oracle]")
{
    for (long P : {2L, 3L, 5L, 7L}) {
        for (unsigned e = 1; e <= 4; ++e) {
            long mod_pe = 1;
            for (unsigned i = 0; i < e; ++i) {
                mod_pe *= P;
            }
            for (long a = 0; a < mod_pe; ++a) {
                std::set<long> expected;
                for (long x = 0; x < mod_pe; ++x) {
                    if ((x * x - a) % mod_pe == 0) {
                        expected.insert(x);
                    }
                }
                std::set<long> got;
                for (const auto &r : sqrt_mod_prime_power(a, P, e)) {
                    got.insert(r.get_si());
                }
                CHECK(got == expected);
            }
        }
    }
}

TEST_CASE("cornacchia examples", "[ntheory]")
{
    auto s = cornacchia(1, 1);
    REQUIRE(s);
    CHECK(s->x * s->x + s->y * s->y == 1);

    s = cornacchia(1, 13);
    REQUIRE(s);
    CHECK(((s->x == 3 && s->y == 2) || (s->x == 2 && s->y == 3)));

    s = cornacchia(3, 7);
    REQUIRE(s);
    CHECK(s->x == 2);
    CHECK(s->y == 1);

    CHECK_FALSE(cornacchia(3, 5));
}

TEST_CASE("cornacchia agrees with brute force up to 10^5", "[ntheory][oracle]")
{
    const long bound = 100000;
    for (long d : {1L, 2L, 3L, 7L, 11L, 19L}) {
        auto hit = representable(1, 0, d, bound);
        long disagreements = 0;
        long bad_pairs = 0;
        for (long m = 1; m <= bound; ++m) {
            auto s = cornacchia(d, m);
            if (s.has_value() != hit[m]) {
                ++disagreements;
            }
            if (s && s->x * s->x + d * s->y * s->y != m) {
                ++bad_pairs;
            }
        }
        INFO("d = " << d);
        CHECK(disagreements == 0);
        CHECK(bad_pairs == 0);
    }
}

TEST_CASE("solve_principal_form examples", "[ntheory]")
{
    auto f4 = PrincipalForm::of_discriminant(-4);
    auto r = solve_principal_form(f4, 25, false);
    REQUIRE(r);
    CHECK(f4(r->first, r->second) == 25);
    CHECK_FALSE(solve_principal_form(f4, 21, false));

    auto f3 = PrincipalForm::of_discriminant(-3);
    CHECK(f3.b == 1);
    CHECK(f3.c == 1);
    r = solve_principal_form(f3, 7, false);
    REQUIRE(r);
    CHECK(f3(r->first, r->second) == 7);

    // 2^2 * 3^2 * 13: the square part is stripped and the solution rescaled.
    r = solve_principal_form(f4, 468, true);
    REQUIRE(r);
    CHECK(f4(r->first, r->second) == 468);
}

TEST_CASE("solve_principal_form agrees with brute force up to 10^5", "[ntheory][oracle]")
{
    const long bound = 100000;
    for (long D : {-3L, -4L, -7L, -8L, -11L, -19L}) {
        auto f = PrincipalForm::of_discriminant(D);
        auto hit = representable(f.a.get_si(), f.b.get_si(), f.c.get_si(), bound);
        long disagreements = 0;
        long bad = 0;
        for (long m = 1; m <= bound; ++m) {
            for (bool strip : {false, true}) {
                auto s = solve_principal_form(f, m, strip);
                if (s.has_value() != hit[m]) {
                    ++disagreements;
                }
                if (s && f(s->first, s->second) != m) {
                    ++bad;
                }
            }
        }
        INFO("D = " << D);
        CHECK(disagreements == 0);
        CHECK(bad == 0);
    }
}

TEST_CASE("next_prime_candidate range and determinism", "[ntheory]")
{
    Rng rng(1);
    CHECK(next_prime_candidate(rng, 5, 5) == 5);
    std::set<long> seen;
    for (int i = 0; i < 2000; ++i) {
        Integer v = next_prime_candidate(rng, 0, 9);
        CHECK(v >= 0);
        CHECK(v <= 9);
        seen.insert(v.get_si());
    }
    CHECK(seen.size() == 10);

    Rng a(99);
    Rng b(99);
    Integer hi = pow(Integer(2), 200);
    for (int i = 0; i < 20; ++i) {
        CHECK(next_prime_candidate(a, 0, hi) == next_prime_candidate(b, 0, hi));
    }
}

TEST_CASE("random_prime has the requested size", "[ntheory]")
{
    Rng rng(3);
    for (unsigned bits : {3u, 10u, 64u, 80u}) {
        Integer P = random_prime(rng, bits);
        CHECK(bit_length(P) == bits);
        CHECK(is_prime(P));
    }
}

TEST_CASE("small helpers", "[ntheory]")
{
    CHECK(ceil_log(1, 2) == 0);
    CHECK(ceil_log(8, 2) == 3);
    CHECK(ceil_log(9, 2) == 4);
    CHECK(valuation(48, 2) == 4);
    CHECK(isqrt(99) == 9);
    CHECK(is_square(144));
    CHECK_FALSE(is_square(143));
    CHECK(inverse_mod(3, 7) == 5);
    CHECK_THROWS_AS(inverse_mod(7, 21), InvalidInput);
    CHECK(mod(-3, 7) == 4);
}

TEST_CASE("solve_principal_form accepts ramified cofactors of large targets", "[ntheory]")
{
    Rng rng(8);
    for (long D : {-3L, -4L, -8L, -7L, -11L}) {
        auto f = PrincipalForm::of_discriminant(D);
        const Integer ram = D == -4 || D == -8 ? Integer(2) : Integer(-D);
        int found = 0;
        for (int t = 0; t < 40; ++t) {
            // f(x, y) * f(ramified generator) stays a value of f.
            Integer x = next_prime_candidate(rng, Integer(1) << 40, Integer(1) << 41);
            Integer y = next_prime_candidate(rng, Integer(1) << 40, Integer(1) << 41);
            Integer v = f(x, y);
            auto s = solve_principal_form(f, v, true);
            if (s) {
                CHECK(f(s->first, s->second) == v);
            }
            Integer r = random_prime(rng, 61);
            if (kronecker(D, r) != 1) {
                continue;
            }
            auto sr = solve_principal_form(f, r * ram, false);
            if (sr) {
                CHECK(f(sr->first, sr->second) == r * ram);
                ++found;
            }
        }
        INFO("D = " << D);
        // Class number one: every split prime times the ramified norm is a value.
        CHECK(found > 0);
    }
    // Unknown composite cofactors are still rejected.
    Integer big = Integer("1000000000000000003") * Integer("1000000000000000009");
    CHECK_FALSE(solve_principal_form(PrincipalForm::of_discriminant(-4), big * 2, false));
}
