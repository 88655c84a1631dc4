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

#include "quatpath/ntheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "quatpath/errors.hpp"

namespace quatpath::ntheory {

namespace {

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

std::uint64_t low_bits(const Integer &n)
{
    // mpz_getlimbn returns the least significant limb; limbs are 64-bit here.
    static_assert(sizeof(mp_limb_t) == 8, "64-bit limbs expected");
    return mpz_size(n.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(n.get_mpz_t(), 0);
}

/// One strong-probable-prime round for odd n > 3 with n - 1 = d * 2^s.
bool strong_probable_prime(const Integer &n, const Integer &d, unsigned long s, const Integer &base)
{
    Integer n_minus_1 = n - 1;
    Integer x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) {
        return true;
    }
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) {
            return true;
        }
        if (x == 1) {
            return false;
        }
    }
    return false;
}

/// Chinese remaindering of two residue sets.
std::vector<Integer> crt_combine(const std::vector<Integer> &ra, const Integer &ma, const std::vector<Integer> &rb,
                                 const Integer &mb)
{
    std::vector<Integer> out;
    out.reserve(ra.size() * rb.size());
    Integer inv = inverse_mod(ma, mb);
    Integer m = ma * mb;
    for (const auto &a : ra) {
        for (const auto &b : rb) {
            // x = a + ma * ((b - a) * inv mod mb)
            Integer t = mod((b - a) * inv, mb);
            out.push_back(mod(a + ma * t, m));
        }
    }
    return out;
}

/// Cornacchia descent for a single square root t of -d modulo m.
std::optional<CornacchiaSolution> descend(const Integer &d, const Integer &m, Integer t)
{
    if (2 * t > m) {
        t = m - t;
    }
    Integer a = m;
    Integer b = t;
    while (b * b >= m) {
        Integer r = a % b;
        a = b;
        b = r;
    }
    Integer rest = m - b * b;
    if (rest % d != 0) {
        return std::nullopt;
    }
    Integer y2 = rest / d;
    if (!is_square(y2)) {
        return std::nullopt;
    }
    return CornacchiaSolution{b, isqrt(y2)};
}

Factorization merge_factor(Factorization f, const Integer &p, unsigned e)
{
    for (auto &[q, k] : f) {
        if (q == p) {
            k += e;
            return f;
        }
    }
    f.emplace_back(p, e);
    return f;
}

} // namespace

Integer mod(const Integer &a, const Integer &n)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

Integer inverse_mod(const Integer &a, const Integer &n)
{
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) {
        throw InvalidInput("value is not invertible modulo " + n.get_str());
    }
    return r;
}

Integer isqrt(const Integer &n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Integer &n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer pow(const Integer &base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

std::size_t bit_length(const Integer &n) { return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2); }

double log2(const Integer &n)
{
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log2(std::abs(mant)) + static_cast<double>(exp);
}

unsigned long ceil_log(const Integer &n, const Integer &base)
{
    unsigned long e = 0;
    Integer acc = 1;
    while (acc < n) {
        acc *= base;
        ++e;
    }
    return e;
}

unsigned long valuation(const Integer &n, const Integer &base)
{
    unsigned long v = 0;
    Integer m = n;
    while (m != 0 && m % base == 0) {
        m /= base;
        ++v;
    }
    return v;
}

bool is_prime(const Integer &n, const PrimalityCertainty &certainty)
{
    if (n < 2) {
        return false;
    }
    for (unsigned p : kSmallPrimes) {
        if (n == p) {
            return true;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            return false;
        }
    }
    if (n < 97 * 97) {
        return true;
    }

    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    const bool below_2_64 = bit_length(n) <= 64;
    if (below_2_64 || certainty.kind == PrimalityCertainty::Kind::deterministic) {
        // These twelve bases are a proven certificate below 3.3 * 10^24.
        static constexpr std::array<unsigned, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        for (unsigned b : bases) {
            if (!strong_probable_prime(n, d, s, Integer(b))) {
                return false;
            }
        }
        if (below_2_64) {
            return true;
        }
    }

    // Bases are derived from n itself so the function stays pure.
    Rng local(low_bits(n) ^ (static_cast<std::uint64_t>(bit_length(n)) << 48));
    for (unsigned round = 0; round < certainty.rounds; ++round) {
        Integer base = next_prime_candidate(local, Integer(2), n - 2);
        if (!strong_probable_prime(n, d, s, base)) {
            return false;
        }
    }
    return true;
}

int kronecker(const Integer &a, const Integer &n)
{
    if (n == 0) {
        throw InvalidInput("kronecker symbol with n = 0");
    }
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::optional<Integer> sqrt_mod_prime(const Integer &a_in, const Integer &N)
{
    Integer a = mod(a_in, N);
    if (a == 0) {
        return Integer(0);
    }
    if (N == 2) {
        return a;
    }
    if (kronecker(a, N) != 1) {
        return std::nullopt;
    }
    Integer r;
    if (mod(N, 4) == 3) {
        Integer e = (N + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), N.get_mpz_t());
        return r;
    }

    // Tonelli-Shanks.
    Integer q = N - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    Integer z = 2;
    while (kronecker(z, N) != -1) {
        ++z;
    }
    Integer c, t, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), N.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), N.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), N.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % N;
            ++i;
        }
        Integer b = c;
        for (unsigned long k = 0; k + i + 1 < m; ++k) {
            b = b * b % N;
        }
        m = i;
        c = b * b % N;
        t = t * c % N;
        r = r * b % N;
    }
    return r;
}

std::vector<Integer> sqrt_mod_prime_power(const Integer &a_in, const Integer &p, unsigned e)
{
    std::vector<Integer> roots;
    if (e == 0) {
        return {Integer(0)};
    }
    Integer a_mod_p = mod(a_in, p);
    if (p == 2 || p < 64) {
        for (Integer t = 0; t < p; ++t) {
            if (mod(t * t - a_in, p) == 0) {
                roots.push_back(t);
            }
        }
    } else if (auto r = sqrt_mod_prime(a_mod_p, p)) {
        roots.push_back(*r);
        if (*r != 0) {
            roots.push_back(p - *r);
        }
    }

    Integer pk = p;
    for (unsigned k = 1; k < e; ++k) {
        Integer next_pk = pk * p;
        std::vector<Integer> lifted;
        for (const auto &t : roots) {
            if (p != 2 && mod(t, p) != 0) {
                // Hensel: unique lift when the derivative 2t is a unit.
                Integer fix = mod((t * t - a_in) * inverse_mod(2 * t, next_pk), next_pk);
                lifted.push_back(mod(t - fix, next_pk));
                continue;
            }
            for (Integer s = 0; s < p; ++s) {
                Integer cand = t + s * pk;
                if (mod(cand * cand - a_in, next_pk) == 0) {
                    lifted.push_back(cand);
                }
            }
        }
        roots = std::move(lifted);
        pk = next_pk;
        if (roots.empty()) {
            break;
        }
    }
    return roots;
}

std::optional<Factorization> factor_trial(const Integer &n_in, unsigned long bound)
{
    Factorization out;
    Integer n = n_in;
    if (n < 1) {
        return std::nullopt;
    }
    auto strip = [&](unsigned long q) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
            ++e;
        }
        if (e > 0) {
            out.emplace_back(Integer(q), e);
        }
    };
    strip(2);
    for (unsigned long q = 3; q <= bound; q += 2) {
        if (n == 1) {
            break;
        }
        if (Integer(q) * q > n) {
            break;
        }
        strip(q);
    }
    if (n == 1) {
        return out;
    }
    if (!is_prime(n)) {
        return std::nullopt;
    }
    out.emplace_back(n, 1);
    return out;
}

std::optional<CornacchiaSolution> cornacchia(const Integer &d, const Integer &m)
{
    if (d < 1 || m < 0) {
        throw InvalidInput("cornacchia requires d >= 1 and m >= 0");
    }
    if (m == 0) {
        return CornacchiaSolution{0, 0};
    }
    if (is_square(m)) {
        return CornacchiaSolution{isqrt(m), 0};
    }
    if (is_prime(m)) {
        return cornacchia(d, m, Factorization{{m, 1}});
    }
    auto factors = factor_trial(m);
    if (!factors) {
        return std::nullopt;
    }
    return cornacchia(d, m, *factors);
}

std::optional<CornacchiaSolution> cornacchia(const Integer &d, const Integer &m, const Factorization &factors)
{
    if (m == 0) {
        return CornacchiaSolution{0, 0};
    }
    if (is_square(m)) {
        return CornacchiaSolution{isqrt(m), 0};
    }

    // Every solution is g * (primitive solution of m / g^2) for a square
    // divisor g^2 of m. Walk the exponent vectors of g.
    std::vector<unsigned> half(factors.size(), 0);
    while (true) {
        Integer g = 1;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            g *= pow(factors[i].first, half[i]);
        }
        Integer reduced = m / (g * g);

        std::vector<Integer> roots{Integer(0)};
        Integer modulus = 1;
        for (std::size_t i = 0; i < factors.size() && !roots.empty(); ++i) {
            unsigned e = factors[i].second - 2 * half[i];
            if (e == 0) {
                continue;
            }
            Integer pe = pow(factors[i].first, e);
            auto local = sqrt_mod_prime_power(-d, factors[i].first, e);
            roots = local.empty() ? std::vector<Integer>{} : crt_combine(roots, modulus, local, pe);
            modulus *= pe;
        }
        for (const auto &t : roots) {
            if (auto sol = descend(d, reduced, t)) {
                return CornacchiaSolution{g * sol->x, g * sol->y};
            }
        }

        std::size_t i = 0;
        for (; i < factors.size(); ++i) {
            if (2 * (half[i] + 1) <= factors[i].second) {
                ++half[i];
                break;
            }
            half[i] = 0;
        }
        if (i == factors.size()) {
            return std::nullopt;
        }
    }
}

std::optional<std::pair<Integer, Integer>> solve_principal_form(const PrincipalForm &f, const Integer &r_in,
                                                                bool allow_square_factor)
{
    if (r_in < 0) {
        return std::nullopt;
    }
    if (r_in == 0) {
        return std::make_pair(Integer(0), Integer(0));
    }
    Integer r = r_in;
    Integer scale = 1;
    if (allow_square_factor) {
        for (unsigned s : kSmallPrimes) {
            if (s >= kSquareStripBound) {
                break;
            }
            const unsigned long s2 = static_cast<unsigned long>(s) * s;
            while (mpz_divisible_ui_p(r.get_mpz_t(), s2) != 0) {
                mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), s2);
                scale *= s;
            }
        }
    }

    Factorization factors;
    if (r == 1) {
        factors = {};
    } else if (is_prime(r)) {
        factors = {{r, 1}};
    } else if (bit_length(r) <= 40) {
        auto found = factor_trial(r);
        if (!found) {
            return std::nullopt;
        }
        factors = std::move(*found);
    } else {
        // Ramified primes (divisors of D) are the one known kind of factor.
        auto ramified = factor_trial(-f.D);
        if (!ramified) {
            return std::nullopt;
        }
        Integer rest = r;
        for (const auto &[q, unused] : *ramified) {
            unsigned k = 0;
            while (rest % q == 0) {
                rest /= q;
                ++k;
            }
            if (k > 0) {
                factors.emplace_back(q, k);
            }
        }
        if (factors.empty() || (rest != 1 && !is_prime(rest))) {
            return std::nullopt;
        }
        if (rest != 1) {
            factors.emplace_back(rest, 1);
        }
    }

    Integer x, y;
    if (f.b == 0) {
        auto sol = cornacchia(f.c, r, factors);
        if (!sol) {
            return std::nullopt;
        }
        x = sol->x;
        y = sol->y;
    } else {
        // 4 f(x, y) = (2x + y)^2 + |D| y^2.
        Integer absD = -f.D;
        auto sol = cornacchia(absD, 4 * r, merge_factor(factors, Integer(2), 2));
        if (!sol) {
            return std::nullopt;
        }
        x = (sol->x - sol->y) / 2;
        y = sol->y;
    }
    x *= scale;
    y *= scale;
    if (f(x, y) != r_in) {
        throw VerificationFailed("principal form solution does not evaluate to the target");
    }
    return std::make_pair(x, y);
}

std::uint64_t uniform_below(Rng &rng, std::uint64_t bound)
{
    if (bound == 0) {
        throw InvalidInput("uniform_below with bound 0");
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    std::uint64_t x = rng();
    while (x > limit) {
        x = rng();
    }
    return x % bound;
}

Integer next_prime_candidate(Rng &rng, const Integer &lo, const Integer &hi)
{
    if (lo > hi) {
        throw InvalidInput("empty sampling range");
    }
    Integer range = hi - lo + 1;
    if (range == 1) {
        return lo;
    }
    const std::size_t bits = bit_length(range - 1);
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
    while (true) {
        Integer x = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t chunk = rng();
            if (w == 0 && top_bits < 64) {
                chunk &= (std::uint64_t{1} << top_bits) - 1;
            }
            x <<= 64;
            Integer c;
            mpz_import(c.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
            x += c;
        }
        if (x < range) {
            return lo + x;
        }
    }
}

Integer random_prime(Rng &rng, unsigned bits)
{
    if (bits < 3) {
        throw InvalidInput("random_prime needs at least 3 bits");
    }
    Integer lo = pow(Integer(2), bits - 1);
    Integer hi = 2 * lo - 1;
    while (true) {
        Integer c = next_prime_candidate(rng, lo, hi);
        if (is_prime(c)) {
            return c;
        }
    }
}

} // namespace quatpath::ntheory
