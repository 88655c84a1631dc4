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

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "quatpath/forms.hpp"

namespace quatpath {

/// Random source used by every randomized search. mt19937_64 has a fully
/// specified output sequence, so seeded runs reproduce across platforms.
using Rng = std::mt19937_64;

namespace ntheory {

struct PrimalityCertainty {
    enum class Kind { deterministic, probabilistic };
    Kind kind = Kind::probabilistic;
    unsigned rounds = 32;
};

struct CornacchiaSolution {
    Integer x;
    Integer y;
};

using Factorization = std::vector<std::pair<Integer, unsigned>>;

// ---------------------------------------------------------------------------
// Small helpers

Integer mod(const Integer &a, const Integer &n);
Integer inverse_mod(const Integer &a, const Integer &n);
Integer isqrt(const Integer &n);
bool is_square(const Integer &n);
Integer pow(const Integer &base, unsigned long e);

/// Bits needed to write n, i.e. floor(log2 n) + 1 for n > 0.
std::size_t bit_length(const Integer &n);

/// log2 of a positive integer as a double; exact enough for reporting.
double log2(const Integer &n);

/// Smallest e >= 0 with base^e >= n.
unsigned long ceil_log(const Integer &n, const Integer &base);

/// Largest e with base^e dividing n (n != 0, base >= 2).
unsigned long valuation(const Integer &n, const Integer &base);

// ---------------------------------------------------------------------------
// Primality and residues

/// Deterministic Miller-Rabin below 2^64; above, `certainty.rounds` rounds
/// with bases derived from n (error probability below 4^-rounds).
bool is_prime(const Integer &n, const PrimalityCertainty &certainty = {});

/// Kronecker symbol (a|n), n != 0.
int kronecker(const Integer &a, const Integer &n);

/// Square root of a modulo the prime N (Tonelli-Shanks), in [0, N).
/// nullopt when a is a non-residue.
std::optional<Integer> sqrt_mod_prime(const Integer &a, const Integer &N);

/// All square roots of a modulo p^e, in [0, p^e).
std::vector<Integer> sqrt_mod_prime_power(const Integer &a, const Integer &p, unsigned e);

/// Factor n by trial division up to `bound`, accepting a final cofactor
/// only if it is prime. nullopt when the factorization is not found.
std::optional<Factorization> factor_trial(const Integer &n, unsigned long bound = 1UL << 20);

// ---------------------------------------------------------------------------
// Quadratic forms

/// Solves x^2 + d y^2 = m. Prime m uses the classical descent directly;
/// composite m is factored by trial division and every square divisor and
/// every square root of -d is tried. Composite m whose factorization is not
/// found reports no solution.
std::optional<CornacchiaSolution> cornacchia(const Integer &d, const Integer &m);

/// Same, for a known factorization of m.
std::optional<CornacchiaSolution> cornacchia(const Integer &d, const Integer &m, const Factorization &factors);

/// Bound on the primes s whose squares are stripped by solve_principal_form.
inline constexpr unsigned long kSquareStripBound = 100;

/// Solves f(x, y) = r for a principal form f. Forms with odd discriminant go
/// through X^2 + |D| Y^2 = 4r, X = 2x + y, Y = y. With allow_square_factor,
/// squares of primes below kSquareStripBound are divided out of r first and
/// the solution is rescaled. A large composite target is accepted only when
/// removing the primes dividing D leaves 1 or a prime.
std::optional<std::pair<Integer, Integer>> solve_principal_form(const PrincipalForm &f, const Integer &r,
                                                                bool allow_square_factor);

// ---------------------------------------------------------------------------
// Randomness

/// Uniform 64-bit value below `bound` by rejection; independent of the
/// standard library's distribution implementation.
std::uint64_t uniform_below(Rng &rng, std::uint64_t bound);

/// Uniform integer in [lo, hi] (lo <= hi).
Integer next_prime_candidate(Rng &rng, const Integer &lo, const Integer &hi);

/// Uniform random prime with exactly `bits` bits (bits >= 3).
Integer random_prime(Rng &rng, unsigned bits);

} // namespace ntheory
} // namespace quatpath
