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

#include "quatpath/ideal.hpp"

#include <vector>

#include "quatpath/errors.hpp"

namespace quatpath {

namespace {

bool left_closed(const OrderLattice &O, const Lattice &L)
{
    const QuatAlgebra &B = O.algebra();
    const auto lb = L.basis();
    for (const auto &o : O.basis()) {
        for (const auto &x : lb) {
            if (!L.contains(B.mul(o, x))) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

LeftIdeal LeftIdeal::from_lattice(const OrderLattice &O, Lattice L)
{
    if (!O.lattice().contains(L)) {
        throw NotAnIdeal("lattice is not contained in the order");
    }
    if (!left_closed(O, L)) {
        throw NotAnIdeal("lattice is not closed under left multiplication by the order");
    }
    Rational idx = index(L, O.lattice());
    if (idx.get_den() != 1 || !ntheory::is_square(idx.get_num())) {
        throw NotAnIdeal("index " + idx.get_str() + " is not a perfect square");
    }
    Integer n = ntheory::isqrt(idx.get_num());
    return LeftIdeal(O, std::move(L), std::move(n));
}

LeftIdeal unit_ideal(const OrderLattice &O) { return LeftIdeal::from_lattice(O, O.lattice()); }

LeftIdeal left_ideal_from_pair(const OrderLattice &O, const Integer &N, const QuatElement &alpha)
{
    if (N < 1) {
        throw InvalidInput("ideal generator N must be positive");
    }
    if (!O.contains(alpha)) {
        throw InvalidInput("generator " + alpha.to_string() + " is not in the order");
    }
    const QuatAlgebra &B = O.algebra();
    std::vector<QuatElement> gens;
    gens.reserve(8);
    for (const auto &o : O.basis()) {
        gens.push_back(o * Rational(N));
        gens.push_back(B.mul(o, alpha));
    }
    return LeftIdeal::from_lattice(O, Lattice::from_generators(gens));
}

Lattice conj_ideal(const LeftIdeal &I) { return conj(I.lattice()); }

Lattice mul_ideals(const Lattice &a, const Lattice &b, const QuatAlgebra &B) { return product(a, b, B); }

Lattice scale(const Lattice &L, const Rational &c) { return L.scaled(c); }

Integer content_in(const Lattice &L, const Lattice &ref)
{
    Integer g = 0;
    for (const auto &e : L.basis()) {
        auto c = ref.coordinates(e);
        if (!c) {
            throw InvalidInput("lattice is not contained in the reference lattice");
        }
        for (const auto &x : *c) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        }
    }
    return g;
}

LeftIdeal rescale_by_element(const LeftIdeal &I, const QuatElement &alpha)
{
    if (alpha.is_zero() || !I.contains(alpha)) {
        throw ElementNotInIdeal();
    }
    QuatElement factor = conj(alpha) / Rational(I.norm());
    return LeftIdeal::from_lattice(I.left_order(), right_multiply(I.lattice(), factor, I.algebra()));
}

LeftIdeal primitive_part(const LeftIdeal &I)
{
    Integer g = content_in(I.lattice(), I.left_order().lattice());
    if (g == 1) {
        return I;
    }
    return LeftIdeal::from_lattice(I.left_order(), I.lattice().scaled(Rational(1) / Rational(g)));
}

OrderLattice right_order(const LeftIdeal &I)
{
    return OrderLattice::from_lattice(I.algebra(), right_stabilizer(I.lattice(), I.algebra()));
}

LeftIdeal product(const LeftIdeal &I, const LeftIdeal &J)
{
    return LeftIdeal::from_lattice(I.left_order(), product(I.lattice(), J.lattice(), I.algebra()));
}

LeftIdeal connecting_ideal(const OrderLattice &O1, const OrderLattice &O2)
{
    const QuatAlgebra &B = O1.algebra();
    Rational m = index(intersection(O1.lattice(), O2.lattice()), O1.lattice());
    if (m.get_den() != 1) {
        throw VerificationFailed("order intersection has non-integral index");
    }
    const Integer M = m.get_num();
    Lattice L = product(O1.lattice(), O2.lattice(), B).scaled(Rational(M));
    Integer g = content_in(L, O1.lattice());
    if (g != 1) {
        L = L.scaled(Rational(1) / Rational(g));
    }
    LeftIdeal I = LeftIdeal::from_lattice(O1, std::move(L));
    if (I.norm() != M) {
        throw VerificationFailed("connecting ideal has norm " + I.norm().get_str() + ", expected " + M.get_str());
    }
    if (!(right_order(I) == O2)) {
        throw VerificationFailed("connecting ideal has the wrong right order");
    }
    if (content_in(I.lattice(), O1.lattice()) != 1) {
        throw VerificationFailed("connecting ideal is not primitive");
    }
    return I;
}

LeftIdeal random_prime_norm_step(const OrderLattice &O, const Integer &ell, Rng &rng)
{
    const QuatAlgebra &B = O.algebra();
    const auto basis = O.basis();
    const std::uint64_t lsmall = ell.fits_ulong_p() ? ell.get_ui() : 0;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Coords<Integer> x;
        for (auto &c : x) {
            c = ntheory::next_prime_candidate(rng, 0, ell - 1);
        }
        if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0) {
            continue;
        }
        QuatElement alpha;
        for (std::size_t i = 0; i < 4; ++i) {
            alpha += basis[i] * Rational(x[i]);
        }
        if (lsmall == 0 || lsmall >= 64) {
            // Solve nrd(alpha + t e) = 0 mod ell for t, e the last basis element.
            const QuatElement &e = basis[3];
            Integer a = ntheory::mod(B.nrd(e).get_num(), ell);
            Integer b = ntheory::mod(trd(B.mul(alpha, conj(e))).get_num(), ell);
            Integer c = ntheory::mod(B.nrd(alpha).get_num(), ell);
            if (a == 0) {
                continue;
            }
            auto root = ntheory::sqrt_mod_prime(ntheory::mod(b * b - 4 * a * c, ell), ell);
            if (!root) {
                continue;
            }
            Integer t = ntheory::mod((-b + *root) * ntheory::inverse_mod(2 * a, ell), ell);
            alpha += e * Rational(t);
        }
        Integer n = B.nrd(alpha).get_num();
        if (ntheory::mod(n, ell) != 0) {
            continue;
        }
        auto coords = O.lattice().coordinates(alpha);
        bool divisible = true;
        for (const auto &c : *coords) {
            if (ntheory::mod(c, ell) != 0) {
                divisible = false;
            }
        }
        if (divisible) {
            continue;
        }
        LeftIdeal L = left_ideal_from_pair(O, ell, alpha);
        if (L.norm() == ell) {
            return L;
        }
    }
    throw SearchExhausted("no norm-" + ell.get_str() + " ideal found");
}

LeftIdeal random_walk_ideal(const OrderLattice &O, const Integer &ell, unsigned steps, Rng &rng)
{
    LeftIdeal I = unit_ideal(O);
    unsigned done = 0;
    int rejections = 0;
    while (done < steps) {
        OrderLattice right = right_order(I);
        LeftIdeal step = random_prime_norm_step(right, ell, rng);
        LeftIdeal next = LeftIdeal::from_lattice(O, product(I.lattice(), step.lattice(), O.algebra()));
        if (content_in(next.lattice(), O.lattice()) != 1) {
            if (++rejections > 1000) {
                throw SearchExhausted("random walk keeps backtracking");
            }
            continue;
        }
        I = std::move(next);
        ++done;
    }
    return I;
}

} // namespace quatpath
