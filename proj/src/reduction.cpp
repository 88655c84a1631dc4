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

#include "quatpath/reduction.hpp"

#include <cmath>
#include <functional>

#include "quatpath/errors.hpp"

namespace quatpath {

namespace {

using RatGram = std::array<std::array<Rational, 4>, 4>;

struct GramSchmidt {
    RatGram mu{};
    std::array<Rational, 4> sq{};
};

GramSchmidt gram_schmidt(const IntGram &G)
{
    GramSchmidt gs;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rational acc = G[i][j];
            for (std::size_t l = 0; l < j; ++l) {
                acc -= gs.mu[j][l] * gs.mu[i][l] * gs.sq[l];
            }
            gs.mu[i][j] = acc / gs.sq[j];
        }
        Rational acc = G[i][i];
        for (std::size_t l = 0; l < i; ++l) {
            acc -= gs.mu[i][l] * gs.mu[i][l] * gs.sq[l];
        }
        if (acc <= 0) {
            throw InvalidInput("Gram matrix is not positive definite");
        }
        gs.sq[i] = acc;
    }
    return gs;
}

Integer round_nearest(const Rational &x)
{
    // floor(x + 1/2)
    Rational y = x + Rational(1, 2);
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return r;
}

IntGram transformed_gram(const IntGram &G, const Mat4 &U)
{
    IntGram out;
    for (std::size_t a = 0; a < 4; ++a) {
        Vec4 row;
        for (std::size_t j = 0; j < 4; ++j) {
            Integer acc = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                acc += U[a][i] * G[i][j];
            }
            row[j] = acc;
        }
        for (std::size_t b = 0; b < 4; ++b) {
            Integer acc = 0;
            for (std::size_t j = 0; j < 4; ++j) {
                acc += row[j] * U[b][j];
            }
            out[a][b] = acc;
        }
    }
    return out;
}

Mat4 identity()
{
    Mat4 U;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            U[r][c] = (r == c) ? 1 : 0;
        }
    }
    return U;
}

Integer quadratic_value(const IntGram &G, const Vec4 &x)
{
    Integer acc = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i] == 0) {
            continue;
        }
        Integer row = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            row += G[i][j] * x[j];
        }
        acc += x[i] * row;
    }
    return acc;
}

long double to_ld(const Rational &x) { return static_cast<long double>(x.get_d()); }

/// Schnorr-Euchner enumeration over the Gram-Schmidt data of G. `accept` is
/// consulted once all coordinates from `tail_from` on are fixed; rejected
/// tails are not descended into. `leaf` receives each admissible vector
/// together with its exact value and returns the new radius.
class Enumerator {
  public:
    Enumerator(const IntGram &G, std::size_t tail_from) : G_(G), tail_from_(tail_from)
    {
        GramSchmidt gs = gram_schmidt(G);
        for (std::size_t i = 0; i < 4; ++i) {
            sq_[i] = to_ld(gs.sq[i]);
            for (std::size_t j = 0; j < i; ++j) {
                mu_[i][j] = to_ld(gs.mu[i][j]);
            }
        }
    }

    void run(Integer radius, const std::function<bool(const Vec4 &)> &accept,
             const std::function<Integer(const Vec4 &, const Integer &)> &leaf)
    {
        radius_ = std::move(radius);
        accept_ = &accept;
        leaf_ = &leaf;
        x_.fill(0);
        nodes_ = 0;
        descend(3, 0.0L);
    }

  private:
    long double bound() const { return static_cast<long double>(radius_.get_d()) * (1.0L + 1e-9L) + 1e-9L; }

    void descend(int level, long double partial)
    {
        if (++nodes_ > kNodeCap) {
            throw VerificationFailed("lattice enumeration exceeded its node budget");
        }
        long double center = 0.0L;
        for (int j = level + 1; j < 4; ++j) {
            center -= mu_[j][level] * static_cast<long double>(x_[j].get_d());
        }
        const long double rounded = std::nearbyint(center);
        const Integer base(static_cast<double>(rounded));
        // Zig-zag outwards from the rounded center. Distances grow
        // monotonically on each side, so a side that leaves the radius is done.
        long up = 0;
        long down = -1;
        bool up_open = true;
        bool down_open = true;
        while (up_open || down_open) {
            long off;
            if (up_open && down_open) {
                long double du = std::fabs(rounded + up - center);
                long double dd = std::fabs(rounded + down - center);
                off = du <= dd ? up : down;
            } else {
                off = up_open ? up : down;
            }
            const bool going_up = (off == up && up_open);
            if (going_up) {
                ++up;
            } else {
                --down;
            }
            long double d = rounded + static_cast<long double>(off) - center;
            long double contribution = partial + d * d * sq_[level];
            if (contribution > bound()) {
                (going_up ? up_open : down_open) = false;
                continue;
            }
            x_[level] = base + off;
            if (level == 0) {
                visit_leaf();
            } else if (static_cast<std::size_t>(level) != tail_from_ || (*accept_)(x_)) {
                descend(level - 1, contribution);
            }
        }
        x_[level] = 0;
    }

    void visit_leaf()
    {
        if (tail_from_ == 0 && !(*accept_)(x_)) {
            return;
        }
        Integer value = quadratic_value(G_, x_);
        if (value <= radius_) {
            radius_ = (*leaf_)(x_, value);
        }
    }

    static constexpr long kNodeCap = 50'000'000;

    const IntGram &G_;
    std::size_t tail_from_;
    std::array<long double, 4> sq_{};
    std::array<std::array<long double, 4>, 4> mu_{};
    Vec4 x_{};
    Integer radius_;
    const std::function<bool(const Vec4 &)> *accept_ = nullptr;
    const std::function<Integer(const Vec4 &, const Integer &)> *leaf_ = nullptr;
    long nodes_ = 0;
};

/// Unimodular m x m matrix (m = 4 - from) whose first row is t[from..3].
/// Returned embedded in the bottom-right block of a 4x4 identity.
Mat4 complete_to_unimodular(const Vec4 &t, std::size_t from)
{
    // Column operations V with t V = (g, 0, ...), tracking W = V^{-1}; the
    // first row of W is then t / g.
    Vec4 v = t;
    Mat4 W = identity();
    for (std::size_t j = from + 1; j < 4; ++j) {
        if (v[j] == 0) {
            continue;
        }
        Integer g, s, u;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), v[from].get_mpz_t(), v[j].get_mpz_t());
        Integer a = v[from] / g;
        Integer b = v[j] / g;
        v[from] = g;
        v[j] = 0;
        Vec4 wi = W[from];
        Vec4 wj = W[j];
        for (std::size_t c = 0; c < 4; ++c) {
            W[from][c] = a * wi[c] + b * wj[c];
            W[j][c] = -u * wi[c] + s * wj[c];
        }
    }
    if (v[from] == -1) {
        for (auto &x : W[from]) {
            x = -x;
        }
    } else if (v[from] != 1) {
        throw InvalidInput("tail vector is not primitive");
    }
    return W;
}

Integer tail_gcd(const Vec4 &x, std::size_t from)
{
    Integer g = 0;
    for (std::size_t i = from; i < 4; ++i) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x[i].get_mpz_t());
    }
    return g;
}

Mat4 multiply(const Mat4 &A, const Mat4 &B)
{
    Mat4 C;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            Integer acc = 0;
            for (std::size_t k = 0; k < 4; ++k) {
                acc += A[r][k] * B[k][c];
            }
            C[r][c] = acc;
        }
    }
    return C;
}

} // namespace

BasisTransform lll_reduce(const IntGram &gram, std::size_t frozen)
{
    Mat4 U = identity();
    IntGram G = gram;
    const Rational delta(99, 100);
    std::size_t k = std::max<std::size_t>(1, frozen);
    while (k < 4) {
        GramSchmidt gs = gram_schmidt(G);
        for (std::size_t jj = k; jj-- > 0;) {
            Integer r = round_nearest(gs.mu[k][jj]);
            if (r == 0) {
                continue;
            }
            for (std::size_t c = 0; c < 4; ++c) {
                U[k][c] -= r * U[jj][c];
            }
            G = transformed_gram(gram, U);
            gs = gram_schmidt(G);
        }
        const Rational &m = gs.mu[k][k - 1];
        if (k > frozen && gs.sq[k] < (delta - m * m) * gs.sq[k - 1]) {
            std::swap(U[k], U[k - 1]);
            G = transformed_gram(gram, U);
            k = std::max<std::size_t>(k - 1, std::max<std::size_t>(1, frozen));
        } else {
            ++k;
        }
    }
    return {U, G};
}

BasisTransform minkowski_transform(const IntGram &gram)
{
    BasisTransform cur = lll_reduce(gram);
    for (std::size_t k = 0; k < 4; ++k) {
        Vec4 best;
        best.fill(0);
        best[k] = 1;
        Integer best_value = cur.gram[k][k];
        Enumerator en(cur.gram, k);
        auto accept = [k](const Vec4 &x) { return tail_gcd(x, k) == 1; };
        auto leaf = [&](const Vec4 &x, const Integer &value) {
            if (value < best_value) {
                best = x;
                best_value = value;
            }
            return best_value;
        };
        en.run(best_value, accept, leaf);
        // New basis: rows < k unchanged, row k = best, rows > k a completion.
        Mat4 W = complete_to_unimodular(best, k);
        for (std::size_t i = 0; i < k; ++i) {
            W[k][i] = best[i];
        }
        Mat4 U = multiply(W, cur.transform);
        IntGram G = transformed_gram(gram, U);
        cur = {U, G};
        if (k + 1 < 4) {
            BasisTransform next = lll_reduce(cur.gram, k + 1);
            cur = {multiply(next.transform, cur.transform), next.gram};
        }
    }
    return cur;
}

std::vector<Vec4> short_vectors(const IntGram &gram, const Integer &bound)
{
    BasisTransform red = lll_reduce(gram);
    std::vector<Vec4> out;
    Enumerator en(red.gram, 0);
    auto accept = [](const Vec4 &x) {
        // One representative per sign pair: the last nonzero coordinate is
        // positive.
        for (std::size_t i = 4; i-- > 0;) {
            if (x[i] != 0) {
                return x[i] > 0;
            }
        }
        return false;
    };
    auto leaf = [&](const Vec4 &x, const Integer &) {
        Vec4 v;
        for (std::size_t c = 0; c < 4; ++c) {
            Integer acc = 0;
            for (std::size_t r = 0; r < 4; ++r) {
                acc += x[r] * red.transform[r][c];
            }
            v[c] = acc;
        }
        out.push_back(v);
        return bound;
    };
    en.run(bound, accept, leaf);
    return out;
}

IntGram norm_gram(const Lattice &L, const QuatAlgebra &B, const Integer &divisor)
{
    RatMat4 g = trace_gram(L, B);
    IntGram G;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            Rational v = g[r][c] / Rational(divisor);
            if (v.get_den() != 1) {
                throw InvalidInput("norm form is not integral on the lattice");
            }
            G[r][c] = v.get_num();
        }
    }
    return G;
}

ReducedBasis minkowski_reduce(const Lattice &L, const QuatAlgebra &B, const Integer &divisor)
{
    IntGram G = norm_gram(L, B, divisor);
    BasisTransform red = minkowski_transform(G);
    const auto basis = L.basis();
    ReducedBasis out;
    for (std::size_t r = 0; r < 4; ++r) {
        QuatElement e;
        for (std::size_t c = 0; c < 4; ++c) {
            if (red.transform[r][c] != 0) {
                e += basis[c] * Rational(red.transform[r][c]);
            }
        }
        out.elements[r] = e;
        // Diagonal of the bilinear Gram is 2 nrd / divisor.
        out.norms[r] = red.gram[r][r] / 2;
    }
    return out;
}

ReducedBasis minkowski_reduce(const LeftIdeal &I) { return minkowski_reduce(I.lattice(), I.algebra(), I.norm()); }

std::optional<QuatElement> equivalence_witness(const LeftIdeal &I, const LeftIdeal &J)
{
    if (!(I.left_order() == J.left_order())) {
        throw InvalidInput("equivalence needs ideals of the same left order");
    }
    const QuatAlgebra &B = I.algebra();
    Lattice K = product(conj(I.lattice()), J.lattice(), B);
    ReducedBasis red = minkowski_reduce(K, B, I.norm() * J.norm());
    if (red.norms[0] != 1) {
        return std::nullopt;
    }
    QuatElement beta = red.elements[0] / Rational(I.norm());
    if (!(right_multiply(I.lattice(), beta, B) == J.lattice())) {
        return std::nullopt;
    }
    return beta;
}

} // namespace quatpath
