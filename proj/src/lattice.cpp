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

#include "quatpath/lattice.hpp"

#include <utility>

#include "quatpath/errors.hpp"
#include "quatpath/ntheory.hpp"

namespace quatpath {

namespace {

Integer lcm(const Integer &a, const Integer &b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer gcd(const Integer &a, const Integer &b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

void axpy(Vec4 &y, const Integer &a, const Vec4 &x)
{
    for (std::size_t i = 0; i < 4; ++i) {
        y[i] += a * x[i];
    }
}

/// Incremental Hermite form. Once the lattice is full rank its determinant
/// delta satisfies delta Z^4 in L, so new vectors and off-diagonal entries
/// may be reduced modulo delta.
class HermiteBuilder {
  public:
    void insert(Vec4 v)
    {
        if (delta_ != 0) {
            reduce(v, 0);
        }
        for (std::size_t c = 0; c < 4; ++c) {
            if (v[c] == 0) {
                continue;
            }
            if (!have_[c]) {
                if (v[c] < 0) {
                    for (auto &x : v) {
                        x = -x;
                    }
                }
                rows_[c] = std::move(v);
                have_[c] = true;
                refresh_delta();
                return;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows_[c][c].get_mpz_t(), v[c].get_mpz_t());
            Integer u = rows_[c][c] / g;
            Integer w = v[c] / g;
            Vec4 combined;
            Vec4 rest;
            for (std::size_t i = 0; i < 4; ++i) {
                combined[i] = s * rows_[c][i] + t * v[i];
                rest[i] = u * v[i] - w * rows_[c][i];
            }
            rows_[c] = std::move(combined);
            v = std::move(rest);
            if (delta_ != 0) {
                reduce(rows_[c], c + 1);
                reduce(v, 0);
            }
        }
        refresh_delta();
    }

    Mat4 finish()
    {
        for (bool h : have_) {
            if (!h) {
                throw RankDeficient();
            }
        }
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = r + 1; c < 4; ++c) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows_[r][c].get_mpz_t(), rows_[c][c].get_mpz_t());
                if (q != 0) {
                    axpy(rows_[r], -q, rows_[c]);
                }
            }
        }
        return rows_;
    }

  private:
    void reduce(Vec4 &v, std::size_t from) const
    {
        for (std::size_t i = from; i < 4; ++i) {
            mpz_mod(v[i].get_mpz_t(), v[i].get_mpz_t(), delta_.get_mpz_t());
        }
    }

    void refresh_delta()
    {
        if (!(have_[0] && have_[1] && have_[2] && have_[3])) {
            return;
        }
        delta_ = rows_[0][0] * rows_[1][1] * rows_[2][2] * rows_[3][3];
    }

    Mat4 rows_{};
    std::array<bool, 4> have_{false, false, false, false};
    Integer delta_{0};
};

RatMat4 to_rational(const Lattice &L)
{
    RatMat4 m;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            m[r][c] = Rational(L.rows()[r][c], L.denominator());
            m[r][c].canonicalize();
        }
    }
    return m;
}

Lattice from_rational_rows(std::span<const Coords<Rational>> rows)
{
    std::vector<QuatElement> gens;
    gens.reserve(rows.size());
    for (const auto &r : rows) {
        gens.emplace_back(r);
    }
    return Lattice::from_generators(gens);
}

/// Matrix of y -> e * y (left = true) or y -> y * e acting on coordinate
/// column vectors.
RatMat4 multiplication_matrix(const QuatElement &e, bool left, const QuatAlgebra &B)
{
    RatMat4 m;
    const std::array<QuatElement, 4> units = {B.one(), B.i(), B.j(), B.k()};
    for (std::size_t col = 0; col < 4; ++col) {
        QuatElement img = left ? B.mul(e, units[col]) : B.mul(units[col], e);
        for (std::size_t row = 0; row < 4; ++row) {
            m[row][col] = img[row];
        }
    }
    return m;
}

Lattice stabilizer(const Lattice &L, const QuatAlgebra &B, bool right)
{
    // x stabilizes L on the right iff the L-coordinates of e_r x are integral
    // for each basis element e_r. Coordinates of a column vector y are
    // (B^{-1})^T y, so the conditions are rows of (B^{-1})^T * Mul(e_r).
    RatMat4 coord_map = transpose(inverse(to_rational(L)));
    std::vector<Coords<Rational>> functionals;
    functionals.reserve(16);
    for (const auto &e : L.basis()) {
        // Right stabilizer: e * x, i.e. left multiplication by e.
        RatMat4 mul = multiplication_matrix(e, right, B);
        for (std::size_t r = 0; r < 4; ++r) {
            Coords<Rational> f;
            for (std::size_t c = 0; c < 4; ++c) {
                Rational acc = 0;
                for (std::size_t k = 0; k < 4; ++k) {
                    acc += coord_map[r][k] * mul[k][c];
                }
                f[c] = acc;
            }
            functionals.push_back(f);
        }
    }
    return dual(from_rational_rows(functionals));
}

} // namespace

RatMat4 transpose(const RatMat4 &m)
{
    RatMat4 t;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            t[r][c] = m[c][r];
        }
    }
    return t;
}

RatMat4 inverse(const RatMat4 &m)
{
    RatMat4 a = m;
    RatMat4 inv;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            inv[r][c] = (r == c) ? 1 : 0;
        }
    }
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        while (pivot < 4 && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == 4) {
            throw RankDeficient();
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rational scale = 1 / a[col][col];
        for (std::size_t c = 0; c < 4; ++c) {
            a[col][c] *= scale;
            inv[col][c] *= scale;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col || a[r][col] == 0) {
                continue;
            }
            Rational f = a[r][col];
            for (std::size_t c = 0; c < 4; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

Rational determinant(RatMat4 a)
{
    Rational det = 1;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        while (pivot < 4 && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == 4) {
            return 0;
        }
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < 4; ++r) {
            if (a[r][col] == 0) {
                continue;
            }
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < 4; ++c) {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    return det;
}

Mat4 hnf_integer(std::span<const Vec4> generators)
{
    HermiteBuilder builder;
    for (const auto &g : generators) {
        builder.insert(g);
    }
    return builder.finish();
}

Lattice Lattice::normalized(Integer den, Mat4 rows)
{
    Integer g = den;
    for (const auto &r : rows) {
        for (const auto &x : r) {
            g = gcd(g, x);
        }
    }
    if (g != 1) {
        den /= g;
        for (auto &r : rows) {
            for (auto &x : r) {
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
            }
        }
    }
    return Lattice(std::move(den), std::move(rows));
}

Lattice Lattice::from_integer_generators(const Integer &denominator, std::span<const Vec4> generators)
{
    return normalized(denominator, hnf_integer(generators));
}

Lattice Lattice::from_generators(std::span<const QuatElement> generators)
{
    Integer den = 1;
    for (const auto &g : generators) {
        den = lcm(den, g.denominator());
    }
    std::vector<Vec4> ints;
    ints.reserve(generators.size());
    for (const auto &g : generators) {
        Vec4 v;
        for (std::size_t i = 0; i < 4; ++i) {
            Rational x = g[i] * den;
            v[i] = x.get_num();
        }
        ints.push_back(std::move(v));
    }
    return from_integer_generators(den, ints);
}

QuatElement Lattice::basis_element(std::size_t i) const
{
    QuatElement e;
    for (std::size_t c = 0; c < 4; ++c) {
        e[c] = Rational(rows_[i][c], den_);
        e[c].canonicalize();
    }
    return e;
}

std::array<QuatElement, 4> Lattice::basis() const
{
    return {basis_element(0), basis_element(1), basis_element(2), basis_element(3)};
}

std::optional<Vec4> Lattice::coordinates(const QuatElement &x) const
{
    Vec4 v;
    for (std::size_t i = 0; i < 4; ++i) {
        Rational s = x[i] * den_;
        if (s.get_den() != 1) {
            return std::nullopt;
        }
        v[i] = s.get_num();
    }
    Vec4 coords;
    for (std::size_t c = 0; c < 4; ++c) {
        if (mpz_divisible_p(v[c].get_mpz_t(), rows_[c][c].get_mpz_t()) == 0) {
            return std::nullopt;
        }
        coords[c] = v[c] / rows_[c][c];
        if (coords[c] != 0) {
            axpy(v, -coords[c], rows_[c]);
        }
    }
    return coords;
}

bool Lattice::contains(const Lattice &other) const
{
    for (const auto &e : other.basis()) {
        if (!contains(e)) {
            return false;
        }
    }
    return true;
}

Rational Lattice::volume() const
{
    Integer det = rows_[0][0] * rows_[1][1] * rows_[2][2] * rows_[3][3];
    Rational v(det, ntheory::pow(den_, 4));
    v.canonicalize();
    return v;
}

Lattice Lattice::scaled(const Rational &c) const
{
    if (c == 0) {
        throw InvalidInput("cannot scale a lattice by zero");
    }
    Mat4 rows = rows_;
    for (auto &r : rows) {
        for (auto &x : r) {
            x *= c.get_num();
        }
    }
    Integer den = den_ * c.get_den();
    // Negative scaling keeps the lattice; re-run Hermite for sign and order.
    return from_integer_generators(den, rows);
}

Lattice conj(const Lattice &L)
{
    std::array<Vec4, 4> rows;
    for (std::size_t i = 0; i < 4; ++i) {
        rows[i] = quat_conj(L.rows()[i]);
    }
    return Lattice::from_integer_generators(L.denominator(), rows);
}

Lattice sum(const Lattice &a, const Lattice &b)
{
    std::vector<QuatElement> gens;
    for (const auto &e : a.basis()) {
        gens.push_back(e);
    }
    for (const auto &e : b.basis()) {
        gens.push_back(e);
    }
    return Lattice::from_generators(gens);
}

Lattice product(const Lattice &a, const Lattice &b, const QuatAlgebra &B)
{
    std::vector<Vec4> gens;
    gens.reserve(16);
    for (const auto &x : a.rows()) {
        for (const auto &y : b.rows()) {
            gens.push_back(quat_mul(x, y, B.p, B.q));
        }
    }
    return Lattice::from_integer_generators(a.denominator() * b.denominator(), gens);
}

Lattice right_multiply(const Lattice &a, const QuatElement &x, const QuatAlgebra &B)
{
    std::vector<QuatElement> gens;
    for (const auto &e : a.basis()) {
        gens.push_back(B.mul(e, x));
    }
    return Lattice::from_generators(gens);
}

Lattice left_multiply(const QuatElement &x, const Lattice &a, const QuatAlgebra &B)
{
    std::vector<QuatElement> gens;
    for (const auto &e : a.basis()) {
        gens.push_back(B.mul(x, e));
    }
    return Lattice::from_generators(gens);
}

Lattice dual(const Lattice &L)
{
    RatMat4 d = transpose(inverse(to_rational(L)));
    return from_rational_rows(d);
}

Lattice intersection(const Lattice &a, const Lattice &b) { return dual(sum(dual(a), dual(b))); }

Rational index(const Lattice &sub, const Lattice &super) { return sub.volume() / super.volume(); }

Lattice right_stabilizer(const Lattice &L, const QuatAlgebra &B) { return stabilizer(L, B, true); }

Lattice left_stabilizer(const Lattice &L, const QuatAlgebra &B) { return stabilizer(L, B, false); }

RatMat4 trace_gram(const Lattice &L, const QuatAlgebra &B)
{
    RatMat4 g;
    Integer d2 = L.denominator() * L.denominator();
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            g[r][c] = Rational(quat_bilinear(L.rows()[r], L.rows()[c], B.p, B.q), d2);
            g[r][c].canonicalize();
        }
    }
    return g;
}

} // namespace quatpath
