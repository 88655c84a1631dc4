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

#include "quatpath/klpt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "quatpath/errors.hpp"

namespace quatpath {

using ntheory::inverse_mod;
using ntheory::kronecker;
using ntheory::mod;
using ntheory::uniform_below;

namespace {

class StageClock {
  public:
    StageClock() : start_(std::chrono::steady_clock::now()) {}
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

Integer abs_int(const Integer &x) { return x < 0 ? Integer(-x) : x; }

Integer ln_ceil_phi(double phi_c, const Integer &M)
{
    double ln = ntheory::log2(M) * std::log(2.0);
    return Integer(std::ceil(phi_c * ln * ln));
}

/// Smallest e0 with N ell^e0 >= p Phi(N ell^e0).
unsigned long minimal_e0(const Integer &N, const Integer &ell, const Integer &p, double phi_c)
{
    unsigned long e0 = 0;
    Integer M = N;
    while (M < p * ln_ceil_phi(phi_c, M)) {
        M *= ell;
        ++e0;
    }
    return e0;
}

Integer reduce_mod(const Rational &x, const Integer &N)
{
    Integer den = x.get_den();
    return mod(x.get_num() * inverse_mod(den, N), N);
}

long signed_sample(Rng &rng, unsigned long m)
{
    return static_cast<long>(uniform_below(rng, 2 * static_cast<std::uint64_t>(m) + 1)) - static_cast<long>(m);
}

/// Rows of a 2x2 matrix as vectors.
std::array<Integer, 2> row_times(const std::array<Integer, 2> &v, const Mat2 &m, const Integer &N)
{
    return {mod(v[0] * m[0] + v[1] * m[2], N), mod(v[0] * m[1] + v[1] * m[3], N)};
}

Integer det_rows(const std::array<Integer, 2> &a, const std::array<Integer, 2> &b, const Integer &N)
{
    return mod(a[0] * b[1] - a[1] * b[0], N);
}

/// y in I with J = I conj(y) / Nrd(I), from the pieces of the pipeline on the
/// primitive part, rescaled by the content n.
QuatElement compose_witness(const QuatAlgebra &B, const QuatElement &beta, const QuatElement &alpha,
                            const Integer &prime_norm, const Integer &content)
{
    return B.mul(beta, alpha) * Rational(content) / Rational(prime_norm);
}

void verify_path(const LeftIdeal &I, const PathSolution &sol)
{
    if (!I.contains(sol.beta)) {
        throw VerificationFailed("path witness is not in the input ideal");
    }
    if (sol.J.norm() != sol.norm) {
        throw VerificationFailed("output norm mismatch");
    }
    if (!(rescale_by_element(I, sol.beta) == sol.J)) {
        throw VerificationFailed("output ideal is not I conj(beta) / Nrd(I)");
    }
}

PathSolution trivial_path(const LeftIdeal &I, const Integer &content)
{
    PathSolution sol;
    sol.J = unit_ideal(I.left_order());
    sol.beta = QuatElement::scalar(content);
    sol.e = 0;
    sol.norm = 1;
    verify_path(I, sol);
    return sol;
}

} // namespace

// ---------------------------------------------------------------------------
// Parameters and diagnostics

void AlgoParams::validate() const
{
    if (m_box == 0 || m_box > (1UL << 16)) {
        throw InvalidInput("m_box must be in [1, 2^16]");
    }
    if (!(phi_c > 0) || !std::isfinite(phi_c)) {
        throw InvalidInput("phi_c must be positive");
    }
    if (pipeline_retries == 0) {
        throw InvalidInput("pipeline_retries must be positive");
    }
}

unsigned long AlgoParams::attempts_for(const Integer &p) const
{
    if (max_attempts != 0) {
        return max_attempts;
    }
    return 64 * std::max<unsigned long>(1, ntheory::ceil_log(p, 2));
}

unsigned long AlgoParams::exponent_cap(const Integer &p, const Integer &ell) const
{
    if (e_cap != 0) {
        return e_cap;
    }
    return 8 * ntheory::ceil_log(p, ell) + 64;
}

void PathDiagnostics::record(const std::string &stage, unsigned long attempts, double wall_ms)
{
    for (auto &s : stages) {
        if (s.stage == stage) {
            s.attempts += attempts;
            s.wall_ms += wall_ms;
            return;
        }
    }
    stages.push_back({stage, attempts, wall_ms});
}

// ---------------------------------------------------------------------------
// Prime norm representative

PrimeNormResult prime_norm_representative(const LeftIdeal &I, const PrimeNormConstraints &constraints,
                                          const AlgoParams &params, Rng &rng)
{
    params.validate();
    const QuatAlgebra &B = I.algebra();
    const ReducedBasis red = minkowski_reduce(I);
    const unsigned long tries = params.attempts_for(B.p);
    unsigned long attempts = 0;

    for (unsigned long m = params.m_box; m <= (1UL << 16); m *= 2) {
        const Integer bound = 16 * Integer(m) * Integer(m) * red.norms[3];
        for (unsigned long t = 0; t < tries; ++t) {
            ++attempts;
            QuatElement alpha;
            bool zero = true;
            for (std::size_t i = 0; i < 4; ++i) {
                long x = signed_sample(rng, m);
                if (x != 0) {
                    zero = false;
                    alpha += red.elements[i] * Rational(x);
                }
            }
            if (zero) {
                continue;
            }
            Rational qa = I.normalized_norm(alpha);
            if (qa.get_den() != 1) {
                throw VerificationFailed("q_I is not integral on I");
            }
            Integer q = qa.get_num();
            if (q > bound) {
                throw VerificationFailed("box sample exceeds the Minkowski bound");
            }
            if (!ntheory::is_prime(q)) {
                continue;
            }
            bool ok = true;
            for (const auto &c : constraints.coprime_to) {
                if (c != 0 && gcd(q, c) != 1) {
                    ok = false;
                    break;
                }
            }
            if (ok && constraints.ell_nonresidue && kronecker(*constraints.ell_nonresidue, q) != -1) {
                ok = false;
            }
            if (!ok) {
                continue;
            }
            return {rescale_by_element(I, alpha), alpha, attempts, m};
        }
    }
    throw SearchExhausted("no prime-norm representative in the largest box");
}

// ---------------------------------------------------------------------------
// Integer representation

RepresentResult represent_integer(const QuatAlgebra &B, const Integer &M, const AlgoParams &params, Rng &rng)
{
    params.validate();
    if (M <= 0) {
        throw InvalidInput("target norm must be positive");
    }
    const PrincipalForm f = B.norm_form();
    const double ln = ntheory::log2(M) * std::log(2.0);
    const double phi = params.phi_c * ln * ln;
    const double absD = abs_int(B.D).get_d();
    const auto m = static_cast<unsigned long>(std::floor(std::sqrt(phi / absD)));
    const unsigned long tries = m == 0 ? 1 : params.attempts_for(B.p);

    for (unsigned long t = 0; t < tries; ++t) {
        Integer x2 = signed_sample(rng, m);
        Integer y2 = signed_sample(rng, m);
        Integer r = M - B.p * f(x2, y2);
        if (r <= 0) {
            continue;
        }
        auto s = ntheory::solve_principal_form(f, r, false);
        if (!s) {
            continue;
        }
        QuatElement gamma = B.from_suborder(s->first, s->second, x2, y2);
        if (B.nrd(gamma) != Rational(M)) {
            throw VerificationFailed("represent_integer produced the wrong norm");
        }
        return {gamma, t + 1};
    }
    throw SearchExhausted("no representation found for the target norm");
}

// ---------------------------------------------------------------------------
// Splitting mod N

Mat2 mat2_mul(const Mat2 &a, const Mat2 &b, const Integer &N)
{
    return {mod(a[0] * b[0] + a[1] * b[2], N), mod(a[0] * b[1] + a[1] * b[3], N), mod(a[2] * b[0] + a[3] * b[2], N),
            mod(a[2] * b[1] + a[3] * b[3], N)};
}

Mat2 mat2_add(const Mat2 &a, const Mat2 &b, const Integer &N)
{
    return {mod(a[0] + b[0], N), mod(a[1] + b[1], N), mod(a[2] + b[2], N), mod(a[3] + b[3], N)};
}

Integer mat2_det(const Mat2 &a, const Integer &N) { return mod(a[0] * a[3] - a[1] * a[2], N); }

Mat2 MatSplitting::image(const QuatElement &x) const
{
    const std::array<const Mat2 *, 4> basis = {&one, &i, &j, &k};
    Mat2 out = {0, 0, 0, 0};
    for (std::size_t t = 0; t < 4; ++t) {
        Integer c = reduce_mod(x[t], N);
        for (std::size_t s = 0; s < 4; ++s) {
            out[s] = mod(out[s] + c * (*basis[t])[s], N);
        }
    }
    return out;
}

MatSplitting split_order_mod_N(const QuatAlgebra &B, const Integer &N, Rng &rng)
{
    if (N < 3 || !ntheory::is_prime(N)) {
        throw InvalidInput("splitting modulus must be an odd prime");
    }
    if (gcd(N, 2 * B.p * B.q * B.D) != 1) {
        throw InvalidInput("splitting modulus must be prime to 2 p q D");
    }
    const unsigned long tries = 64 * std::max<std::size_t>(1, ntheory::bit_length(N));
    for (unsigned long t = 0; t < tries; ++t) {
        Integer z = ntheory::next_prime_candidate(rng, 0, N - 1);
        Integer target = mod(-B.p - B.q * z * z, N);
        auto x = ntheory::sqrt_mod_prime(target, N);
        if (!x) {
            continue;
        }
        Integer xv = (uniform_below(rng, 2) == 0) ? *x : mod(-*x, N);
        MatSplitting s;
        s.N = N;
        s.one = {1, 0, 0, 1};
        s.i = {0, mod(-B.q, N), 1, 0};
        s.j = {xv, mod(B.q * z, N), z, mod(-xv, N)};
        s.k = mat2_mul(s.i, s.j, N);
        return s;
    }
    throw SearchExhausted("no solution of x^2 + q z^2 = -p mod N found");
}

// ---------------------------------------------------------------------------
// Ideals mod N as points of P^1

ProjPoint normalize_point(const Integer &x, const Integer &y, const Integer &N)
{
    Integer a = mod(x, N);
    Integer b = mod(y, N);
    if (a != 0) {
        return {1, mod(b * inverse_mod(a, N), N)};
    }
    if (b != 0) {
        return {0, 1};
    }
    throw DegenerateIdeal("zero vector is not a projective point");
}

ProjPoint act(const ProjPoint &pt, const Mat2 &m, const Integer &N)
{
    auto v = row_times({pt.x, pt.y}, m, N);
    return normalize_point(v[0], v[1], N);
}

ProjPoint ideal_to_point(const LeftIdeal &I, const MatSplitting &split)
{
    if (I.norm() != split.N) {
        throw InvalidInput("ideal norm differs from the splitting modulus");
    }
    const Integer &N = split.N;
    std::optional<ProjPoint> point;
    for (const auto &b : I.basis()) {
        Mat2 m = split.image(b);
        for (std::size_t r = 0; r < 2; ++r) {
            const Integer &x = m[2 * r];
            const Integer &y = m[2 * r + 1];
            if (x == 0 && y == 0) {
                continue;
            }
            ProjPoint pt = normalize_point(x, y, N);
            if (!point) {
                point = pt;
            } else if (!(*point == pt)) {
                throw DegenerateIdeal("ideal mod N is not contained in a single row line");
            }
        }
    }
    if (!point) {
        throw DegenerateIdeal("ideal is contained in N O");
    }
    return *point;
}

std::pair<Integer, Integer> ideal_mod_constraint(const LeftIdeal &I, const QuatElement &gamma,
                                                 const MatSplitting &split)
{
    const Integer &N = split.N;
    const QuatAlgebra &B = I.algebra();
    LeftIdeal Og = left_ideal_from_pair(I.left_order(), N, gamma);
    ProjPoint u = ideal_to_point(Og, split);
    ProjPoint w = ideal_to_point(I, split);

    // u (c + d W) J must be proportional to w, i.e. u (c + d W) to w adj(J).
    const Mat2 &Jm = split.j;
    Mat2 adj = {Jm[3], mod(-Jm[1], N), mod(-Jm[2], N), Jm[0]};
    auto wp = row_times({w.x, w.y}, adj, N);
    auto uW = row_times({u.x, u.y}, split.image(B.omega()), N);
    Integer c = det_rows(uW, wp, N);
    Integer d = mod(-det_rows({u.x, u.y}, wp, N), N);
    if (c == 0 && d == 0) {
        // u is an eigenvector of W and already lies over w adj(J).
        return {1, 0};
    }
    if (mod(B.norm_form()(c, d), N) == 0) {
        throw FixedPointObstruction();
    }
    return {c, d};
}

// ---------------------------------------------------------------------------
// Strong approximation

std::optional<StrongApproxSolution> lift_to_target(const QuatAlgebra &B, const Integer &z0_in, const Integer &w0_in,
                                                   const Integer &N, const Integer &target, unsigned long tries,
                                                   Rng &rng)
{
    const PrincipalForm f = B.norm_form();
    const Integer &p = B.p;
    const Integer z0 = mod(z0_in, N);
    const Integer w0 = mod(w0_in, N);
    if (z0 == 0 && w0 == 0) {
        throw InvalidResidue("mu0 vanishes mod N");
    }
    const Integer f0 = f(z0, w0);
    const Integer A = mod(p * f0, N);
    if (A == 0) {
        throw InvalidResidue("p f(z0, w0) is divisible by N");
    }
    if (gcd(target, N) != 1) {
        throw InvalidResidue("target is not prime to N");
    }
    auto root = ntheory::sqrt_mod_prime(mod(target * inverse_mod(A, N), N), N);
    if (!root) {
        throw InvalidResidue("target / (p f(z0, w0)) is not a square mod N");
    }
    // Coefficients of the polar form L((z0, w0), (z1, w1)) in z1 and w1.
    const Integer az = mod(2 * f.a * z0 + f.b * w0, N);
    const Integer aw = mod(f.b * z0 + 2 * f.c * w0, N);
    const Integer N2 = N * N;

    for (unsigned long t = 0; t < tries; ++t) {
        Integer lambda = (uniform_below(rng, 2) == 0) ? *root : N - *root;
        Integer K = target - p * lambda * lambda * f0;
        if (mod(K, N) != 0) {
            throw VerificationFailed("lambda does not solve the norm congruence mod N");
        }
        K /= N;
        Integer rhs = mod(K * inverse_mod(mod(p * lambda, N), N), N);
        Integer z1;
        Integer w1;
        if (aw != 0) {
            z1 = ntheory::next_prime_candidate(rng, 0, N - 1);
            w1 = mod((rhs - az * z1) * inverse_mod(aw, N), N);
        } else {
            z1 = mod(rhs * inverse_mod(az, N), N);
            w1 = ntheory::next_prime_candidate(rng, 0, N - 1);
        }
        Integer Z = mod(lambda * z0 + N * z1, N2);
        Integer W = mod(lambda * w0 + N * w1, N2);
        if (uniform_below(rng, 2) == 1) {
            Z -= N2;
        }
        if (uniform_below(rng, 2) == 1) {
            W -= N2;
        }
        Integer num = target - p * f(Z, W);
        if (num <= 0) {
            continue;
        }
        if (mod(num, N2) != 0) {
            throw VerificationFailed("linear congruence solution does not clear N^2");
        }
        auto s = ntheory::solve_principal_form(f, num / N2, true);
        if (!s) {
            continue;
        }
        StrongApproxSolution sol;
        sol.lambda = lambda;
        sol.mu = B.from_suborder(N * s->first, N * s->second, Z, W);
        sol.target = target;
        sol.x1 = s->first;
        sol.y1 = s->second;
        sol.z1 = (Z - lambda * z0) / N;
        sol.w1 = (W - lambda * w0) / N;
        sol.attempts = t + 1;
        if (B.nrd(sol.mu) != Rational(target)) {
            throw VerificationFailed("lifted element has the wrong norm");
        }
        return sol;
    }
    return std::nullopt;
}

StrongApproxSolution strong_approx_lift(const QuatAlgebra &B, const Integer &z0, const Integer &w0, const Integer &N,
                                        const Integer &ell, const AlgoParams &params, Rng &rng)
{
    params.validate();
    if (kronecker(ell, N) != -1) {
        throw InvalidResidue("ell must be a non-residue mod N");
    }
    const PrincipalForm f = B.norm_form();
    const Integer A = mod(B.p * f(z0, w0), N);
    if (A == 0) {
        throw InvalidResidue("p f(z0, w0) is divisible by N");
    }
    // ell^e / A is a square iff e is even exactly when A is a square.
    const unsigned long parity = kronecker(A, N) == 1 ? 0 : 1;
    const Integer N2 = N * N;
    unsigned long e = ntheory::ceil_log(B.p * N2 * N2 * abs_int(B.D), ell);
    if (e % 2 != parity) {
        ++e;
    }
    const unsigned long cap = params.exponent_cap(B.p, ell);
    const unsigned long tries = params.attempts_for(B.p);
    unsigned long attempts = 0;
    for (; e <= cap; e += 2) {
        auto sol = lift_to_target(B, z0, w0, N, ntheory::pow(ell, e), tries, rng);
        if (sol) {
            sol->e = e;
            sol->attempts += attempts;
            return *sol;
        }
        attempts += tries;
    }
    throw ExponentCapExceeded("strong approximation exceeded the exponent cap");
}

// ---------------------------------------------------------------------------
// ell-power path

namespace {

struct PipelineFailure {
    std::string stage = "prime_norm";
    unsigned long attempts = 0;
    std::string why = "no attempt completed";

    void set(std::string s, unsigned long a, std::string w)
    {
        stage = std::move(s);
        attempts = a;
        why = std::move(w);
    }
};

LeftIdeal checked_input(const OrderLattice &O, const LeftIdeal &I, Integer &content)
{
    if (!(I.left_order() == O)) {
        throw InvalidInput("ideal is not a left ideal of the given order");
    }
    content = content_in(I.lattice(), O.lattice());
    return content == 1 ? I : primitive_part(I);
}

} // namespace

PathSolution ell_power_path(const SpecialOrder &O, const LeftIdeal &I, const Integer &ell, const AlgoParams &params,
                            Rng &rng)
{
    params.validate();
    const QuatAlgebra &B = O.B;
    if (ell < 2 || !ntheory::is_prime(ell) || ell == B.p) {
        throw InvalidInput("ell must be a prime different from p");
    }
    Integer content;
    const LeftIdeal I0 = checked_input(O.O, I, content);
    if (I0.norm() == 1) {
        return trivial_path(I, content);
    }

    PathDiagnostics diag;
    PipelineFailure failure;
    const PrimeNormConstraints constraints{{ell, B.p, abs_int(B.D), 2, B.q}, ell};
    const unsigned long tries = params.attempts_for(B.p);
    const unsigned long inner_rounds = 16;

    for (unsigned long round = 0; round < params.pipeline_retries; ++round) {
        diag.restarts = round;
        StageClock clock;
        PrimeNormResult pn;
        try {
            pn = prime_norm_representative(I0, constraints, params, rng);
        } catch (const SearchExhausted &ex) {
            diag.record("prime_norm", tries, clock.ms());
            throw StageFailed("prime_norm", static_cast<long>(tries), ex.what());
        }
        diag.record("prime_norm", pn.attempts, clock.ms());
        const Integer N = pn.J.norm();
        diag.prime_norm = N;
        const MatSplitting split = split_order_mod_N(B, N, rng);

        double phi_c = params.phi_c;
        unsigned long e0 = minimal_e0(N, ell, B.p, phi_c);
        for (unsigned long inner = 0; inner < inner_rounds; ++inner) {
            clock = StageClock();
            AlgoParams local = params;
            local.phi_c = phi_c;
            RepresentResult rep;
            try {
                rep = represent_integer(B, N * ntheory::pow(ell, e0), local, rng);
            } catch (const SearchExhausted &ex) {
                diag.record("represent_integer", tries, clock.ms());
                failure.set("represent_integer", tries, ex.what());
                phi_c *= 2;
                e0 = std::max(e0 + 1, minimal_e0(N, ell, B.p, phi_c));
                continue;
            }
            diag.record("represent_integer", rep.attempts, clock.ms());

            clock = StageClock();
            std::pair<Integer, Integer> cd;
            try {
                cd = ideal_mod_constraint(pn.J, rep.gamma, split);
            } catch (const FixedPointObstruction &ex) {
                diag.record("mod_constraint", 1, clock.ms());
                failure.set("mod_constraint", 1, ex.what());
                continue;
            }
            diag.record("mod_constraint", 1, clock.ms());

            clock = StageClock();
            StrongApproxSolution lift;
            try {
                lift = strong_approx_lift(B, cd.first, cd.second, N, ell, params, rng);
            } catch (const ExponentCapExceeded &ex) {
                diag.record("lift", params.exponent_cap(B.p, ell), clock.ms());
                failure.set("lift", tries, ex.what());
                continue;
            }
            diag.record("lift", lift.attempts, clock.ms());

            clock = StageClock();
            const unsigned long e = e0 + lift.e;
            const QuatElement beta = B.mul(rep.gamma, lift.mu);
            if (!pn.J.contains(beta)) {
                throw VerificationFailed("gamma mu is not in the prime-norm ideal");
            }
            if (B.nrd(beta) != Rational(N * ntheory::pow(ell, e))) {
                throw VerificationFailed("gamma mu has the wrong norm");
            }
            PathSolution sol;
            sol.J = rescale_by_element(pn.J, beta);
            sol.beta = compose_witness(B, beta, pn.alpha, N, content);
            sol.e = e;
            sol.norm = ntheory::pow(ell, e);
            sol.norm_factors = {{ell, static_cast<unsigned>(e)}};
            verify_path(I, sol);
            diag.record("verify", 1, clock.ms());
            diag.e_represent = e0;
            diag.e_lift = lift.e;
            sol.diagnostics = std::move(diag);
            return sol;
        }
    }
    throw StageFailed(failure.stage, static_cast<long>(failure.attempts), failure.why);
}

PathSolution generic_order_path(const SpecialOrder &O1, const OrderLattice &O2, const LeftIdeal &J,
                                const Integer &ell, const AlgoParams &params, Rng &rng)
{
    if (!(J.left_order() == O2)) {
        throw InvalidInput("ideal is not a left ideal of the target order");
    }
    if (!O2.is_maximal()) {
        throw InvalidInput("target order is not maximal");
    }
    const QuatAlgebra &B = O1.B;
    const LeftIdeal I = connecting_ideal(O1.O, O2);
    const LeftIdeal IJ = product(I, J);
    PathSolution first = ell_power_path(O1, I, ell, params, rng);
    PathSolution second = ell_power_path(O1, IJ, ell, params, rng);

    const QuatElement gamma = B.mul(conj(first.beta), second.beta) / Rational(I.norm());
    const unsigned long e = first.e + second.e;
    if (B.nrd(gamma) != Rational(J.norm() * ntheory::pow(ell, e))) {
        throw VerificationFailed("combined element has the wrong norm");
    }
    PathSolution sol;
    sol.J = rescale_by_element(J, gamma);
    sol.beta = gamma;
    sol.e = e;
    sol.norm = ntheory::pow(ell, e);
    if (e > 0) {
        sol.norm_factors = {{ell, static_cast<unsigned>(e)}};
    }
    verify_path(J, sol);
    sol.diagnostics = std::move(second.diagnostics);
    for (const auto &s : first.diagnostics.stages) {
        sol.diagnostics.record(s.stage, s.attempts, s.wall_ms);
    }
    sol.diagnostics.e_represent += first.diagnostics.e_represent;
    sol.diagnostics.e_lift += first.diagnostics.e_lift;
    return sol;
}

// ---------------------------------------------------------------------------
// Powersmooth variant

namespace {

Integer pool_value(const std::pair<Integer, unsigned> &pp) { return ntheory::pow(pp.first, pp.second); }

Integer pool_product(const SmoothSchedule &s, const std::vector<std::size_t> &idx)
{
    Integer out = 1;
    for (auto i : idx) {
        out *= pool_value(s.pool[i]);
    }
    return out;
}

/// Moves one non-residue factor into or out of s2 so that s2 / A becomes a
/// square mod N. Returns false when no such move keeps s2 large enough.
bool fix_residue(SmoothSchedule &s, const Integer &need2, const Integer &N)
{
    const Integer s2 = s.s2();
    for (std::size_t t = 0; t < s.second.size(); ++t) {
        Integer v = pool_value(s.pool[s.second[t]]);
        if (kronecker(v, N) == -1 && s2 / v >= need2) {
            s.second.erase(s.second.begin() + static_cast<long>(t));
            return true;
        }
    }
    for (std::size_t i = 0; i < s.pool.size(); ++i) {
        bool used = std::find(s.first.begin(), s.first.end(), i) != s.first.end() ||
                    std::find(s.second.begin(), s.second.end(), i) != s.second.end();
        if (!used && kronecker(pool_value(s.pool[i]), N) == -1) {
            s.second.push_back(i);
            return true;
        }
    }
    return false;
}

ntheory::Factorization schedule_factors(const SmoothSchedule &s)
{
    ntheory::Factorization out;
    for (auto i : s.first) {
        out.push_back(s.pool[i]);
    }
    for (auto i : s.second) {
        out.push_back(s.pool[i]);
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

} // namespace

Integer SmoothSchedule::s1() const { return pool_product(*this, first); }
Integer SmoothSchedule::s2() const { return pool_product(*this, second); }

bool is_powersmooth(const ntheory::Factorization &factors, const Integer &S)
{
    return std::all_of(factors.begin(), factors.end(),
                       [&](const auto &pp) { return ntheory::pow(pp.first, pp.second) < S; });
}

SmoothSchedule build_smooth_schedule(const Integer &need1, const Integer &need2, const std::vector<Integer> &avoid,
                                     const Integer &min_bound)
{
    if (need1 < 1 || need2 < 1) {
        throw InvalidInput("schedule targets must be positive");
    }
    const unsigned long max_bound = 1UL << 20;
    unsigned long S = std::max<unsigned long>(4, min_bound.fits_ulong_p() ? min_bound.get_ui() : max_bound + 1);
    for (; S <= max_bound; ++S) {
        SmoothSchedule s;
        s.S = S;
        Integer total = 1;
        for (unsigned long r = 2; r < S; ++r) {
            if (!ntheory::is_prime(r)) {
                continue;
            }
            bool skip = std::any_of(avoid.begin(), avoid.end(), [&](const Integer &a) { return a != 0 && a % r == 0; });
            if (skip) {
                continue;
            }
            unsigned e = 1;
            unsigned long v = r;
            while (v * r < S) {
                v *= r;
                ++e;
            }
            s.pool.emplace_back(Integer(r), e);
            total *= v;
        }
        if (total < need1 * need2 * Integer(S) * Integer(S)) {
            continue;
        }
        // Largest prime powers go to s1 until it covers need1; s2 takes the rest.
        std::vector<std::size_t> order(s.pool.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pool_value(s.pool[a]) > pool_value(s.pool[b]); });
        Integer s1 = 1;
        for (auto i : order) {
            if (s1 < need1) {
                s.first.push_back(i);
                s1 *= pool_value(s.pool[i]);
            } else {
                s.second.push_back(i);
            }
        }
        std::sort(s.first.begin(), s.first.end());
        std::sort(s.second.begin(), s.second.end());
        return s;
    }
    throw ScheduleExhausted("no powersmooth schedule below the bound cap");
}

PathSolution powersmooth_path(const SpecialOrder &O, const LeftIdeal &I, const AlgoParams &params, Rng &rng)
{
    params.validate();
    if (params.smooth_bound != 0 && params.smooth_bound < 4) {
        throw InvalidInput("smooth bound must be at least 4");
    }
    const QuatAlgebra &B = O.B;
    Integer content;
    const LeftIdeal I0 = checked_input(O.O, I, content);
    if (I0.norm() == 1) {
        PathSolution sol = trivial_path(I, content);
        sol.smooth_bound = std::max<unsigned long>(params.smooth_bound, 4);
        return sol;
    }

    PathDiagnostics diag;
    PipelineFailure failure;
    const PrimeNormConstraints constraints{{B.p, abs_int(B.D), 2, B.q}, std::nullopt};
    const unsigned long tries = params.attempts_for(B.p);
    const unsigned long inner_rounds = 16;
    const PrincipalForm f = B.norm_form();

    for (unsigned long round = 0; round < params.pipeline_retries; ++round) {
        diag.restarts = round;
        StageClock clock;
        PrimeNormResult pn;
        try {
            pn = prime_norm_representative(I0, constraints, params, rng);
        } catch (const SearchExhausted &ex) {
            throw StageFailed("prime_norm", static_cast<long>(tries), ex.what());
        }
        diag.record("prime_norm", pn.attempts, clock.ms());
        const Integer N = pn.J.norm();
        diag.prime_norm = N;
        const MatSplitting split = split_order_mod_N(B, N, rng);

        double phi_c = params.phi_c;
        auto make_schedule = [&]() {
            Integer M = B.p;
            for (int it = 0; it < 4; ++it) {
                M = B.p * ln_ceil_phi(phi_c, M) + 1;
            }
            Integer need1 = M / N + 1;
            Integer N2 = N * N;
            Integer need2 = B.p * N2 * N2 * abs_int(B.D);
            return std::make_pair(build_smooth_schedule(need1, need2, {N, B.p}, params.smooth_bound), need2);
        };
        auto [schedule, need2] = make_schedule();

        for (unsigned long inner = 0; inner < inner_rounds; ++inner) {
            clock = StageClock();
            AlgoParams local = params;
            local.phi_c = phi_c;
            RepresentResult rep;
            try {
                rep = represent_integer(B, N * schedule.s1(), local, rng);
            } catch (const SearchExhausted &ex) {
                diag.record("represent_integer", tries, clock.ms());
                failure.set("represent_integer", tries, ex.what());
                phi_c *= 2;
                std::tie(schedule, need2) = make_schedule();
                continue;
            }
            diag.record("represent_integer", rep.attempts, clock.ms());

            clock = StageClock();
            std::pair<Integer, Integer> cd;
            try {
                cd = ideal_mod_constraint(pn.J, rep.gamma, split);
            } catch (const FixedPointObstruction &ex) {
                diag.record("mod_constraint", 1, clock.ms());
                failure.set("mod_constraint", 1, ex.what());
                continue;
            }
            diag.record("mod_constraint", 1, clock.ms());

            SmoothSchedule local_schedule = schedule;
            const Integer A = mod(B.p * f(cd.first, cd.second), N);
            if (kronecker(local_schedule.s2(), N) != kronecker(A, N) && !fix_residue(local_schedule, need2, N)) {
                failure.set("schedule", 1, "no schedule adjustment fixes the residue condition");
                continue;
            }

            clock = StageClock();
            auto lift = lift_to_target(B, cd.first, cd.second, N, local_schedule.s2(), tries, rng);
            if (!lift) {
                diag.record("lift", tries, clock.ms());
                failure.set("lift", tries, "no lift for the scheduled target");
                continue;
            }
            diag.record("lift", lift->attempts, clock.ms());

            clock = StageClock();
            const Integer norm = local_schedule.s1() * local_schedule.s2();
            const QuatElement beta = B.mul(rep.gamma, lift->mu);
            if (!pn.J.contains(beta) || B.nrd(beta) != Rational(N * norm)) {
                throw VerificationFailed("powersmooth element fails membership or norm");
            }
            PathSolution sol;
            sol.J = rescale_by_element(pn.J, beta);
            sol.beta = compose_witness(B, beta, pn.alpha, N, content);
            sol.norm = norm;
            sol.norm_factors = schedule_factors(local_schedule);
            sol.smooth_bound = local_schedule.S;
            if (!is_powersmooth(sol.norm_factors, sol.smooth_bound)) {
                throw VerificationFailed("schedule is not powersmooth");
            }
            verify_path(I, sol);
            diag.record("verify", 1, clock.ms());
            sol.diagnostics = std::move(diag);
            return sol;
        }
    }
    if (failure.stage == "schedule") {
        throw ScheduleExhausted(failure.why);
    }
    throw StageFailed(failure.stage, static_cast<long>(failure.attempts), failure.why);
}

} // namespace quatpath
