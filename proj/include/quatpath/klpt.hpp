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
#include <string>
#include <vector>

#include "quatpath/ideal.hpp"
#include "quatpath/reduction.hpp"

namespace quatpath {

/// Tuning knobs for the randomized searches. Zero in the optional fields
/// means "derive from p".
struct AlgoParams {
    /// Initial box radius for the prime-norm search; doubles up to 2^16.
    unsigned long m_box = 2;
    /// Phi(x) = phi_c * ln(x)^2 sizes the integer-representation box.
    double phi_c = 4.0;
    /// Tries per stage before escalating; 0 means 64 * ceil(log2 p).
    unsigned long max_attempts = 0;
    /// Largest exponent tried by the lift; 0 means 8 * ceil(log_ell p) + 64.
    unsigned long e_cap = 0;
    /// Powersmooth bound; 0 lets the schedule builder choose.
    unsigned long smooth_bound = 0;
    /// Outer retries of the whole pipeline (new prime-norm representative).
    unsigned long pipeline_retries = 8;
    std::uint64_t seed = 0;

    void validate() const;
    unsigned long attempts_for(const Integer &p) const;
    unsigned long exponent_cap(const Integer &p, const Integer &ell) const;
};

struct PrimeNormConstraints {
    std::vector<Integer> coprime_to;
    std::optional<Integer> ell_nonresidue;
};

struct PrimeNormResult {
    LeftIdeal J;
    QuatElement alpha;
    unsigned long attempts = 0;
    unsigned long radius = 0;
};

/// Samples alpha over a Minkowski-reduced basis of I until q_I(alpha) is a
/// prime meeting the constraints, then returns I conj(alpha) / Nrd(I).
PrimeNormResult prime_norm_representative(const LeftIdeal &I, const PrimeNormConstraints &constraints,
                                          const AlgoParams &params, Rng &rng);

struct RepresentResult {
    QuatElement gamma;
    unsigned long attempts = 0;
};

/// gamma = x1 + y1 omega + (x2 + y2 omega) j with nrd(gamma) = M.
/// Throws SearchExhausted after the attempt budget.
RepresentResult represent_integer(const QuatAlgebra &B, const Integer &M, const AlgoParams &params, Rng &rng);

/// 2x2 matrix over Z/NZ, row-major.
using Mat2 = std::array<Integer, 4>;

Mat2 mat2_mul(const Mat2 &a, const Mat2 &b, const Integer &N);
Mat2 mat2_add(const Mat2 &a, const Mat2 &b, const Integer &N);
Integer mat2_det(const Mat2 &a, const Integer &N);

/// An explicit isomorphism O / NO -> M_2(Z/NZ).
struct MatSplitting {
    Integer N;
    Mat2 one;
    Mat2 i;
    Mat2 j;
    Mat2 k;

    /// Image of an element whose coordinate denominators are prime to N.
    Mat2 image(const QuatElement &x) const;
};

MatSplitting split_order_mod_N(const QuatAlgebra &B, const Integer &N, Rng &rng);

/// Projective point (x : y) over Z/NZ, normalized to (1 : y) or (0 : 1).
struct ProjPoint {
    Integer x;
    Integer y;
    friend bool operator==(const ProjPoint &, const ProjPoint &) = default;
};

ProjPoint normalize_point(const Integer &x, const Integer &y, const Integer &N);

/// Row vector times matrix, normalized.
ProjPoint act(const ProjPoint &pt, const Mat2 &m, const Integer &N);

/// The common row line of the images of I; I / NO is the set of matrices
/// whose rows lie on it. Throws DegenerateIdeal when there is none.
ProjPoint ideal_to_point(const LeftIdeal &I, const MatSplitting &split);

/// (c, d) with O gamma (c + d omega) j = I mod NO. Throws
/// FixedPointObstruction when the unit group of R / NR cannot move one
/// class onto the other.
std::pair<Integer, Integer> ideal_mod_constraint(const LeftIdeal &I, const QuatElement &gamma,
                                                 const MatSplitting &split);

struct StrongApproxSolution {
    Integer lambda;
    QuatElement mu;
    unsigned long e = 0;
    Integer target;
    Integer x1, y1, z1, w1;
    unsigned long attempts = 0;
};

/// mu = lambda (z0 + w0 omega) j + N mu1 with nrd(mu) = target, or nullopt
/// when `tries` samples fail. Throws InvalidResidue if target / (p f(z0, w0))
/// is not a square mod N.
std::optional<StrongApproxSolution> lift_to_target(const QuatAlgebra &B, const Integer &z0, const Integer &w0,
                                                   const Integer &N, const Integer &target, unsigned long tries,
                                                   Rng &rng);

/// Same with target ell^e; e starts at the smallest value of the right
/// parity above p N^4 |D| and steps by 2 up to the cap.
StrongApproxSolution strong_approx_lift(const QuatAlgebra &B, const Integer &z0, const Integer &w0, const Integer &N,
                                        const Integer &ell, const AlgoParams &params, Rng &rng);

struct StageRecord {
    std::string stage;
    unsigned long attempts = 0;
    double wall_ms = 0;
};

struct PathDiagnostics {
    std::vector<StageRecord> stages;
    /// Prime norm of the intermediate representative (0 when skipped).
    Integer prime_norm;
    unsigned long e_represent = 0;
    unsigned long e_lift = 0;
    unsigned long restarts = 0;

    void record(const std::string &stage, unsigned long attempts, double wall_ms);
};

struct PathSolution {
    LeftIdeal J;
    /// Element of I with J = I conj(beta) / Nrd(I).
    QuatElement beta;
    unsigned long e = 0;
    Integer norm;
    /// Factorization of Nrd(J) for the powersmooth variant.
    ntheory::Factorization norm_factors;
    Integer smooth_bound;
    PathDiagnostics diagnostics;
};

/// J equivalent to I (a left ideal of the special order O) with Nrd(J) a
/// power of ell.
PathSolution ell_power_path(const SpecialOrder &O, const LeftIdeal &I, const Integer &ell, const AlgoParams &params,
                            Rng &rng);

/// Same for a left ideal J of an arbitrary maximal order O2, routed through
/// the connecting ideal from the special order.
PathSolution generic_order_path(const SpecialOrder &O1, const OrderLattice &O2, const LeftIdeal &J,
                                const Integer &ell, const AlgoParams &params, Rng &rng);

/// Target norms split into s1 (integer representation) and s2 (lift).
struct SmoothSchedule {
    Integer S;
    /// Prime powers below S available to the schedule, ascending.
    std::vector<std::pair<Integer, unsigned>> pool;
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;

    Integer s1() const;
    Integer s2() const;
};

/// Smallest S (at least `min_bound`) whose prime powers, avoiding the primes
/// in `avoid`, cover need1 * need2 with room to fix one residue condition.
SmoothSchedule build_smooth_schedule(const Integer &need1, const Integer &need2, const std::vector<Integer> &avoid,
                                     const Integer &min_bound);

/// J equivalent to I with S-powersmooth reduced norm.
PathSolution powersmooth_path(const SpecialOrder &O, const LeftIdeal &I, const AlgoParams &params, Rng &rng);

/// True when every prime-power divisor of n is below S.
bool is_powersmooth(const ntheory::Factorization &factors, const Integer &S);

} // namespace quatpath
