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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quatpath/klpt.hpp"

namespace quatpath::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON forms. Big integers and rationals are decimal strings.

json algebra_to_json(const QuatAlgebra &B);
QuatAlgebra algebra_from_json(const json &j);

json lattice_to_json(const Lattice &L);
Lattice lattice_from_json(const json &j);

json element_to_json(const QuatElement &x);
QuatElement element_from_json(const json &j);

/// {algebra, denominator, rows} for the special order of the algebra.
json order_to_json(const QuatAlgebra &B, const OrderLattice &O);

/// {algebra, norm, denominator, rows, left_order}. left_order is omitted
/// for ideals of the special order.
json ideal_to_json(const LeftIdeal &I);

/// Inverse of ideal_to_json. Without left_order the special order of the
/// algebra is used. Throws InvalidInput / NotAnIdeal on bad input.
LeftIdeal ideal_from_json(const json &j);

json path_to_json(const PathSolution &sol);

/// Overrides the fields present in j.
AlgoParams params_from_json(const json &j, AlgoParams base = {});

// ---------------------------------------------------------------------------
// Commands. Each returns verified output or throws.

json cmd_gen_order(const Integer &p);
json cmd_random_ideal(const Integer &p, const Integer &ell, unsigned steps, std::uint64_t seed);
json cmd_ell_power(const json &ideal, const Integer &ell, const AlgoParams &params, std::uint64_t seed);
json cmd_powersmooth(const json &ideal, const AlgoParams &params, std::uint64_t seed);
json cmd_prime_norm(const json &ideal, const std::optional<Integer> &ell, const AlgoParams &params,
                    std::uint64_t seed);

/// Independent re-check of a path result against its input. Throws
/// VerificationFailed.
void verify_solution(const LeftIdeal &input, const PathSolution &sol, const std::optional<Integer> &ell);

// ---------------------------------------------------------------------------
// Bench harness

struct BenchRecord {
    unsigned p_bits = 0;
    Integer ell;
    std::string stage;
    unsigned long e = 0;
    double norm_bits = 0;
    long wall_ms = 0;
    unsigned long attempts = 0;
    std::uint64_t seed = 0;
};

inline constexpr const char *kBenchHeader = "p_bits,ell,stage,e,norm_bits,wall_ms,attempts,seed";

std::string to_csv(const BenchRecord &r);

struct BenchConfig {
    Integer ell{2};
    std::vector<unsigned> p_bits;
    unsigned trials = 1;
    std::uint64_t seed = 0;
    /// Report wall_ms as 0 so the output depends on the seed alone.
    bool deterministic = false;
    AlgoParams params;
};

/// Seed of trial `index` at size `p_bits`, derived from the run seed.
std::uint64_t trial_seed(std::uint64_t seed, unsigned p_bits, unsigned index);

/// Rows for a single trial: prime_norm, represent_integer, lift, ell_power,
/// or a single failed row.
std::vector<BenchRecord> bench_trial(const BenchConfig &cfg, unsigned p_bits, unsigned index);

/// Header plus every trial, in order.
void run_bench(const BenchConfig &cfg, std::ostream &out);

// ---------------------------------------------------------------------------

/// Full command line; returns the process exit code (0 ok, 2 invalid input,
/// 3 stage failure).
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace quatpath::cli
