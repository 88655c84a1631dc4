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

#include "quatpath/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "quatpath/errors.hpp"

namespace quatpath::cli {

namespace {

std::string str(const Integer &x) { return x.get_str(); }

Integer integer_from(const json &j, const char *what)
{
    Integer out;
    if (j.is_string()) {
        if (out.set_str(j.get<std::string>(), 10) != 0) {
            throw InvalidInput(std::string("not an integer: ") + what);
        }
        return out;
    }
    if (j.is_number_integer()) {
        return Integer(j.get<long>());
    }
    throw InvalidInput(std::string("expected a decimal string for ") + what);
}

Rational rational_from(const json &j, const char *what)
{
    if (j.is_string()) {
        Rational r;
        if (r.set_str(j.get<std::string>(), 10) != 0) {
            throw InvalidInput(std::string("not a rational: ") + what);
        }
        r.canonicalize();
        return r;
    }
    return Rational(integer_from(j, what));
}

const json &field(const json &j, const char *name)
{
    if (!j.is_object() || !j.contains(name)) {
        throw InvalidInput(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

Integer parse_integer(const std::string &s, const char *what)
{
    Integer out;
    if (s.empty() || out.set_str(s, 10) != 0) {
        throw InvalidInput(std::string("not an integer: ") + what);
    }
    return out;
}

json read_json_file(const std::string &path)
{
    std::string text;
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            throw InvalidInput("cannot read " + path);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception &ex) {
        throw InvalidInput(std::string("malformed JSON: ") + ex.what());
    }
}

Integer checked_prime(const Integer &ell, const char *what)
{
    if (ell < 2 || !ntheory::is_prime(ell)) {
        throw InvalidInput(std::string(what) + " must be prime");
    }
    return ell;
}

} // namespace

// ---------------------------------------------------------------------------
// Serialization

json algebra_to_json(const QuatAlgebra &B)
{
    json j = {{"p", str(B.p)}, {"q", str(B.q)}, {"D", str(B.D)}, {"case", to_string(B.kind)}};
    j["c"] = B.c ? json(str(*B.c)) : json(nullptr);
    return j;
}

QuatAlgebra algebra_from_json(const json &j)
{
    QuatAlgebra B;
    B.p = integer_from(field(j, "p"), "p");
    B.q = integer_from(field(j, "q"), "q");
    B.D = integer_from(field(j, "D"), "D");
    const json &kind = field(j, "case");
    if (!kind.is_string()) {
        throw InvalidInput("case must be a string");
    }
    B.kind = special_case_from_string(kind.get<std::string>());
    if (j.contains("c") && !j.at("c").is_null()) {
        B.c = integer_from(j.at("c"), "c");
    }
    B.validate();
    return B;
}

json lattice_to_json(const Lattice &L)
{
    json rows = json::array();
    for (const auto &r : L.rows()) {
        rows.push_back({str(r[0]), str(r[1]), str(r[2]), str(r[3])});
    }
    return {{"denominator", str(L.denominator())}, {"rows", rows}};
}

Lattice lattice_from_json(const json &j)
{
    Integer den = integer_from(field(j, "denominator"), "denominator");
    if (den <= 0) {
        throw InvalidInput("denominator must be positive");
    }
    const json &rows = field(j, "rows");
    if (!rows.is_array() || rows.size() != 4) {
        throw InvalidInput("rows must be four rows of four integers");
    }
    std::vector<Vec4> gens;
    for (const auto &r : rows) {
        if (!r.is_array() || r.size() != 4) {
            throw InvalidInput("rows must be four rows of four integers");
        }
        Vec4 v;
        for (std::size_t c = 0; c < 4; ++c) {
            v[c] = integer_from(r[c], "row entry");
        }
        gens.push_back(v);
    }
    return Lattice::from_integer_generators(den, gens);
}

json element_to_json(const QuatElement &x)
{
    json out = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        out.push_back(x[i].get_str());
    }
    return out;
}

QuatElement element_from_json(const json &j)
{
    if (!j.is_array() || j.size() != 4) {
        throw InvalidInput("element must be four rationals");
    }
    QuatElement x;
    for (std::size_t i = 0; i < 4; ++i) {
        x[i] = rational_from(j[i], "coordinate");
    }
    return x;
}

json order_to_json(const QuatAlgebra &B, const OrderLattice &O)
{
    json j = lattice_to_json(O.lattice());
    j["algebra"] = algebra_to_json(B);
    j["reduced_discriminant"] = str(O.reduced_discriminant());
    return j;
}

json ideal_to_json(const LeftIdeal &I)
{
    json j = lattice_to_json(I.lattice());
    j["algebra"] = algebra_to_json(I.algebra());
    j["norm"] = str(I.norm());
    SpecialOrder so = build_special_order(I.algebra().p);
    if (!(so.B == I.algebra() && so.O == I.left_order())) {
        j["left_order"] = lattice_to_json(I.left_order().lattice());
    }
    return j;
}

LeftIdeal ideal_from_json(const json &j)
{
    QuatAlgebra B = algebra_from_json(field(j, "algebra"));
    OrderLattice O;
    if (j.contains("left_order")) {
        O = OrderLattice::from_lattice(B, lattice_from_json(j.at("left_order")));
    } else {
        SpecialOrder so = build_special_order(B.p);
        if (!(so.B == B)) {
            throw InvalidInput("algebra differs from the standard presentation; give left_order explicitly");
        }
        O = so.O;
    }
    LeftIdeal I = LeftIdeal::from_lattice(O, lattice_from_json(j));
    if (j.contains("norm") && integer_from(j.at("norm"), "norm") != I.norm()) {
        throw InvalidInput("stated norm does not match the lattice");
    }
    return I;
}

json path_to_json(const PathSolution &sol)
{
    json factors = json::array();
    for (const auto &[prime, e] : sol.norm_factors) {
        factors.push_back({str(prime), e});
    }
    json stages = json::array();
    for (const auto &s : sol.diagnostics.stages) {
        stages.push_back({{"stage", s.stage}, {"attempts", s.attempts}, {"wall_ms", s.wall_ms}});
    }
    json j = {{"ideal", ideal_to_json(sol.J)},
              {"beta", element_to_json(sol.beta)},
              {"e", sol.e},
              {"norm", str(sol.norm)},
              {"norm_factors", factors},
              {"diagnostics",
               {{"prime_norm", str(sol.diagnostics.prime_norm)},
                {"e_represent", sol.diagnostics.e_represent},
                {"e_lift", sol.diagnostics.e_lift},
                {"restarts", sol.diagnostics.restarts},
                {"stages", stages}}}};
    if (sol.smooth_bound != 0) {
        j["smooth_bound"] = str(sol.smooth_bound);
    }
    return j;
}

AlgoParams params_from_json(const json &j, AlgoParams base)
{
    if (!j.is_object()) {
        throw InvalidInput("parameter file must hold a JSON object");
    }
    auto ulong_field = [&](const char *name, unsigned long &dst) {
        if (j.contains(name)) {
            Integer v = integer_from(j.at(name), name);
            if (v < 0 || !v.fits_ulong_p()) {
                throw InvalidInput(std::string(name) + " out of range");
            }
            dst = v.get_ui();
        }
    };
    ulong_field("m_box", base.m_box);
    ulong_field("max_attempts", base.max_attempts);
    ulong_field("e_cap", base.e_cap);
    ulong_field("smooth_bound", base.smooth_bound);
    ulong_field("pipeline_retries", base.pipeline_retries);
    if (j.contains("phi_c")) {
        base.phi_c = j.at("phi_c").is_number() ? j.at("phi_c").get<double>() : rational_from(j.at("phi_c"), "phi_c").get_d();
    }
    if (j.contains("seed")) {
        Integer v = integer_from(j.at("seed"), "seed");
        if (v < 0 || v >= ntheory::pow(Integer(2), 64)) {
            throw InvalidInput("seed must fit in 64 bits");
        }
        base.seed = static_cast<std::uint64_t>(std::stoull(v.get_str()));
    }
    base.validate();
    return base;
}

// ---------------------------------------------------------------------------
// Verification and commands

void verify_solution(const LeftIdeal &input, const PathSolution &sol, const std::optional<Integer> &ell)
{
    if (!(sol.J.left_order() == input.left_order())) {
        throw VerificationFailed("output has a different left order");
    }
    if (!input.contains(sol.beta)) {
        throw VerificationFailed("beta is not in the input ideal");
    }
    Lattice expected = right_multiply(input.lattice(), conj(sol.beta) / Rational(input.norm()), input.algebra());
    if (!(expected == sol.J.lattice())) {
        throw VerificationFailed("output is not I conj(beta) / Nrd(I)");
    }
    if (sol.J.norm() != sol.norm) {
        throw VerificationFailed("reported norm differs from the ideal");
    }
    Integer product = 1;
    for (const auto &[prime, e] : sol.norm_factors) {
        product *= ntheory::pow(prime, e);
    }
    if (product != sol.norm) {
        throw VerificationFailed("norm factorization does not multiply out");
    }
    if (ell && ntheory::pow(*ell, sol.e) != sol.norm) {
        throw VerificationFailed("norm is not ell^e");
    }
    if (!ell && !is_powersmooth(sol.norm_factors, sol.smooth_bound)) {
        throw VerificationFailed("norm is not powersmooth");
    }
    if (!is_equivalent(input, sol.J)) {
        throw VerificationFailed("output is not equivalent to the input");
    }
}

json cmd_gen_order(const Integer &p)
{
    SpecialOrder so = build_special_order(p);
    if (!so.O.is_maximal()) {
        throw VerificationFailed("order is not maximal");
    }
    json j = order_to_json(so.B, so.O);
    j["verified"] = true;
    return j;
}

json cmd_random_ideal(const Integer &p, const Integer &ell, unsigned steps, std::uint64_t seed)
{
    checked_prime(ell, "ell");
    SpecialOrder so = build_special_order(p);
    if (ell == p) {
        throw InvalidInput("ell must differ from p");
    }
    Rng rng(seed);
    LeftIdeal I = steps == 0 ? unit_ideal(so.O) : random_walk_ideal(so.O, ell, steps, rng);
    if (I.norm() != ntheory::pow(ell, steps)) {
        throw VerificationFailed("random walk has the wrong norm");
    }
    json j = ideal_to_json(I);
    j["steps"] = steps;
    j["ell"] = str(ell);
    j["seed"] = seed;
    return j;
}

json cmd_ell_power(const json &ideal, const Integer &ell, const AlgoParams &params, std::uint64_t seed)
{
    checked_prime(ell, "ell");
    LeftIdeal I = ideal_from_json(ideal);
    SpecialOrder so = build_special_order(I.algebra().p);
    if (!(so.O == I.left_order())) {
        throw InvalidInput("ell-power needs a left ideal of the special order");
    }
    Rng rng(seed);
    PathSolution sol = ell_power_path(so, I, ell, params, rng);
    verify_solution(I, sol, ell);
    json j = path_to_json(sol);
    j["ell"] = str(ell);
    j["seed"] = seed;
    j["verified"] = true;
    return j;
}

json cmd_powersmooth(const json &ideal, const AlgoParams &params, std::uint64_t seed)
{
    LeftIdeal I = ideal_from_json(ideal);
    SpecialOrder so = build_special_order(I.algebra().p);
    if (!(so.O == I.left_order())) {
        throw InvalidInput("powersmooth needs a left ideal of the special order");
    }
    Rng rng(seed);
    PathSolution sol = powersmooth_path(so, I, params, rng);
    verify_solution(I, sol, std::nullopt);
    json j = path_to_json(sol);
    j["seed"] = seed;
    j["verified"] = true;
    return j;
}

json cmd_prime_norm(const json &ideal, const std::optional<Integer> &ell, const AlgoParams &params,
                    std::uint64_t seed)
{
    LeftIdeal I = ideal_from_json(ideal);
    const QuatAlgebra &B = I.algebra();
    PrimeNormConstraints cons{{B.p, abs(B.D)}, std::nullopt};
    if (ell) {
        checked_prime(*ell, "ell");
        cons.coprime_to.push_back(*ell);
        cons.ell_nonresidue = *ell;
    }
    Rng rng(seed);
    PrimeNormResult res = prime_norm_representative(I, cons, params, rng);
    if (!ntheory::is_prime(res.J.norm()) || !I.contains(res.alpha) ||
        !(right_multiply(I.lattice(), conj(res.alpha) / Rational(I.norm()), B) == res.J.lattice()) ||
        !is_equivalent(I, res.J)) {
        throw VerificationFailed("prime-norm representative failed re-verification");
    }
    json j = {{"ideal", ideal_to_json(res.J)},
              {"alpha", element_to_json(res.alpha)},
              {"norm", str(res.J.norm())},
              {"attempts", res.attempts},
              {"radius", res.radius},
              {"seed", seed},
              {"verified", true}};
    return j;
}

// ---------------------------------------------------------------------------
// Bench

std::string to_csv(const BenchRecord &r)
{
    char bits[64];
    std::snprintf(bits, sizeof bits, "%.3f", r.norm_bits);
    std::ostringstream os;
    os << r.p_bits << ',' << r.ell.get_str() << ',' << r.stage << ',' << r.e << ',' << bits << ',' << r.wall_ms
       << ',' << r.attempts << ',' << r.seed;
    return os.str();
}

std::uint64_t trial_seed(std::uint64_t seed, unsigned p_bits, unsigned index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), p_bits, index};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<BenchRecord> bench_trial(const BenchConfig &cfg, unsigned p_bits, unsigned index)
{
    const std::uint64_t seed = trial_seed(cfg.seed, p_bits, index);
    Rng rng(seed);
    BenchRecord base;
    base.p_bits = p_bits;
    base.ell = cfg.ell;
    base.seed = seed;
    auto ms = [&](double v) { return cfg.deterministic ? 0L : std::lround(v); };

    Integer p = ntheory::random_prime(rng, p_bits);
    while (p == cfg.ell) {
        p = ntheory::random_prime(rng, p_bits);
    }
    SpecialOrder so = build_special_order(p);
    // The test ideal comes from a walk of another prime degree reaching norm about p.
    const Integer walk_ell = cfg.ell == 2 ? 3 : 2;
    const auto steps = static_cast<unsigned>(ntheory::ceil_log(p, walk_ell));
    LeftIdeal I = random_walk_ideal(so.O, walk_ell, steps, rng);

    const auto start = std::chrono::steady_clock::now();
    try {
        PathSolution sol = ell_power_path(so, I, cfg.ell, cfg.params, rng);
        double total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        verify_solution(I, sol, cfg.ell);
        const double log_ell = ntheory::log2(cfg.ell);
        const auto &d = sol.diagnostics;
        auto stage = [&](const std::string &name) {
            for (const auto &s : d.stages) {
                if (s.stage == name) {
                    return s;
                }
            }
            return StageRecord{name, 0, 0};
        };
        std::vector<BenchRecord> rows;
        BenchRecord r = base;
        StageRecord s = stage("prime_norm");
        r.stage = "prime_norm";
        r.e = 0;
        r.norm_bits = ntheory::log2(d.prime_norm);
        r.wall_ms = ms(s.wall_ms);
        r.attempts = s.attempts;
        rows.push_back(r);

        s = stage("represent_integer");
        r.stage = "represent_integer";
        r.e = d.e_represent;
        r.norm_bits = ntheory::log2(d.prime_norm) + static_cast<double>(d.e_represent) * log_ell;
        r.wall_ms = ms(s.wall_ms);
        r.attempts = s.attempts;
        rows.push_back(r);

        s = stage("lift");
        r.stage = "lift";
        r.e = d.e_lift;
        r.norm_bits = static_cast<double>(d.e_lift) * log_ell;
        r.wall_ms = ms(s.wall_ms);
        r.attempts = s.attempts;
        rows.push_back(r);

        r.stage = "ell_power";
        r.e = sol.e;
        r.norm_bits = static_cast<double>(sol.e) * log_ell;
        r.wall_ms = ms(total);
        r.attempts = d.restarts + 1;
        rows.push_back(r);
        return rows;
    } catch (const StageFailed &ex) {
        BenchRecord r = base;
        r.stage = "failed";
        r.attempts = static_cast<unsigned long>(ex.attempts());
        r.wall_ms = ms(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        return {r};
    }
}

void run_bench(const BenchConfig &cfg, std::ostream &out)
{
    if (cfg.trials == 0) {
        throw InvalidInput("trials must be at least 1");
    }
    if (cfg.p_bits.empty()) {
        throw InvalidInput("no prime sizes given");
    }
    for (unsigned bits : cfg.p_bits) {
        if (bits < 8 || bits > 512) {
            throw InvalidInput("p_bits must be in [8, 512]");
        }
    }
    checked_prime(cfg.ell, "ell");
    out << kBenchHeader << '\n';
    for (unsigned bits : cfg.p_bits) {
        for (unsigned t = 0; t < cfg.trials; ++t) {
            for (const auto &r : bench_trial(cfg, bits, t)) {
                out << to_csv(r) << '\n';
            }
            out.flush();
        }
    }
}

// ---------------------------------------------------------------------------
// Command line

namespace {

json error_json(const std::string &kind, const std::string &message)
{
    return {{"error", kind}, {"message", message}};
}

void emit(const std::string &text, const std::string &out_path, std::ostream &out)
{
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) {
        throw InvalidInput("cannot write " + out_path);
    }
    f << text;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"quatpath: equivalent ideals of ell-power and powersmooth norm in B_{p,inf}"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "Write output to this file instead of stdout");

    std::string p_str;
    std::string ell_str = "2";
    unsigned steps = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string ideal_path;
    std::string params_path;
    unsigned long smooth_bound = 0;
    unsigned trials = 1;
    std::vector<unsigned> p_bits;
    bool deterministic = false;

    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "RNG seed")->each([&](const std::string &) { seed_given = true; });
    };
    auto add_params = [&](CLI::App *sub) {
        sub->add_option("--params-file", params_path, "JSON file overriding algorithm parameters");
    };

    CLI::App *gen = app.add_subcommand("gen-order", "Special maximal order for a prime p");
    gen->add_option("--p", p_str, "Prime p >= 5")->required();

    CLI::App *walk = app.add_subcommand("random-ideal", "Left ideal of norm ell^steps by a random walk");
    walk->add_option("--p", p_str, "Prime p >= 5")->required();
    walk->add_option("--ell", ell_str, "Walk degree (prime)");
    walk->add_option("--steps", steps, "Number of steps");
    add_seed(walk);

    CLI::App *ellp = app.add_subcommand("ell-power", "Equivalent ideal of ell-power norm");
    ellp->add_option("--ideal", ideal_path, "Ideal JSON file, or - for stdin")->required();
    ellp->add_option("--ell", ell_str, "Target prime");
    add_seed(ellp);
    add_params(ellp);

    CLI::App *smooth = app.add_subcommand("powersmooth", "Equivalent ideal of powersmooth norm");
    smooth->add_option("--ideal", ideal_path, "Ideal JSON file, or - for stdin")->required();
    smooth->add_option("--smooth-bound", smooth_bound, "Bound S (0 lets the schedule choose)");
    add_seed(smooth);
    add_params(smooth);

    CLI::App *pnorm = app.add_subcommand("prime-norm", "Equivalent ideal of prime norm");
    pnorm->add_option("--ideal", ideal_path, "Ideal JSON file, or - for stdin")->required();
    CLI::Option *pnorm_ell = pnorm->add_option("--ell", ell_str, "Also require ell to be a non-residue mod the norm");
    add_seed(pnorm);
    add_params(pnorm);

    CLI::App *bench = app.add_subcommand("bench", "CSV series of stage exponents, norms and timings");
    bench->add_option("--ell", ell_str, "Target prime");
    bench->add_option("--p-bits", p_bits, "Prime sizes in bits")->required()->delimiter(',');
    bench->add_option("--trials", trials, "Trials per size");
    bench->add_flag("--deterministic", deterministic, "Report wall_ms as 0 for byte-stable output");
    add_seed(bench);
    add_params(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << e.what() << '\n';
        out << error_json("invalid_input", e.what()).dump(2) << '\n';
        return 2;
    }

    try {
        AlgoParams params;
        if (!params_path.empty()) {
            params = params_from_json(read_json_file(params_path));
        }
        if (!seed_given) {
            seed = params.seed;
        }
        params.seed = seed;

        if (gen->parsed()) {
            emit(cmd_gen_order(parse_integer(p_str, "p")).dump(2) + "\n", out_path, out);
        } else if (walk->parsed()) {
            emit(cmd_random_ideal(parse_integer(p_str, "p"), parse_integer(ell_str, "ell"), steps, seed).dump(2) +
                     "\n",
                 out_path, out);
        } else if (ellp->parsed()) {
            emit(cmd_ell_power(read_json_file(ideal_path), parse_integer(ell_str, "ell"), params, seed).dump(2) +
                     "\n",
                 out_path, out);
        } else if (smooth->parsed()) {
            if (smooth_bound != 0) {
                params.smooth_bound = smooth_bound;
            }
            params.validate();
            emit(cmd_powersmooth(read_json_file(ideal_path), params, seed).dump(2) + "\n", out_path, out);
        } else if (pnorm->parsed()) {
            std::optional<Integer> ell;
            if (pnorm_ell->count() > 0) {
                ell = parse_integer(ell_str, "ell");
            }
            emit(cmd_prime_norm(read_json_file(ideal_path), ell, params, seed).dump(2) + "\n", out_path, out);
        } else if (bench->parsed()) {
            BenchConfig cfg;
            cfg.ell = parse_integer(ell_str, "ell");
            cfg.p_bits = p_bits;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.deterministic = deterministic;
            cfg.params = params;
            std::ostringstream csv;
            run_bench(cfg, csv);
            emit(csv.str(), out_path, out);
        }
        return 0;
    } catch (const InvalidInput &ex) {
        err << "invalid input: " << ex.what() << '\n';
        out << error_json("invalid_input", ex.what()).dump(2) << '\n';
        return 2;
    } catch (const NotAnIdeal &ex) {
        err << "invalid input: " << ex.what() << '\n';
        out << error_json("invalid_input", ex.what()).dump(2) << '\n';
        return 2;
    } catch (const RankDeficient &ex) {
        err << "invalid input: " << ex.what() << '\n';
        out << error_json("invalid_input", ex.what()).dump(2) << '\n';
        return 2;
    } catch (const StageFailed &ex) {
        err << "stage failure: " << ex.what() << '\n';
        json j = error_json("stage_failed", ex.what());
        j["stage"] = ex.stage();
        j["attempts"] = ex.attempts();
        out << j.dump(2) << '\n';
        return 3;
    } catch (const Error &ex) {
        err << "failure: " << ex.what() << '\n';
        out << error_json("stage_failed", ex.what()).dump(2) << '\n';
        return 3;
    }
}

} // namespace quatpath::cli
