// Copyright 2026 The qmul Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmul/verify.hpp"

#include "qmul/arith_blocks.hpp"
#include "qmul/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <memory>
#include <stdexcept>

namespace qmul {

Subject make_subject(MultiplierKind kind, std::size_t n, const std::optional<ModPParams> &params) {
    Subject s;
    s.kind = std::string(kind_name(kind));
    s.n = n;
    s.circuit = build_multiplier(kind, n, params);
    if (is_modp(kind)) {
        const ModPParams &pp = *params;
        s.params = {{"p", to_string(pp.p)}, {"w", pp.w}};
        s.axes = {{"x", pp.p}, {"y", pp.p}};
        auto ctx = std::make_shared<const oracle::MontgomeryContext>(pp.p, n, pp.strict);
        const std::size_t w = pp.w;
        s.oracle = [ctx, w](const RegisterValues &in) {
            return RegisterValues{{"result", ctx->montgomery_product(in.at("x"), in.at("y"), w)}};
        };
        return s;
    }
    s.axes = {{"x", pow2(n)}, {"y", pow2(n)}};
    if (kind == MultiplierKind::SchoolbookClassic || kind == MultiplierKind::SchoolbookAddSub) {
        s.oracle = [](const RegisterValues &in) {
            return RegisterValues{{"result", oracle::school_product(in.at("x"), in.at("y"))}};
        };
    } else {
        s.oracle = [n](const RegisterValues &in) {
            return RegisterValues{{"result", oracle::mod2n_product(in.at("x"), in.at("y"), n)}};
        };
    }
    return s;
}

namespace {

/// Splits an (n+1)-bit value into the b register and the carry qubit.
RegisterValues with_carry(const BigUInt &v, std::size_t n) {
    return {{"b", v & (pow2(n) - 1)}, {"carry", v >> n}};
}

}  // namespace

Subject make_block_subject(const std::string &name, std::size_t n) {
    Subject s;
    s.kind = name;
    s.n = n;
    const BigUInt full = pow2(n);
    const Axis a{"a", full}, b{"b", full}, ctrl{"ctrl", 2};
    if (name == "adder") {
        s.circuit = build_adder(n, false);
        s.axes = {a, b};
        s.oracle = [full](const RegisterValues &in) { return RegisterValues{{"b", (in.at("a") + in.at("b")) % full}}; };
    } else if (name == "adder-carry") {
        s.circuit = build_adder(n, true);
        s.axes = {a, b};
        s.oracle = [n](const RegisterValues &in) { return with_carry(in.at("a") + in.at("b"), n); };
    } else if (name == "adder-carry-in") {
        s.circuit = build_adder(n, false, CarryIn::Qubit);
        s.axes = {a, b, {"cin", 2}};
        s.oracle = [full](const RegisterValues &in) {
            return RegisterValues{{"b", (in.at("a") + in.at("b") + in.at("cin")) % full}};
        };
    } else if (name == "subtractor") {
        s.circuit = build_subtractor(n, false);
        s.axes = {a, b};
        s.oracle = [full](const RegisterValues &in) {
            return RegisterValues{{"b", mod_floor(in.at("b") - in.at("a"), full)}};
        };
    } else if (name == "subtractor-borrow") {
        s.circuit = build_subtractor(n, true);
        s.axes = {a, b};
        s.oracle = [n, full](const RegisterValues &in) { return with_carry(in.at("b") + full - in.at("a"), n); };
    } else if (name == "controlled-adder") {
        s.circuit = build_controlled_adder(n, false);
        s.axes = {ctrl, a, b};
        s.oracle = [full](const RegisterValues &in) {
            return RegisterValues{{"b", (in.at("b") + in.at("ctrl") * in.at("a")) % full}};
        };
    } else if (name == "controlled-adder-carry") {
        s.circuit = build_controlled_adder(n, true);
        s.axes = {ctrl, a, b};
        s.oracle = [n](const RegisterValues &in) { return with_carry(in.at("b") + in.at("ctrl") * in.at("a"), n); };
    } else if (name == "controlled-addsub") {
        s.circuit = build_controlled_addsub(n, false);
        s.axes = {ctrl, a, b};
        s.oracle = [full](const RegisterValues &in) {
            const BigUInt v = in.at("ctrl") != 0 ? BigUInt(in.at("b") + in.at("a")) : BigUInt(in.at("b") - in.at("a"));
            return RegisterValues{{"b", mod_floor(v, full)}};
        };
    } else if (name == "controlled-addsub-carry") {
        s.circuit = build_controlled_addsub(n, true);
        s.axes = {ctrl, a, b};
        s.oracle = [n, full](const RegisterValues &in) {
            const BigUInt v = in.at("ctrl") != 0 ? BigUInt(in.at("b") + in.at("a")) : BigUInt(in.at("b") + full - in.at("a"));
            return with_carry(v, n);
        };
    } else {
        throw std::invalid_argument("unknown block '" + name + "'");
    }
    return s;
}

Subject make_subject(const std::string &name, std::size_t n, const std::optional<ModPParams> &params) {
    if (auto kind = parse_kind(name)) {
        return make_subject(*kind, n, params);
    }
    return make_block_subject(name, n);
}

namespace {

nlohmann::json values_json(const RegisterValues &values) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &[role, v] : values) {
        j[role] = to_string(v);
    }
    return j;
}

/// Result of one simulated case; empty when it passed.
struct CaseOutcome {
    std::optional<Mismatch> mismatch;
    std::vector<ViolationRecord> violations;
};

CaseOutcome check_case(const Subject &subject, std::uint64_t index, const RegisterValues &input) {
    CaseOutcome out;
    const RunResult run = run_checked(subject.circuit, input);
    for (const Violation &v : run.violations) {
        out.violations.push_back({index, input, v});
    }
    RegisterValues expected = subject.oracle(input);
    for (const auto &[role, v] : input) {
        expected.emplace(role, v);
    }
    RegisterValues actual;
    bool same = true;
    for (const auto &[role, v] : expected) {
        const BigUInt got = run.values.at(role);
        same = same && got == v;
        actual.emplace(role, got);
    }
    if (!same) {
        out.mismatch = Mismatch{index, input, std::move(expected), std::move(actual)};
    }
    return out;
}

void absorb(VerificationReport &report, CaseOutcome &&outcome) {
    if (outcome.mismatch) {
        report.mismatches.push_back(std::move(*outcome.mismatch));
    }
    for (auto &v : outcome.violations) {
        report.ancilla_violations.push_back(std::move(v));
    }
}

VerificationReport empty_report(const Subject &subject) {
    VerificationReport r;
    r.kind = subject.kind;
    r.n = subject.n;
    r.params = subject.params;
    return r;
}

std::uint64_t input_space(const Subject &subject, std::uint64_t budget) {
    BigUInt total = 1;
    for (const Axis &axis : subject.axes) {
        total *= axis.limit;
    }
    if (total > budget) {
        throw std::length_error("input space of " + to_string(total) + " cases exceeds the budget of " +
                                std::to_string(budget));
    }
    return total.convert_to<std::uint64_t>();
}

/// Mixed-radix decode, last axis least significant.
RegisterValues decode(const Subject &subject, std::uint64_t index) {
    RegisterValues in;
    for (std::size_t i = subject.axes.size(); i-- > 0;) {
        const Axis &axis = subject.axes[i];
        const std::uint64_t radix = axis.limit.convert_to<std::uint64_t>();
        in[axis.role] = index % radix;
        index /= radix;
    }
    return in;
}

void sort_report(VerificationReport &r) {
    std::stable_sort(r.mismatches.begin(), r.mismatches.end(),
                     [](const Mismatch &a, const Mismatch &b) { return a.case_index < b.case_index; });
    std::stable_sort(r.ancilla_violations.begin(), r.ancilla_violations.end(),
                     [](const ViolationRecord &a, const ViolationRecord &b) {
                         return a.case_index != b.case_index ? a.case_index < b.case_index
                                                             : a.violation.gate_index < b.violation.gate_index;
                     });
}

/// Runs `count` cases in parallel; `input_of(i)` must be thread-safe.
template <typename InputOf>
void run_parallel(const Subject &subject, std::uint64_t count, int jobs, InputOf input_of, VerificationReport &report) {
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    std::exception_ptr error;
#pragma omp parallel num_threads(threads)
    {
        VerificationReport local;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
            try {
                const auto index = static_cast<std::uint64_t>(i);
                absorb(local, check_case(subject, index, input_of(index)));
            } catch (...) {
#pragma omp critical(qmul_verify_error)
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
#pragma omp critical(qmul_verify_merge)
        {
            std::move(local.mismatches.begin(), local.mismatches.end(), std::back_inserter(report.mismatches));
            std::move(local.ancilla_violations.begin(), local.ancilla_violations.end(),
                      std::back_inserter(report.ancilla_violations));
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    report.cases_run = count;
    sort_report(report);
}

std::vector<RegisterValues> draw_inputs(const Subject &subject, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) {
        throw std::invalid_argument("randomized verification needs at least one trial");
    }
    std::mt19937_64 gen(seed);
    std::vector<RegisterValues> inputs(trials);
    for (auto &in : inputs) {
        for (const Axis &axis : subject.axes) {
            in[axis.role] = random_below(axis.limit, gen);
        }
    }
    return inputs;
}

}  // namespace

BigUInt random_below(const BigUInt &limit, std::mt19937_64 &gen) {
    if (limit <= 0) {
        throw std::invalid_argument("random_below needs a positive limit");
    }
    if (limit == 1) {
        return 0;
    }
    const std::size_t bits = bit_length(limit - 1);
    while (true) {
        BigUInt v = 0;
        for (std::size_t done = 0; done < bits; done += 64) {
            v |= BigUInt(gen()) << done;
        }
        v &= pow2(bits) - 1;
        if (v < limit) {
            return v;
        }
    }
}

VerificationReport verify_exhaustive(const Subject &subject, const SweepOptions &options) {
    VerificationReport report = empty_report(subject);
    const std::uint64_t count = input_space(subject, options.budget);
    run_parallel(subject, count, options.jobs, [&](std::uint64_t i) { return decode(subject, i); }, report);
    return report;
}

VerificationReport verify_exhaustive_serial(const Subject &subject, std::uint64_t budget) {
    VerificationReport report = empty_report(subject);
    const std::uint64_t count = input_space(subject, budget);
    for (std::uint64_t i = 0; i < count; ++i) {
        absorb(report, check_case(subject, i, decode(subject, i)));
    }
    report.cases_run = count;
    return report;
}

VerificationReport verify_randomized(const Subject &subject, std::uint64_t trials, std::uint64_t seed,
                                     const SweepOptions &options) {
    VerificationReport report = empty_report(subject);
    report.seed = seed;
    const std::vector<RegisterValues> inputs = draw_inputs(subject, trials, seed);
    run_parallel(subject, trials, options.jobs, [&](std::uint64_t i) { return inputs[i]; }, report);
    return report;
}

VerificationReport verify_randomized_serial(const Subject &subject, std::uint64_t trials, std::uint64_t seed) {
    VerificationReport report = empty_report(subject);
    report.seed = seed;
    const std::vector<RegisterValues> inputs = draw_inputs(subject, trials, seed);
    for (std::uint64_t i = 0; i < trials; ++i) {
        absorb(report, check_case(subject, i, inputs[i]));
    }
    report.cases_run = trials;
    return report;
}

nlohmann::json VerificationReport::to_json() const {
    using nlohmann::json;
    json j;
    j["kind"] = kind;
    j["n"] = n;
    j["params"] = params;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["cases_run"] = cases_run;
    json mm = json::array();
    for (const auto &m : mismatches) {
        mm.push_back({{"case", m.case_index},
                      {"input", values_json(m.input)},
                      {"expected", values_json(m.expected)},
                      {"actual", values_json(m.actual)}});
    }
    j["mismatches"] = mm;
    json vv = json::array();
    for (const auto &v : ancilla_violations) {
        vv.push_back({{"case", v.case_index},
                      {"input", values_json(v.input)},
                      {"gate", v.violation.gate_index},
                      {"what", v.violation.what}});
    }
    j["ancilla_violations"] = vv;
    j["passed"] = passed();
    return j;
}

}  // namespace qmul
