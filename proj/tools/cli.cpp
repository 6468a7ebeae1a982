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

#include "cli.hpp"

#include "qmul/circuit_text.hpp"
#include "qmul/estimator.hpp"
#include "qmul/oracle.hpp"
#include "qmul/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qmul::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Flags shared by the circuit-producing commands.
struct Target {
    std::string kind;
    std::size_t n = 0;
    std::optional<std::size_t> w;
    std::optional<std::string> p;

    void attach(CLI::App &cmd) {
        cmd.add_option("--kind", kind, "multiplier kind or arithmetic block")->required();
        cmd.add_option("--n", n, "operand width in bits")->required()->check(CLI::PositiveNumber);
        cmd.add_option("--w", w, "window size (mod-p kinds)");
        cmd.add_option("--p", p, "odd modulus with 2^(n-1) < p < 2^n (mod-p kinds)");
    }

    /// Resolves p and w for mod-p kinds; warns on stderr about composite moduli.
    std::optional<ModPParams> modp(std::ostream &err) const {
        const auto parsed = parse_kind(kind);
        if (!parsed || !is_modp(*parsed)) {
            if (w || p) {
                throw UsageError("--w and --p apply to mod-p kinds only");
            }
            return std::nullopt;
        }
        if (n < 2) {
            throw UsageError("mod-p kinds need n >= 2");
        }
        ModPParams params;
        params.n = n;
        try {
            params.p = p ? parse_biguint(*p) : oracle::largest_prime_in_width(n);
        } catch (const std::exception &) {
            throw UsageError("--p must be a non-negative integer");
        }
        params.w = w ? *w : optimal_window(*parsed, n).w;
        if (auto warning = params.validate()) {
            err << "warning: " << *warning << '\n';
        }
        return params;
    }

    Subject subject(std::ostream &err) const {
        const auto params = modp(err);
        if (!parse_kind(kind)) {
            static const std::vector<std::string> blocks = {
                "adder",           "adder-carry",       "adder-carry-in",   "subtractor",
                "subtractor-borrow", "controlled-adder", "controlled-adder-carry", "controlled-addsub",
                "controlled-addsub-carry"};
            if (std::find(blocks.begin(), blocks.end(), kind) == blocks.end()) {
                throw UsageError("unknown kind '" + kind + "'");
            }
        }
        return make_subject(kind, n, params);
    }
};

json ledger_json(const ResourceReport &r) {
    json entries = json::array();
    for (const auto &e : r.block_ledger) {
        entries.push_back({{"label", e.label}, {"counted", e.counted}, {"cost", e.nominal}});
    }
    return entries;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

int cmd_build(const Target &t, bool as_json, std::ostream &out, std::ostream &err) {
    const Subject s = t.subject(err);
    const ResourceReport r = count_resources(s.circuit);
    if (as_json) {
        out << json{{"kind", s.kind},
                    {"n", s.n},
                    {"params", s.params},
                    {"counted", r.counted_toffoli},
                    {"nominal", r.nominal_toffoli},
                    {"qubits", r.qubit_count},
                    {"gates", s.circuit.gates().size()},
                    {"ledger", ledger_json(r)}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    out << s.kind << " n=" << s.n << '\n'
        << "  gates    " << s.circuit.gates().size() << '\n'
        << "  qubits   " << r.qubit_count << '\n'
        << "  counted  " << r.counted_toffoli << '\n'
        << "  nominal  " << fmt(r.nominal_toffoli) << '\n';
    for (const auto &e : r.block_ledger) {
        out << "    " << std::left << std::setw(28) << e.label << std::right << std::setw(8) << e.counted
            << std::setw(14) << fmt(e.nominal) << '\n';
    }
    return kExitOk;
}

int cmd_simulate(const Target &t, const std::optional<std::string> &x, const std::optional<std::string> &y,
                 const std::vector<std::string> &assignments, bool as_json, std::ostream &out, std::ostream &err) {
    const Subject s = t.subject(err);
    RegisterValues input;
    auto assign = [&](const std::string &role, const std::string &value) {
        try {
            input[role] = parse_biguint(value);
        } catch (const std::exception &) {
            throw UsageError("value for '" + role + "' must be a non-negative integer");
        }
    };
    if (x) {
        assign("x", *x);
    }
    if (y) {
        assign("y", *y);
    }
    for (const auto &a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--set expects role=value");
        }
        assign(a.substr(0, eq), a.substr(eq + 1));
    }
    const RegisterValues values = run(s.circuit, input);
    if (as_json) {
        json j = json::object();
        for (const auto &[role, v] : values) {
            j[role] = to_string(v);
        }
        out << json{{"kind", s.kind}, {"n", s.n}, {"params", s.params}, {"registers", j}}.dump(2) << '\n';
    } else {
        for (const auto &[role, v] : values) {
            out << role << " = " << to_string(v) << '\n';
        }
    }
    return kExitOk;
}

int cmd_verify(const Target &t, bool exhaustive, std::uint64_t trials, std::uint64_t seed, int jobs, bool as_json,
               std::ostream &out, std::ostream &err) {
    const Subject s = t.subject(err);
    SweepOptions options;
    options.jobs = jobs;
    if (!exhaustive && trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    const VerificationReport r =
        exhaustive ? verify_exhaustive(s, options) : verify_randomized(s, trials, seed, options);
    if (as_json) {
        out << r.to_json().dump(2) << '\n';
    } else {
        out << s.kind << " n=" << s.n << (exhaustive ? " exhaustive" : " randomized seed=" + std::to_string(seed))
            << ": " << r.cases_run << " cases, " << r.mismatches.size() << " mismatches, "
            << r.ancilla_violations.size() << " ancilla violations\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(r.mismatches.size(), 10); ++i) {
            const auto &m = r.mismatches[i];
            out << "  case " << m.case_index << ':';
            for (const auto &[role, v] : m.input) {
                out << ' ' << role << '=' << to_string(v);
            }
            for (const auto &[role, v] : m.expected) {
                out << "  " << role << " expected " << to_string(v) << " got " << to_string(m.actual.at(role));
            }
            out << '\n';
        }
        out << (r.passed() ? "PASS" : "FAIL") << '\n';
    }
    return r.passed() ? kExitOk : kExitMismatch;
}

MultiplierKind multiplier_kind(const std::string &name) {
    auto kind = parse_kind(name);
    if (!kind) {
        throw UsageError("unknown multiplier kind '" + name + "'");
    }
    return *kind;
}

int cmd_estimate(const Target &t, bool as_json, std::ostream &out, std::ostream &err) {
    const MultiplierKind kind = multiplier_kind(t.kind);
    const ReconcileReport r = reconcile(kind, t.n, t.modp(err));
    if (as_json) {
        out << r.to_json().dump(2) << '\n';
        return kExitOk;
    }
    out << kind_name(kind) << " n=" << r.n;
    if (r.w) {
        out << " w=" << *r.w << " p=" << to_string(*r.p);
    }
    out << '\n' << "  formula  " << fmt(r.formula) << '\n' << "  counted  " << r.counted << '\n'
        << "  nominal  " << fmt(r.nominal) << '\n';
    if (r.quoted_ledger) {
        out << "  quoted ledger  " << fmt(*r.quoted_ledger) << "  (nominal - formula = " << fmt(*r.table_gap) << ")\n";
    }
    if (r.reduction_vs_classic) {
        out << "  reduction vs classic  " << fmt(*r.reduction_vs_classic) << '\n';
    }
    out << "  " << (r.exact ? "exact" : "MISMATCH") << '\n';
    return kExitOk;
}

int cmd_sweep(const Target &t, bool as_json, std::ostream &out) {
    const MultiplierKind kind = multiplier_kind(t.kind);
    if (!is_modp(kind)) {
        throw UsageError("sweep-w needs a mod-p kind");
    }
    if (t.n < 2) {
        throw UsageError("sweep-w needs n >= 2");
    }
    const WindowChoice best = optimal_window(kind, t.n);
    const std::size_t top = std::min<std::size_t>(t.n, 64);
    if (as_json) {
        json rows = json::array();
        for (std::size_t w = 1; w <= top; ++w) {
            rows.push_back({{"w", w}, {"cost", formula_toffoli(kind, t.n, w)}});
        }
        out << json{{"kind", kind_name(kind)},
                    {"n", t.n},
                    {"optimal_w", best.w},
                    {"cost", best.cost},
                    {"approximation", best.approximation},
                    {"sweep", rows}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    for (std::size_t w = 1; w <= top; ++w) {
        out << std::setw(4) << w << "  " << fmt(formula_toffoli(kind, t.n, w)) << (w == best.w ? "  <- optimal" : "")
            << '\n';
    }
    out << "optimal w = " << best.w << ", approximation log2(n/log2 n)+2 = " << fmt(best.approximation) << '\n';
    return kExitOk;
}

int cmd_crossover(const std::string &name, double threshold, std::size_t cap, bool as_json, std::ostream &out) {
    const auto family = parse_family(name);
    if (!family) {
        throw UsageError("crossover --kind must be schoolbook, mod2n or modp");
    }
    const std::size_t n = crossover(*family, threshold, cap);
    const double r = reduction(*family, n);
    if (as_json) {
        out << json{{"family", name}, {"threshold", threshold}, {"n", n}, {"reduction", r}}.dump(2) << '\n';
    } else {
        out << name << ": reduction first >= " << fmt(threshold) << " at n=" << n << " (" << fmt(r) << ")\n";
    }
    return kExitOk;
}

int cmd_emit(const Target &t, const std::string &format, std::ostream &out, std::ostream &err) {
    const Subject s = t.subject(err);
    if (format == "json") {
        out << to_json(s.circuit).dump(1) << '\n';
    } else {
        out << emit_text(s.circuit);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"multiplier circuit construction, simulation and cost estimation", "qmul"};
    app.require_subcommand(1);

    Target target;
    bool as_json = false;
    std::optional<std::string> out_file;
    auto common = [&](CLI::App *cmd, bool with_target = true) {
        if (with_target) {
            target.attach(*cmd);
        }
        cmd->add_flag("--json", as_json, "machine-readable output");
        cmd->add_option("--out", out_file, "write output to FILE instead of stdout");
    };

    auto *build = app.add_subcommand("build", "construct a circuit and print its resource ledger");
    common(build);

    std::optional<std::string> x, y;
    std::vector<std::string> assignments;
    auto *simulate = app.add_subcommand("simulate", "run a circuit on one basis-state input");
    common(simulate);
    simulate->add_option("--x", x, "value of register x");
    simulate->add_option("--y", y, "value of register y");
    simulate->add_option("--set", assignments, "role=value for other registers");

    bool exhaustive = false;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    int jobs = 0;
    auto *verify = app.add_subcommand("verify", "compare a circuit with its oracle");
    common(verify);
    verify->add_flag("--exhaustive", exhaustive, "every input combination");
    verify->add_option("--trials", trials, "random cases when not exhaustive")->capture_default_str();
    verify->add_option("--seed", seed, "random seed")->capture_default_str();
    verify->add_option("--jobs", jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

    auto *estimate = app.add_subcommand("estimate", "formula vs counted vs ledger");
    common(estimate);

    auto *sweep = app.add_subcommand("sweep-w", "formula cost over window sizes");
    common(sweep);

    std::string family;
    double threshold = 0;
    std::size_t cap = 4096;
    auto *cross = app.add_subcommand("crossover", "smallest n reaching a cost reduction");
    common(cross, false);
    cross->add_option("--kind", family, "schoolbook, mod2n or modp")->required();
    cross->add_option("--threshold", threshold, "fractional reduction in [0, 0.5)")->capture_default_str();
    cross->add_option("--cap", cap, "largest n scanned")->capture_default_str();

    std::string format = "text";
    auto *emit = app.add_subcommand("emit", "write the gate list");
    common(emit);
    emit->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (*build) {
            code = cmd_build(target, as_json, buffer, err);
        } else if (*simulate) {
            code = cmd_simulate(target, x, y, assignments, as_json, buffer, err);
        } else if (*verify) {
            code = cmd_verify(target, exhaustive, trials, seed, jobs, as_json, buffer, err);
        } else if (*estimate) {
            code = cmd_estimate(target, as_json, buffer, err);
        } else if (*sweep) {
            code = cmd_sweep(target, as_json, buffer);
        } else if (*cross) {
            code = cmd_crossover(family, threshold, cap, as_json, buffer);
        } else if (*emit) {
            code = cmd_emit(target, format, buffer, err);
        }
    } catch (const AncillaViolation &e) {
        err << "error: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (out_file) {
        std::ofstream file(*out_file);
        if (!file) {
            err << "error: cannot write " << *out_file << '\n';
            return kExitUsage;
        }
        file << buffer.str();
    } else {
        out << buffer.str();
    }
    return code;
}

}  // namespace qmul::cli
