// Command-line front end: solve contract instances, generate catalog and
// parametric families, audit approximation bounds over sweeps, and verify
// the distribution-free linear guarantee on ambiguous instances.
//
// All arithmetic is exact; decimal columns in the reports are one-way
// renderings controlled by --precision and never feed back into results.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pact/pact.hpp>

namespace {

using pact::OrderedJson;
using pact::Rational;

// ---------------------------------------------------------------------------
// small plumbing helpers

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pact::ParseError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Writes to the --out file when given, else to stdout.
void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw pact::BadParams("cannot write file: " + out_path);
    out << text;
}

long parse_long(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw pact::BadParams(std::string(what) + " expects an integer, got '" + text + "'");
    }
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    try {
        if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw pact::BadParams(std::string(what) + " expects a nonnegative integer, got '" +
                              text + "'");
    }
}

/// Inclusive integer range "a..b", or a single integer.
std::vector<long> parse_range(const std::string& text, const char* what) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) return {parse_long(text, what)};
    const long lo = parse_long(text.substr(0, dots), what);
    const long hi = parse_long(text.substr(dots + 2), what);
    if (lo > hi)
        throw pact::BadParams(std::string(what) + " range '" + text + "' is empty");
    std::vector<long> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

std::vector<std::uint64_t> parse_seed_range(const std::string& text, const char* what) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) return {parse_u64(text, what)};
    const std::uint64_t lo = parse_u64(text.substr(0, dots), what);
    const std::uint64_t hi = parse_u64(text.substr(dots + 2), what);
    if (lo > hi)
        throw pact::BadParams(std::string(what) + " range '" + text + "' is empty");
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

const std::string& require_flag(const std::string& value, const char* flag,
                                const std::string& family) {
    if (value.empty())
        throw pact::BadParams(std::string(flag) + " is required for family '" + family + "'");
    return value;
}

/// Generator sizes are validated again by the library; this cap only guards
/// the CLI against typo-sized sweeps allocating n-by-m matrices.
long checked_size(const std::string& text, const char* what) {
    const long v = parse_long(text, what);
    if (v < 0 || v > 4096)
        throw pact::BadParams(std::string(what) + " must be between 0 and 4096, got '" +
                              text + "'");
    return v;
}

// ---------------------------------------------------------------------------
// error-to-exit-code mapping (machine-readable payload on stderr)

const char* error_name(const pact::Error& e) {
    if (dynamic_cast<const pact::ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const pact::MalformedInstance*>(&e)) return "MalformedInstance";
    if (dynamic_cast<const pact::MalformedContract*>(&e)) return "MalformedContract";
    if (dynamic_cast<const pact::DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const pact::AssumptionViolated*>(&e)) return "AssumptionViolated";
    if (dynamic_cast<const pact::PreconditionFailed*>(&e)) return "PreconditionFailed";
    if (dynamic_cast<const pact::NotOptimalInput*>(&e)) return "NotOptimalInput";
    if (dynamic_cast<const pact::NotAmbiguous*>(&e)) return "NotAmbiguous";
    if (dynamic_cast<const pact::SizeLimitExceeded*>(&e)) return "SizeLimitExceeded";
    if (dynamic_cast<const pact::BadParams*>(&e)) return "BadParams";
    if (dynamic_cast<const pact::UnknownName*>(&e)) return "UnknownName";
    if (dynamic_cast<const pact::NoImplementableAction*>(&e)) return "NoImplementableAction";
    if (dynamic_cast<const pact::NotImplementable*>(&e)) return "NotImplementable";
    if (dynamic_cast<const pact::InternalError*>(&e)) return "InternalError";
    return "Error";
}

/// 1: unreadable or invalid input (parse, validation, parameters, names).
/// 2: input is fine but the requested computation does not apply to it.
/// 3: an exhaustive search would exceed its combination budget.
/// 70: an internal exactness invariant failed.
int exit_code_for(const pact::Error& e) {
    if (dynamic_cast<const pact::SizeLimitExceeded*>(&e)) return 3;
    if (dynamic_cast<const pact::InternalError*>(&e)) return 70;
    if (dynamic_cast<const pact::PreconditionFailed*>(&e) ||
        dynamic_cast<const pact::AssumptionViolated*>(&e) ||
        dynamic_cast<const pact::NotAmbiguous*>(&e) ||
        dynamic_cast<const pact::NotOptimalInput*>(&e) ||
        dynamic_cast<const pact::NoImplementableAction*>(&e) ||
        dynamic_cast<const pact::NotImplementable*>(&e))
        return 2;
    return 1;
}

void emit_error_payload(const OrderedJson& payload) {
    std::cerr << payload.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// report fragments

OrderedJson cells(const std::vector<Rational>& values, unsigned precision) {
    OrderedJson out = OrderedJson::array();
    for (const auto& v : values) out.push_back(pact::rational_cell(v, precision));
    return out;
}

void fill_contract_report(OrderedJson& payload, const pact::Contract& t,
                          std::optional<std::size_t> action,
                          const Rational& expected_payment, const Rational& payoff,
                          unsigned precision) {
    if (action)
        payload["action"] = *action + 1; // 1-based in reports
    else
        payload["action"] = nullptr; // the agent opts out
    payload["payments"] = cells(t.payments, precision);
    payload["expected_payment"] = pact::rational_cell(expected_payment, precision);
    payload["payoff"] = pact::rational_cell(payoff, precision);
    payload["monotone"] = pact::is_monotone(t);
    payload["positive_payments"] = pact::positive_payment_count(t);
}

OrderedJson certificate_json(const pact::NonImplementabilityCertificate& cert,
                             unsigned precision) {
    OrderedJson out;
    out["weights"] = cells(cert.weights, precision);
    out["mixture_cost"] = pact::rational_cell(cert.mixture_cost, precision);
    out["monotone"] = cert.monotone;
    if (cert.monotone) out["step_weights"] = cells(cert.step_weights, precision);
    return out;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
    std::string file;
    std::string mode = "optimal";
    std::string out;
    unsigned precision = 6;
};

int run_solve(const SolveOptions& opt) {
    pact::Instance inst = pact::parse_instance_document(slurp(opt.file));

    OrderedJson payload;
    payload["mode"] = opt.mode;
    try {
        if (opt.mode == "optimal" || opt.mode == "monotone") {
            pact::SolveResult r = opt.mode == "optimal" ? pact::optimal_contract(inst)
                                                        : pact::best_monotone(inst);
            fill_contract_report(payload, r.contract, r.action, r.expected_payment,
                                 r.payoff, opt.precision);
        } else if (opt.mode == "linear") {
            pact::BestLinear lin = pact::best_linear(inst);
            pact::Contract t = pact::LinearContract{lin.alpha}.materialize(inst);
            payload["alpha"] = pact::rational_cell(lin.alpha, opt.precision);
            fill_contract_report(payload, t, lin.action,
                                 lin.alpha * inst.expected_reward(lin.action), lin.payoff,
                                 opt.precision);
        } else if (opt.mode == "debt") {
            pact::DebtResult d = pact::best_debt(inst);
            payload["cut_outcome"] = d.cut_index + 1;
            payload["alpha"] = pact::rational_cell(d.alpha, opt.precision);
            fill_contract_report(payload, d.contract, d.response.choice,
                                 d.response.expected_payment, d.response.principal_payoff,
                                 opt.precision);
        } else if (opt.mode == "single-payment") {
            pact::SinglePaymentSearch s = pact::best_single_payment(inst);
            payload["top_payment"] = pact::rational_cell(s.top_payment, opt.precision);
            fill_contract_report(payload, s.contract, s.response.choice,
                                 s.response.expected_payment, s.response.principal_payoff,
                                 opt.precision);
        } else {
            throw pact::BadParams("unknown mode '" + opt.mode +
                                  "' (optimal|linear|monotone|debt|single-payment)");
        }
    } catch (const pact::NoImplementableAction& e) {
        // Attach the blocking-mixture certificate of every action so the
        // failure can be re-verified offline.
        OrderedJson err;
        err["error"] = "NoImplementableAction";
        err["message"] = e.what();
        OrderedJson certs = OrderedJson::array();
        const bool monotone = opt.mode == "monotone";
        for (std::size_t a = 0; a < inst.num_actions(); ++a) {
            pact::MinPaymentResult res = pact::min_payment(inst, a, monotone);
            if (res.implementable || !res.certificate) continue;
            OrderedJson item;
            item["action"] = a + 1;
            item["certificate"] = certificate_json(*res.certificate, opt.precision);
            certs.push_back(std::move(item));
        }
        err["certificates"] = std::move(certs);
        emit_error_payload(err);
        return 2;
    }

    write_text(payload.dump(2) + "\n", opt.out);
    return 0;
}

// ---------------------------------------------------------------------------
// generate

struct FamilyFlags {
    std::string family;
    std::string n, m, seed;
    std::string eps, delta, gamma;
};

/// Single-instance dispatch shared by `generate` and the audit sweeps.
/// Anything that is not a parametric family falls through to the fixed
/// catalog lookup, which reports unknown names itself.
pact::Instance make_family_instance(const FamilyFlags& f, long n, long m,
                                    std::uint64_t seed) {
    if (f.family == "thm52" || f.family == "diagonal-ladder")
        return pact::gen_diagonal_ladder(
            static_cast<std::size_t>(n),
            pact::parse_rational(require_flag(f.eps, "--eps", f.family)));
    if (f.family == "appendixE" || f.family == "compressed-ladder")
        return pact::gen_compressed_ladder(
            static_cast<std::size_t>(n),
            pact::parse_rational(require_flag(f.eps, "--eps", f.family)),
            pact::parse_rational(require_flag(f.delta, "--delta", f.family)));
    if (f.family == "appendixF" || f.family == "monotone-trap")
        return pact::gen_monotone_trap(
            static_cast<std::size_t>(n),
            pact::parse_rational(require_flag(f.eps, "--eps", f.family)),
            pact::parse_rational(require_flag(f.delta, "--delta", f.family)),
            pact::parse_rational(require_flag(f.gamma, "--gamma", f.family)));
    if (f.family == "random-spanning")
        return pact::gen_random_spanning(static_cast<std::size_t>(n),
                                         static_cast<std::size_t>(m), seed);
    return pact::gen_example(f.family);
}

bool family_needs_n(const std::string& family) {
    return family == "thm52" || family == "diagonal-ladder" || family == "appendixE" ||
           family == "compressed-ladder" || family == "appendixF" ||
           family == "monotone-trap" || family == "random-spanning";
}

struct GenerateOptions {
    FamilyFlags flags;
    std::string out;
};

int run_generate(const GenerateOptions& opt) {
    const std::string& family = opt.flags.family;
    long n = 0, m = 0;
    std::uint64_t seed = 0;
    if (family_needs_n(family))
        n = checked_size(require_flag(opt.flags.n, "--n", family), "--n");
    if (family == "random-spanning") {
        m = checked_size(require_flag(opt.flags.m, "--m", family), "--m");
        seed = parse_u64(require_flag(opt.flags.seed, "--seed", family), "--seed");
    }
    pact::Instance inst = make_family_instance(opt.flags, n, m, seed);
    write_text(pact::emit_instance_document(inst), opt.out);
    return 0;
}

// ---------------------------------------------------------------------------
// audit

struct AuditOptions {
    std::vector<std::string> files;
    FamilyFlags flags;
    std::string out;
    unsigned precision = 6;
};

std::string file_label(const std::string& path, const pact::Instance& inst) {
    std::string label;
    auto it = inst.metadata.find("name");
    if (it != inst.metadata.end() && !it->second.empty()) {
        label = it->second;
    } else {
        const std::size_t slash = path.find_last_of("/\\");
        label = slash == std::string::npos ? path : path.substr(slash + 1);
        if (label.size() > 5 && label.substr(label.size() - 5) == ".json")
            label = label.substr(0, label.size() - 5);
    }
    for (char& c : label)
        if (c == ',') c = '_';
    return label;
}

std::vector<std::pair<std::string, pact::Instance>> build_audit_jobs(const AuditOptions& opt) {
    std::vector<std::pair<std::string, pact::Instance>> jobs;
    if (!opt.files.empty() && !opt.flags.family.empty())
        throw pact::BadParams("pass instance files or --family, not both");
    if (opt.files.empty() && opt.flags.family.empty())
        throw pact::BadParams("pass instance files or --family");

    if (!opt.files.empty()) {
        for (const auto& path : opt.files) {
            pact::Instance inst = pact::parse_instance_document(slurp(path));
            std::string label = file_label(path, inst);
            jobs.emplace_back(std::move(label), std::move(inst));
        }
        return jobs;
    }

    const FamilyFlags& f = opt.flags;
    if (!family_needs_n(f.family)) {
        jobs.emplace_back(f.family, make_family_instance(f, 0, 0, 0));
        return jobs;
    }

    const std::vector<long> ns = parse_range(require_flag(f.n, "--n", f.family), "--n");
    std::vector<long> ms{0};
    std::vector<std::uint64_t> seeds{0};
    if (f.family == "random-spanning") {
        ms = parse_range(require_flag(f.m, "--m", f.family), "--m");
        seeds = parse_seed_range(require_flag(f.seed, "--seed", f.family), "--seed");
    }
    if (ns.size() * ms.size() * seeds.size() > 100000)
        throw pact::SizeLimitExceeded("sweep would cover more than 100000 instances");

    for (long n : ns) {
        if (n < 0 || n > 4096) throw pact::BadParams("--n must be between 0 and 4096");
        for (long m : ms) {
            if (m < 0 || m > 4096) throw pact::BadParams("--m must be between 0 and 4096");
            for (std::uint64_t seed : seeds) {
                std::string label = f.family + "-n" + std::to_string(n);
                if (f.family == "random-spanning")
                    label += "-m" + std::to_string(m) + "-s" + std::to_string(seed);
                jobs.emplace_back(std::move(label), make_family_instance(f, n, m, seed));
            }
        }
    }
    return jobs;
}

int run_audit(const AuditOptions& opt) {
    auto jobs = build_audit_jobs(opt);

    std::string csv = pact::audit_csv_header() + "\n";
    std::size_t failures = 0;
    for (const auto& [label, inst] : jobs) {
        pact::AuditReport rep = pact::audit_ratio(inst);
        const bool pass =
            rep.checks.all_pass() && (!rep.drop_zero || rep.drop_zero->le_cost_buckets);
        if (!pass) ++failures;
        csv += pact::audit_csv_row(label, rep) + "\n";
    }

    OrderedJson summary;
    summary["instances"] = jobs.size();
    summary["failures"] = failures;
    summary["all_pass"] = failures == 0;
    const std::string summary_text = summary.dump(2) + "\n";

    // With --out the CSV goes to the file and the summary to stdout;
    // otherwise the CSV owns stdout and the summary goes to stderr.
    if (!opt.out.empty()) {
        write_text(csv, opt.out);
        std::cout << summary_text;
    } else {
        std::cout << csv;
        std::cerr << summary_text;
    }
    return failures == 0 ? 0 : 4;
}

// ---------------------------------------------------------------------------
// robust

struct RobustOptions {
    std::string file;
    long long samples = 0;
    std::string seed = "0";
    bool trace = false;
    std::string out;
    unsigned precision = 6;
};

const char* reduction_case_name(pact::ReductionCase kind) {
    switch (kind) {
        case pact::ReductionCase::downward_slope: return "downward-slope";
        case pact::ReductionCase::affine_input: return "affine-input";
        case pact::ReductionCase::pivot_above: return "pivot-above";
        case pact::ReductionCase::pivot_below: return "pivot-below";
    }
    throw pact::InternalError("unnamed reduction case");
}

OrderedJson line_json(const pact::LineCoeffs& line, unsigned precision) {
    OrderedJson out;
    out["intercept"] = pact::rational_cell(line.intercept, precision);
    out["slope"] = pact::rational_cell(line.slope, precision);
    return out;
}

OrderedJson construction_json(const pact::RobustConstruction& red, unsigned precision) {
    OrderedJson out;
    out["kind"] = reduction_case_name(red.kind);
    out["l1"] = line_json(red.l1, precision);
    if (red.pivot) {
        out["pivot_outcome"] = *red.pivot + 1;
        out["l2"] = line_json(red.l2, precision);
        out["l3"] = line_json(red.l3, precision);
    }
    OrderedJson affine;
    affine["base"] = pact::rational_cell(red.affine.base, precision);
    affine["slope"] = pact::rational_cell(red.affine.slope, precision);
    out["affine"] = std::move(affine);
    OrderedJson dists = OrderedJson::array();
    for (const auto& d : red.distributions) {
        OrderedJson dj;
        dj["low_outcome"] = d.low + 1;
        dj["high_outcome"] = d.high + 1;
        dj["low_weight"] = pact::rational_cell(d.low_weight, precision);
        dj["high_weight"] = pact::rational_cell(d.high_weight, precision);
        dists.push_back(std::move(dj));
    }
    out["distributions"] = std::move(dists);
    out["steered_action"] = red.steered_action + 1;
    out["contract_payoff"] = pact::rational_cell(red.contract_payoff, precision);
    out["affine_payoff"] = pact::rational_cell(red.affine_payoff, precision);
    return out;
}

int run_robust(const RobustOptions& opt) {
    if (opt.samples < 0) throw pact::BadParams("--samples must be nonnegative");
    const std::uint64_t seed = parse_u64(opt.seed, "--seed");

    pact::AmbiguousInstance amb = pact::parse_ambiguous_document(slurp(opt.file));
    pact::LinearWorstCase lwc = pact::linear_worst_case(amb);

    OrderedJson payload;
    OrderedJson lwc_json;
    lwc_json["alpha"] = pact::rational_cell(lwc.alpha, opt.precision);
    lwc_json["action"] = lwc.action + 1;
    lwc_json["payoff"] = pact::rational_cell(lwc.payoff, opt.precision);
    payload["linear_worst_case"] = std::move(lwc_json);
    payload["samples"] = opt.samples;
    payload["seed"] = seed;

    std::size_t failures = 0;
    if (opt.samples > 0) {
        std::vector<pact::Contract> contracts =
            pact::sample_contracts(amb, static_cast<std::size_t>(opt.samples), seed);
        pact::RobustReport rep = pact::verify_robust_guarantee(amb, contracts);
        failures = rep.failures;
        payload["failures"] = rep.failures;
        payload["guarantee_holds"] = rep.failures == 0;
        OrderedJson rows = OrderedJson::array();
        for (const pact::RobustCheckRow& row : rep.rows) {
            OrderedJson rj;
            rj["payments"] = cells(row.contract.payments, opt.precision);
            rj["adversary_payoff"] = pact::rational_cell(row.adversary_payoff, opt.precision);
            rj["ok"] = row.ok;
            if (opt.trace) {
                pact::RobustConstruction red = pact::affine_reduction(amb, row.contract);
                rj["linear_payoff"] = pact::rational_cell(row.linear_payoff, opt.precision);
                rj["construction"] = construction_json(red, opt.precision);
            }
            rows.push_back(std::move(rj));
        }
        payload["rows"] = std::move(rows);
    }

    write_text(payload.dump(2) + "\n", opt.out);
    return failures == 0 ? 0 : 4;
}

} // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"exact solver and audit toolkit for hidden-action contract instances"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand(
        "solve", "compute the best contract of a class for one instance document");
    solve->add_option("file", solve_opt.file, "instance document (JSON)")->required();
    solve->add_option("--mode", solve_opt.mode,
                      "contract class: optimal|linear|monotone|debt|single-payment");
    solve->add_option("--out", solve_opt.out, "write the report here instead of stdout");
    solve->add_option("--precision", solve_opt.precision,
                      "decimal digits in rendered cells (default 6)");

    GenerateOptions gen_opt;
    CLI::App* generate = app.add_subcommand(
        "generate", "emit an instance document from the catalog or a parametric family");
    generate->add_option("--family", gen_opt.flags.family,
                         "thm52|appendixE|appendixF|random-spanning or a catalog name "
                         "(example11, example12, exampleD5, ...)")
        ->required();
    generate->add_option("--n", gen_opt.flags.n, "number of actions");
    generate->add_option("--m", gen_opt.flags.m, "number of outcomes (random-spanning)");
    generate->add_option("--seed", gen_opt.flags.seed, "generator seed (random-spanning)");
    generate->add_option("--eps", gen_opt.flags.eps, "ladder parameter, rational in (0,1)");
    generate->add_option("--delta", gen_opt.flags.delta, "perturbation, rational");
    generate->add_option("--gamma", gen_opt.flags.gamma, "reward spacing, rational");
    generate->add_option("--out", gen_opt.out, "write the document here instead of stdout");

    AuditOptions audit_opt;
    CLI::App* audit = app.add_subcommand(
        "audit", "check approximation bounds per instance; CSV rows plus a JSON summary");
    audit->add_option("files", audit_opt.files, "instance documents (JSON)");
    audit->add_option("--family", audit_opt.flags.family, "sweep a family instead of files");
    audit->add_option("--n", audit_opt.flags.n, "actions: integer or inclusive range a..b");
    audit->add_option("--m", audit_opt.flags.m, "outcomes: integer or range (random-spanning)");
    audit->add_option("--seed", audit_opt.flags.seed, "seed: integer or range (random-spanning)");
    audit->add_option("--eps", audit_opt.flags.eps, "ladder parameter, rational in (0,1)");
    audit->add_option("--delta", audit_opt.flags.delta, "perturbation, rational");
    audit->add_option("--gamma", audit_opt.flags.gamma, "reward spacing, rational");
    audit->add_option("--out", audit_opt.out,
                      "write the CSV here; the summary then goes to stdout");
    audit->add_option("--precision", audit_opt.precision,
                      "decimal digits in rendered cells (default 6)");

    RobustOptions robust_opt;
    CLI::App* robust = app.add_subcommand(
        "robust", "verify the distribution-free linear guarantee on an ambiguous instance");
    robust->add_option("file", robust_opt.file, "ambiguous instance document (JSON)")
        ->required();
    robust->add_option("--samples", robust_opt.samples,
                       "number of contracts to check (0: only the linear worst case)");
    robust->add_option("--seed", robust_opt.seed, "sampling seed");
    robust->add_flag("--trace", robust_opt.trace,
                     "include the affine-reduction construction for every sample");
    robust->add_option("--out", robust_opt.out, "write the report here instead of stdout");
    robust->add_option("--precision", robust_opt.precision,
                       "decimal digits in rendered cells (default 6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        OrderedJson err;
        err["error"] = "BadParams";
        err["message"] = e.what();
        emit_error_payload(err);
        return 1;
    }

    try {
        if (solve->parsed()) return run_solve(solve_opt);
        if (generate->parsed()) return run_generate(gen_opt);
        if (audit->parsed()) return run_audit(audit_opt);
        if (robust->parsed()) return run_robust(robust_opt);
        throw pact::InternalError("no subcommand dispatched");
    } catch (const pact::Error& e) {
        OrderedJson err;
        err["error"] = error_name(e);
        err["message"] = e.what();
        emit_error_payload(err);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        OrderedJson err;
        err["error"] = "InternalError";
        err["message"] = e.what();
        emit_error_payload(err);
        return 70;
    }
}
