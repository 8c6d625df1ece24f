#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "boofdeg/error.hpp"
#include "boofdeg/harness.hpp"

using namespace boofdeg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct MeasureFlags {
    std::vector<std::string> eps;
    long lp_budget = ApproxNdegOptions{}.lp_budget;
    int general_cap = ApproxNdegOptions{}.general_cap;
    bool no_shortcut = false;
    bool witnesses = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eps", eps, "Error parameter p/q, repeatable (default 1/4 1/3 1/2)");
        cmd->add_option("--lp-budget", lp_budget, "LP solves per N_eps search before reporting a bracket")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--general-cap", general_cap, "Arity cap for N_eps on functions with many 1-inputs")
            ->check(CLI::Range(1, 10));
        cmd->add_flag("--no-symmetric-shortcut", no_shortcut, "Search sign patterns without the symmetric bracket");
        cmd->add_flag("--witnesses", witnesses, "Attach witnesses to the JSON record");
    }

    MeasureOptions build(Cache* cache) const {
        MeasureOptions o;
        if (!eps.empty()) {
            o.eps_list.clear();
            for (const auto& text : eps) {
                const Rational e = Rational::parse(text);
                if (e < Rational(0) || !(e < Rational(1))) throw PreconditionError("--eps must lie in [0, 1): " + text);
                o.eps_list.push_back(e);
            }
        }
        o.nd.lp_budget = lp_budget;
        o.nd.general_cap = general_cap;
        o.nd.symmetric_shortcut = !no_shortcut;
        o.keep_witnesses = witnesses;
        o.cache = cache;
        return o;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "-" means stdout.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + path);
    fn(out);
    if (!out) throw Error("write failed on " + path);
}

void report_cache(const Cache* cache) {
    if (!cache) return;
    std::cerr << "cache " << cache->path() << ": " << cache->hits() << " hits, " << cache->misses() << " misses";
    if (cache->corrupted_lines()) std::cerr << ", " << cache->corrupted_lines() << " corrupted lines skipped";
    std::cerr << '\n';
}

int run_analyze(const MeasureFlags& mf, const std::string& hex, int n, const std::string& dnf_file,
                const std::string& read_once, const std::string& property, int k, const std::string& jsonl) {
    const int sources = !hex.empty() + !dnf_file.empty() + !read_once.empty() + !property.empty();
    if (sources != 1) throw PreconditionError("analyze: give exactly one of --hex, --dnf, --read-once, --property");
    auto cache = Cache::from_env();
    const MeasureOptions opts = mf.build(cache.get());

    MeasureRecord r;
    if (!hex.empty()) {
        if (n < 0) throw PreconditionError("analyze: --hex needs --n");
        r = compute_record(TruthTable::from_hex(hex, n), opts);
    } else if (!dnf_file.empty()) {
        r = analyze_dnf(parse_dnf(read_file(dnf_file)), opts);
    } else if (!read_once.empty()) {
        r = analyze_read_once(parse_read_once(read_once), opts);
    } else {
        if (n < 0) throw PreconditionError("analyze: --property needs --n");
        r = analyze_property(builtin_property(property, n, k), opts);
    }

    SuiteResult suite;
    suite.add(r);
    nlohmann::json j = r.to_json();
    j["suite"] = suite.to_json()["inequalities"];
    std::cout << j.dump(2) << '\n';
    if (!jsonl.empty()) with_output(jsonl, [&](std::ostream& out) { write_jsonl(out, {r}); });
    report_cache(cache.get());
    if (suite.violated()) {
        std::cerr << suite.summary();
        return kExitViolation;
    }
    return kExitOk;
}

int run_scan_cmd(const MeasureFlags& mf, ScanOptions so, const std::string& csv, const std::string& jsonl,
                 const std::string& suite_path) {
    auto cache = Cache::from_env();
    so.measure = mf.build(cache.get());
    const ScanResult res = run_scan(so);
    with_output(csv, [&](std::ostream& out) { write_csv(out, res.records, so.measure.eps_list); });
    if (!jsonl.empty()) with_output(jsonl, [&](std::ostream& out) { write_jsonl(out, res.records); });
    if (!suite_path.empty()) {
        nlohmann::json j = res.suite.to_json();
        j["skipped_functions"] = res.skipped;
        j["partial"] = res.partial();
        with_output(suite_path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
    }
    std::cerr << res.records.size() << " records";
    if (res.partial()) std::cerr << ", " << res.skipped << " skipped (budget)";
    std::cerr << '\n' << res.suite.summary();
    report_cache(cache.get());
    return res.suite.violated() ? kExitViolation : kExitOk;
}

int run_verify_cmd(const std::string& target, int trials, std::uint64_t seed) {
    const VerifyResult v = run_verify(target, trials, seed);
    std::cout << v.to_json().dump(2) << '\n';
    return v.ok() ? kExitOk : kExitViolation;
}

int run_nor_table(int n_max, bool json) {
    const auto rows = nor_table_rows(n_max);
    bool ok = true;
    nlohmann::json arr = nlohmann::json::array();
    if (!json) std::cout << std::left << std::setw(4) << "n" << std::setw(8) << "N_1/3" << std::setw(10) << "deg_1/4"
                         << std::setw(10) << "8N^2>=n" << "N<=deg\n";
    for (const auto& r : rows) {
        ok = ok && r.meets_reference && r.below_approx_degree;
        if (json) {
            arr.push_back({{"n", r.n},
                           {"N", r.nd.to_json()},
                           {"deg_1/4", r.deg14.to_json()},
                           {"meets_reference", r.meets_reference},
                           {"below_approx_degree", r.below_approx_degree}});
        } else {
            std::cout << std::setw(4) << r.n << std::setw(8) << r.nd.value << std::setw(10) << r.deg14.value
                      << std::setw(10) << (r.meets_reference ? "yes" : "NO")
                      << (r.below_approx_degree ? "yes" : "NO") << '\n';
        }
    }
    if (json) std::cout << arr.dump(2) << '\n';
    return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact complexity measures of small Boolean functions"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "TOML or INI file of default flags; command-line flags win");
    app.require_subcommand(1);

    MeasureFlags analyze_flags;
    std::string hex, dnf_file, read_once, property, analyze_jsonl;
    int analyze_n = -1, k = 2;
    auto* analyze = app.add_subcommand("analyze", "Full measure profile of one function");
    analyze->add_option("--hex", hex, "Truth table in hex, x1 least significant");
    analyze->add_option("--n", analyze_n, "Arity")->check(CLI::Range(0, TruthTable::kMaxVars));
    analyze->add_option("--dnf", dnf_file, "File holding a DNF such as (x1 & x2) | (!x3)")->check(CLI::ExistingFile);
    analyze->add_option("--read-once", read_once, "Read-once formula such as AND(x1,OR(x2,x3))");
    analyze->add_option("--property", property, "Built-in hypergraph property name");
    analyze->add_option("--k", k, "Edge arity for --property")->check(CLI::Range(1, 6));
    analyze->add_option("--jsonl", analyze_jsonl, "Also append the record as one JSONL line to this file");
    analyze_flags.attach(analyze);

    MeasureFlags scan_flags;
    ScanOptions so;
    std::string csv = "-", scan_jsonl, suite_path;
    auto* scan = app.add_subcommand("scan", "All functions of arity n, or one per NPN class");
    scan->add_option("--n", so.n, "Arity")->required()->check(CLI::Range(0, 4));
    scan->add_flag("--npn", so.npn, "One representative per NPN class");
    scan->add_option("--workers", so.workers, "Worker threads")->check(CLI::Range(1, 256));
    scan->add_option("--budget", so.budget_seconds, "Wall-clock budget in seconds, 0 for none")
        ->check(CLI::NonNegativeNumber);
    scan->add_option("--csv", csv, "CSV output path, - for stdout");
    scan->add_option("--jsonl", scan_jsonl, "JSONL output path");
    scan->add_option("--suite", suite_path, "Suite result JSON path");
    scan_flags.attach(scan);

    std::string target = "all";
    int trials = 200;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Property tests of the constructions");
    verify->add_option("target", target, "Construction name or all")
        ->check(CLI::IsMember([] {
            auto t = verify_targets();
            t.emplace_back("all");
            return t;
        }()));
    verify->add_option("--trials", trials, "Random trials per check")->check(CLI::Range(1, 1000000));
    verify->add_option("--seed", seed, "RNG seed");

    int n_max = 8;
    bool nor_json = false;
    auto* nor = app.add_subcommand("nor-table", "N_1/3 and deg_1/4 of NOR_n for n = 1..max");
    nor->add_option("--max", n_max, "Largest arity")->check(CLI::Range(1, 8));
    nor->add_flag("--json", nor_json, "Emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*analyze)
            return run_analyze(analyze_flags, hex, analyze_n, dnf_file, read_once, property, k, analyze_jsonl);
        if (*scan) return run_scan_cmd(scan_flags, so, csv, scan_jsonl, suite_path);
        if (*verify) return run_verify_cmd(target, trials, seed);
        if (*nor) return run_nor_table(n_max, nor_json);
    } catch (const VerificationError& e) {
        std::cerr << "internal verification failure: " << e.what() << '\n';
        return kExitViolation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
