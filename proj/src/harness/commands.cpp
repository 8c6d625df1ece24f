#include <atomic>
#include <chrono>
#include <exception>
#include <random>
#include <thread>

#include "boofdeg/combinatorial.hpp"
#include "boofdeg/constructions.hpp"
#include "boofdeg/error.hpp"
#include "boofdeg/harness.hpp"

namespace boofdeg {

// ---------------------------------------------------------------------------
// scan

ScanResult run_scan(const ScanOptions& options) {
    const int n = options.n;
    if (n < 0 || n > 4) throw CapError("scan: n must lie in 0..4");
    std::vector<TruthTable> functions;
    if (options.npn) {
        functions = npn_class_representatives(n);
    } else {
        const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
        for (std::uint64_t w = 0; w < count; ++w) functions.push_back(TruthTable::from_word(w, n));
    }

    ScanResult out;
    std::vector<std::optional<MeasureRecord>> slots(functions.size());
    std::atomic<std::size_t> next{0};
    std::atomic<long> skipped{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(options.budget_seconds));
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= functions.size()) return;
            if (options.budget_seconds > 0 && std::chrono::steady_clock::now() > deadline) {
                ++skipped;
                continue;
            }
            try {
                slots[i] = compute_record(functions[i], options.measure);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = functions.size();
            }
        }
    };
    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    out.skipped = skipped;
    for (auto& s : slots)
        if (s) out.records.push_back(std::move(*s));
    for (const auto& r : out.records) out.suite.add(r);
    return out;
}

// ---------------------------------------------------------------------------
// nor-table

std::vector<NorRow> nor_table_rows(int n_max) {
    if (n_max < 1 || n_max > 8) throw CapError("nor-table: max must lie in 1..8");
    std::vector<NorRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        NorRow r;
        r.n = n;
        const TruthTable f = nor_table(n);
        r.nd = approx_ndeg(f, Rational(1, 3));
        r.deg14 = approx_degree(f, Rational(1, 4));
        r.meets_reference = r.nd.exact && meets_nor_reference(r.nd.value, n);
        r.below_approx_degree = r.nd.value <= r.deg14.value;
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// analyze

std::vector<std::string> readk_corpus() {
    return {
        "(x1 & x2) | (x3 & x4)",
        "(x1 & x2 & x3)",
        "x1 | x2 | x3",
        "(x1 & !x2) | (x3 & x4 & x5)",
        "(!x1 & !x2) | x3",
        "(x1 & x2) | (x3 & x4) | (x5 & x6)",
        "(x1 & x2 & x3) | (x4 & x5 & x6) | (x7 & x8 & x9 & x10)",
        "(x1 & x2) | (x3 & x4) | (x5 & x6) | (x7 & x8) | (x9 & x10)",
        "(x1 & x2) | (x2 & x3)",
        "(x1 & x2) | (!x1 & x3)",
        "(x1 & x2) | (x2 & x3) | (x3 & x4)",
        "(x1 & !x2) | (x2 & !x3) | (x3 & !x1)",
        "(x1 & x2) | (x1 & x3) | (x2 & x3)",
        "(x1 & x2) | (x2 & x3) | (x4 & x5) | (x5 & x1)",
        "(x1 & x2 & x3) | (x3 & x4 & x5)",
        "(x1 & x2) | (!x2 & x3) | (x3 & x4)",
        "(x1 & x2) | (x3 & x4) | (x1 & x3)",
        "(x1 & x2) | (x2 & x3) | (x3 & x4) | (x4 & x5) | (x5 & x1)",
        "(x1 & x2) | (x1 & x3) | (x1 & x4)",
        "(x1 & x2) | (x1 & x3) | (x1 & x4) | (x2 & x3)",
        "(x1 & !x2) | (x1 & !x3) | (!x1 & x4)",
        "(x1 & x2) | (x1 & x3) | (x1 & x4) | x5",
        "(x1 & x2 & x3) | (x1 & x4 & x5) | (x1 & !x2 & !x4)",
        "(x1 & x2 & x3) | (x1 & x4 & x5) | (x1 & x6 & x7) | (x2 & x4 & x6)",
    };
}

MeasureRecord analyze_dnf(const DnfFormula& d, const MeasureOptions& options) {
    const DnfAnalysis a = dnf_analyze(d, d.k());
    MeasureRecord r = compute_record(a.table, options);
    r.source = "dnf";
    r.dnf = DnfFacts{a.alpha, a.beta, a.k, a.minimal};
    r.extra = nlohmann::json::object();
    r.extra["formula"] = d.to_string();
    r.extra["dnf"] = a.to_json();
    const auto dt = disjoint_terms(d);
    r.extra["disjoint_terms"] = dt.indices;
    r.floors.emplace_back("disjoint terms >= alpha/(k beta)", dt.bound_ok);
    if (a.minimal && !a.table.is_constant()) {
        const auto e = readk_embed(d);
        r.extra["readk_embed"] = e.to_json();
        r.floors.emplace_back("readk zero side >= s0/(2k+1)", e.zero_floor_ok && (!e.zero_side || e.zero_side->verified));
        r.floors.emplace_back("readk one side >= s1/(k+1)", e.one_floor_ok && (!e.one_side || e.one_side->verified));
    }
    return r;
}

MeasureRecord analyze_read_once(const ReadOnceFormula& f, const MeasureOptions& options) {
    MeasureRecord r = compute_record(ro_to_table(f), options);
    r.source = "read-once";
    r.extra = nlohmann::json::object();
    r.extra["formula"] = f.to_string();
    r.extra["depth"] = f.depth();
    r.extra["max_fanin"] = f.max_fanin();
    if (f.depth() >= 1) {
        const auto g = max_branching_restriction(f);
        r.extra["gate_restriction"] = g.to_json();
        r.floors.emplace_back("gate restriction verified", g.witness.verified);
    }
    return r;
}

MeasureRecord analyze_property(const PropertySpec& p, const MeasureOptions& options) {
    MeasureRecord r = compute_record(p.table, options);
    r.source = "property";
    r.extra = nlohmann::json::object();
    r.extra["property"] = p.to_json();
    r.extra["vertices"] = p.n;
    r.extra["edge_arity"] = p.k;
    if (p.status == Invariance::Verified && !p.table.is_constant()) {
        const auto h = hypergraph_symmetric_embedding(p);
        r.extra["embedding"] = h.to_json();
        r.floors.emplace_back("hypergraph embedding verified", h.witness.verified);
        const EpsRecord* e = r.at(Rational(1, 3));
        if (e && e->m().exact) {
            const auto mg = m_measure(h.witness.target, Rational(1, 3), options.nd);
            r.extra["M_embedded"] = mg.exact ? nlohmann::json(mg.value)
                                             : nlohmann::json{{"lower", mg.lower}, {"upper", mg.upper}};
            if (mg.exact) r.floors.emplace_back("M(P) >= M(embedded)", e->m().value >= mg.value);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// verify

bool VerifyResult::ok() const {
    for (const auto& c : checks)
        if (!c.ok()) return false;
    return true;
}

nlohmann::json VerifyResult::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json x{{"name", c.name}, {"trials", c.trials}, {"passed", c.passed}, {"skipped", c.skipped}};
        x["status"] = c.ok() ? "pass" : "fail";
        if (c.counterexample) x["counterexample"] = *c.counterexample;
        arr.push_back(x);
    }
    return {{"schema_version", kSchemaVersion}, {"checks", arr}, {"ok", ok()}};
}

std::vector<std::string> verify_targets() {
    return {"restriction-monotonicity", "sign-rep", "rational-approx", "symmetrization",
            "composition",              "embeddings", "readk"};
}

namespace {

const Rational kThird(1, 3);

TruthTable random_table(std::mt19937_64& rng, int n) {
    return TruthTable::from_function(n, [&](std::uint64_t) { return (rng() & 1U) != 0; });
}

Substitution random_substitution(std::mt19937_64& rng, int n, int m) {
    Substitution s{m, {}};
    for (int i = 0; i < n; ++i) {
        const auto r = rng() % 6;
        if (r == 0) s.actions.push_back(Literal::zero());
        else if (r == 1) s.actions.push_back(Literal::one());
        else if (r < 4) s.actions.push_back(Literal::pos(static_cast<int>(rng() % m)));
        else s.actions.push_back(Literal::neg(static_cast<int>(rng() % m)));
    }
    return s;
}

std::string table_id(const TruthTable& f) { return std::to_string(f.num_vars()) + ":" + f.to_hex(); }

CheckResult check_restriction(int trials, std::mt19937_64& rng) {
    CheckResult c;
    c.name = "restriction-monotonicity";
    for (int t = 0; t < trials && c.ok(); ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int m = 1 + static_cast<int>(rng() % n);
        const TruthTable f = random_table(rng, n);
        const Substitution s = random_substitution(rng, n, m);
        const TruthTable g = substitute(f, s);
        ++c.trials;
        const auto mf = m_measure(f, kThird), mg = m_measure(g, kThird);
        if (!mf.of_f.exact || !mg.of_f.exact || !mf.of_complement.exact || !mg.of_complement.exact) {
            ++c.skipped;
            continue;
        }
        if (mg.of_f.value <= mf.of_f.value && mg.of_complement.value <= mf.of_complement.value) {
            ++c.passed;
        } else {
            c.counterexample = "f=" + table_id(f) + " g=" + table_id(g);
        }
    }
    return c;
}

CheckResult check_nd_pairs(bool sign) {
    CheckResult c;
    c.name = sign ? "sign-rep" : "rational-approx";
    for (int n = 0; n <= 3 && c.ok(); ++n) {
        for (const auto& f : npn_class_representatives(n)) {
            ++c.trials;
            const auto mm = m_measure(f, kThird);
            try {
                if (sign) {
                    const auto r = sign_rep_from_nd(*mm.of_f.witness, *mm.of_complement.witness, f, kThird);
                    const auto v = r.values();
                    const Rational margin(8, 9);
                    for (std::uint64_t x = 0; x < f.size(); ++x)
                        if (f.get(x) ? v[x] > -margin : v[x] < margin)
                            throw VerificationError("margin below 8/9");
                } else {
                    const auto q = rational_approx_from_nd(*mm.of_f.witness, *mm.of_complement.witness, f, kThird);
                    if (q.max_error > kThird) throw VerificationError("error above 1/3");
                }
                ++c.passed;
            } catch (const Error& e) {
                c.counterexample = table_id(f) + ": " + e.what();
                break;
            }
        }
    }
    return c;
}

CheckResult check_symmetrization(int trials, std::mt19937_64& rng) {
    CheckResult c;
    c.name = "symmetrization";
    for (int t = 0; t < trials && c.ok(); ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        MultilinearPoly p(n);
        for (std::uint32_t s = 0; s < (1U << n); ++s)
            if (rng() % 3 == 0) p.set(s, Rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5)));
        ++c.trials;
        try {
            const auto u = symmetrize_square(p);
            if (u.degree() > 2 * p.degree()) throw VerificationError("degree bound");
            ++c.passed;
        } catch (const Error& e) {
            c.counterexample = p.to_string() + ": " + e.what();
        }
    }
    return c;
}

CheckResult check_composition() {
    CheckResult c;
    c.name = "composition";
    const TruthTable outers[] = {or_table(2), xor_table(2)};
    const TruthTable inners[] = {and_table(2), or_table(2)};
    for (const auto& f : outers)
        for (const auto& g1 : inners)
            for (const auto& g2 : inners) {
                const std::vector<TruthTable> inner{g1, g2};
                const TruthTable h = compose_disjoint(f, inner);
                ++c.trials;
                const int mh = m_measure(h, kThird).value;
                const int parts = std::max({m_measure(f, kThird).value, m_measure(g1, kThird).value,
                                            m_measure(g2, kThird).value});
                if (mh >= parts) ++c.passed;
                else if (!c.counterexample) c.counterexample = "h=" + table_id(h);
            }
    return c;
}

CheckResult check_embeddings(int trials, std::mt19937_64& rng) {
    CheckResult c;
    c.name = "embeddings";
    for (int t = 0; t < trials && c.ok(); ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        ++c.trials;
        try {
            const TruthTable f = random_table(rng, n);
            if (!f.is_constant()) {
                const std::uint64_t x = rng() % f.size();
                const auto w = embed_minimal_block(f, x);
                if (!w.verified) throw VerificationError("minimal block witness not verified");
            }
            // Upward closure of random minimal 1-inputs is monotone.
            std::vector<std::uint64_t> mins;
            for (int k = 0, cnt = 1 + static_cast<int>(rng() % 3); k < cnt; ++k) mins.push_back(rng() % f.size());
            const TruthTable g = TruthTable::from_function(n, [&](std::uint64_t y) {
                for (auto mn : mins)
                    if ((mn & y) == mn) return true;
                return false;
            });
            const auto e = embed_monotone(g);
            const auto prof = combinatorial_profile(g);
            if (e.zero_side && e.zero_side->m != prof.s0.value) throw VerificationError("OR size differs from s0");
            if (e.one_side && e.one_side->m != prof.s1.value) throw VerificationError("AND size differs from s1");
            ++c.passed;
        } catch (const Error& err) {
            c.counterexample = std::string("trial ") + std::to_string(t) + ": " + err.what();
        }
    }
    return c;
}

CheckResult check_readk() {
    CheckResult c;
    c.name = "readk";
    for (const auto& text : readk_corpus()) {
        ++c.trials;
        try {
            const DnfFormula d = parse_dnf(text);
            const DnfAnalysis a = dnf_analyze(d, d.k());
            if (!a.minimal) throw PreconditionError("corpus formula is not minimal");
            const auto dt = disjoint_terms(d);
            const auto e = readk_embed(d);
            if (!dt.bound_ok || !e.zero_floor_ok || !e.one_floor_ok) throw VerificationError("floor");
            if (e.s1 + (1 + e.k) * e.s0 < d.beta()) throw VerificationError("s1 + (1+k) s0 < beta");
            ++c.passed;
        } catch (const Error& err) {
            c.counterexample = text + ": " + err.what();
            break;
        }
    }
    return c;
}

}  // namespace

VerifyResult run_verify(const std::string& target, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    VerifyResult out;
    const bool all = target == "all";
    bool known = all;
    auto want = [&](const char* name) {
        const bool w = all || target == name;
        known = known || w;
        return w;
    };
    if (want("restriction-monotonicity")) out.checks.push_back(check_restriction(trials, rng));
    if (want("sign-rep")) out.checks.push_back(check_nd_pairs(true));
    if (want("rational-approx")) out.checks.push_back(check_nd_pairs(false));
    if (want("symmetrization")) out.checks.push_back(check_symmetrization(trials, rng));
    if (want("composition")) out.checks.push_back(check_composition());
    if (want("embeddings")) out.checks.push_back(check_embeddings(trials, rng));
    if (want("readk")) out.checks.push_back(check_readk());
    if (!known) throw PreconditionError("verify: unknown construction '" + target + "'");
    return out;
}

}  // namespace boofdeg
