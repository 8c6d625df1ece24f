// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "boofdeg/classify.hpp"
#include "boofdeg/combinatorial.hpp"
#include "boofdeg/constructions.hpp"
#include "boofdeg/degree.hpp"
#include "boofdeg/error.hpp"
#include "boofdeg/harness.hpp"

using namespace boofdeg;

namespace {

const Rational kThird(1, 3);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

bool report(int id, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", seconds_since(start));
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << secs << ") " << o.detail
              << std::endl;
    return o.pass;
}

// (1)-(8) hold and were evaluated without brackets on every record.
bool first_eight_clean(const SuiteResult& s, std::string& why) {
    for (int id = 1; id <= 8; ++id) {
        const auto& i = s.inequality(id);
        if (i.violated()) {
            why = "(" + std::to_string(id) + ") violated at " + *i.counterexample;
            return false;
        }
        if (i.skipped) {
            why = "(" + std::to_string(id) + ") skipped on " + std::to_string(i.skipped) + " records";
            return false;
        }
    }
    return true;
}

std::vector<std::vector<std::uint8_t>> symmetric_profiles(int n) {
    std::vector<std::vector<std::uint8_t>> out;
    for (std::uint32_t m = 0; m < (1u << (n + 1)); ++m) {
        std::vector<std::uint8_t> p(n + 1);
        for (int k = 0; k <= n; ++k) p[k] = (m >> k) & 1;
        out.push_back(p);
    }
    return out;
}

struct PropertyCase {
    const char* name;
    int n;
};
const PropertyCase kProperties[] = {{"nonempty", 3}, {"triangle", 4}, {"exactly-one-edge", 4}};

MeasureOptions property_options() {
    MeasureOptions o;
    o.nd.general_cap = 6;
    return o;
}

// Every n = 4 function from its NPN representative. N, deg_eps, deg, deg_sign and D
// are NPN invariant up to swapping N and Nbar under output negation; the rest
// is recomputed.
std::vector<MeasureRecord> expand_npn(const std::vector<MeasureRecord>& reps, int n) {
    std::map<std::string, const MeasureRecord*> by_class;
    for (const auto& r : reps) by_class[r.hex] = &r;
    std::vector<MeasureRecord> out;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << (std::uint64_t{1} << n)); ++w) {
        const auto f = TruthTable::from_word(w, n);
        const auto npn = npn_canonical(f);
        MeasureRecord r = *by_class.at(npn.canonical.to_hex());
        r.hex = f.to_hex();
        if (npn.transform.output_negation)
            for (auto& e : r.eps) std::swap(e.n_f, e.n_not_f);
        r.ndeg = ndeg(f).value;
        const auto p = combinatorial_profile(f);
        r.s0 = p.s0.value;
        r.s1 = p.s1.value;
        r.bs0 = p.bs0.value;
        r.bs1 = p.bs1.value;
        r.c0 = p.c0.value;
        r.c1 = p.c1.value;
        const auto alt = alternation_profile(f);
        r.max_alt = alt.max_alt;
        r.min_alt = alt.min_alt;
        r.zebra = alt.is_zebra;
        const auto cls = classify(f);
        r.monotone = cls.monotone;
        r.unate = cls.unate_orientation.has_value();
        r.symmetric_profile = cls.symmetric_profile;
        out.push_back(std::move(r));
    }
    return out;
}

// Records behind the ratio reports: every function at n <= 4, every symmetric
// function at n = 5, the read-k corpus at n <= 5 and the property instances.
std::vector<MeasureRecord> ratio_records(const ScanResult& npn4) {
    std::vector<MeasureRecord> out;
    for (int n = 0; n <= 3; ++n) {
        ScanOptions o;
        o.n = n;
        auto r = run_scan(o);
        for (auto& rec : r.records) out.push_back(std::move(rec));
    }
    for (auto& rec : expand_npn(npn4.records, 4)) out.push_back(std::move(rec));
    for (const auto& p : symmetric_profiles(5)) out.push_back(compute_record(symmetric_table(p), MeasureOptions{}));
    for (const auto& text : readk_corpus()) {
        const auto d = parse_dnf(text);
        if (d.n <= 5) out.push_back(analyze_dnf(d, MeasureOptions{}));
    }
    for (const auto& pc : kProperties)
        out.push_back(analyze_property(builtin_property(pc.name, pc.n, 2), property_options()));
    return out;
}

// Arities at which each ratio's family was enumerated completely.
const std::vector<std::set<int>> kExhaustive = {
    {1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4, 5}, {}, {},
};

}  // namespace

int main() {
    int failures = 0;
    ScanResult npn4;

    failures += !report(1, [] {
        const auto start = Clock::now();
        const auto rows = nor_table_rows(8);
        const double secs = seconds_since(start);
        Outcome o;
        std::ostringstream d;
        d << "N_1/3(NOR_n), n=1..8:";
        for (const auto& r : rows) {
            d << ' ' << r.nd.value;
            if (!r.nd.exact || !r.meets_reference || !r.below_approx_degree) {
                o.pass = false;
                d << "(bad: exact=" << r.nd.exact << " 8N^2>=n=" << r.meets_reference
                  << " N<=deg_1/4=" << r.below_approx_degree << ")";
            }
        }
        if (secs >= 60) {
            o.pass = false;
            d << "; exceeded 60s";
        }
        o.detail = d.str();
        return o;
    });

    failures += !report(2, [] {
        const auto start = Clock::now();
        SuiteResult all;
        long count = 0, incomplete = 0;
        for (int n = 0; n <= 3; ++n) {
            ScanOptions o;
            o.n = n;
            const auto r = run_scan(o);
            for (const auto& rec : r.records) {
                all.add(rec);
                ++count;
                incomplete += !rec.complete;
            }
        }
        Outcome o;
        std::string why;
        o.pass = first_eight_clean(all, why) && count == 278 && incomplete == 0 && seconds_since(start) < 300;
        o.detail = std::to_string(count) + " functions, " + std::to_string(incomplete) + " incomplete" +
                   (why.empty() ? "" : "; " + why);
        return o;
    });

    failures += !report(3, [&npn4] {
        ScanOptions o;
        o.n = 4;
        o.npn = true;
        o.budget_seconds = 1800;
        npn4 = run_scan(o);
        long incomplete = 0;
        for (const auto& r : npn4.records) incomplete += !r.complete;
        Outcome out;
        std::string why;
        out.pass = first_eight_clean(npn4.suite, why) && npn4.records.size() == 222 && !npn4.partial() &&
                   incomplete == 0;
        out.detail = std::to_string(npn4.records.size()) + " NPN classes, " + std::to_string(incomplete) +
                     " incomplete, " + std::to_string(npn4.skipped) + " skipped" + (why.empty() ? "" : "; " + why);
        return out;
    });

    failures += !report(4, [] {
        Outcome o;
        const Rational margin(8, 9);
        int classes = 0;
        for (int n = 0; n <= 3; ++n) {
            for (const auto& f : npn_class_representatives(n)) {
                ++classes;
                const auto fbar = complement(f);
                const auto p = approx_ndeg(f, kThird).witness.value();
                const auto q = approx_ndeg(fbar, kThird).witness.value();
                const auto r = sign_rep_from_nd(p, q, f, kThird).values();
                const auto ra = rational_approx_from_nd(p, q, f, kThird);
                for (std::uint64_t x = 0; x < f.size(); ++x) {
                    const bool sep = f[x] ? r[x] <= -margin : r[x] >= margin;
                    const Rational v = ra.evaluate(x);
                    const Rational err = f[x] ? Rational(1) - v : v;
                    if (!sep || err < Rational(0) || err > kThird) {
                        o.pass = false;
                        o.detail = "class " + std::to_string(n) + ":" + f.to_hex() + " fails at input " +
                                   std::to_string(x) + "; ";
                    }
                }
            }
        }
        o.detail += std::to_string(classes) + " classes, margin 8/9 and error 1/3 checked exactly";
        return o;
    });

    failures += !report(5, [] {
        Outcome o;
        int count = 0;
        for (int n = 0; n <= 4; ++n) {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << (std::uint64_t{1} << n)); ++w) {
                const auto f = TruthTable::from_word(w, n);
                if (classify(f).monotone == Monotonicity::None) continue;
                ++count;
                const auto p = combinatorial_profile(f);
                const auto nf = approx_ndeg(f, kThird), nb = approx_ndeg(complement(f), kThird);
                const bool ok = nf.exact && nb.exact && p.s0.value <= 8 * nb.value * nb.value &&
                                p.s1.value <= 8 * nf.value * nf.value;
                if (!ok) {
                    o.pass = false;
                    o.detail = "fails at " + std::to_string(n) + ":" + f.to_hex() + "; ";
                }
            }
        }
        o.detail += std::to_string(count) + " monotone functions (both directions) at n <= 4";
        return o;
    });

    failures += !report(6, [] {
        const auto start = Clock::now();
        Outcome o;
        ApproxNdegOptions plain;
        plain.symmetric_shortcut = false;
        int count = 0;
        for (int n = 0; n <= 5; ++n) {
            for (const auto& p : symmetric_profiles(n)) {
                ++count;
                const auto f = symmetric_table(p);
                const auto nd = approx_ndeg(f, kThird, plain);
                const auto b = symmetric_nd_bounds(p, kThird);
                const int alt = alternation_profile(f).max_alt;
                const bool ok = nd.exact && 2 * nd.value >= alt && b.lower <= nd.value && nd.value <= b.upper;
                if (!ok) {
                    o.pass = false;
                    o.detail = "fails at " + std::to_string(n) + ":" + f.to_hex() + "; ";
                }
            }
        }
        if (seconds_since(start) >= 600) {
            o.pass = false;
            o.detail += "exceeded 10 minutes; ";
        }
        o.detail += std::to_string(count) + " symmetric functions at n <= 5, no shortcut";
        return o;
    });

    failures += !report(7, [] {
        Outcome o;
        const auto corpus = readk_corpus();
        for (const auto& text : corpus) {
            const auto d = parse_dnf(text);
            const auto a = dnf_analyze(d, d.k());
            const int k = d.k(), alpha = d.alpha(), beta = d.beta();
            const auto prof = combinatorial_profile(d.to_table());
            const auto dt = disjoint_terms(d);
            const auto e = readk_embed(d);
            auto side_ok = [](const std::optional<EmbeddingWitness>& w, int size_needed_num, int den) {
                if (size_needed_num == 0) return true;
                if (!w) return false;
                EmbeddingWitness copy = *w;
                copy.verify();
                return copy.verified && w->m * den >= size_needed_num;
            };
            const bool ok = a.minimal && k >= 1 && k <= 3 && d.n <= 10 &&
                            prof.s1.value + (1 + k) * prof.s0.value >= beta &&
                            static_cast<int>(dt.indices.size()) * k * beta >= alpha &&
                            side_ok(e.zero_side, prof.s0.value, 2 * k + 1) &&
                            side_ok(e.one_side, prof.s1.value, k + 1);
            if (!ok) {
                o.pass = false;
                o.detail += "fails on " + text + "; ";
            }
        }
        o.detail += std::to_string(corpus.size()) + " minimal read-k DNFs";
        return o;
    });

    failures += !report(8, [] {
        Outcome o;
        for (const auto& pc : kProperties) {
            const auto spec = builtin_property(pc.name, pc.n, 2);
            const auto h = hypergraph_symmetric_embedding(spec);
            EmbeddingWitness w = h.witness;
            w.verify();
            const auto opts = property_options();
            const auto mp = m_measure(spec.table, kThird, opts.nd);
            const auto mg = m_measure(h.witness.target, kThird, opts.nd);
            const bool ok = w.verified && mp.exact && mg.exact && mp.value >= mg.value;
            o.pass = o.pass && ok;
            o.detail += std::string(pc.name) + " n=" + std::to_string(pc.n) + ": case " +
                        std::to_string(h.case_number) + ", M(P)=" + std::to_string(mp.value) +
                        " >= M(g)=" + std::to_string(mg.value) + (ok ? "" : " FAILED") + "; ";
        }
        return o;
    });

    failures += !report(9, [] {
        const auto start = Clock::now();
        Outcome o;
        std::mt19937_64 rng(2024);
        int done = 0;
        while (done < 500) {
            const int n = 1 + static_cast<int>(rng() % 4);
            const int m = 1 + static_cast<int>(rng() % n);
            const auto f = TruthTable::from_function(n, [&](std::uint64_t) { return rng() & 1; });
            Substitution s{m, {}};
            for (int i = 0; i < n; ++i) {
                switch (rng() % 4) {
                    case 0: s.actions.push_back(Literal::zero()); break;
                    case 1: s.actions.push_back(Literal::one()); break;
                    case 2: s.actions.push_back(Literal::pos(static_cast<int>(rng() % m))); break;
                    default: s.actions.push_back(Literal::neg(static_cast<int>(rng() % m))); break;
                }
            }
            const auto g = substitute(f, s);
            const auto nf = approx_ndeg(f, kThird), ng = approx_ndeg(g, kThird);
            ++done;
            if (!nf.exact || !ng.exact || ng.value > nf.value) {
                o.pass = false;
                o.detail = "fails at f=" + std::to_string(n) + ":" + f.to_hex() + "; ";
            }
        }
        if (seconds_since(start) >= 600) {
            o.pass = false;
            o.detail += "exceeded 10 minutes; ";
        }
        o.detail += std::to_string(done) + " random (f, sigma) pairs at n <= 4";
        return o;
    });

    failures += !report(10, [&npn4] {
        Outcome o;
        auto build = [&npn4] {
            SuiteResult s;
            for (const auto& r : ratio_records(npn4)) s.add(r);
            return s;
        };
        const SuiteResult a = build();
        const SuiteResult b = build();
        if (a.to_json()["ratios"] != b.to_json()["ratios"]) {
            o.pass = false;
            o.detail += "ratio reports differ between runs; ";
        }
        for (const auto& i : a.inequalities) {
            if (i.violated()) {
                o.pass = false;
                o.detail += "(" + std::to_string(i.id) + ") violated at " + *i.counterexample + "; ";
            }
        }
        for (std::size_t k = 0; k < a.ratios.size(); ++k) {
            const auto& r = a.ratios[k];
            if (r.by_n.empty()) {
                o.pass = false;
                o.detail += "no samples for " + r.name + "; ";
                continue;
            }
            std::string per;
            std::optional<Rational> prev;
            bool monotone = true;
            for (const auto& [n, entry] : r.by_n) {
                if (!kExhaustive[k].count(n)) continue;
                per += " " + std::to_string(n) + ":" + entry.first.to_short_string();
                if (prev && entry.first < *prev) monotone = false;
                prev = entry.first;
            }
            if (!monotone) {
                o.pass = false;
                o.detail += "not monotone in n: " + r.name + " [" + per + " ]; ";
            }
        }
        o.detail += std::to_string(a.records) + " records, " + std::to_string(a.ratios.size()) + " ratio reports";
        return o;
    });

    return failures == 0 ? 0 : 1;
}
