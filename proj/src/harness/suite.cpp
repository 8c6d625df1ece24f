#include <sstream>

#include "boofdeg/error.hpp"
#include "boofdeg/harness.hpp"

namespace boofdeg {

namespace {

struct Spec {
    int id;
    const char* name;
    const char* anchor;
};

const Spec kInequalities[] = {
    {1, "deg_sign <= 2 M_1/3", "sign representation from an ND pair"},
    {2, "ndeg <= deg", "exact polynomial is non-deterministic"},
    {3, "N_1/3 <= deg_1/4", "rescaled approximator is an approximate ND polynomial"},
    {4, "D <= C0 C1", "certificate bound on query complexity"},
    {5, "s <= bs <= C", "sensitivity chain"},
    {6, "monotone: C = s = bs, s0 <= 8 Nbar^2, s1 <= 8 N^2", "OR/AND embedding at a sensitive input with the NOR bound"},
    {7, "symmetric: 2 N_1/3 >= alt", "symmetrization of the squared ND polynomial"},
    {8, "zebra: min_alt = max_alt", "zebra definition"},
    {9, "minimal read-k: s1 + (1+k) s0 >= beta, C1 <= beta, C0 <= alpha", "sensitivity and width of read-k DNFs"},
    {10, "embedding witness floors", "restriction witnesses"},
};

const Spec kRatios[] = {
    {1, "C/(alt M^2) on zebra functions", "certificate complexity of zebra functions"},
    {2, "bs/(alt M^2)", "block sensitivity under bounded alternation"},
    {3, "deg_1/3/M^4 on monotone functions", "approximate degree of monotone functions"},
    {4, "D/M^6 on symmetric functions", "query complexity of symmetric functions"},
    {5, "deg_1/3/(N Nbar)^6 on read-k DNFs", "approximate degree of read-k DNFs"},
    {6, "M^6/n on hypergraph properties", "hypergraph property lower bound"},
};

Rational power(const Rational& x, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

bool RatioResult::monotone_in_n() const {
    std::optional<Rational> prev;
    for (const auto& [n, entry] : by_n) {
        if (prev && entry.first < *prev) return false;
        prev = entry.first;
    }
    return true;
}

SuiteResult::SuiteResult() {
    for (const auto& s : kInequalities) {
        InequalityResult r;
        r.id = s.id;
        r.name = s.name;
        r.anchor = s.anchor;
        inequalities.push_back(r);
    }
    for (const auto& s : kRatios) {
        RatioResult r;
        r.name = s.name;
        r.anchor = s.anchor;
        ratios.push_back(r);
    }
}

const InequalityResult& SuiteResult::inequality(int id) const { return inequalities.at(id - 1); }

bool SuiteResult::violated() const {
    for (const auto& i : inequalities)
        if (i.violated()) return true;
    return false;
}

void SuiteResult::add(const MeasureRecord& r) {
    if (halted) return;
    ++records;
    const EpsRecord* e13 = r.at(Rational(1, 3));
    const EpsRecord* e14 = r.at(Rational(1, 4));
    const bool m_exact = e13 && e13->m().exact;
    const bool n_exact = e13 && e13->n_f.exact;

    auto check = [&](int id, bool applicable, bool available, bool holds, const std::string& detail) {
        if (!applicable || halted) return;
        InequalityResult& res = inequalities[id - 1];
        if (!available) {
            ++res.skipped;
            return;
        }
        ++res.evaluated;
        if (holds) {
            ++res.held;
            return;
        }
        res.counterexample = r.id() + " (" + detail + ")";
        res.counterexample_record = r.to_json();
        halted = true;
    };

    const int m = e13 ? e13->m().value : 0;
    check(1, true, r.deg_sign && m_exact, r.deg_sign && *r.deg_sign <= 2 * m,
          "deg_sign=" + std::to_string(r.deg_sign.value_or(-1)) + " M=" + std::to_string(m));
    check(2, true, r.ndeg && r.deg, r.ndeg && r.deg && *r.ndeg <= *r.deg,
          "ndeg=" + std::to_string(r.ndeg.value_or(-1)) + " deg=" + std::to_string(r.deg.value_or(-1)));
    const bool have3 = n_exact && e14 && e14->deg_eps;
    check(3, true, have3, have3 && e13->n_f.value <= *e14->deg_eps, "N_1/3 vs deg_1/4");
    const bool have_c = r.c0 && r.c1;
    check(4, true, have_c && r.dt, have_c && r.dt && *r.dt <= *r.c0 * *r.c1, "D vs C0 C1");
    const bool have_s = r.s0 && r.s1 && r.bs0 && r.bs1 && have_c;
    if (have_s) {
        const int s = std::max(*r.s0, *r.s1), bs = std::max(*r.bs0, *r.bs1), c = std::max(*r.c0, *r.c1);
        const bool chain = s <= bs && bs <= c && *r.s0 <= *r.bs0 && *r.bs0 <= *r.c0 && *r.s1 <= *r.bs1 &&
                           *r.bs1 <= *r.c1;
        check(5, true, true, chain, "s/bs/C chain");
        if (r.monotone != Monotonicity::None) {
            const bool eq = c == s && s == bs;
            const int nf = e13 ? e13->n_f.value : 0, nb = e13 ? e13->n_not_f.value : 0;
            const bool bound = *r.s0 <= 8 * nb * nb && *r.s1 <= 8 * nf * nf;
            check(6, true, m_exact, eq && bound, "monotone sensitivity");
        }
    } else {
        check(5, true, false, false, "");
        check(6, r.monotone != Monotonicity::None, false, false, "");
    }
    check(7, r.symmetric_profile.has_value(), n_exact, n_exact && 2 * e13->n_f.value >= r.max_alt,
          "N_1/3 vs alt=" + std::to_string(r.max_alt));
    check(8, r.zebra, true, r.min_alt == r.max_alt, "alternation");
    if (r.dnf) {
        const bool avail = r.s0 && r.s1 && have_c;
        const bool ok = avail && *r.s1 + (1 + r.dnf->k) * *r.s0 >= r.dnf->beta && *r.c1 <= r.dnf->beta &&
                        *r.c0 <= r.dnf->alpha;
        check(9, r.dnf->minimal, avail, ok, "read-k bounds");
    }
    for (const auto& [name, ok] : r.floors) check(10, true, true, ok, name);

    // Ratio statistics: exact values only.
    auto record_ratio = [&](int idx, int n_key, const Rational& value) {
        RatioResult& rr = ratios[idx];
        ++rr.samples;
        auto it = rr.by_n.find(n_key);
        if (it == rr.by_n.end() || value > it->second.first) rr.by_n[n_key] = {value, r.id()};
    };
    if (!m_exact || m == 0) return;
    const Rational mq(m);
    const int c = have_c ? std::max(*r.c0, *r.c1) : -1;
    if (r.zebra && r.max_alt >= 1 && c >= 0) record_ratio(0, r.n, Rational(c) / (Rational(r.max_alt) * mq * mq));
    if (r.max_alt >= 1 && r.bs0 && r.bs1)
        record_ratio(1, r.n, Rational(std::max(*r.bs0, *r.bs1)) / (Rational(r.max_alt) * mq * mq));
    const std::optional<int> deg13 = e13->deg_eps;
    if (r.monotone != Monotonicity::None && deg13) record_ratio(2, r.n, Rational(*deg13) / power(mq, 4));
    if (r.symmetric_profile && r.dt) record_ratio(3, r.n, Rational(*r.dt) / power(mq, 6));
    if (r.dnf && deg13) {
        const Rational nn(std::max(1, e13->n_f.value * e13->n_not_f.value));
        record_ratio(4, r.n, Rational(*deg13) / power(nn, 6));
    }
    if (r.source == "property" && r.extra.contains("vertices")) {
        const int vertices = r.extra["vertices"].get<int>();
        record_ratio(5, vertices, power(mq, 6) / Rational(vertices));
    }
}

nlohmann::json SuiteResult::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["records"] = records;
    j["halted"] = halted;
    nlohmann::json ineq = nlohmann::json::array();
    for (const auto& i : inequalities) {
        nlohmann::json x{{"id", i.id},       {"name", i.name},          {"anchor", i.anchor},
                         {"evaluated", i.evaluated}, {"held", i.held}, {"skipped", i.skipped}};
        x["status"] = i.violated() ? "violated" : (i.evaluated ? "holds-exactly" : "not-evaluated");
        if (i.counterexample) {
            x["counterexample"] = *i.counterexample;
            x["counterexample_record"] = i.counterexample_record;
        }
        ineq.push_back(x);
    }
    j["inequalities"] = ineq;
    nlohmann::json rat = nlohmann::json::array();
    for (const auto& r : ratios) {
        nlohmann::json x{{"name", r.name}, {"anchor", r.anchor}, {"samples", r.samples},
                         {"status", "ratio-recorded"}, {"monotone_in_n", r.monotone_in_n()}};
        nlohmann::json per = nlohmann::json::array();
        for (const auto& [n, entry] : r.by_n)
            per.push_back({{"n", n}, {"max", entry.first.to_short_string()}, {"max_decimal", entry.first.to_double()},
                           {"argmax", entry.second}});
        x["by_n"] = per;
        rat.push_back(x);
    }
    j["ratios"] = rat;
    return j;
}

std::string SuiteResult::summary() const {
    std::ostringstream os;
    for (const auto& i : inequalities) {
        os << "(" << i.id << ") " << i.name << ": ";
        if (i.violated()) os << "VIOLATED at " << *i.counterexample;
        else if (i.evaluated == 0) os << "not evaluated";
        else os << "holds on " << i.held << "/" << i.evaluated;
        if (i.skipped) os << ", " << i.skipped << " skipped (bracket or cap)";
        os << '\n';
    }
    for (const auto& r : ratios) {
        os << "ratio " << r.name << ":";
        if (r.by_n.empty()) os << " no samples";
        for (const auto& [n, entry] : r.by_n) os << " n=" << n << " max=" << entry.first.to_short_string();
        os << '\n';
    }
    return os.str();
}

}  // namespace boofdeg
