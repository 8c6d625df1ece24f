#include <chrono>
#include <functional>
#include <sstream>

#include "boofdeg/combinatorial.hpp"
#include "boofdeg/error.hpp"
#include "boofdeg/harness.hpp"

namespace boofdeg {

std::vector<Rational> default_eps_sweep() { return {Rational(1, 4), Rational(1, 3), Rational(1, 2)}; }

std::string Bracket::text() const {
    if (exact) return std::to_string(value);
    return std::to_string(lower) + ".." + std::to_string(upper);
}

nlohmann::json Bracket::to_json() const {
    if (exact) return value;
    return {{"lower", lower}, {"upper", upper}, {"exact", false}};
}

Bracket EpsRecord::m() const {
    Bracket b;
    b.value = std::max(n_f.value, n_not_f.value);
    b.lower = std::max(n_f.lower, n_not_f.lower);
    b.upper = std::max(n_f.upper, n_not_f.upper);
    b.exact = n_f.exact && n_not_f.exact;
    if (b.lower == b.upper) b.exact = true;
    return b;
}

const EpsRecord* MeasureRecord::at(const Rational& value) const {
    for (const auto& e : eps)
        if (e.eps == value) return &e;
    return nullptr;
}

namespace {

std::string eps_tag(const Rational& e) { return e.to_short_string(); }

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json();
}

template <class T>
std::string opt_text(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

Bracket cached_nd(const TruthTable& f, const Rational& eps, const MeasureOptions& o, nlohmann::json* witness) {
    const std::string params = "eps=" + eps.to_short_string() + ";budget=" + std::to_string(o.nd.lp_budget) +
                               ";shortcut=" + (o.nd.symmetric_shortcut ? "1" : "0");
    const std::string key = Cache::key(f.num_vars(), f.to_hex(), "N", params);
    if (o.cache && !witness) {
        if (auto hit = o.cache->lookup(key)) {
            const auto& j = *hit;
            if (j.contains("value") && j.contains("lower") && j.contains("upper") && j.contains("exact"))
                return {j["value"].get<int>(), j["lower"].get<int>(), j["upper"].get<int>(), j["exact"].get<bool>()};
        }
    }
    const auto w = approx_ndeg(f, eps, o.nd);
    const Bracket b = Bracket::of(w);
    if (witness) *witness = w.to_json();
    if (o.cache)
        o.cache->store(key, {{"value", b.value}, {"lower", b.lower}, {"upper", b.upper}, {"exact", b.exact}});
    return b;
}

}  // namespace

MeasureRecord compute_record(const TruthTable& f, const MeasureOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    MeasureRecord r;
    r.n = f.num_vars();
    r.hex = f.to_hex();
    const bool keep = options.keep_witnesses;
    if (keep) r.witnesses = nlohmann::json::object();

    auto guarded = [&](const std::string& name, const std::function<void()>& fn) {
        try {
            fn();
        } catch (const CapError& e) {
            r.complete = false;
            r.notes.push_back(name + ": " + e.what());
        }
    };

    if (r.n <= 6) r.npn_class = npn_canonical(f).canonical.to_hex();

    guarded("deg", [&] {
        auto w = exact_degree(f);
        r.deg = w.value;
        if (keep) r.witnesses["deg"] = w.to_json();
    });
    guarded("ndeg", [&] {
        auto w = ndeg(f);
        r.ndeg = w.value;
        if (keep) r.witnesses["ndeg"] = w.to_json();
    });
    guarded("deg_sign", [&] {
        auto w = sign_degree(f);
        r.deg_sign = w.value;
        if (keep) r.witnesses["deg_sign"] = w.to_json();
    });
    const TruthTable fbar = complement(f);
    for (const auto& eps : options.eps_list) {
        EpsRecord e;
        e.eps = eps;
        bool have = false;
        guarded("N_" + eps_tag(eps), [&] {
            nlohmann::json wf, wn;
            e.n_f = cached_nd(f, eps, options, keep ? &wf : nullptr);
            e.n_not_f = cached_nd(fbar, eps, options, keep ? &wn : nullptr);
            if (keep) {
                r.witnesses["N_" + eps_tag(eps)] = wf;
                r.witnesses["Nbar_" + eps_tag(eps)] = wn;
            }
            have = true;
        });
        if (eps < Rational(1, 2)) {
            guarded("deg_" + eps_tag(eps), [&] {
                auto w = approx_degree(f, eps);
                e.deg_eps = w.value;
                if (keep) r.witnesses["deg_" + eps_tag(eps)] = w.to_json();
            });
        }
        if (have) {
            if (!e.m().exact) {
                r.complete = false;
                r.notes.push_back("N_" + eps_tag(eps) + ": budget exhausted, bracket " + e.m().text());
            }
            r.eps.push_back(std::move(e));
        }
    }

    guarded("combinatorial", [&] {
        const auto p = combinatorial_profile(f);
        r.s0 = p.s0.value;
        r.s1 = p.s1.value;
        r.c0 = p.c0.value;
        r.c1 = p.c1.value;
        if (p.has_bs) {
            r.bs0 = p.bs0.value;
            r.bs1 = p.bs1.value;
        } else {
            r.complete = false;
            r.notes.push_back("bs: arity above 8");
        }
        if (keep) r.witnesses["combinatorial"] = p.to_json();
    });
    guarded("D", [&] {
        auto t = decision_tree_depth(f);
        r.dt = t.depth;
        if (keep && r.n <= 6) r.witnesses["decision_tree"] = t.tree.to_json();
    });

    const auto alt = alternation_profile(f);
    r.max_alt = alt.max_alt;
    r.min_alt = alt.min_alt;
    r.zebra = alt.is_zebra;
    const auto cls = classify(f);
    r.monotone = cls.monotone;
    r.unate = cls.unate_orientation.has_value();
    r.symmetric_profile = cls.symmetric_profile;
    if (keep) r.witnesses["classify"] = cls.to_json(r.n);

    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

nlohmann::json MeasureRecord::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["source"] = source;
    j["n"] = n;
    j["hex"] = hex;
    j["npn_class"] = npn_class.empty() ? nlohmann::json() : nlohmann::json(npn_class);
    j["deg"] = opt(deg);
    j["ndeg"] = opt(ndeg);
    j["deg_sign"] = opt(deg_sign);
    nlohmann::json e = nlohmann::json::array();
    for (const auto& x : eps) {
        e.push_back({{"eps", x.eps.to_short_string()},
                     {"N", x.n_f.to_json()},
                     {"Nbar", x.n_not_f.to_json()},
                     {"M", x.m().to_json()},
                     {"deg_eps", opt(x.deg_eps)}});
    }
    j["eps"] = e;
    j["s0"] = opt(s0);
    j["s1"] = opt(s1);
    j["bs0"] = opt(bs0);
    j["bs1"] = opt(bs1);
    j["C0"] = opt(c0);
    j["C1"] = opt(c1);
    j["D"] = opt(dt);
    j["max_alt"] = max_alt;
    j["min_alt"] = min_alt;
    j["zebra"] = zebra;
    j["monotone"] = to_string(monotone);
    j["unate"] = unate;
    if (symmetric_profile) {
        std::vector<int> p(symmetric_profile->begin(), symmetric_profile->end());
        j["symmetric_profile"] = p;
    } else {
        j["symmetric_profile"] = nullptr;
    }
    if (dnf) j["dnf"] = {{"alpha", dnf->alpha}, {"beta", dnf->beta}, {"k", dnf->k}, {"minimal", dnf->minimal}};
    if (!floors.empty()) {
        nlohmann::json fl = nlohmann::json::object();
        for (const auto& [name, ok] : floors) fl[name] = ok;
        j["floors"] = fl;
    }
    j["complete"] = complete;
    j["notes"] = notes;
    j["millis"] = millis;
    if (!witnesses.is_null()) j["witnesses"] = witnesses;
    if (!extra.is_null()) j["extra"] = extra;
    return j;
}

std::vector<std::string> MeasureRecord::csv_columns(const std::vector<Rational>& eps_list) {
    std::vector<std::string> c = {"schema_version", "n", "hex", "npn_class", "deg", "ndeg", "deg_sign"};
    for (const auto& e : eps_list) {
        const std::string t = eps_tag(e);
        c.push_back("N_" + t);
        c.push_back("Nbar_" + t);
        c.push_back("M_" + t);
        if (e < Rational(1, 2)) c.push_back("deg_" + t);
    }
    for (const char* s : {"s0", "s1", "bs0", "bs1", "C0", "C1", "D", "max_alt", "min_alt", "zebra", "monotone",
                          "unate", "symmetric", "complete"})
        c.emplace_back(s);
    return c;
}

std::string MeasureRecord::csv_row(const std::vector<Rational>& eps_list) const {
    std::vector<std::string> v = {std::to_string(kSchemaVersion), std::to_string(n), hex, npn_class,
                                  opt_text(deg), opt_text(ndeg), opt_text(deg_sign)};
    for (const auto& eps_value : eps_list) {
        const EpsRecord* e = at(eps_value);
        v.push_back(e ? e->n_f.text() : "");
        v.push_back(e ? e->n_not_f.text() : "");
        v.push_back(e ? e->m().text() : "");
        if (eps_value < Rational(1, 2)) v.push_back(e ? opt_text(e->deg_eps) : "");
    }
    v.push_back(opt_text(s0));
    v.push_back(opt_text(s1));
    v.push_back(opt_text(bs0));
    v.push_back(opt_text(bs1));
    v.push_back(opt_text(c0));
    v.push_back(opt_text(c1));
    v.push_back(opt_text(dt));
    v.push_back(std::to_string(max_alt));
    v.push_back(std::to_string(min_alt));
    v.push_back(zebra ? "1" : "0");
    v.push_back(to_string(monotone));
    v.push_back(unate ? "1" : "0");
    std::string prof;
    if (symmetric_profile)
        for (auto b : *symmetric_profile) prof += static_cast<char>('0' + b);
    v.push_back(prof);
    v.push_back(complete ? "1" : "0");
    std::string line;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) line += ',';
        line += v[i];
    }
    return line;
}

void write_csv(std::ostream& out, const std::vector<MeasureRecord>& records, const std::vector<Rational>& eps_list) {
    const auto cols = MeasureRecord::csv_columns(eps_list);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) out << r.csv_row(eps_list) << '\n';
}

void write_jsonl(std::ostream& out, const std::vector<MeasureRecord>& records) {
    for (const auto& r : records) out << r.to_json().dump() << '\n';
}

}  // namespace boofdeg
