#include "boofdeg/constructions.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <set>

#include "boofdeg/classify.hpp"
#include "boofdeg/combinatorial.hpp"
#include "boofdeg/degree.hpp"
#include "boofdeg/error.hpp"

namespace boofdeg {

const char* to_string(TargetKind k) {
    switch (k) {
        case TargetKind::Or: return "OR";
        case TargetKind::And: return "AND";
        case TargetKind::Symmetric: return "symmetric";
        case TargetKind::Gate: return "gate";
    }
    return "?";
}

namespace {

std::string literal_text(const Literal& l) {
    switch (l.kind) {
        case Literal::Kind::Zero: return "0";
        case Literal::Kind::One: return "1";
        case Literal::Kind::Var: return "y" + std::to_string(l.var + 1);
        case Literal::Kind::NegVar: return "!y" + std::to_string(l.var + 1);
    }
    return "?";
}

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

EmbeddingWitness make_witness(std::string construction, std::string source_id, const TruthTable& source,
                              Substitution sigma, TargetKind kind, TruthTable target, bool output_negated) {
    EmbeddingWitness w;
    w.construction = std::move(construction);
    w.source_id = std::move(source_id);
    w.source = source;
    w.sigma = std::move(sigma);
    w.kind = kind;
    w.m = target.num_vars();
    w.target = std::move(target);
    w.output_negated = output_negated;
    w.verify();
    return w;
}

TruthTable target_table(TargetKind kind, int m) {
    return kind == TargetKind::Or ? or_table(m) : and_table(m);
}

void require_nd(const TruthTable& f, const MultilinearPoly& p, const Rational& eps, const char* which) {
    try {
        verify_approx_nd(f, p, eps);
    } catch (const VerificationError& e) {
        throw PreconditionError(std::string(which) + " is not an approximate ND polynomial: " + e.what());
    }
}

}  // namespace

void EmbeddingWitness::verify() {
    verified = false;
    sigma.validate();
    TruthTable g = substitute(source, sigma);
    if (output_negated) g = complement(g);
    std::string transcript = construction + "|" + source.to_hex() + "|";
    for (const auto& l : sigma.actions) transcript += literal_text(l) + ",";
    transcript += "|" + g.to_hex() + "|" + target.to_hex() + (output_negated ? "|neg" : "|pos");
    if (g != target)
        throw VerificationError(construction + ": restriction is " + g.to_hex() + ", expected " + target.to_hex());
    digest = fnv1a(transcript);
    verified = true;
}

nlohmann::json EmbeddingWitness::to_json() const {
    nlohmann::json j;
    j["construction"] = construction;
    j["source_id"] = source_id;
    j["source_n"] = source.num_vars();
    if (source.num_vars() <= 12) j["source_table"] = source.to_hex();
    std::vector<std::string> s;
    for (const auto& l : sigma.actions) s.push_back(literal_text(l));
    j["sigma"] = s;
    j["kind"] = to_string(kind);
    j["m"] = m;
    j["target"] = target.to_hex();
    j["output_negated"] = output_negated;
    j["verified"] = verified;
    j["digest"] = digest;
    return j;
}

// ---------------------------------------------------------------------------

MultilinearPoly sign_rep_from_nd(const MultilinearPoly& p, const MultilinearPoly& q, const TruthTable& f,
                                 const Rational& eps) {
    require_nd(f, p, eps, "p");
    require_nd(complement(f), q, eps, "q");
    MultilinearPoly r = q * q - p * p;
    const Rational gap = Rational(1) - eps * eps;
    const auto v = r.values();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const bool ok = f.get(x) ? v[x] <= -gap : v[x] >= gap;
        if (!ok || (f.get(x) ? v[x].sign() >= 0 : v[x].sign() <= 0))
            throw VerificationError("sign_rep_from_nd: separation fails at input " + std::to_string(x));
    }
    if (r.degree() > 2 * std::max(p.degree(), q.degree()))
        throw VerificationError("sign_rep_from_nd: degree exceeds 2 max(deg p, deg q)");
    return r;
}

Rational RationalApprox::evaluate(std::uint64_t x) const {
    const Rational den = denominator.evaluate(x);
    if (den.is_zero()) throw VerificationError("rational approximation has a vanishing denominator");
    return numerator.evaluate(x) / den;
}

RationalApprox rational_approx_from_nd(const MultilinearPoly& p, const MultilinearPoly& q, const TruthTable& f,
                                       const Rational& eps) {
    require_nd(f, p, eps, "p");
    require_nd(complement(f), q, eps, "q");
    RationalApprox r;
    r.numerator = p * p;
    r.denominator = r.numerator + q * q;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const Rational err = (Rational(f.get(x) ? 1 : 0) - r.evaluate(x)).abs();
        if (err > eps) throw VerificationError("rational approximation error above eps at input " + std::to_string(x));
        r.max_error = std::max(r.max_error, err);
    }
    if (r.degree() > 2 * std::max(p.degree(), q.degree()))
        throw VerificationError("rational approximation degree exceeds 2 max(deg p, deg q)");
    return r;
}

UnivariatePoly symmetrize_square(const MultilinearPoly& p) {
    const int n = p.num_vars();
    if (n > 12) throw CapError("symmetrize_square: arity above 12");
    const auto v = p.values();
    std::vector<Rational> sum(n + 1);
    std::vector<long> count(n + 1, 0);
    for (std::uint64_t x = 0; x < v.size(); ++x) {
        const int k = popcount(x);
        sum[k] += v[x] * v[x];
        ++count[k];
    }
    for (int k = 0; k <= n; ++k) {
        sum[k] /= Rational(count[k]);
        if (sum[k].sign() < 0) throw VerificationError("symmetrize_square: negative average");
    }
    UnivariatePoly u = UnivariatePoly::interpolate(sum);
    for (int k = 0; k <= n; ++k)
        if (u.evaluate(Rational(k)) != sum[k]) throw VerificationError("symmetrize_square: interpolation mismatch");
    if (u.degree() > 2 * p.degree()) throw VerificationError("symmetrize_square: degree exceeds 2 deg p");
    return u;
}

// ---------------------------------------------------------------------------

CentralInterval central_interval(std::span<const std::uint8_t> profile) {
    const int n = static_cast<int>(profile.size()) - 1;
    if (n < 0) throw PreconditionError("empty profile");
    const int mid = n / 2;
    int lo = mid, hi = mid;
    while (lo > 0 && profile[lo - 1] == profile[mid]) --lo;
    while (hi < n && profile[hi + 1] == profile[mid]) ++hi;
    return {lo, n - hi};
}

UnivariatePoly Exact0Reduction::apply(const UnivariatePoly& u) const {
    // u(t + ell - 1) via the binomial expansion of (t + s)^i.
    const Rational s(ell - 1);
    const auto& a = u.coefficients();
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational binom(1);
        Rational power(1);
        std::vector<Rational> pw(i + 1);
        for (std::size_t j = 0; j <= i; ++j) {
            pw[j] = power;
            power *= s;
        }
        for (std::size_t j = 0; j <= i; ++j) {
            // coefficient of t^j in (t + s)^i is C(i, j) s^(i - j)
            out[j] += a[i] * binom * pw[i - j];
            binom = binom * Rational(static_cast<long>(i - j)) / Rational(static_cast<long>(j + 1));
        }
    }
    const Rational scale(d_ell ? -1 : 1);
    for (auto& c : out) c *= scale;
    if (out.empty()) out.push_back(Rational(0));
    out[0] += Rational(d_ell ? 1 : 0);
    return UnivariatePoly(out);
}

Exact0Reduction exact0_reduce(std::span<const std::uint8_t> profile, int ell) {
    const int n = static_cast<int>(profile.size()) - 1;
    if (ell < 1) throw PreconditionError("exact0_reduce: needs ell >= 1 (use exact0_escape for ell = 0)");
    if (ell > n) throw PreconditionError("exact0_reduce: ell above n");
    if (profile[ell] == profile[ell - 1]) throw PreconditionError("exact0_reduce: D(ell) equals D(ell - 1)");
    Exact0Reduction r;
    r.ell = ell;
    r.d_ell = profile[ell] != 0;
    r.t_max = std::min(n / 5, n - ell + 1);
    const int de = r.d_ell ? 1 : 0;
    for (int t = 0; t <= r.t_max; ++t) {
        const int v = (1 - 2 * de) * profile[t + ell - 1] + de;
        r.values.push_back(static_cast<std::uint8_t>(v));
        if (v != (t == 0 ? 1 : 0))
            throw PreconditionError("exact0_reduce: D is not constant on [ell, ell + " + std::to_string(t - 1) +
                                    "], transformed value at t = " + std::to_string(t) + " is not EXACT_0");
    }
    return r;
}

EmbeddingWitness exact0_escape(std::span<const std::uint8_t> profile) {
    const int n = static_cast<int>(profile.size()) - 1;
    const auto ci = central_interval(profile);
    if (ci.l0 != 0) throw PreconditionError("exact0_escape: needs l0 = 0");
    if (ci.l1 == 0) throw PreconditionError("exact0_escape: constant profile");
    const int m = n - ci.l1 + 1;
    Substitution sigma{m, std::vector<Literal>(n, Literal::zero())};
    for (int i = 0; i < m; ++i) sigma.actions[i] = Literal::pos(i);
    const TruthTable f = symmetric_table(profile);
    return make_witness("exact0_escape", "symmetric:" + f.to_hex(), f, sigma, TargetKind::And, and_table(m),
                        profile[0] != 0);
}

// ---------------------------------------------------------------------------

MonotoneEmbedding embed_monotone(const TruthTable& f) {
    if (!is_monotone_increasing(f)) throw PreconditionError("embed_monotone: f is not monotone increasing");
    const int n = f.num_vars();
    const auto sens = sensitivity_table(f);
    MonotoneEmbedding out;
    for (int side = 0; side < 2; ++side) {
        int best = 0;
        std::uint64_t at = 0;
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if (f.get(x) == (side == 1) && sens[x] > best) {
                best = sens[x];
                at = x;
            }
        if (best == 0) continue;
        const std::uint64_t s = sensitive_coordinates(f, at);
        Substitution sigma{best, {}};
        int next = 0;
        for (int i = 0; i < n; ++i) {
            if (s >> i & 1U) sigma.actions.push_back(Literal::pos(next++));
            else sigma.actions.push_back((at >> i & 1U) ? Literal::one() : Literal::zero());
        }
        const TargetKind kind = side == 0 ? TargetKind::Or : TargetKind::And;
        auto w = make_witness("embed_monotone", f.to_hex(), f, sigma, kind, target_table(kind, best), false);
        (side == 0 ? out.zero_side : out.one_side) = std::move(w);
    }
    return out;
}

EmbeddingWitness embed_minimal_block(const TruthTable& f, std::uint64_t x) {
    const int n = f.num_vars();
    if (n > 20) throw CapError("embed_minimal_block: arity above 20");
    const bool v = f.get(x);
    std::uint64_t block = 0;
    for (int size = 1; size <= n && !block; ++size) {
        // Gosper's hack over masks with `size` bits, increasing.
        for (std::uint64_t b = (std::uint64_t{1} << size) - 1; b < f.size();) {
            if (f.get(x ^ b) != v) {
                block = b;
                break;
            }
            const std::uint64_t c = b & (0 - b), r = b + c;
            b = (((r ^ b) >> 2) / c) | r;
        }
    }
    if (!block) throw PreconditionError("embed_minimal_block: no sensitive block at this input");
    for (std::uint64_t rest = block; rest; rest &= rest - 1) {
        const std::uint64_t sub = block ^ (rest & (0 - rest));
        if (sub && f.get(x ^ sub) != v) throw VerificationError("embed_minimal_block: block is not minimal");
    }
    const int m = popcount(block);
    Substitution sigma{m, {}};
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const bool xi = x >> i & 1U;
        if (block >> i & 1U) sigma.actions.push_back(xi ? Literal::neg(next++) : Literal::pos(next++));
        else sigma.actions.push_back(xi ? Literal::one() : Literal::zero());
    }
    return make_witness("embed_minimal_block", f.to_hex(), f, sigma, TargetKind::And, and_table(m), v);
}

// ---------------------------------------------------------------------------

std::vector<int> greedy_independent_set(int vertices, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::set<int>> adj(vertices);
    for (auto [a, b] : edges) {
        if (a == b) continue;
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<bool> alive(vertices, true);
    while (true) {
        int pick = -1;
        std::size_t deg = 0;
        for (int u = 0; u < vertices; ++u)
            if (alive[u] && adj[u].size() > deg) {
                deg = adj[u].size();
                pick = u;
            }
        if (pick < 0) break;
        alive[pick] = false;
        for (int w : adj[pick]) adj[w].erase(pick);
        adj[pick].clear();
    }
    std::vector<int> out;
    for (int u = 0; u < vertices; ++u)
        if (alive[u]) out.push_back(u);
    return out;
}

nlohmann::json ReadkEmbedding::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["s0"] = s0;
    j["s1"] = s1;
    j["zero_side"] = zero_side ? zero_side->to_json() : nlohmann::json();
    j["one_side"] = one_side ? one_side->to_json() : nlohmann::json();
    j["zero_floor_ok"] = zero_floor_ok;
    j["one_floor_ok"] = one_floor_ok;
    return j;
}

ReadkEmbedding readk_embed(const DnfFormula& dnf) {
    const DnfAnalysis a = dnf_analyze(dnf, dnf.k());
    if (!a.minimal) throw PreconditionError("readk_embed: DNF is not term- and literal-irredundant");
    const TruthTable& f = a.table;
    const int n = f.num_vars();
    const auto sens = sensitivity_table(f);
    ReadkEmbedding out;
    out.k = a.k;

    auto first_max = [&](bool value, int& best) {
        best = 0;
        std::uint64_t at = 0;
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if (f.get(x) == value && sens[x] > best) {
                best = sens[x];
                at = x;
            }
        return at;
    };
    auto first_term = [&](std::uint64_t x) {
        for (int t = 0; t < dnf.alpha(); ++t)
            if (dnf.terms[t].satisfied_by(x)) return t;
        throw VerificationError("readk_embed: no satisfied term at a 1-input");
    };
    // flip_on_one: y = 1 means x_i flipped (zero side) or kept (one side).
    auto build = [&](std::uint64_t x, const std::vector<int>& coords, const std::vector<int>& chosen,
                     bool flip_on_one) {
        std::vector<Literal> actions(n);
        for (int i = 0; i < n; ++i) actions[i] = (x >> i & 1U) ? Literal::one() : Literal::zero();
        for (std::size_t t = 0; t < chosen.size(); ++t) {
            const int i = coords[chosen[t]];
            const bool xi = x >> i & 1U;
            actions[i] = (xi == flip_on_one) ? Literal::neg(static_cast<int>(t)) : Literal::pos(static_cast<int>(t));
        }
        return Substitution{static_cast<int>(chosen.size()), actions};
    };
    auto coords_of = [&](std::uint64_t mask) {
        std::vector<int> c;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1U) c.push_back(i);
        return c;
    };

    // Zero side.
    const std::uint64_t x0 = first_max(false, out.s0);
    if (out.s0 > 0) {
        const auto s = coords_of(sensitive_coordinates(f, x0));
        std::vector<int> t_of;
        for (int i : s) t_of.push_back(first_term(x0 ^ (std::uint64_t{1} << i)));
        for (std::size_t a1 = 0; a1 < s.size(); ++a1)
            for (std::size_t b1 = a1 + 1; b1 < s.size(); ++b1) {
                const bool link = (dnf.terms[t_of[a1]].variables() >> s[b1] & 1U) ||
                                  (dnf.terms[t_of[b1]].variables() >> s[a1] & 1U);
                if (link) out.zero_graph.emplace_back(static_cast<int>(a1), static_cast<int>(b1));
            }
        const auto indep = greedy_independent_set(static_cast<int>(s.size()), out.zero_graph);
        const int m = static_cast<int>(indep.size());
        out.zero_side = make_witness("readk_embed_zero", dnf.to_string(), f, build(x0, s, indep, true),
                                     TargetKind::Or, or_table(m), false);
        out.zero_floor_ok = static_cast<long>(m) * (2 * out.k + 1) >= out.s0;
        if (!out.zero_floor_ok) throw VerificationError("readk_embed: zero-side set below s0 / (2k + 1)");
    }

    // One side.
    const std::uint64_t x1 = first_max(true, out.s1);
    if (out.s1 > 0) {
        const std::uint64_t smask = sensitive_coordinates(f, x1);
        const auto s = coords_of(smask);
        const int tstar = first_term(x1);
        if ((dnf.terms[tstar].variables() & smask) != smask)
            throw VerificationError("readk_embed: satisfied term misses a sensitive coordinate");
        std::map<int, int> pos;
        for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = static_cast<int>(i);
        for (int t = 0; t < dnf.alpha(); ++t) {
            if (t == tstar) continue;
            std::vector<int> b;
            for (const auto& l : dnf.terms[t].literals) {
                const bool opposite = ((x1 >> l.var) & 1U) == (l.negated ? 1U : 0U);
                if (opposite && (smask >> l.var & 1U)) b.push_back(pos[l.var]);
            }
            if (b.size() >= 2) out.one_graph.emplace_back(b[0], b[1]);
        }
        const auto indep = greedy_independent_set(static_cast<int>(s.size()), out.one_graph);
        const int m = static_cast<int>(indep.size());
        out.one_side = make_witness("readk_embed_one", dnf.to_string(), f, build(x1, s, indep, false),
                                    TargetKind::And, and_table(m), false);
        out.one_floor_ok = static_cast<long>(m) * (out.k + 1) >= out.s1;
        if (!out.one_floor_ok) throw VerificationError("readk_embed: one-side set below s1 / (k + 1)");
    }
    return out;
}

DisjointTerms disjoint_terms(const DnfFormula& dnf) {
    DisjointTerms out;
    std::uint64_t used = 0;
    for (int t = 0; t < dnf.alpha(); ++t) {
        const std::uint64_t vars = dnf.terms[t].variables();
        if (vars & used) continue;
        used |= vars;
        out.indices.push_back(t);
    }
    for (std::size_t a = 0; a < out.indices.size(); ++a)
        for (std::size_t b = a + 1; b < out.indices.size(); ++b)
            if (dnf.terms[out.indices[a]].variables() & dnf.terms[out.indices[b]].variables())
                throw VerificationError("disjoint_terms: selected terms share a variable");
    out.bound_ok = static_cast<long>(out.indices.size()) * dnf.k() * dnf.beta() >= dnf.alpha();
    if (!out.bound_ok) throw VerificationError("disjoint_terms: count below alpha / (k beta)");
    return out;
}

// ---------------------------------------------------------------------------

nlohmann::json HypergraphEmbedding::to_json() const {
    nlohmann::json j;
    j["witness"] = witness.to_json();
    j["complemented"] = complemented;
    j["case"] = case_number;
    j["min_hypergraph"] = min_hypergraph;
    j["m"] = m;
    if (case_number == 2) {
        j["v"] = v + 1;
        std::vector<int> ip;
        for (int u : i_prime) ip.push_back(u + 1);
        j["i_prime"] = ip;
        std::vector<int> g(g_profile.begin(), g_profile.end());
        j["g_profile"] = g;
    }
    return j;
}

HypergraphEmbedding hypergraph_symmetric_embedding(const PropertySpec& p) {
    if (p.status == Invariance::Violated) throw PreconditionError("hypergraph embedding: property is not invariant");
    if (p.status != Invariance::Verified) throw PreconditionError("hypergraph embedding: invariance not verified");
    if (p.table.is_constant()) throw PreconditionError("hypergraph embedding: constant property");
    const int n = p.n, k = p.k;
    const auto edges = hypergraph_edges(n, k);
    const int e = static_cast<int>(edges.size());
    HypergraphEmbedding out;
    out.complemented = p.table.get(0);
    auto holds = [&](std::uint64_t h) { return p.table.get(h) != out.complemented; };
    const std::string id = "property:" + p.name + ":n=" + std::to_string(n) + ":k=" + std::to_string(k);

    if (k == 1) {
        Substitution sigma{n, {}};
        for (int i = 0; i < n; ++i) sigma.actions.push_back(Literal::pos(i));
        const auto prof = symmetric_profile(p.table);
        if (!prof) throw VerificationError("hypergraph embedding: 1-uniform property is not symmetric");
        out.case_number = 0;
        out.g_profile = *prof;
        std::vector<std::uint8_t> g = *prof;
        if (out.complemented)
            for (auto& b : g) b ^= 1U;
        out.witness = make_witness("hypergraph_symmetric_embedding", id, p.table, sigma, TargetKind::Symmetric,
                                   symmetric_table(g), out.complemented);
        return out;
    }

    for (int m = 1; m <= e && !out.m; ++m) {
        for (std::uint64_t h = (std::uint64_t{1} << m) - 1; h < p.table.size();) {
            if (holds(h)) {
                out.m = m;
                out.min_hypergraph = h;
                break;
            }
            const std::uint64_t c = h & (0 - h), r = h + c;
            h = (((r ^ h) >> 2) / c) | r;
        }
    }
    const std::uint64_t hmin = out.min_hypergraph;

    if (2L * k * out.m > n) {
        out.case_number = 1;
        Substitution sigma{out.m, std::vector<Literal>(e, Literal::zero())};
        int next = 0;
        for (int i = 0; i < e; ++i)
            if (hmin >> i & 1U) sigma.actions[i] = Literal::pos(next++);
        out.witness = make_witness("hypergraph_symmetric_embedding", id, p.table, sigma, TargetKind::And,
                                   and_table(out.m), out.complemented);
        return out;
    }

    out.case_number = 2;
    std::uint32_t touched = 0;
    for (int i = 0; i < e; ++i)
        if (hmin >> i & 1U)
            for (int u : edges[i]) touched |= 1U << u;
    out.v = __builtin_ctz(touched);
    std::set<std::vector<int>> link;
    std::uint64_t h_prime = hmin;
    for (int i = 0; i < e; ++i) {
        if (!(hmin >> i & 1U)) continue;
        const auto& ed = edges[i];
        if (std::find(ed.begin(), ed.end(), out.v) == ed.end()) continue;
        std::vector<int> s;
        for (int u : ed)
            if (u != out.v) s.push_back(u);
        link.insert(s);
        h_prime &= ~(std::uint64_t{1} << i);
    }
    for (int u = 0; u < n; ++u)
        if (!(touched >> u & 1U) || u == out.v) out.i_prime.push_back(u);
    std::map<int, int> slot;
    for (std::size_t t = 0; t < out.i_prime.size(); ++t) slot[out.i_prime[t]] = static_cast<int>(t);

    Substitution sigma{static_cast<int>(out.i_prime.size()), std::vector<Literal>(e, Literal::zero())};
    for (int i = 0; i < e; ++i) {
        if (h_prime >> i & 1U) {
            sigma.actions[i] = Literal::one();
            continue;
        }
        int hit = -1, hits = 0;
        std::vector<int> rest;
        for (int u : edges[i]) {
            if (slot.count(u)) {
                hit = u;
                ++hits;
            } else {
                rest.push_back(u);
            }
        }
        if (hits == 1 && link.count(rest)) sigma.actions[i] = Literal::pos(slot[hit]);
    }
    TruthTable g = substitute(p.table, sigma);
    if (out.complemented) g = complement(g);
    const auto prof = symmetric_profile(g);
    if (!prof) throw VerificationError("hypergraph embedding: induced function is not symmetric");
    if (g.is_constant()) throw VerificationError("hypergraph embedding: induced function is constant");
    if (g.get(0) || !g.get(std::uint64_t{1} << slot[out.v]))
        throw VerificationError("hypergraph embedding: g(0) or g(1_v) has the wrong value");
    out.g_profile = *prof;
    out.witness = make_witness("hypergraph_symmetric_embedding", id, p.table, sigma, TargetKind::Symmetric,
                               symmetric_table(*prof), out.complemented);
    return out;
}

// ---------------------------------------------------------------------------

nlohmann::json GateRestriction::to_json() const {
    nlohmann::json j;
    j["witness"] = witness.to_json();
    j["gate_node"] = gate_node;
    j["w"] = w;
    j["d"] = d;
    j["n"] = n;
    j["w_pow_d_gt_n"] = strict_bound;
    j["w_pow_d_ge_n"] = weak_bound;
    return j;
}

namespace {

// Assignments to the variables of a subformula: low bits of x only on `vars`.
template <class Pred>
std::optional<std::uint64_t> search_assignment(std::uint64_t vars, Pred&& pred) {
    for (std::uint64_t s = 0;; s = (s - vars) & vars) {
        if (pred(s)) return s;
        if (((s - vars) & vars) == 0) break;
    }
    return std::nullopt;
}

}  // namespace

GateRestriction max_branching_restriction(const ReadOnceFormula& f) {
    if (f.root < 0 || f.nodes[f.root].is_leaf()) throw PreconditionError("max_branching_restriction: no gate");
    if (f.n > TruthTable::kMaxVars) throw CapError("max_branching_restriction: arity above the table cap");
    const int n = f.n;
    GateRestriction out;
    out.n = n;
    out.d = f.depth();

    // Breadth-first order gives the shallowest, then leftmost, gate of maximum fan-in.
    std::vector<int> parent(f.nodes.size(), -1);
    std::deque<int> queue{f.root};
    while (!queue.empty()) {
        const int at = queue.front();
        queue.pop_front();
        const auto& nd = f.nodes[at];
        if (nd.is_leaf()) continue;
        if (static_cast<int>(nd.children.size()) > out.w) {
            out.w = static_cast<int>(nd.children.size());
            out.gate_node = at;
        }
        for (int ch : nd.children) {
            parent[ch] = at;
            queue.push_back(ch);
        }
    }

    std::vector<Literal> actions(n, Literal::zero());
    const RoNode& gate = f.nodes[out.gate_node];
    for (int i = 0; i < out.w; ++i) {
        const int ch = gate.children[i];
        const RoNode& c = f.nodes[ch];
        if (c.is_leaf()) {
            actions[c.var] = c.negated ? Literal::neg(i) : Literal::pos(i);
            continue;
        }
        const std::uint64_t vars = f.variables(ch);
        const int j = __builtin_ctzll(vars);
        const std::uint64_t bit = std::uint64_t{1} << j;
        const auto a = search_assignment(vars & ~bit, [&](std::uint64_t s) {
            return f.evaluate_node(ch, s) != f.evaluate_node(ch, s | bit);
        });
        if (!a) throw VerificationError("max_branching_restriction: subformula ignores a variable");
        for (int u = 0; u < n; ++u)
            if ((vars & ~bit) >> u & 1U) actions[u] = (*a >> u & 1U) ? Literal::one() : Literal::zero();
        actions[j] = f.evaluate_node(ch, *a | bit) ? Literal::pos(i) : Literal::neg(i);
    }

    bool negated = false;
    for (int below = out.gate_node; parent[below] >= 0; below = parent[below]) {
        const int anc = parent[below];
        const auto prof = f.gate_profile(anc);
        const int fan = static_cast<int>(prof.size()) - 1;
        int z = 0;
        while (z < fan && prof[z] == prof[z + 1]) ++z;
        if (z >= fan) throw VerificationError("max_branching_restriction: constant gate on the path");
        negated = negated != (prof[z] != 0);
        int ones_left = z;
        for (int sib : f.nodes[anc].children) {
            if (sib == below) continue;
            const bool want = ones_left > 0;
            if (want) --ones_left;
            const std::uint64_t vars = f.variables(sib);
            const auto a = search_assignment(vars, [&](std::uint64_t s) { return f.evaluate_node(sib, s) == want; });
            if (!a) throw VerificationError("max_branching_restriction: sibling cannot be forced");
            for (int u = 0; u < n; ++u)
                if (vars >> u & 1U) actions[u] = (*a >> u & 1U) ? Literal::one() : Literal::zero();
        }
    }

    long double power = 1;
    for (int i = 0; i < out.d; ++i) power *= out.w;
    out.strict_bound = power > static_cast<long double>(n);
    out.weak_bound = power >= static_cast<long double>(n);
    out.witness = make_witness("max_branching_restriction", f.to_string(), ro_to_table(f), Substitution{out.w, actions},
                               TargetKind::Gate, symmetric_table(f.gate_profile(out.gate_node)), negated);
    return out;
}

}  // namespace boofdeg
