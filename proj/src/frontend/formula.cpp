#include "boofdeg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "boofdeg/error.hpp"

namespace boofdeg {

// ---------------------------------------------------------------------------
// DNF

bool DnfTerm::satisfied_by(std::uint64_t x) const {
    for (const auto& l : literals)
        if (((x >> l.var) & 1U) == (l.negated ? 1U : 0U)) return false;
    return true;
}

std::uint64_t DnfTerm::variables() const {
    std::uint64_t m = 0;
    for (const auto& l : literals) m |= std::uint64_t{1} << l.var;
    return m;
}

int DnfFormula::beta() const {
    std::size_t b = 0;
    for (const auto& t : terms) b = std::max(b, t.literals.size());
    return static_cast<int>(b);
}

std::vector<int> DnfFormula::occurrences() const {
    std::vector<int> occ(n, 0);
    for (const auto& t : terms)
        for (const auto& l : t.literals) ++occ[l.var];
    return occ;
}

int DnfFormula::k() const {
    const auto occ = occurrences();
    return occ.empty() ? 0 : *std::max_element(occ.begin(), occ.end());
}

bool DnfFormula::evaluate(std::uint64_t x) const {
    for (const auto& t : terms)
        if (t.satisfied_by(x)) return true;
    return false;
}

TruthTable DnfFormula::to_table() const {
    if (n > TruthTable::kMaxVars) throw CapError("DNF arity above the table cap");
    return TruthTable::from_function(n, [&](std::uint64_t x) { return evaluate(x); });
}

std::string DnfFormula::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) s += " | ";
        s += '(';
        for (std::size_t j = 0; j < terms[i].literals.size(); ++j) {
            const auto& l = terms[i].literals[j];
            if (j) s += " & ";
            if (l.negated) s += '!';
            s += 'x' + std::to_string(l.var + 1);
        }
        s += ')';
    }
    return s;
}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected ") + what);
    }
    [[noreturn]] void fail(const std::string& what) {
        skip_ws();
        throw ParseError(what, pos_);
    }
    std::size_t pos() {
        skip_ws();
        return pos_;
    }

    /// Digits right at the cursor (no whitespace skip); returns the value.
    int number() {
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1'000'000) fail("number too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected digits");
        return static_cast<int>(v);
    }

    /// 'x' digits or '!x' digits; returns the 0-based variable.
    std::pair<int, bool> literal() {
        const bool neg = accept('!');
        if (peek() != 'x') fail("expected literal");
        ++pos_;
        const std::size_t at = pos_;
        const int idx = number();
        if (idx < 1) {
            pos_ = at;
            fail("variable index must be at least 1");
        }
        return {idx - 1, neg};
    }

    bool word(std::string_view w) {
        skip_ws();
        if (s_.substr(pos_, w.size()) != w) return false;
        pos_ += w.size();
        return true;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

DnfFormula parse_dnf(std::string_view text) {
    Cursor c(text);
    DnfFormula d;
    if (c.at_end()) c.fail("empty formula");
    std::set<std::vector<std::pair<int, bool>>> seen_terms;
    do {
        const bool paren = c.accept('(');
        if (paren && c.peek() == ')') c.fail("empty term");
        if (!paren && (c.peek() == '|' || c.at_end())) c.fail("empty term");
        DnfTerm term;
        std::uint64_t used = 0;
        do {
            const std::size_t at = c.pos();
            auto [var, neg] = c.literal();
            if (var >= 64 || (used >> var & 1U))
                throw ParseError("variable repeated within a term", at);
            used |= std::uint64_t{1} << var;
            term.literals.push_back({var, neg});
            d.n = std::max(d.n, var + 1);
        } while (c.accept('&'));
        if (paren) c.expect(')', "')'");
        std::sort(term.literals.begin(), term.literals.end(),
                  [](const DnfLiteral& a, const DnfLiteral& b) { return a.var < b.var; });
        std::vector<std::pair<int, bool>> key;
        for (const auto& l : term.literals) key.emplace_back(l.var, l.negated);
        if (!seen_terms.insert(key).second) throw ParseError("duplicate term", c.pos());
        d.terms.push_back(std::move(term));
    } while (c.accept('|'));
    if (!c.at_end()) c.fail("unexpected character");
    return d;
}

DnfAnalysis dnf_analyze(const DnfFormula& d, int requested_k) {
    DnfAnalysis a;
    a.alpha = d.alpha();
    a.beta = d.beta();
    a.k = d.k();
    a.requested_k = requested_k;
    const auto occ = d.occurrences();
    for (int i = 0; i < d.n; ++i)
        if (occ[i] > requested_k) a.offending_vars.push_back(i + 1);
    a.read_k_ok = a.offending_vars.empty();

    a.table = d.to_table();
    a.tautology = a.table.count_ones() == a.table.size();
    for (int t = 0; t < a.alpha; ++t) {
        DnfFormula e = d;
        e.terms.erase(e.terms.begin() + t);
        if (e.to_table() == a.table) a.redundant_terms.push_back(t);
        for (std::size_t j = 0; j < d.terms[t].literals.size(); ++j) {
            DnfFormula g = d;
            auto& lits = g.terms[t].literals;
            lits.erase(lits.begin() + static_cast<long>(j));
            if (g.to_table() == a.table) a.redundant_literals.emplace_back(t, d.terms[t].literals[j].var + 1);
        }
    }
    a.minimal = a.redundant_terms.empty() && a.redundant_literals.empty();
    return a;
}

nlohmann::json DnfAnalysis::to_json() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["k"] = k;
    j["requested_k"] = requested_k;
    j["read_k_ok"] = read_k_ok;
    j["offending_vars"] = offending_vars;
    j["minimal"] = minimal;
    j["minimality_notion"] = "term and literal irredundant";
    j["redundant_terms"] = redundant_terms;
    nlohmann::json lits = nlohmann::json::array();
    for (auto [t, v] : redundant_literals) lits.push_back({{"term", t}, {"var", v}});
    j["redundant_literals"] = lits;
    j["tautology"] = tautology;
    j["n"] = table.num_vars();
    j["table"] = table.to_hex();
    return j;
}

// ---------------------------------------------------------------------------
// Read-once formulas

namespace {

bool gate_value(const RoNode& g, int ones) {
    const int w = static_cast<int>(g.children.size());
    switch (g.gate) {
        case GateType::And: return ones == w;
        case GateType::Or: return ones > 0;
        case GateType::Maj: return 2 * ones > w;
        case GateType::Exact: return ones == g.param;
        case GateType::Threshold: return ones >= g.param;
    }
    return false;
}

struct RoParser {
    Cursor c;
    ReadOnceFormula f;
    std::map<int, std::size_t> seen;

    int node() {
        const std::size_t at = c.pos();
        if (c.peek() == '!' || c.peek() == 'x') {
            auto [var, neg] = c.literal();
            if (auto it = seen.find(var); it != seen.end())
                throw ParseError("read-once violation: x" + std::to_string(var + 1) + " repeated", at);
            seen[var] = at;
            RoNode leaf;
            leaf.var = var;
            leaf.negated = neg;
            f.nodes.push_back(leaf);
            f.n = std::max(f.n, var + 1);
            return static_cast<int>(f.nodes.size()) - 1;
        }
        RoNode g;
        if (c.word("AND")) {
            g.gate = GateType::And;
        } else if (c.word("OR")) {
            g.gate = GateType::Or;
        } else if (c.word("MAJ")) {
            g.gate = GateType::Maj;
        } else if (c.word("EXACT<")) {
            g.gate = GateType::Exact;
            g.param = c.number();
            c.expect('>', "'>'");
        } else if (c.word("THR<")) {
            g.gate = GateType::Threshold;
            g.param = c.number();
            c.expect('>', "'>'");
        } else {
            c.fail("unknown gate name");
        }
        c.expect('(', "'('");
        do g.children.push_back(node());
        while (c.accept(','));
        c.expect(')', "')'");
        bool zero = false, one = false;
        for (int ones = 0; ones <= static_cast<int>(g.children.size()); ++ones)
            (gate_value(g, ones) ? one : zero) = true;
        if (!(zero && one)) throw ParseError("gate is constant", at);
        f.nodes.push_back(std::move(g));
        return static_cast<int>(f.nodes.size()) - 1;
    }
};

}  // namespace

ReadOnceFormula parse_read_once(std::string_view text) {
    RoParser p{Cursor(text), {}, {}};
    if (p.c.at_end()) p.c.fail("empty formula");
    p.f.root = p.node();
    if (!p.c.at_end()) p.c.fail("unexpected character");
    for (int v = 0; v < p.f.n; ++v)
        if (!p.seen.count(v)) throw ParseError("variable x" + std::to_string(v + 1) + " does not occur");
    if (p.f.n > 64) throw CapError("read-once formula with more than 64 variables");
    return p.f;
}

int ReadOnceFormula::depth_of(int node) const {
    const RoNode& nd = nodes[node];
    if (nd.is_leaf()) return 0;
    int d = 0;
    for (int ch : nd.children) d = std::max(d, depth_of(ch));
    return d + 1;
}

int ReadOnceFormula::depth() const { return depth_of(root); }

int ReadOnceFormula::max_fanin() const {
    std::size_t w = 0;
    for (const auto& nd : nodes) w = std::max(w, nd.children.size());
    return static_cast<int>(w);
}

std::vector<std::uint8_t> ReadOnceFormula::gate_profile(int node) const {
    const RoNode& g = nodes[node];
    std::vector<std::uint8_t> p;
    for (int ones = 0; ones <= static_cast<int>(g.children.size()); ++ones) p.push_back(gate_value(g, ones) ? 1 : 0);
    return p;
}

std::uint64_t ReadOnceFormula::variables(int node) const {
    const RoNode& nd = nodes[node];
    if (nd.is_leaf()) return std::uint64_t{1} << nd.var;
    std::uint64_t m = 0;
    for (int ch : nd.children) m |= variables(ch);
    return m;
}

bool ReadOnceFormula::evaluate_node(int node, std::uint64_t x) const {
    const RoNode& nd = nodes[node];
    if (nd.is_leaf()) return ((x >> nd.var) & 1U) != (nd.negated ? 1U : 0U);
    int ones = 0;
    for (int ch : nd.children) ones += evaluate_node(ch, x) ? 1 : 0;
    return gate_value(nd, ones);
}

bool ReadOnceFormula::evaluate(std::uint64_t x) const { return evaluate_node(root, x); }

std::string ReadOnceFormula::to_string() const {
    std::string s;
    auto rec = [&](auto&& self, int i) -> void {
        const RoNode& nd = nodes[i];
        if (nd.is_leaf()) {
            if (nd.negated) s += '!';
            s += 'x' + std::to_string(nd.var + 1);
            return;
        }
        switch (nd.gate) {
            case GateType::And: s += "AND"; break;
            case GateType::Or: s += "OR"; break;
            case GateType::Maj: s += "MAJ"; break;
            case GateType::Exact: s += "EXACT<" + std::to_string(nd.param) + ">"; break;
            case GateType::Threshold: s += "THR<" + std::to_string(nd.param) + ">"; break;
        }
        s += '(';
        for (std::size_t j = 0; j < nd.children.size(); ++j) {
            if (j) s += ',';
            self(self, nd.children[j]);
        }
        s += ')';
    };
    if (root >= 0) rec(rec, root);
    return s;
}

TruthTable ro_to_table(const ReadOnceFormula& f) {
    if (f.n > TruthTable::kMaxVars) throw CapError("read-once arity above the table cap");
    return TruthTable::from_function(f.n, [&](std::uint64_t x) { return f.evaluate(x); });
}

// ---------------------------------------------------------------------------
// Hypergraph properties

std::vector<std::vector<int>> hypergraph_edges(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 1 || k > n) return out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

namespace {

std::vector<int> edge_image(const std::vector<std::vector<int>>& edges, const std::vector<int>& perm) {
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
    std::vector<int> img(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::vector<int> e;
        for (int v : edges[i]) e.push_back(perm[v]);
        std::sort(e.begin(), e.end());
        img[i] = index.at(e);
    }
    return img;
}

std::uint64_t apply_image(std::uint64_t h, const std::vector<int>& img) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
        if (h >> i & 1U) out |= std::uint64_t{1} << img[i];
    return out;
}

void check_invariance(PropertySpec& p, bool allow_violation) {
    const auto edges = hypergraph_edges(p.n, p.k);
    const std::uint64_t count = p.table.size();
    // Transpositions generate the symmetric group, so checking all of them on
    // every hypergraph is already exhaustive; the full group is also swept
    // when small enough.
    std::vector<std::vector<int>> perms;
    for (int a = 0; a < p.n; ++a)
        for (int b = a + 1; b < p.n; ++b) {
            std::vector<int> t(p.n);
            std::iota(t.begin(), t.end(), 0);
            std::swap(t[a], t[b]);
            perms.push_back(t);
        }
    long double factorial = 1;
    for (int i = 2; i <= p.n; ++i) factorial *= i;
    if (p.n <= 7 && factorial * static_cast<long double>(count) <= static_cast<long double>(1ULL << 25)) {
        std::vector<int> t(p.n);
        std::iota(t.begin(), t.end(), 0);
        while (std::next_permutation(t.begin(), t.end())) perms.push_back(t);
    }
    std::vector<std::vector<int>> images;
    for (const auto& perm : perms) images.push_back(edge_image(edges, perm));
    for (std::uint64_t h = 0; h < count; ++h) {
        for (std::size_t q = 0; q < perms.size(); ++q) {
            const std::uint64_t g = apply_image(h, images[q]);
            if (p.table.get(h) != p.table.get(g)) {
                p.status = Invariance::Violated;
                p.counterexample_edges = h;
                p.counterexample_perm = perms[q];
                if (!allow_violation) {
                    std::string cyc = "(";
                    for (int v = 0; v < p.n; ++v)
                        if (perms[q][v] != v) cyc += std::to_string(v + 1) + " ";
                    if (cyc.size() > 1) cyc.pop_back();
                    cyc += ")";
                    throw PreconditionError("property '" + p.name + "' is not invariant: edge set " +
                                            std::to_string(h) + " changes value under permutation " + cyc);
                }
                return;
            }
        }
    }
    p.status = Invariance::Verified;
}

}  // namespace

std::uint64_t permute_hypergraph(std::uint64_t edges, const std::vector<int>& perm, int n, int k) {
    return apply_image(edges, edge_image(hypergraph_edges(n, k), perm));
}

PropertySpec property_from_table(int k, int n, const TruthTable& table, std::string name, bool allow_violation) {
    const auto edges = hypergraph_edges(n, k);
    if (edges.empty()) throw PreconditionError("property needs 1 <= k <= n");
    if (static_cast<int>(edges.size()) != table.num_vars())
        throw PreconditionError("property table arity does not match binom(n, k)");
    PropertySpec p;
    p.k = k;
    p.n = n;
    p.name = std::move(name);
    p.table = table;
    check_invariance(p, allow_violation);
    return p;
}

PropertySpec property_from_predicate(int k, int n, const HypergraphPredicate& predicate, std::string name,
                                     bool allow_violation) {
    const auto edges = hypergraph_edges(n, k);
    if (edges.empty()) throw PreconditionError("property needs 1 <= k <= n");
    if (static_cast<int>(edges.size()) > TruthTable::kMaxVars)
        throw CapError("binom(n, k) above the table cap");
    const int m = static_cast<int>(edges.size());
    const TruthTable t = TruthTable::from_function(m, [&](std::uint64_t h) { return predicate(h, edges); });
    return property_from_table(k, n, t, std::move(name), allow_violation);
}

std::vector<std::string> builtin_property_names() {
    return {"nonempty", "exactly-one-edge", "two-disjoint-edges", "triangle", "full-degree-vertex", "edge-12"};
}

PropertySpec builtin_property(const std::string& name, int n, int k, bool allow_violation) {
    using Edges = std::vector<std::vector<int>>;
    HypergraphPredicate pred;
    if (name == "nonempty") {
        pred = [](std::uint64_t h, const Edges&) { return h != 0; };
    } else if (name == "exactly-one-edge") {
        pred = [](std::uint64_t h, const Edges&) { return popcount(h) == 1; };
    } else if (name == "two-disjoint-edges") {
        pred = [](std::uint64_t h, const Edges& e) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!(h >> i & 1U)) continue;
                for (std::size_t j = i + 1; j < e.size(); ++j) {
                    if (!(h >> j & 1U)) continue;
                    bool disjoint = true;
                    for (int v : e[i])
                        if (std::find(e[j].begin(), e[j].end(), v) != e[j].end()) disjoint = false;
                    if (disjoint) return true;
                }
            }
            return false;
        };
    } else if (name == "triangle" || name == "full-degree-vertex") {
        if (k != 2) throw PreconditionError("property '" + name + "' needs k = 2");
        const bool tri = name == "triangle";
        pred = [n, tri](std::uint64_t h, const Edges& e) {
            std::vector<std::uint32_t> adj(n, 0);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (h >> i & 1U) {
                    adj[e[i][0]] |= 1U << e[i][1];
                    adj[e[i][1]] |= 1U << e[i][0];
                }
            for (int a = 0; a < n; ++a) {
                if (!tri && popcount(adj[a]) == n - 1) return true;
                if (tri)
                    for (int b = a + 1; b < n; ++b)
                        if ((adj[a] >> b & 1U) && (adj[a] & adj[b])) return true;
            }
            return false;
        };
    } else if (name == "edge-12") {
        pred = [](std::uint64_t h, const Edges&) { return (h & 1U) != 0; };
    } else {
        throw PreconditionError("unknown property '" + name + "'");
    }
    return property_from_predicate(k, n, pred, name, allow_violation);
}

nlohmann::json PropertySpec::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["k"] = k;
    j["n"] = n;
    j["edge_vars"] = table.num_vars();
    j["table"] = table.to_hex();
    j["invariance"] = status == Invariance::Verified ? "verified"
                      : status == Invariance::Violated ? "violated"
                                                       : "unchecked";
    if (counterexample_edges) {
        j["counterexample_edges"] = *counterexample_edges;
        std::vector<int> perm;
        for (int v : *counterexample_perm) perm.push_back(v + 1);
        j["counterexample_perm"] = perm;
    }
    return j;
}

}  // namespace boofdeg
