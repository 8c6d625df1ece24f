#include "boofdeg/combinatorial.hpp"

#include <algorithm>
#include <functional>

#include "boofdeg/error.hpp"
#include "boofdeg/kernels.hpp"

namespace boofdeg {

namespace {

constexpr std::uint8_t kZero = 1, kOne = 2, kMixed = 3;

// Subcubes in base 3: digit i is 0 or 1 for a fixed x_{i+1}, 2 when free.
// status[c] is kZero / kOne when f is constant on subcube c, else kMixed.
struct SubcubeTable {
    int n = 0;
    std::vector<std::uint32_t> pow3;
    std::vector<std::uint8_t> status;

    explicit SubcubeTable(const TruthTable& f) : n(f.num_vars()) {
        pow3.assign(n + 1, 1);
        for (int i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
        status.assign(pow3[n], 0);
        for (std::uint32_t c = 0; c < pow3[n]; ++c) {
            std::uint32_t rest = c;
            int free_digit = -1;
            std::uint64_t x = 0;
            for (int i = 0; i < n; ++i) {
                const std::uint32_t d = rest % 3;
                rest /= 3;
                if (d == 2 && free_digit < 0) free_digit = i;
                if (d == 1) x |= std::uint64_t{1} << i;
            }
            if (free_digit < 0) {
                status[c] = f.get(x) ? kOne : kZero;
            } else {
                status[c] = status[c - 2 * pow3[free_digit]] | status[c - pow3[free_digit]];
            }
        }
    }

    std::uint32_t code(std::uint64_t x, std::uint64_t fixed) const {
        std::uint32_t c = 0;
        for (int i = 0; i < n; ++i) {
            const std::uint32_t d = (fixed >> i & 1U) ? static_cast<std::uint32_t>(x >> i & 1U) : 2;
            c += d * pow3[i];
        }
        return c;
    }
};

CertificateWitness certificate_with(const SubcubeTable& t, std::uint64_t x) {
    CertificateWitness best{t.n + 1, x, 0};
    const std::uint64_t full = (std::uint64_t{1} << t.n) - 1;
    for (std::uint64_t s = 0; s <= full; ++s) {
        const int size = popcount(s);
        if (size >= best.value) continue;
        if (t.status[t.code(x, s)] != kMixed) best = {size, x, s};
    }
    return best;
}

void verify_certificate(const TruthTable& f, const CertificateWitness& c) {
    const bool v = f.get(c.input);
    for (std::uint64_t y = 0; y < f.size(); ++y) {
        if (((y ^ c.input) & c.fixed) == 0 && f.get(y) != v)
            throw VerificationError("certificate does not force f");
    }
}

void verify_blocks(const TruthTable& f, const BlockWitness& b) {
    std::uint64_t used = 0;
    for (auto blk : b.blocks) {
        if (blk == 0 || (used & blk)) throw VerificationError("block family not pairwise disjoint");
        if (f.get(b.input ^ blk) == f.get(b.input)) throw VerificationError("block does not flip f");
        used |= blk;
    }
    if (static_cast<int>(b.blocks.size()) != b.value) throw VerificationError("block count mismatch");
}

}  // namespace

std::vector<std::uint8_t> sensitivity_table(const TruthTable& f) {
    const auto v = f.values();
    std::vector<std::uint8_t> out(f.size());
    kernels::sensitivity_counts(v, f.num_vars(), out);
    return out;
}

std::uint64_t sensitive_coordinates(const TruthTable& f, std::uint64_t x) {
    std::uint64_t mask = 0;
    for (int i = 0; i < f.num_vars(); ++i)
        if (f.get(x) != f.get(x ^ (std::uint64_t{1} << i))) mask |= std::uint64_t{1} << i;
    return mask;
}

CertificateWitness certificate_at(const TruthTable& f, std::uint64_t x) {
    if (f.num_vars() > 12) throw CapError("certificate_at: arity above 12");
    SubcubeTable t(f);
    auto c = certificate_with(t, x);
    verify_certificate(f, c);
    return c;
}

BlockWitness block_sensitivity_at(const TruthTable& f, std::uint64_t x) {
    const int n = f.num_vars();
    if (n > 8) throw CapError("block_sensitivity_at: arity above 8");
    const std::uint64_t size = f.size();
    const bool v = f.get(x);
    // below[B]: some nonempty proper subset of B is sensitive.
    std::vector<std::uint8_t> sens(size), below(size, 0), minimal(size, 0);
    for (std::uint64_t b = 1; b < size; ++b) {
        sens[b] = f.get(x ^ b) != v;
        for (std::uint64_t rest = b; rest; rest &= rest - 1) {
            const std::uint64_t sub = b ^ (rest & (0 - rest));
            if (sub && (sens[sub] || below[sub])) {
                below[b] = 1;
                break;
            }
        }
        minimal[b] = sens[b] && !below[b];
    }
    std::vector<std::uint64_t> blocks_list;
    for (std::uint64_t b = 1; b < size; ++b)
        if (minimal[b]) blocks_list.push_back(b);

    // best[U]: maximum number of disjoint minimal blocks inside U.
    std::vector<int> best(size, 0);
    std::vector<std::uint64_t> choice(size, 0);
    for (std::uint64_t u = 1; u < size; ++u) {
        const std::uint64_t low = u & (0 - u);
        best[u] = best[u ^ low];
        choice[u] = 0;
        for (auto b : blocks_list) {
            if (!(b & low) || (b & ~u)) continue;
            if (1 + best[u ^ b] > best[u]) {
                best[u] = 1 + best[u ^ b];
                choice[u] = b;
            }
        }
    }
    BlockWitness w;
    w.input = x;
    for (std::uint64_t u = size - 1; u;) {
        if (choice[u]) {
            w.blocks.push_back(choice[u]);
            u ^= choice[u];
        } else {
            u ^= u & (0 - u);
        }
    }
    w.value = static_cast<int>(w.blocks.size());
    verify_blocks(f, w);
    return w;
}

CombinatorialProfile combinatorial_profile(const TruthTable& f) {
    const int n = f.num_vars();
    if (n > 12) throw CapError("combinatorial_profile: arity above 12");
    CombinatorialProfile p;
    const auto sens = sensitivity_table(f);
    SubcubeTable t(f);
    p.s0.value = p.s1.value = p.c0.value = p.c1.value = -1;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        PointWitness& s = f.get(x) ? p.s1 : p.s0;
        if (sens[x] > s.value) s = {sens[x], x};
        CertificateWitness& c = f.get(x) ? p.c1 : p.c0;
        const auto cx = certificate_with(t, x);
        if (cx.value > c.value) c = cx;
    }
    for (auto* c : {&p.c0, &p.c1}) {
        if (c->value < 0) *c = {};
        else verify_certificate(f, *c);
    }
    for (auto* s : {&p.s0, &p.s1})
        if (s->value < 0) *s = {};

    if (n <= 8) {
        p.has_bs = true;
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            BlockWitness& b = f.get(x) ? p.bs1 : p.bs0;
            if (b.value >= n) continue;
            auto bx = block_sensitivity_at(f, x);
            if (bx.value > b.value) b = std::move(bx);
        }
    }
    return p;
}

nlohmann::json CombinatorialProfile::to_json() const {
    nlohmann::json j;
    j["s0"] = s0.value;
    j["s1"] = s1.value;
    j["s"] = s();
    j["s0_input"] = s0.input;
    j["s1_input"] = s1.input;
    j["C0"] = c0.value;
    j["C1"] = c1.value;
    j["C"] = c();
    j["C0_certificate"] = {{"input", c0.input}, {"fixed", c0.fixed}};
    j["C1_certificate"] = {{"input", c1.input}, {"fixed", c1.fixed}};
    if (has_bs) {
        j["bs0"] = bs0.value;
        j["bs1"] = bs1.value;
        j["bs"] = bs();
        j["bs0_blocks"] = {{"input", bs0.input}, {"blocks", bs0.blocks}};
        j["bs1_blocks"] = {{"input", bs1.input}, {"blocks", bs1.blocks}};
    }
    return j;
}

bool DecisionTree::evaluate(std::uint64_t x) const {
    int at = root;
    while (nodes[at].var >= 0) at = (x >> nodes[at].var & 1U) ? nodes[at].child1 : nodes[at].child0;
    return nodes[at].leaf_value;
}

int DecisionTree::depth() const {
    std::function<int(int)> rec = [&](int i) -> int {
        if (nodes[i].var < 0) return 0;
        return 1 + std::max(rec(nodes[i].child0), rec(nodes[i].child1));
    };
    return root < 0 ? 0 : rec(root);
}

nlohmann::json DecisionTree::to_json() const {
    std::function<nlohmann::json(int)> rec = [&](int i) -> nlohmann::json {
        const Node& nd = nodes[i];
        if (nd.var < 0) return {{"leaf", nd.leaf_value ? 1 : 0}};
        return {{"query", nd.var + 1}, {"0", rec(nd.child0)}, {"1", rec(nd.child1)}};
    };
    return root < 0 ? nlohmann::json() : rec(root);
}

DecisionTreeResult decision_tree_depth(const TruthTable& f) {
    const int n = f.num_vars();
    if (n > 10) throw CapError("decision_tree_depth: arity above 10");
    SubcubeTable t(f);
    const std::uint32_t total = t.pow3[n];
    // depth[c] and the best variable for every subcube, bottom-up in code order
    // (fixing a free digit always lowers the code).
    std::vector<std::uint8_t> depth(total, 0);
    std::vector<std::int8_t> best_var(total, -1);
    for (std::uint32_t c = 0; c < total; ++c) {
        if (t.status[c] != kMixed) continue;
        int best = 1 << 20;
        std::uint32_t rest = c;
        for (int i = 0; i < n; ++i, rest /= 3) {
            if (rest % 3 != 2) continue;
            const int d = 1 + std::max(depth[c - 2 * t.pow3[i]], depth[c - t.pow3[i]]);
            if (d < best) {
                best = d;
                best_var[c] = static_cast<std::int8_t>(i);
            }
        }
        depth[c] = static_cast<std::uint8_t>(best);
    }
    DecisionTreeResult r;
    std::function<int(std::uint32_t)> build = [&](std::uint32_t c) -> int {
        DecisionTree::Node node;
        if (t.status[c] != kMixed) {
            node.leaf_value = t.status[c] == kOne;
            r.tree.nodes.push_back(node);
            return static_cast<int>(r.tree.nodes.size()) - 1;
        }
        const int i = best_var[c];
        const int c0 = build(c - 2 * t.pow3[i]);
        const int c1 = build(c - t.pow3[i]);
        node.var = i;
        node.child0 = c0;
        node.child1 = c1;
        r.tree.nodes.push_back(node);
        return static_cast<int>(r.tree.nodes.size()) - 1;
    };
    r.tree.root = build(total - 1);
    r.depth = depth[total - 1];
    for (std::uint64_t x = 0; x < f.size(); ++x)
        if (r.tree.evaluate(x) != f.get(x)) throw VerificationError("decision tree does not compute f");
    if (r.tree.depth() != r.depth) throw VerificationError("decision tree depth mismatch");
    return r;
}

}  // namespace boofdeg
