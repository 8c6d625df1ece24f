#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boofdeg/truth_table.hpp"

namespace boofdeg {

// ---------------------------------------------------------------------------
// DNF formulas. Variables are 1-based in text and 0-based here.

struct DnfLiteral {
    int var = 0;
    bool negated = false;
    friend bool operator==(const DnfLiteral&, const DnfLiteral&) = default;
};

struct DnfTerm {
    /// Sorted by variable; each variable at most once.
    std::vector<DnfLiteral> literals;
    bool satisfied_by(std::uint64_t x) const;
    std::uint64_t variables() const;
    friend bool operator==(const DnfTerm&, const DnfTerm&) = default;
};

struct DnfFormula {
    int n = 0;
    std::vector<DnfTerm> terms;

    /// Term count.
    int alpha() const { return static_cast<int>(terms.size()); }
    /// Maximum term width.
    int beta() const;
    /// Maximum number of terms any variable occurs in.
    int k() const;
    std::vector<int> occurrences() const;

    bool evaluate(std::uint64_t x) const;
    TruthTable to_table() const;
    /// Canonical text, e.g. "(x1 & x2) | (x3 & !x4)"; parse_dnf round-trips it.
    std::string to_string() const;

    friend bool operator==(const DnfFormula&, const DnfFormula&) = default;
};

/// Grammar: term ('|' term)*; term = literal ('&' literal)* optionally in
/// parentheses; literal = 'x' digits | '!x' digits. Whitespace is ignored.
DnfFormula parse_dnf(std::string_view text);

struct DnfAnalysis {
    int alpha = 0;
    int beta = 0;
    int k = 0;
    int requested_k = 0;
    bool read_k_ok = true;
    /// 1-based variables occurring in more than requested_k terms.
    std::vector<int> offending_vars;
    /// Term- and literal-irredundant.
    bool minimal = true;
    /// 0-based indices of terms whose removal leaves the function unchanged.
    std::vector<int> redundant_terms;
    /// (term index, 1-based variable) pairs whose literal can be dropped.
    std::vector<std::pair<int, int>> redundant_literals;
    bool tautology = false;
    TruthTable table;

    nlohmann::json to_json() const;
};

DnfAnalysis dnf_analyze(const DnfFormula& d, int requested_k);

// ---------------------------------------------------------------------------
// Read-once formulas with symmetric gates.

enum class GateType { And, Or, Maj, Exact, Threshold };

struct RoNode {
    /// Leaf when var >= 0.
    int var = -1;
    bool negated = false;
    GateType gate = GateType::And;
    /// j for EXACT<j>, t for THR<t>.
    int param = 0;
    std::vector<int> children;

    bool is_leaf() const { return var >= 0; }
};

struct ReadOnceFormula {
    std::vector<RoNode> nodes;
    int root = -1;
    int n = 0;

    /// Gate depth: a lone literal has depth 0, a single gate depth 1.
    int depth() const;
    int depth_of(int node) const;
    int max_fanin() const;
    /// Output profile of a gate with the given fan-in: value at each weight.
    std::vector<std::uint8_t> gate_profile(int node) const;
    /// Variables below a node.
    std::uint64_t variables(int node) const;
    bool evaluate(std::uint64_t x) const;
    bool evaluate_node(int node, std::uint64_t x) const;
    std::string to_string() const;
};

/// Grammar: node = gate '(' node (',' node)* ')' | literal; gate = AND | OR |
/// MAJ | EXACT<j> | THR<t>. Repeated variables raise ParseError.
ReadOnceFormula parse_read_once(std::string_view text);
TruthTable ro_to_table(const ReadOnceFormula& f);

// ---------------------------------------------------------------------------
// k-uniform hypergraph properties on vertex set [n].

/// All k-subsets of {0..n-1}, each sorted, in lexicographic order. Edge
/// variable i of a property table is the i-th subset.
std::vector<std::vector<int>> hypergraph_edges(int n, int k);

/// Image of an edge set (bitmask over hypergraph_edges) under a vertex permutation.
std::uint64_t permute_hypergraph(std::uint64_t edges, const std::vector<int>& perm, int n, int k);

enum class Invariance { Unchecked, Verified, Violated };

struct PropertySpec {
    int k = 2;
    int n = 0;
    std::string name;
    TruthTable table;
    Invariance status = Invariance::Unchecked;
    /// Present when status is Violated: P(h) != P(perm(h)).
    std::optional<std::uint64_t> counterexample_edges;
    std::optional<std::vector<int>> counterexample_perm;

    nlohmann::json to_json() const;
};

using HypergraphPredicate = std::function<bool(std::uint64_t edges, const std::vector<std::vector<int>>& edge_list)>;

/// Materializes the table and checks invariance. Violation raises
/// PreconditionError unless allow_violation is set.
PropertySpec property_from_predicate(int k, int n, const HypergraphPredicate& predicate, std::string name,
                                     bool allow_violation = false);
PropertySpec property_from_table(int k, int n, const TruthTable& table, std::string name,
                                 bool allow_violation = false);

/// Named properties: "nonempty", "triangle" (k = 2), "exactly-one-edge",
/// "two-disjoint-edges", "full-degree-vertex" (k = 2), "edge-12".
PropertySpec builtin_property(const std::string& name, int n, int k, bool allow_violation = false);
std::vector<std::string> builtin_property_names();

}  // namespace boofdeg
