#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "boofdeg/truth_table.hpp"

namespace boofdeg {

/// A measure value maximized over inputs with one input that attains it.
struct PointWitness {
    int value = 0;
    std::uint64_t input = 0;
};

struct CertificateWitness {
    int value = 0;
    std::uint64_t input = 0;
    /// Variables fixed by the certificate; their values are taken from input.
    std::uint64_t fixed = 0;
};

struct BlockWitness {
    int value = 0;
    std::uint64_t input = 0;
    /// Pairwise disjoint sensitive blocks at input.
    std::vector<std::uint64_t> blocks;
};

/// Sensitivity, block sensitivity and certificate complexity of f, each split
/// by the value f takes at the witness input. Empty sides (no 0-input or no
/// 1-input) report 0.
struct CombinatorialProfile {
    PointWitness s0, s1;
    BlockWitness bs0, bs1;
    CertificateWitness c0, c1;
    bool has_bs = false;

    int s() const { return std::max(s0.value, s1.value); }
    int bs() const { return std::max(bs0.value, bs1.value); }
    int c() const { return std::max(c0.value, c1.value); }

    nlohmann::json to_json() const;
};

/// s and C need n <= 12; bs is filled only when n <= 8.
CombinatorialProfile combinatorial_profile(const TruthTable& f);

/// Number of sensitive coordinates at every input.
std::vector<std::uint8_t> sensitivity_table(const TruthTable& f);
/// Sensitive coordinates of f at x as a bitmask.
std::uint64_t sensitive_coordinates(const TruthTable& f, std::uint64_t x);
/// Smallest set S such that fixing x on S forces f; minimum size.
CertificateWitness certificate_at(const TruthTable& f, std::uint64_t x);
/// Maximum family of disjoint sensitive blocks at x.
BlockWitness block_sensitivity_at(const TruthTable& f, std::uint64_t x);

struct DecisionTree {
    struct Node {
        /// Queried variable, or -1 for a leaf.
        int var = -1;
        int child0 = -1;
        int child1 = -1;
        bool leaf_value = false;
    };
    std::vector<Node> nodes;
    int root = -1;

    bool evaluate(std::uint64_t x) const;
    int depth() const;
    nlohmann::json to_json() const;
};

struct DecisionTreeResult {
    int depth = 0;
    DecisionTree tree;
};

/// Optimal deterministic query complexity with a tree attaining it. n <= 10.
DecisionTreeResult decision_tree_depth(const TruthTable& f);

}  // namespace boofdeg
