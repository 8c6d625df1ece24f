#include "boofdeg/classify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "boofdeg/error.hpp"

namespace boofdeg {

const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::None: return "none";
        case Monotonicity::Increasing: return "increasing";
        case Monotonicity::Decreasing: return "decreasing";
    }
    return "?";
}

namespace {

// +1: f never decreases when x_i goes 0 -> 1; -1: never increases; 0: both
// (irrelevant variable); 2: neither.
int direction(const TruthTable& f, int i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    bool up = false, down = false;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (x & bit) continue;
        const bool a = f.get(x), b = f.get(x | bit);
        up = up || (!a && b);
        down = down || (a && !b);
    }
    if (up && down) return 2;
    if (up) return 1;
    if (down) return -1;
    return 0;
}

}  // namespace

bool is_monotone_increasing(const TruthTable& f) {
    for (int i = 0; i < f.num_vars(); ++i)
        if (direction(f, i) == -1 || direction(f, i) == 2) return false;
    return true;
}

std::optional<std::vector<std::uint8_t>> symmetric_profile(const TruthTable& f) {
    const int n = f.num_vars();
    std::vector<int> seen(n + 1, -1);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const int w = popcount(x);
        const int v = f.get(x) ? 1 : 0;
        if (seen[w] < 0) seen[w] = v;
        else if (seen[w] != v) return std::nullopt;
    }
    std::vector<std::uint8_t> profile(n + 1);
    for (int k = 0; k <= n; ++k) profile[k] = static_cast<std::uint8_t>(seen[k]);
    return profile;
}

ClassReport classify(const TruthTable& f) {
    ClassReport r;
    r.relevant_vars = relevant_vars(f);
    bool inc = true, dec = true, unate = true;
    std::uint32_t orientation = 0;
    for (int i = 0; i < f.num_vars(); ++i) {
        const int d = direction(f, i);
        if (d == 2) {
            inc = dec = unate = false;
        } else if (d == 1) {
            dec = false;
        } else if (d == -1) {
            inc = false;
            orientation |= 1U << i;
        }
    }
    r.monotone = inc ? Monotonicity::Increasing : (dec ? Monotonicity::Decreasing : Monotonicity::None);
    if (unate) {
        const TruthTable g =
            TruthTable::from_function(f.num_vars(), [&](std::uint64_t x) { return f.get(x ^ orientation); });
        if (!is_monotone_increasing(g)) throw VerificationError("classify: unate orientation does not verify");
        r.unate_orientation = orientation;
    }
    r.symmetric_profile = symmetric_profile(f);
    return r;
}

nlohmann::json ClassReport::to_json(int n) const {
    nlohmann::json j;
    j["monotone"] = to_string(monotone);
    if (unate_orientation) {
        std::vector<int> a;
        for (int i = 0; i < n; ++i) a.push_back(static_cast<int>(*unate_orientation >> i & 1U));
        j["unate_orientation"] = a;
    } else {
        j["unate_orientation"] = nullptr;
    }
    if (symmetric_profile) {
        std::vector<int> d(symmetric_profile->begin(), symmetric_profile->end());
        j["symmetric_profile"] = d;
    } else {
        j["symmetric_profile"] = nullptr;
    }
    std::vector<int> rel;
    for (int i = 0; i < n; ++i)
        if (relevant_vars >> i & 1U) rel.push_back(i + 1);
    j["relevant_vars"] = rel;
    return j;
}

AlternationReport alternation_profile(const TruthTable& f, bool keep_tables) {
    const std::uint64_t size = f.size();
    std::vector<int> hi(size, 0), lo(size, 0);
    for (std::uint64_t x = 1; x < size; ++x) {
        int best_hi = -1, best_lo = 1 << 30;
        for (std::uint64_t rest = x; rest; rest &= rest - 1) {
            const std::uint64_t y = x ^ (rest & -rest);
            const int step = f.get(y) != f.get(x) ? 1 : 0;
            best_hi = std::max(best_hi, hi[y] + step);
            best_lo = std::min(best_lo, lo[y] + step);
        }
        hi[x] = best_hi;
        lo[x] = best_lo;
    }
    AlternationReport r;
    r.max_alt = hi[size - 1];
    r.min_alt = lo[size - 1];
    r.is_zebra = r.max_alt == r.min_alt;
    if (keep_tables) {
        r.max_table = std::move(hi);
        r.min_table = std::move(lo);
    }
    return r;
}

nlohmann::json AlternationReport::to_json() const {
    return {{"max_alt", max_alt}, {"min_alt", min_alt}, {"is_zebra", is_zebra}};
}

std::pair<int, int> alternation_between(const TruthTable& f, std::uint64_t x, std::uint64_t y) {
    if ((x & ~y) != 0) throw std::invalid_argument("alternation_between: x is not below y");
    const std::uint64_t free = y & ~x;
    std::vector<int> hi(f.size(), 0), lo(f.size(), 0);
    // Submasks of `free` in increasing numeric order visit predecessors first.
    for (std::uint64_t s = free & (0 - free);; s = (s - free) & free) {
        if (s == 0) break;
        const std::uint64_t z = x | s;
        int best_hi = -1, best_lo = 1 << 30;
        for (std::uint64_t rest = s; rest; rest &= rest - 1) {
            const std::uint64_t p = z ^ (rest & -rest);
            const int step = f.get(p) != f.get(z) ? 1 : 0;
            best_hi = std::max(best_hi, hi[p] + step);
            best_lo = std::min(best_lo, lo[p] + step);
        }
        hi[z] = best_hi;
        lo[z] = best_lo;
    }
    return {hi[y], lo[y]};
}

Terms terms(const TruthTable& f) {
    Terms t;
    const std::uint64_t top = f.all_ones_input();
    const bool f_top = f.get(top), f_bottom = f.get(0);
    for (std::uint64_t u = 0; u < f.size(); ++u) {
        if (u != top && f.get(u) != f_top) {
            bool ok = true;
            const std::uint64_t free = top & ~u;
            for (std::uint64_t s = free; s && ok; s = (s - 1) & free) ok = f.get(u | s) == f_top;
            if (ok) t.max_terms.push_back(u);
        }
        if (u != 0 && f.get(u) != f_bottom) {
            bool ok = true;
            for (std::uint64_t s = (u - 1) & u;; s = (s - 1) & u) {
                if (f.get(s) != f_bottom) {
                    ok = false;
                    break;
                }
                if (s == 0) break;
            }
            if (ok) t.min_terms.push_back(u);
        }
    }
    return t;
}

TruthTable NpnTransform::apply(const TruthTable& t) const {
    const int n = t.num_vars();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("NpnTransform: arity mismatch");
    return TruthTable::from_function(n, [&](std::uint64_t x) {
        std::uint64_t y = 0;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t bit = ((x >> i) ^ (input_negation >> i)) & 1U;
            y |= bit << perm[i];
        }
        return t.get(y) != output_negation;
    });
}

namespace {

template <class Visit>
void for_each_transform(int n, Visit&& visit) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (std::uint32_t neg = 0; neg < (1U << n); ++neg) {
            for (int out = 0; out < 2; ++out) {
                NpnTransform t{perm, neg, out != 0};
                visit(t);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

NpnTransform inverse(const NpnTransform& t) {
    const int n = static_cast<int>(t.perm.size());
    NpnTransform inv;
    inv.perm.assign(n, 0);
    inv.output_negation = t.output_negation;
    for (int j = 0; j < n; ++j) {
        const int i = t.perm[j];
        inv.perm[i] = j;
        if (t.input_negation >> j & 1U) inv.input_negation |= 1U << i;
    }
    return inv;
}

}  // namespace

NpnResult npn_canonical(const TruthTable& f) {
    if (f.num_vars() > 6) throw CapError("npn_canonical: arity above 6");
    std::optional<TruthTable> best;
    NpnTransform best_t;
    for_each_transform(f.num_vars(), [&](const NpnTransform& t) {
        TruthTable g = t.apply(f);
        if (!best || g < *best) {
            best = std::move(g);
            best_t = t;
        }
    });
    NpnResult r{*best, inverse(best_t)};
    if (r.transform.apply(r.canonical) != f) throw VerificationError("npn_canonical: transform does not reproduce f");
    return r;
}

std::vector<TruthTable> npn_class_representatives(int n) {
    if (n < 0 || n > 4) throw CapError("npn_class_representatives: arity above 4");
    const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
    std::vector<bool> seen(count, false);
    std::vector<NpnTransform> transforms;
    for_each_transform(n, [&](const NpnTransform& t) { transforms.push_back(t); });
    std::vector<TruthTable> reps;
    for (std::uint64_t w = 0; w < count; ++w) {
        if (seen[w]) continue;
        // The first unseen table in numeric order is its orbit's minimum.
        const TruthTable f = TruthTable::from_word(w, n);
        reps.push_back(f);
        for (const auto& t : transforms) seen[t.apply(f).word()] = true;
    }
    return reps;
}

}  // namespace boofdeg
