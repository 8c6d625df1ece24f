#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "boofdeg/classify.hpp"
#include "boofdeg/degree.hpp"
#include "boofdeg/formula.hpp"
#include "boofdeg/rational.hpp"
#include "boofdeg/truth_table.hpp"

namespace boofdeg {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// 1/4, 1/3, 1/2.
std::vector<Rational> default_eps_sweep();

// ---------------------------------------------------------------------------
// Cache: append-only JSONL, newest entry per key wins.

class Cache {
public:
    explicit Cache(std::string path);
    /// Cache at $BOOFDEG_CACHE, or null when unset or empty.
    static std::unique_ptr<Cache> from_env();

    static std::string key(int n, const std::string& hex, const std::string& measure, const std::string& params);

    std::optional<nlohmann::json> lookup(const std::string& key);
    /// Throws Error when the file cannot be written.
    void store(const std::string& key, const nlohmann::json& value);

    const std::string& path() const { return path_; }
    std::size_t corrupted_lines() const { return corrupted_; }
    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::string path_;
    std::map<std::string, nlohmann::json> entries_;
    std::size_t corrupted_ = 0;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
    bool needs_newline_ = false;
    std::mutex mutex_;
};

// ---------------------------------------------------------------------------
// Per-function records.

struct Bracket {
    int value = 0;
    int lower = 0;
    int upper = 0;
    bool exact = true;

    static Bracket of(const DegreeWitness& w) { return {w.value, w.lower, w.upper, w.exact}; }
    /// "3", or "2..4" when not exact.
    std::string text() const;
    nlohmann::json to_json() const;
};

struct EpsRecord {
    Rational eps;
    Bracket n_f;
    Bracket n_not_f;
    /// Only for eps < 1/2.
    std::optional<int> deg_eps;

    Bracket m() const;
};

struct DnfFacts {
    int alpha = 0;
    int beta = 0;
    int k = 0;
    bool minimal = false;
};

struct MeasureOptions {
    std::vector<Rational> eps_list = default_eps_sweep();
    ApproxNdegOptions nd;
    bool keep_witnesses = false;
    Cache* cache = nullptr;
};

struct MeasureRecord {
    int n = 0;
    std::string hex;
    /// Canonical NPN table in hex; empty above arity 6.
    std::string npn_class;

    std::optional<int> deg;
    std::optional<int> ndeg;
    std::optional<int> deg_sign;
    std::vector<EpsRecord> eps;

    std::optional<int> s0, s1, bs0, bs1, c0, c1, dt;
    int max_alt = 0;
    int min_alt = 0;
    bool zebra = false;
    Monotonicity monotone = Monotonicity::None;
    bool unate = false;
    std::optional<std::vector<std::uint8_t>> symmetric_profile;

    std::optional<DnfFacts> dnf;
    /// Named floor checks of embedding witnesses attached to this record.
    std::vector<std::pair<std::string, bool>> floors;
    /// Which kind of input produced the record: table, dnf, read-once, property.
    std::string source = "table";

    /// All measures computed exactly (no caps hit, no brackets).
    bool complete = true;
    std::vector<std::string> notes;
    double millis = 0;
    nlohmann::json witnesses;
    nlohmann::json extra;

    const EpsRecord* at(const Rational& eps) const;
    std::string id() const { return std::to_string(n) + ":" + hex; }

    nlohmann::json to_json() const;
    static std::vector<std::string> csv_columns(const std::vector<Rational>& eps_list);
    /// Excludes timing so that repeated scans are byte-identical.
    std::string csv_row(const std::vector<Rational>& eps_list) const;
};

MeasureRecord compute_record(const TruthTable& f, const MeasureOptions& options);

// ---------------------------------------------------------------------------
// Inequality suite.

struct InequalityResult {
    int id = 0;
    std::string name;
    std::string anchor;
    long evaluated = 0;
    long held = 0;
    long skipped = 0;
    std::optional<std::string> counterexample;
    nlohmann::json counterexample_record;

    bool violated() const { return counterexample.has_value(); }
};

struct RatioResult {
    std::string name;
    std::string anchor;
    /// Per arity: maximum observed ratio and the record attaining it.
    std::map<int, std::pair<Rational, std::string>> by_n;
    long samples = 0;

    /// Per-arity maxima never decrease as n grows.
    bool monotone_in_n() const;
};

struct SuiteResult {
    std::vector<InequalityResult> inequalities;
    std::vector<RatioResult> ratios;
    /// Set at the first violation; later records are not evaluated.
    bool halted = false;
    long records = 0;

    SuiteResult();
    void add(const MeasureRecord& r);
    bool violated() const;
    const InequalityResult& inequality(int id) const;
    nlohmann::json to_json() const;
    std::string summary() const;
};

// ---------------------------------------------------------------------------
// Commands.

struct ScanOptions {
    int n = 2;
    bool npn = false;
    int workers = 1;
    /// Wall-clock budget in seconds; 0 means unlimited.
    double budget_seconds = 0;
    MeasureOptions measure;
};

struct ScanResult {
    std::vector<MeasureRecord> records;
    SuiteResult suite;
    /// Functions not computed because the budget ran out.
    long skipped = 0;
    bool partial() const { return skipped > 0; }
};

/// Records come back ordered by table, whatever the completion order.
ScanResult run_scan(const ScanOptions& options);

void write_csv(std::ostream& out, const std::vector<MeasureRecord>& records, const std::vector<Rational>& eps_list);
void write_jsonl(std::ostream& out, const std::vector<MeasureRecord>& records);

struct NorRow {
    int n = 0;
    DegreeWitness nd;
    DegreeWitness deg14;
    bool meets_reference = false;
    bool below_approx_degree = false;
};
/// N_{1/3}(NOR_n) and deg_{1/4}(NOR_n) for n = 1..n_max, n_max <= 8.
std::vector<NorRow> nor_table_rows(int n_max);

struct CheckResult {
    std::string name;
    long trials = 0;
    long passed = 0;
    long skipped = 0;
    std::optional<std::string> counterexample;

    bool ok() const { return !counterexample; }
};

struct VerifyResult {
    std::vector<CheckResult> checks;
    bool ok() const;
    nlohmann::json to_json() const;
};

std::vector<std::string> verify_targets();
/// Deterministic for a given seed. Unknown targets raise PreconditionError.
VerifyResult run_verify(const std::string& target, int trials, std::uint64_t seed);

/// Fixed corpus of minimal read-k DNFs, k in {1, 2, 3}, n <= 10.
std::vector<std::string> readk_corpus();

MeasureRecord analyze_dnf(const DnfFormula& d, const MeasureOptions& options);
MeasureRecord analyze_read_once(const ReadOnceFormula& f, const MeasureOptions& options);
MeasureRecord analyze_property(const PropertySpec& p, const MeasureOptions& options);

}  // namespace boofdeg
