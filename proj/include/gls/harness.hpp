#pragma once

// Experiment grid over (family, Q, N, coefficients): evaluates the sieve sum,
// the matching right-hand sides and their ratios, and writes CSV or JSON.
// Output is a pure function of the configuration; threads only change speed.

#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

#include "sieve_sum.hpp"

namespace gls {

using nlohmann::json;

enum class Mode { Windowed, Cumulative };
enum class OutputFormat { Csv, Json };

inline std::string to_string(Mode m) { return m == Mode::Windowed ? "windowed" : "cumulative"; }
inline std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

inline Mode parse_mode(const std::string& s) {
    if (s == "windowed") return Mode::Windowed;
    if (s == "cumulative") return Mode::Cumulative;
    throw std::invalid_argument("unknown mode: " + s);
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown format: " + s);
}

struct ExperimentConfig {
    std::vector<FamilyKind> families{FamilyKind::AllGaussian};
    std::vector<double> q_values{2.0, 4.0};
    std::vector<Int> n_values{16};
    std::vector<CoeffSpec> coeffs{CoeffSpec{}};
    double epsilon = 0.1;
    std::uint64_t seed = 42;
    Mode mode = Mode::Windowed;
    int threads = 1;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    bool timings = false;

    void validate() const {
        if (families.empty() || q_values.empty() || n_values.empty() || coeffs.empty())
            throw std::invalid_argument("families, Q, N and coeff lists must be nonempty");
        for (FamilyKind k : families)
            if (k == FamilyKind::Custom) throw std::invalid_argument("custom families are library-only");
        for (double q : q_values)
            if (!(q >= 1.0)) throw std::invalid_argument("Q values must be >= 1");
        for (Int n : n_values)
            if (n < 1) throw std::invalid_argument("N values must be >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
        if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    }
};

// Norm window of one cell. Gaussian moduli use Q/2 < N(q) <= Q; rational-integer
// and square-norm moduli are indexed by Q with N(q) <= Q^2.
inline double norm_cap(FamilyKind kind, double q) { return kind == FamilyKind::AllGaussian ? q : q * q; }

inline std::vector<NormWindow> cell_windows(FamilyKind kind, double q, Mode mode) {
    const double high = norm_cap(kind, q);
    if (mode == Mode::Windowed) return {NormWindow::dyadic(high)};
    return dyadic_cover(high);
}

inline std::string coeff_label(const CoeffSpec& spec) {
    switch (spec.kind) {
        case CoeffKind::Delta: return "delta@" + to_string(spec.delta_at);
        case CoeffKind::ProgressionAdversary: return "adversary@" + to_string(spec.progression_modulus);
        default: return to_string(spec.kind);
    }
}

struct SieveRecord {
    FamilyKind family = FamilyKind::AllGaussian;
    double Q = 1.0;
    Int N = 1;
    std::string coeff;
    Mode mode = Mode::Windowed;
    double epsilon = 0.1;
    double lhs = 0.0;
    double Z = 0.0;
    std::array<std::optional<double>, 4> bounds;
    std::array<std::optional<double>, 4> ratios;
    std::optional<double> elapsed_ms;
    std::string note;  // per-row caveats such as a skipped character sum
    std::size_t order = 0;  // position of the coefficient spec in the config
};

// Moduli above this norm skip the M x M transform (memory grows like N(q)^2).
inline constexpr Int kFastPathNormCap = 1024;

inline double modulus_lhs_auto(const GaussianInt& q, const CoefficientSequence& coeffs) {
    return norm(q) <= kFastPathNormCap ? modulus_lhs_fast(q, coeffs) : modulus_lhs(q, coeffs);
}

inline SieveRecord evaluate_cell(FamilyKind kind, double q, Int n, const CoeffSpec& spec, const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    CoeffSpec seeded = spec;
    seeded.seed = cfg.seed;
    const CoefficientSequence coeffs = make_coefficients(seeded, n);

    SieveRecord rec;
    rec.family = kind;
    rec.Q = q;
    rec.N = n;
    rec.coeff = coeff_label(spec);
    rec.mode = cfg.mode;
    rec.epsilon = cfg.epsilon;
    rec.Z = coeffs.energy();

    const auto windows = cell_windows(kind, q, cfg.mode);
    for (const auto& w : windows)
        for (const auto& m : ModuliFamily(kind, w).enumerate()) rec.lhs += modulus_lhs_auto(m, coeffs);

    const auto dn = static_cast<double>(n);
    switch (kind) {
        case FamilyKind::AllGaussian: rec.bounds[0] = bound_t1(q, dn, rec.Z); break;
        case FamilyKind::NaturalIntegers: rec.bounds[1] = bound_t2(q, dn, rec.Z); break;
        case FamilyKind::SquareNorm:
            rec.bounds[2] = bound_t3(q, dn, rec.Z, cfg.epsilon);
            rec.bounds[3] = bound_t4(q, dn, rec.Z, cfg.epsilon);
            break;
        case FamilyKind::Custom: break;
    }
    for (std::size_t k = 0; k < 3; ++k)
        if (rec.bounds[k] && *rec.bounds[k] > 0.0) rec.ratios[k] = rec.lhs / *rec.bounds[k];

    if (kind == FamilyKind::SquareNorm && rec.bounds[3] && *rec.bounds[3] > 0.0) {
        try {
            double mult = 0.0;
            for (const auto& w : windows) mult += multiplicative_lhs(w, coeffs);
            rec.ratios[3] = mult / *rec.bounds[3];
        } catch (const std::out_of_range&) {
            rec.note = "ratioT4 skipped: character tables capped at norm " + std::to_string(kCharacterNormCap);
        }
    }
    if (cfg.timings)
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

namespace detail {
inline int family_rank(FamilyKind k) { return static_cast<int>(k); }

inline bool record_less(const SieveRecord& a, const SieveRecord& b) {
    return std::tuple(family_rank(a.family), a.Q, a.N, a.order, a.coeff) <
           std::tuple(family_rank(b.family), b.Q, b.N, b.order, b.coeff);
}
}  // namespace detail

// One record per (family, Q, N, coefficient spec), sorted by that key.
inline std::vector<SieveRecord> run_sieve_grid(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Cell {
        FamilyKind family;
        double q;
        Int n;
        std::size_t spec;
    };
    std::vector<Cell> cells;
    for (FamilyKind f : cfg.families)
        for (double q : cfg.q_values)
            for (Int n : cfg.n_values)
                for (std::size_t s = 0; s < cfg.coeffs.size(); ++s) cells.push_back({f, q, n, s});

    std::vector<SieveRecord> out(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                const Cell& c = cells[i];
                out[i] = evaluate_cell(c.family, c.q, c.n, cfg.coeffs[c.spec], cfg);
                out[i].order = c.spec;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), cells.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    std::stable_sort(out.begin(), out.end(), detail::record_less);
    return out;
}

// Shortest round-trip decimal form, so output is stable and diffable.
inline std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

inline constexpr const char* kCsvHeader =
    "family,Q,N,coeff,mode,epsilon,lhs,Z,boundT1,boundT2,boundT3,boundT4,ratioT1,ratioT2,ratioT3,ratioT4,elapsed_ms";

inline void write_csv(std::ostream& os, const std::vector<SieveRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << to_string(r.family) << ',' << format_number(r.Q) << ',' << r.N << ',' << r.coeff << ',' << to_string(r.mode) << ','
           << format_number(r.epsilon) << ',' << format_number(r.lhs) << ',' << format_number(r.Z);
        for (const auto& b : r.bounds) os << ',' << format_optional(b);
        for (const auto& x : r.ratios) os << ',' << format_optional(x);
        os << ',' << format_optional(r.elapsed_ms) << '\n';
    }
}

inline json to_json(const SieveRecord& r) {
    auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
    json j = {{"family", to_string(r.family)}, {"Q", r.Q},         {"N", r.N},       {"coeff", r.coeff},
              {"mode", to_string(r.mode)},     {"epsilon", r.epsilon}, {"lhs", r.lhs}, {"Z", r.Z}};
    static const char* bound_keys[] = {"boundT1", "boundT2", "boundT3", "boundT4"};
    static const char* ratio_keys[] = {"ratioT1", "ratioT2", "ratioT3", "ratioT4"};
    for (std::size_t k = 0; k < 4; ++k) {
        j[bound_keys[k]] = opt(r.bounds[k]);
        j[ratio_keys[k]] = opt(r.ratios[k]);
    }
    j["elapsed_ms"] = opt(r.elapsed_ms);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline void write_json(std::ostream& os, const std::vector<SieveRecord>& records) {
    json rows = json::array();
    for (const auto& r : records) rows.push_back(to_json(r));
    os << json{{"records", rows}}.dump(2) << '\n';
}

inline void write_records(const std::string& path, const std::vector<SieveRecord>& records, OutputFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (format == OutputFormat::Csv) write_csv(out, records);
    else write_json(out, records);
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct SlopeFit {
    std::string family;
    std::string coeff;
    std::string bound;  // which ratio column was fitted
    double slope_q = 0.0;
    double slope_n = 0.0;
    double max_ratio = 0.0;
    std::size_t points = 0;
};

// Least squares log(ratio) = c + a log Q + b log N over the rows of one group.
inline SlopeFit fit_slopes(const std::vector<double>& qs, const std::vector<double>& ns, const std::vector<double>& ratios) {
    const auto distinct = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
    };
    if (qs.size() != ns.size() || qs.size() != ratios.size()) throw std::invalid_argument("mismatched slope inputs");
    if (distinct(qs) < 2 || distinct(ns) < 2) throw std::invalid_argument("degenerate grid: need at least two distinct Q and N values");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(qs.size()), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(qs.size()));
    SlopeFit fit;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (!(ratios[i] > 0.0)) throw std::invalid_argument("ratios must be positive for a log-log fit");
        const auto r = static_cast<Eigen::Index>(i);
        a(r, 0) = 1.0;
        a(r, 1) = std::log(qs[i]);
        a(r, 2) = std::log(ns[i]);
        y(r) = std::log(ratios[i]);
        fit.max_ratio = std::max(fit.max_ratio, ratios[i]);
    }
    const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(y);
    fit.slope_q = coef(1);
    fit.slope_n = coef(2);
    fit.points = qs.size();
    return fit;
}

// Per (family, coefficient spec): slopes of the family's own ratio column.
inline std::vector<SlopeFit> slope_report(const std::vector<SieveRecord>& records) {
    std::map<std::tuple<int, std::string>, std::vector<const SieveRecord*>> groups;
    for (const auto& r : records) groups[{detail::family_rank(r.family), r.coeff}].push_back(&r);
    std::vector<SlopeFit> out;
    for (const auto& [key, rows] : groups) {
        const FamilyKind kind = rows.front()->family;
        const std::size_t col = kind == FamilyKind::AllGaussian ? 0 : kind == FamilyKind::NaturalIntegers ? 1 : 2;
        std::vector<double> qs, ns, ratios;
        for (const auto* r : rows) {
            if (!r->ratios[col]) continue;
            qs.push_back(r->Q);
            ns.push_back(static_cast<double>(r->N));
            ratios.push_back(*r->ratios[col]);
        }
        SlopeFit fit = fit_slopes(qs, ns, ratios);
        fit.family = to_string(kind);
        fit.coeff = std::get<1>(key);
        fit.bound = "T" + std::to_string(col + 1);
        out.push_back(fit);
    }
    return out;
}

inline json to_json(const SlopeFit& s) {
    return {{"family", s.family}, {"coeff", s.coeff},         {"bound", s.bound},     {"slope_Q", s.slope_q},
            {"slope_N", s.slope_n}, {"max_ratio", s.max_ratio}, {"points", s.points}};
}

// Config file keys mirror the CLI flags; anything absent keeps its default.
inline CoeffSpec parse_coeff_spec(const json& j) {
    if (j.is_string()) return CoeffSpec{parse_coeff_kind(j.get<std::string>())};
    CoeffSpec spec;
    spec.kind = parse_coeff_kind(j.at("kind").get<std::string>());
    if (j.contains("n0")) spec.delta_at = {j["n0"].at(0).get<Int>(), j["n0"].at(1).get<Int>()};
    if (j.contains("q0")) spec.progression_modulus = {j["q0"].at(0).get<Int>(), j["q0"].at(1).get<Int>()};
    return spec;
}

inline ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    if (j.contains("families")) {
        cfg.families.clear();
        for (const auto& f : j["families"]) cfg.families.push_back(parse_family_kind(f.get<std::string>()));
    }
    if (j.contains("Q")) cfg.q_values = j["Q"].get<std::vector<double>>();
    if (j.contains("N")) cfg.n_values = j["N"].get<std::vector<Int>>();
    if (j.contains("coeff")) {
        cfg.coeffs.clear();
        for (const auto& c : j["coeff"]) cfg.coeffs.push_back(parse_coeff_spec(c));
    }
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("mode")) cfg.mode = parse_mode(j["mode"].get<std::string>());
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("format")) cfg.format = parse_format(j["format"].get<std::string>());
    if (j.contains("out")) cfg.output_path = j["out"].get<std::string>();
    if (j.contains("timings")) cfg.timings = j["timings"].get<bool>();
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config: " + path);
    try {
        return parse_config(json::parse(in));
    } catch (const json::exception& e) {
        throw std::invalid_argument("bad config " + path + ": " + e.what());
    }
}

}  // namespace gls
