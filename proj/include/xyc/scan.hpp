#pragma once

// Dataset-producing front ends: phase-diagram grid scans, 1-d sweeps across
// the transition, the scaling-fit suite, and a flat key=value config format.
// Grid cells are evaluated concurrently into pre-indexed slots, so the output
// is byte-identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "xyc/complexity.hpp"
#include "xyc/model.hpp"
#include "xyc/scaling.hpp"

namespace xyc {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EvalMethod { series, polylog, automatic };
enum class ScanMode { complexity, lambda_contour };

inline EvalMethod parse_method(const std::string& s) {
    if (s == "series") return EvalMethod::series;
    if (s == "polylog") return EvalMethod::polylog;
    if (s == "auto") return EvalMethod::automatic;
    throw ConfigError("method: expected series|polylog|auto, got '" + s + "'");
}

inline ScanMode parse_mode(const std::string& s) {
    if (s == "complexity") return ScanMode::complexity;
    if (s == "lambda") return ScanMode::lambda_contour;
    throw ConfigError("mode: expected complexity|lambda, got '" + s + "'");
}

namespace detail {

template <class Fn>
void parallel_for(long count, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, 256));
    if (threads == 1 || count < 2) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count || failed.load()) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// flat key = value config files ('#' comments, blank lines ignored)

inline std::map<std::string, std::string> parse_flat_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        out[key] = value;
    }
    return out;
}

inline double config_double(const std::map<std::string, std::string>& kv,
                            const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + it->second + "'");
    }
}

inline long config_long(const std::map<std::string, std::string>& kv, const std::string& key,
                        long fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t pos = 0;
        const long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + it->second + "'");
    }
}

// ---------------------------------------------------------------------------
// grid scan

struct GridScanConfig {
    double reference_h = 0.1;
    double reference_gamma = 1.4;
    double h_min = 0.0, h_max = 1.5;
    int h_steps = 200;
    double gamma_min = 0.01, gamma_max = 2.0;
    int gamma_steps = 200;
    double penalty_l = 0.0;
    double penalty_beta = 0.0;
    EvalMethod method = EvalMethod::automatic;
    ScanMode mode = ScanMode::complexity;
    double tol = 1e-8;
    int threads = 1;
    long max_terms = 500'000;
    double critical_tol = 1e-12;

    void validate() const {
        if (h_steps < 2 || gamma_steps < 2)
            throw ConfigError("grid: need at least 2 steps per axis");
        if (!(h_min >= 0.0) || !(h_max > h_min))
            throw ConfigError("grid: require 0 <= h_min < h_max");
        if (!(gamma_min > 0.0) || !(gamma_max > gamma_min))
            throw ConfigError("grid: require 0 < gamma_min < gamma_max");
        if (!(tol > 0.0)) throw ConfigError("tol: must be > 0");
        if (!(critical_tol > 0.0)) throw ConfigError("critical_tol: must be > 0");
        if (penalty_l < 0.0 || !std::isfinite(penalty_l) || !std::isfinite(penalty_beta))
            throw ConfigError("penalty: l >= 0 and beta finite required");
        if (threads < 1) throw ConfigError("threads: must be >= 1");
        (void)ChainParams(reference_h, reference_gamma);
    }
};

enum class RecordKind { finite, divergent, critical };

struct ScanRecord {
    double h_t = 0.0, gamma_t = 0.0;
    PhaseRegion phase = PhaseRegion::OrderedNonOscillatory;
    double xi_max = 0.0;
    double margin = 0.0;
    RecordKind kind = RecordKind::finite;
    double value = 0.0;
    double error_bound = 0.0;
};

inline std::vector<ScanRecord> run_grid_scan(const GridScanConfig& cfg) {
    cfg.validate();
    const ChainParams reference(cfg.reference_h, cfg.reference_gamma);
    std::vector<double> hs(cfg.h_steps), gs(cfg.gamma_steps);
    for (int i = 0; i < cfg.h_steps; ++i)
        hs[i] = cfg.h_min + (cfg.h_max - cfg.h_min) * double(i) / double(cfg.h_steps - 1);
    for (int j = 0; j < cfg.gamma_steps; ++j)
        gs[j] = cfg.gamma_min +
                (cfg.gamma_max - cfg.gamma_min) * double(j) / double(cfg.gamma_steps - 1);

    std::vector<ScanRecord> records(size_t(cfg.h_steps) * size_t(cfg.gamma_steps));
    detail::parallel_for(long(records.size()), cfg.threads, [&](long idx) {
        const int i = int(idx / cfg.gamma_steps);
        const int j = int(idx % cfg.gamma_steps);
        const ChainParams target(hs[i], gs[j]);
        ScanRecord rec;
        rec.h_t = hs[i];
        rec.gamma_t = gs[j];
        rec.phase = classify_phase(target, cfg.critical_tol);
        if (rec.phase == PhaseRegion::CriticalLine) {
            rec.kind = RecordKind::critical;
            rec.xi_max = std::numeric_limits<double>::infinity();
            rec.margin = std::numeric_limits<double>::infinity();
            records[idx] = rec;
            return;
        }
        rec.xi_max = max_correlation_length(target);
        const StatePair pair{reference, target};
        const PenaltySpec penalty{cfg.penalty_l, cfg.penalty_beta};
        rec.margin = convergence_classify(pair, penalty).margin;
        if (cfg.mode == ScanMode::lambda_contour) {
            const double mag = std::abs(lambda_pair(target).plus);
            rec.value = target.h < 1.0 ? mag : 1.0 / mag;
            records[idx] = rec;
            return;
        }
        const ComplexityOutcome out =
            cfg.method == EvalMethod::series
                ? realspace_complexity_series(pair, penalty, cfg.tol, cfg.max_terms)
                : realspace_complexity_closed(pair, penalty, cfg.tol, cfg.max_terms);
        if (out.divergent) {
            rec.kind = RecordKind::divergent;
        } else {
            rec.value = out.value;
            rec.error_bound = out.error_bound;
        }
        records[idx] = rec;
    });
    return records;
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << "h_T,gamma_T,phase,xi_max,margin,value,error_bound\n";
    for (const ScanRecord& r : records) {
        os << detail::fmt(r.h_t) << ',' << detail::fmt(r.gamma_t) << ','
           << to_string(r.phase) << ',' << detail::fmt(r.xi_max) << ','
           << detail::fmt(r.margin) << ',';
        switch (r.kind) {
            case RecordKind::finite:
                os << detail::fmt(r.value) << ',' << detail::fmt(r.error_bound);
                break;
            case RecordKind::divergent: os << "div,0"; break;
            case RecordKind::critical: os << "crit,0"; break;
        }
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// line sweep across the transition (Fig.-4 style curves)

struct LineSweepConfig {
    double reference_h = 0.1;
    double reference_gamma = 1.1;
    double gamma_t = 1.1;
    double h_min = 0.5, h_max = 1.5;
    int h_steps = 101;
    std::vector<double> betas{0.0, 0.5, 1.0};
    double penalty_l = 0.0;
    EvalMethod method = EvalMethod::automatic;
    double tol = 1e-8;
    int threads = 1;
    long max_terms = 500'000;
    double critical_tol = 1e-9;

    void validate() const {
        if (h_steps < 2) throw ConfigError("line: need h_steps >= 2");
        if (!(h_min >= 0.0) || !(h_max > h_min))
            throw ConfigError("line: require 0 <= h_min < h_max");
        if (!(gamma_t > 0.0)) throw ConfigError("line: gamma_t must be > 0");
        if (betas.empty()) throw ConfigError("line: need at least one beta");
        if (!(tol > 0.0)) throw ConfigError("tol: must be > 0");
        if (penalty_l < 0.0) throw ConfigError("penalty: l must be >= 0");
        if (h_min < 1.0 && h_max > 1.0 && penalty_l != 0.0)
            throw ConfigError("line: l = 0 is required when the sweep crosses h_T = 1");
        if (threads < 1) throw ConfigError("threads: must be >= 1");
        (void)ChainParams(reference_h, reference_gamma);
    }
};

struct LineRecord {
    double beta = 0.0;
    double h_t = 0.0;
    RecordKind kind = RecordKind::finite;
    double value = 0.0;
    double error_bound = 0.0;
};

inline std::vector<LineRecord> run_line_sweep(const LineSweepConfig& cfg) {
    cfg.validate();
    const ChainParams reference(cfg.reference_h, cfg.reference_gamma);
    std::vector<double> hs(cfg.h_steps);
    for (int i = 0; i < cfg.h_steps; ++i)
        hs[i] = cfg.h_min + (cfg.h_max - cfg.h_min) * double(i) / double(cfg.h_steps - 1);

    std::vector<LineRecord> records(cfg.betas.size() * hs.size());
    detail::parallel_for(long(records.size()), cfg.threads, [&](long idx) {
        const size_t b = size_t(idx) / hs.size();
        const size_t i = size_t(idx) % hs.size();
        LineRecord rec;
        rec.beta = cfg.betas[b];
        rec.h_t = hs[i];
        // points at the transition itself are skipped and marked
        if (std::abs(hs[i] - 1.0) <= cfg.critical_tol) {
            rec.kind = RecordKind::critical;
            records[idx] = rec;
            return;
        }
        const StatePair pair{reference, ChainParams(hs[i], cfg.gamma_t)};
        const PenaltySpec penalty{cfg.penalty_l, cfg.betas[b]};
        const ComplexityOutcome out =
            cfg.method == EvalMethod::series
                ? realspace_complexity_series(pair, penalty, cfg.tol, cfg.max_terms)
                : realspace_complexity_closed(pair, penalty, cfg.tol, cfg.max_terms);
        if (out.divergent) {
            rec.kind = RecordKind::divergent;
        } else {
            rec.value = out.value;
            rec.error_bound = out.error_bound;
        }
        records[idx] = rec;
    });
    return records;
}

inline void write_line_csv(std::ostream& os, const std::vector<LineRecord>& records) {
    os << "h_T,beta,value,error\n";
    for (const LineRecord& r : records) {
        os << detail::fmt(r.h_t) << ',' << detail::fmt(r.beta) << ',';
        switch (r.kind) {
            case RecordKind::finite:
                os << detail::fmt(r.value) << ',' << detail::fmt(r.error_bound);
                break;
            case RecordKind::divergent: os << "div,0"; break;
            case RecordKind::critical: os << "crit,0"; break;
        }
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// scaling suite

struct ScalingSuiteConfig {
    double reference_h = 0.1;
    double reference_gamma = 1.1;
    double gamma_t = 1.1;
    std::vector<double> betas{0.0, 0.5, 1.0};
    double eps_min = 1e-4, eps_max = 1e-2;
    int eps_count = 12;
    bool synthetic = false;  // values from scaling_prediction + constant
    double tol = 1e-9;
    double threshold_beta0 = 0.02;
    double threshold_beta1 = 0.02;
    double threshold_non_integer = 0.05;

    void validate() const {
        if (!(eps_min > 0.0) || !(eps_max > eps_min) || eps_max > 0.2)
            throw ConfigError("scaling.eps: require 0 < eps_min < eps_max <= 0.2");
        if (eps_count < 8) throw ConfigError("scaling.eps_count: need >= 8 samples");
        if (betas.empty()) throw ConfigError("scaling.betas: need at least one beta");
        if (!(tol > 0.0)) throw ConfigError("tol: must be > 0");
        if (!(gamma_t > 0.0)) throw ConfigError("scaling.gamma_t: must be > 0");
        (void)ChainParams(reference_h, reference_gamma);
    }

    std::vector<double> epsilon_grid() const {
        std::vector<double> eps(eps_count);
        for (int i = 0; i < eps_count; ++i)
            eps[i] = eps_min * std::pow(eps_max / eps_min, double(i) / double(eps_count - 1));
        return eps;
    }
};

struct ScalingSuiteEntry {
    double beta = 0.0;
    ScalingFit fit{};
    double threshold = 0.0;
    bool pass = false;
    std::vector<std::pair<double, double>> samples;  // (eps, value)
};

struct ScalingSuiteReport {
    std::vector<ScalingSuiteEntry> entries;
    bool all_pass = true;
};

inline std::vector<std::pair<double, double>> scaling_samples(const ChainParams& reference,
                                                              double gamma_t, double beta,
                                                              const std::vector<double>& eps,
                                                              double tol) {
    std::vector<std::pair<double, double>> out;
    out.reserve(eps.size());
    for (double e : eps) {
        const StatePair pair{reference, ChainParams(1.0 - e, gamma_t)};
        const long cap = std::max<long>(100'000, long(50.0 / e));
        const ComplexityOutcome c =
            realspace_complexity_series(pair, PenaltySpec{0.0, beta}, tol, cap);
        if (c.divergent)
            throw std::runtime_error("scaling_samples: unexpected divergence at eps = " +
                                     std::to_string(e));
        out.emplace_back(e, c.value);
    }
    return out;
}

inline ScalingSuiteReport run_scaling_suite(const ScalingSuiteConfig& cfg) {
    cfg.validate();
    const ChainParams reference(cfg.reference_h, cfg.reference_gamma);
    const std::vector<double> eps = cfg.epsilon_grid();
    ScalingSuiteReport report;
    for (double beta : cfg.betas) {
        ScalingSuiteEntry entry;
        entry.beta = beta;
        const ScalingProbe probe(reference, cfg.gamma_t, eps, beta);
        if (cfg.synthetic) {
            for (double e : eps)
                entry.samples.emplace_back(e, scaling_prediction(beta, cfg.gamma_t, e) + 0.75);
        } else {
            entry.samples = scaling_samples(reference, cfg.gamma_t, beta, eps, cfg.tol);
        }
        entry.fit = scaling_fit(probe, entry.samples);
        switch (entry.fit.beta_class) {
            case BetaClass::zero: entry.threshold = cfg.threshold_beta0; break;
            case BetaClass::one: entry.threshold = cfg.threshold_beta1; break;
            case BetaClass::non_integer: entry.threshold = cfg.threshold_non_integer; break;
        }
        entry.pass = entry.fit.relative_deviation <= entry.threshold;
        report.all_pass = report.all_pass && entry.pass;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace xyc
