#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace esec {

/// Per-action timing statistics (seconds), one row of the timing table.
struct ActionTiming {
    std::string name;
    double dur_mean = 0.0;
    double dur_sd = 0.0;
    double esec_mean = 0.0;
    double esec_sd = 0.0;
    double sec_mean = 0.0;
    double sec_sd = 0.0;
};

enum class ChainMode { Esec, Sec, None };

ChainMode chain_mode_from_string(const std::string& s);
std::string to_string(ChainMode m);

struct ScheduledAction {
    std::string name;
    int agent = 0; // 0/1, alternating
    double start = 0.0;
    double end = 0.0;
    double prediction = 0.0; // moment (relative to start) the next agent may go
};

/// Interleaved two-agent timeline.
struct ChainTimeline {
    std::vector<ScheduledAction> actions;
    double completion = 0.0;      // end of the last action
    double total_unchained = 0.0; // plain sum of durations
    double savings = 0.0;         // total_unchained - completion
    double p_chain = 0.0;         // (1 - completion/total_unchained) * 100
};

/// Schedule alternating agents: each action starts once the previous action's
/// prediction moment has passed and the acting agent's own previous action
/// has finished. Throws if any prediction moment exceeds its duration.
ChainTimeline schedule_chain(const std::vector<std::pair<double, double>>& dur_pred,
                             const std::vector<std::string>& names = {});

/// Convenience wrapper: pick the prediction column for the mode
/// (None uses the full duration, i.e. no prediction).
ChainTimeline schedule_chain(const std::vector<ActionTiming>& timings,
                             const std::vector<std::string>& order, ChainMode mode);

struct McStats {
    std::map<int, std::uint64_t> histogram; // completion-time counts, 1 s bins keyed by floor(t)
    double mean_completion = 0.0;
    double sd_completion = 0.0;
    double mean_p_chain = 0.0;
    std::uint64_t cases = 0;
    ChainMode mode = ChainMode::None;
    std::uint64_t seed = 0;
    int base_samples = 0;
    std::map<std::vector<int>, double> per_permutation_mean; // optional, filled on request
};

/// Monte-Carlo chaining study: per base sample draw (duration, prediction)
/// per action from truncated normals, then evaluate every permutation of the
/// five actions. Per-case substreams keyed by (seed, sample) make the result
/// independent of evaluation order and job count.
McStats monte_carlo(const std::vector<ActionTiming>& table, ChainMode mode, int base_samples,
                    std::uint64_t seed, int jobs = 1, bool keep_per_permutation = false);

std::string histogram_to_csv(const McStats& stats);
std::string stats_to_json(const McStats& stats);
std::string timeline_to_json(const ChainTimeline& t);

/// Timing-table CSV: name,dur_mean,dur_sd,esec_mean,esec_sd,sec_mean,sec_sd.
std::vector<ActionTiming> load_timing_table(const std::string& path);
std::vector<ActionTiming> timing_table_from_csv(const std::string& text);

/// Resolve a comma-separated order spec against table names; unambiguous
/// prefixes are accepted (take == take_down, put == put_on_top).
std::vector<std::string> resolve_order(const std::vector<ActionTiming>& table, const std::string& spec);

} // namespace esec
