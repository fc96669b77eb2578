#include "esec/chain.hpp"

#include "esec/parallel.hpp"
#include "esec/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace esec {

ChainMode chain_mode_from_string(const std::string& s) {
    if (s == "esec") return ChainMode::Esec;
    if (s == "sec") return ChainMode::Sec;
    if (s == "none") return ChainMode::None;
    throw std::invalid_argument("unknown chain mode: " + s + " (expected esec|sec|none)");
}

std::string to_string(ChainMode m) {
    switch (m) {
        case ChainMode::Esec: return "esec";
        case ChainMode::Sec: return "sec";
        case ChainMode::None: return "none";
    }
    return "?";
}

ChainTimeline schedule_chain(const std::vector<std::pair<double, double>>& dur_pred,
                             const std::vector<std::string>& names) {
    if (dur_pred.empty()) throw std::invalid_argument("empty action sequence");
    ChainTimeline tl;
    tl.actions.reserve(dur_pred.size());

    for (std::size_t k = 0; k < dur_pred.size(); ++k) {
        const auto [dur, pred] = dur_pred[k];
        if (!(dur > 0.0)) throw std::invalid_argument("non-positive action duration");
        if (pred > dur) throw std::invalid_argument("prediction moment exceeds action duration");

        ScheduledAction a;
        a.name = k < names.size() ? names[k] : "action" + std::to_string(k + 1);
        a.agent = static_cast<int>(k % 2);
        a.prediction = pred;
        if (k == 0) {
            a.start = 0.0;
        } else {
            // Gated by the running action's prediction moment and by this
            // agent's own previous action (two actions back).
            const double ready = tl.actions[k - 1].start + dur_pred[k - 1].second;
            const double own_free = k >= 2 ? tl.actions[k - 2].end : 0.0;
            a.start = std::max(ready, own_free);
        }
        a.end = a.start + dur;
        tl.total_unchained += dur;
        tl.actions.push_back(a);
    }
    tl.completion = tl.actions.back().end;
    tl.savings = tl.total_unchained - tl.completion;
    tl.p_chain = (1.0 - tl.completion / tl.total_unchained) * 100.0;
    return tl;
}

namespace {

const ActionTiming& find_timing(const std::vector<ActionTiming>& timings, const std::string& name) {
    for (const auto& t : timings)
        if (t.name == name) return t;
    throw std::invalid_argument("unknown action name: " + name);
}

double pred_of(const ActionTiming& t, ChainMode mode) {
    switch (mode) {
        case ChainMode::Esec: return t.esec_mean;
        case ChainMode::Sec: return t.sec_mean;
        case ChainMode::None: return t.dur_mean;
    }
    return t.dur_mean;
}

} // namespace

ChainTimeline schedule_chain(const std::vector<ActionTiming>& timings,
                             const std::vector<std::string>& order, ChainMode mode) {
    std::vector<std::pair<double, double>> dur_pred;
    std::vector<std::string> names;
    for (const auto& name : order) {
        const ActionTiming& t = find_timing(timings, name);
        dur_pred.emplace_back(t.dur_mean, std::min(pred_of(t, mode), t.dur_mean));
        names.push_back(t.name);
    }
    return schedule_chain(dur_pred, names);
}

McStats monte_carlo(const std::vector<ActionTiming>& table, ChainMode mode, int base_samples,
                    std::uint64_t seed, int jobs, bool keep_per_permutation) {
    if (table.size() != 5) throw std::invalid_argument("timing table must hold exactly 5 actions");
    if (base_samples < 1) throw std::invalid_argument("base_samples must be >= 1");

    // All 120 permutations in lexicographic order.
    std::vector<std::array<int, 5>> perms;
    std::array<int, 5> idx{0, 1, 2, 3, 4};
    do {
        perms.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));

    struct Partial {
        double sum = 0.0;
        double sum_sq = 0.0;
        double sum_p = 0.0;
        std::map<int, std::uint64_t> hist;
        std::vector<double> perm_sum;
    };

    const auto n_samples = static_cast<std::size_t>(base_samples);
    std::vector<Partial> partials(n_samples);

    parallel_for(n_samples, jobs, [&](std::size_t s) {
        Rng rng = Rng::substream(seed, s);
        std::array<std::pair<double, double>, 5> draws; // (duration, prediction)
        for (std::size_t a = 0; a < 5; ++a) {
            const auto& t = table[a];
            const double dur = rng.truncated_normal(t.dur_mean, t.dur_sd, 1e-6, 1e9);
            // Both prediction columns are drawn from the same realization so
            // esec/sec/none runs on one seed stay comparable.
            const double esec_pred = rng.truncated_normal(t.esec_mean, t.esec_sd, 1e-9, dur);
            const double sec_pred = rng.truncated_normal(t.sec_mean, t.sec_sd, 1e-9, dur);
            double pred = dur;
            if (mode == ChainMode::Esec) pred = esec_pred;
            if (mode == ChainMode::Sec) pred = sec_pred;
            draws[a] = {dur, pred};
        }
        Partial& part = partials[s];
        if (keep_per_permutation) part.perm_sum.assign(perms.size(), 0.0);
        std::vector<std::pair<double, double>> seq(5);
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
            for (std::size_t a = 0; a < 5; ++a) seq[a] = draws[static_cast<std::size_t>(perms[pi][a])];
            const ChainTimeline tl = schedule_chain(seq);
            part.sum += tl.completion;
            part.sum_sq += tl.completion * tl.completion;
            part.sum_p += tl.p_chain;
            ++part.hist[static_cast<int>(std::floor(tl.completion))];
            if (keep_per_permutation) part.perm_sum[pi] += tl.completion;
        }
    });

    // Sequential reduce in sample order: identical output for any job count.
    McStats stats;
    stats.mode = mode;
    stats.seed = seed;
    stats.base_samples = base_samples;
    double sum = 0.0, sum_sq = 0.0, sum_p = 0.0;
    std::vector<double> perm_totals(keep_per_permutation ? perms.size() : 0, 0.0);
    for (const auto& part : partials) {
        sum += part.sum;
        sum_sq += part.sum_sq;
        sum_p += part.sum_p;
        for (const auto& [bin, count] : part.hist) stats.histogram[bin] += count;
        for (std::size_t pi = 0; pi < perm_totals.size(); ++pi) perm_totals[pi] += part.perm_sum[pi];
    }
    stats.cases = static_cast<std::uint64_t>(base_samples) * perms.size();
    const double n = static_cast<double>(stats.cases);
    stats.mean_completion = sum / n;
    const double var = std::max(0.0, sum_sq / n - stats.mean_completion * stats.mean_completion);
    stats.sd_completion = std::sqrt(var);
    stats.mean_p_chain = sum_p / n;
    if (keep_per_permutation) {
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
            std::vector<int> key(perms[pi].begin(), perms[pi].end());
            stats.per_permutation_mean[key] = perm_totals[pi] / static_cast<double>(base_samples);
        }
    }
    return stats;
}

std::string histogram_to_csv(const McStats& stats) {
    std::ostringstream out;
    out << "bin_start,count\n";
    for (const auto& [bin, count] : stats.histogram) out << bin << ',' << count << '\n';
    return out.str();
}

std::string stats_to_json(const McStats& stats) {
    json j;
    j["mode"] = to_string(stats.mode);
    j["seed"] = stats.seed;
    j["base_samples"] = stats.base_samples;
    j["cases"] = stats.cases;
    j["mean_completion"] = stats.mean_completion;
    j["sd_completion"] = stats.sd_completion;
    j["mean_p_chain"] = stats.mean_p_chain;
    return j.dump(2);
}

std::string timeline_to_json(const ChainTimeline& t) {
    json j;
    json actions = json::array();
    for (const auto& a : t.actions) {
        json ja;
        ja["name"] = a.name;
        ja["agent"] = a.agent == 0 ? "A" : "B";
        ja["start"] = a.start;
        ja["end"] = a.end;
        ja["prediction_moment"] = a.prediction;
        actions.push_back(ja);
    }
    j["actions"] = actions;
    j["completion"] = t.completion;
    j["total_unchained"] = t.total_unchained;
    j["savings"] = t.savings;
    j["p_chain"] = t.p_chain;
    return j.dump(2);
}

std::vector<ActionTiming> timing_table_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<ActionTiming> table;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("name,", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        std::istringstream ls(line);
        std::string cell;
        ActionTiming t;
        auto next = [&]() {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("short timing-table row: " + line);
            return cell;
        };
        t.name = next();
        t.dur_mean = std::stod(next());
        t.dur_sd = std::stod(next());
        t.esec_mean = std::stod(next());
        t.esec_sd = std::stod(next());
        t.sec_mean = std::stod(next());
        t.sec_sd = std::stod(next());
        table.push_back(t);
    }
    if (table.empty()) throw std::runtime_error("empty timing table");
    return table;
}

std::vector<ActionTiming> load_timing_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open timing table: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return timing_table_from_csv(ss.str());
}

std::vector<std::string> resolve_order(const std::vector<ActionTiming>& table, const std::string& spec) {
    std::vector<std::string> order;
    std::istringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) {
        // Trim spaces.
        const auto b = token.find_first_not_of(" \t");
        const auto e = token.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        token = token.substr(b, e - b + 1);
        const ActionTiming* match = nullptr;
        for (const auto& t : table) {
            if (t.name == token) {
                match = &t;
                break;
            }
            if (t.name.rfind(token, 0) == 0) {
                if (match) throw std::invalid_argument("ambiguous action name: " + token);
                match = &t;
            }
        }
        if (!match) throw std::invalid_argument("unknown action name: " + token);
        order.push_back(match->name);
    }
    if (order.empty()) throw std::invalid_argument("empty action order");
    return order;
}

} // namespace esec
