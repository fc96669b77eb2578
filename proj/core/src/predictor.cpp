#include "esec/predictor.hpp"

#include "esec/parallel.hpp"
#include "esec/random.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <stdexcept>

namespace fs = std::filesystem;

namespace esec {

double predictive_power(double T, double Tot) {
    if (!(Tot > 0.0)) throw std::invalid_argument("total action time must be positive");
    if (T < 0.0 || T > Tot) throw std::invalid_argument("prediction moment outside [0, Tot]");
    return (1.0 - T / Tot) * 100.0;
}

namespace {

// Sample refs_per_class exemplar indices from a class pool: without
// replacement when enough exemplars exist, with replacement otherwise.
std::vector<std::size_t> sample_indices(Rng& rng, std::size_t pool, int want) {
    std::vector<std::size_t> out;
    if (pool == 0 || want <= 0) return out;
    const auto w = static_cast<std::size_t>(want);
    if (pool >= w) {
        std::vector<std::size_t> idx(pool);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = 0; i < w; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(pool - i));
            std::swap(idx[i], idx[j]);
        }
        out.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(w));
    } else {
        out.reserve(w);
        for (std::size_t i = 0; i < w; ++i) out.push_back(static_cast<std::size_t>(rng.below(pool)));
    }
    return out;
}

} // namespace

Prediction predict(const Esec& query, const ReferenceLibrary& library, const PredictorConfig& cfg,
                   std::optional<std::pair<std::string, std::size_t>> exclude) {
    if (library.class_count() < 2)
        throw std::invalid_argument("prediction undefined: library needs at least two classes");
    if (query.columns.empty()) throw std::invalid_argument("empty query table");

    // Deterministic reference sample: classes in sorted order, one stream.
    Rng rng(cfg.seed);
    std::map<std::string, std::vector<const Esec*>> sample;
    for (const auto& [name, members] : library.classes) {
        std::vector<const Esec*> pool;
        pool.reserve(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (exclude && exclude->first == name && exclude->second == i) continue;
            pool.push_back(&members[i]);
        }
        if (pool.empty()) continue;
        std::vector<const Esec*> chosen;
        for (std::size_t idx : sample_indices(rng, pool.size(), cfg.refs_per_class))
            chosen.push_back(pool[idx]);
        sample[name] = std::move(chosen);
    }
    if (sample.size() < 2)
        throw std::invalid_argument("prediction undefined: fewer than two sampled classes");

    Prediction out;
    out.label = query.label;
    out.Tot = query.total_time();

    // SEC mode projects everything down to the touching sub-table once.
    Sec sec_query;
    std::map<std::string, std::vector<Sec>> sec_sample;
    if (cfg.use_sec) {
        sec_query = project_sec(query);
        for (const auto& [name, members] : sample) {
            auto& v = sec_sample[name];
            v.reserve(members.size());
            for (const Esec* e : members) v.push_back(project_sec(*e));
        }
    }

    const std::size_t n_cols = cfg.use_sec ? sec_query.columns.size() : query.columns.size();
    int run = 0;
    std::string run_class;
    for (std::size_t k = 1; k <= n_cols; ++k) {
        TracePoint tp;
        tp.column = static_cast<int>(k) - 1;
        tp.t = (cfg.use_sec ? sec_query.columns[k - 1].t : query.columns[k - 1].t) - query.t_start;

        double best = -1e9, second = -1e9;
        std::string best_class;
        if (cfg.use_sec) {
            for (const auto& [name, members] : sec_sample) {
                double acc = 0.0;
                for (const Sec& ref : members) acc += sec_similarity_prefix(sec_query, ref, k, cfg.similarity);
                tp.class_mean_sim[name] = acc / static_cast<double>(members.size());
            }
        } else {
            for (const auto& [name, members] : sample) {
                double acc = 0.0;
                for (const Esec* ref : members) acc += esec_similarity_prefix(query, *ref, k, cfg.similarity);
                tp.class_mean_sim[name] = acc / static_cast<double>(members.size());
            }
        }
        for (const auto& [name, mean] : tp.class_mean_sim) {
            if (mean > best) {
                second = best;
                best = mean;
                best_class = name;
            } else if (mean > second) {
                second = mean;
            }
        }
        out.trace.push_back(tp);

        if (best - second >= cfg.margin) {
            if (run > 0 && run_class == best_class) {
                ++run;
            } else {
                run = 1;
                run_class = best_class;
            }
            if (run >= cfg.persistence) {
                out.predicted = best_class;
                out.column = static_cast<int>(k) - 1;
                out.T = tp.t;
                out.P = out.Tot > 0.0 ? predictive_power(std::clamp(out.T, 0.0, out.Tot), out.Tot) : 0.0;
                return out;
            }
        } else {
            run = 0;
            run_class.clear();
        }
    }
    return out; // margin never reached: no class, P = 0
}

BenchResult bench_predict(const ReferenceLibrary& library, const PredictorConfig& cfg, int jobs) {
    BenchResult res;
    std::vector<std::pair<std::string, std::size_t>> queries;
    for (const auto& [name, members] : library.classes)
        for (std::size_t i = 0; i < members.size(); ++i) queries.emplace_back(name, i);

    res.rows.resize(queries.size());
    parallel_for(queries.size(), jobs, [&](std::size_t qi) {
        const auto& [name, idx] = queries[qi];
        BenchResult::Row row;
        row.label = name;
        row.file = name + "#" + std::to_string(idx);
        row.prediction = predict(library.classes.at(name)[idx], library, cfg, queries[qi]);
        res.rows[qi] = std::move(row);
    });

    std::map<std::string, std::pair<double, int>> acc;
    for (const auto& row : res.rows) {
        ++res.total;
        acc[row.label].first += row.prediction.P;
        acc[row.label].second += 1;
        const std::string predicted = row.prediction.predicted.value_or("none");
        ++res.confusion[{row.label, predicted}];
        if (predicted == row.label) {
            ++res.correct;
        } else {
            ++res.errors_per_class[row.label];
        }
    }
    for (const auto& [name, sums] : acc)
        res.mean_p_per_class[name] = sums.first / static_cast<double>(sums.second);
    return res;
}

ReferenceLibrary load_library(const std::string& dir) {
    ReferenceLibrary lib;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        Esec e = load_esec(f.string());
        if (!e.label) throw std::runtime_error("event chain file without label: " + f.string());
        lib.classes[*e.label].push_back(std::move(e));
    }
    if (lib.classes.empty()) throw std::runtime_error("no event chain files found in " + dir);
    return lib;
}

} // namespace esec
