#pragma once

#include "esec/similarity.hpp"
#include "esec/table.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace esec {

/// Exemplar chains grouped by action class.
struct ReferenceLibrary {
    std::map<std::string, std::vector<Esec>> classes;

    std::size_t class_count() const { return classes.size(); }
};

struct PredictorConfig {
    int refs_per_class = 20;    // exemplars sampled per class
    double margin = 20.0;       // Sim points between best and second-best class mean
    std::uint64_t seed = 1;
    int persistence = 1;        // consecutive columns the margin must hold
    SimilarityConfig similarity{};
    bool use_sec = false;       // compare touching sub-tables only
};

/// Per-column class means, recorded for every processed prefix length.
struct TracePoint {
    int column = 0; // 0-based index of the newest column in the prefix
    double t = 0.0; // its timestamp relative to the action start
    std::map<std::string, double> class_mean_sim;
};

struct Prediction {
    std::optional<std::string> predicted; // nullopt: margin never reached
    std::optional<std::string> label;     // query ground truth if known
    int column = -1;                      // 0-based firing column
    double T = 0.0;                       // prediction moment, seconds from action start
    double Tot = 0.0;                     // total action time
    double P = 0.0;                       // predictive power
    std::vector<TracePoint> trace;
};

/// P = (1 - T/Tot) * 100. Throws for T outside [0, Tot] or Tot <= 0.
double predictive_power(double T, double Tot);

/// Causal prediction: as the query's columns arrive one by one, compare the
/// prefix to equally truncated references sampled per class and declare the
/// class once the best mean exceeds the runner-up by the margin.
/// `exclude` removes one library exemplar (class, index) from its own sample
/// for leave-self-out runs.
Prediction predict(const Esec& query, const ReferenceLibrary& library, const PredictorConfig& cfg,
                   std::optional<std::pair<std::string, std::size_t>> exclude = std::nullopt);

/// Leave-self-out sweep over the whole library.
struct BenchResult {
    struct Row {
        std::string label;
        std::string file;
        Prediction prediction;
    };
    std::vector<Row> rows;
    std::map<std::string, double> mean_p_per_class;
    std::map<std::string, int> errors_per_class; // wrong or missing prediction
    std::map<std::pair<std::string, std::string>, int> confusion;
    int correct = 0;
    int total = 0;
};

BenchResult bench_predict(const ReferenceLibrary& library, const PredictorConfig& cfg, int jobs = 1);

/// Load every *.json event chain below a directory into a library keyed by label.
ReferenceLibrary load_library(const std::string& dir);

} // namespace esec
