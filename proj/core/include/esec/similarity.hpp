#pragma once

#include "esec/table.hpp"

#include <string>
#include <vector>

namespace esec {

struct SimilarityConfig {
    bool normalize = false;         // divide diff by sqrt(3) so Sim stays in [0, 100]
    bool clamp_nonnegative = false; // clamp the final percentage at 0
};

/// Similarity percentage of two event chains.
///
/// The shorter table is padded by repeating its last column to p = max(n, m)
/// columns. Per pair row i and column j, D1/D2/D3 flag cell differences in
/// the touching, static and dynamic sub-tables, diff = sqrt(D1 + D2 + D3),
/// Dis is the mean over the 10*p slots and Sim = (1 - Dis) * 100. The
/// paper-literal value may be negative (lower bound (1 - sqrt(3)) * 100).
double esec_similarity(const Esec& a, const Esec& b, const SimilarityConfig& cfg = {});

/// Same positional measure on the touching sub-table alone (D2 = D3 = 0).
double sec_similarity(const Sec& a, const Sec& b, const SimilarityConfig& cfg = {});

/// Prefix variants used by the causal predictor: both tables are truncated
/// to their first k columns before the padded comparison, without copying.
double esec_similarity_prefix(const Esec& a, const Esec& b, std::size_t k,
                              const SimilarityConfig& cfg = {});
double sec_similarity_prefix(const Sec& a, const Sec& b, std::size_t k,
                             const SimilarityConfig& cfg = {});

struct SimilarityMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values; // symmetric, diagonal 100

    double at(std::size_t i, std::size_t j) const { return values[i][j]; }
    std::size_t size() const { return labels.size(); }
};

/// All-pairs similarity; each unordered pair computed once. Throws on
/// duplicate labels or an empty item list.
SimilarityMatrix similarity_matrix(const std::vector<Esec>& items,
                                   const std::vector<std::string>& labels,
                                   const SimilarityConfig& cfg = {}, int jobs = 1);

std::string matrix_to_csv(const SimilarityMatrix& m);
SimilarityMatrix matrix_from_csv(const std::string& text);
void save_matrix(const SimilarityMatrix& m, const std::string& path);
SimilarityMatrix load_matrix(const std::string& path);

} // namespace esec
