#include "esec/similarity.hpp"

#include "esec/parallel.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace esec {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double finish(double dis_sum, std::size_t slots, const SimilarityConfig& cfg) {
    const double dis = dis_sum / static_cast<double>(slots);
    double sim = (1.0 - dis) * 100.0;
    if (cfg.clamp_nonnegative && sim < 0.0) sim = 0.0;
    return sim;
}

} // namespace

double esec_similarity_prefix(const Esec& a, const Esec& b, std::size_t k,
                              const SimilarityConfig& cfg) {
    const std::size_t n = std::min(a.columns.size(), k);
    const std::size_t m = std::min(b.columns.size(), k);
    if (n == 0 || m == 0) throw std::invalid_argument("empty event chain table");
    const std::size_t p = std::max(n, m);

    double sum = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const EsecColumn& ca = a.columns[std::min(j, n - 1)]; // repeat last column of the smaller matrix
        const EsecColumn& cb = b.columns[std::min(j, m - 1)];
        for (std::size_t i = 0; i < kPairCount; ++i) {
            int d = 0;
            if (ca.tn[i] != cb.tn[i]) ++d;
            if (ca.ssr[i] != cb.ssr[i]) ++d;
            if (ca.dsr[i] != cb.dsr[i]) ++d;
            if (d == 0) continue;
            double diff = std::sqrt(static_cast<double>(d));
            if (cfg.normalize) diff /= kSqrt3;
            sum += diff;
        }
    }
    return finish(sum, kPairCount * p, cfg);
}

double esec_similarity(const Esec& a, const Esec& b, const SimilarityConfig& cfg) {
    return esec_similarity_prefix(a, b, std::max(a.columns.size(), b.columns.size()), cfg);
}

double sec_similarity_prefix(const Sec& a, const Sec& b, std::size_t k, const SimilarityConfig& cfg) {
    const std::size_t n = std::min(a.columns.size(), k);
    const std::size_t m = std::min(b.columns.size(), k);
    if (n == 0 || m == 0) throw std::invalid_argument("empty event chain table");
    const std::size_t p = std::max(n, m);

    double sum = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const SecColumn& ca = a.columns[std::min(j, n - 1)];
        const SecColumn& cb = b.columns[std::min(j, m - 1)];
        for (std::size_t i = 0; i < kPairCount; ++i) {
            if (ca.tn[i] != cb.tn[i]) sum += cfg.normalize ? 1.0 / kSqrt3 : 1.0;
        }
    }
    return finish(sum, kPairCount * p, cfg);
}

double sec_similarity(const Sec& a, const Sec& b, const SimilarityConfig& cfg) {
    return sec_similarity_prefix(a, b, std::max(a.columns.size(), b.columns.size()), cfg);
}

SimilarityMatrix similarity_matrix(const std::vector<Esec>& items,
                                   const std::vector<std::string>& labels,
                                   const SimilarityConfig& cfg, int jobs) {
    if (items.empty()) throw std::invalid_argument("similarity matrix needs at least one item");
    if (labels.size() != items.size()) throw std::invalid_argument("label count does not match item count");
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second) throw std::invalid_argument("duplicate label: " + l);

    const std::size_t n = items.size();
    SimilarityMatrix m;
    m.labels = labels;
    m.values.assign(n, std::vector<double>(n, 100.0));

    // One task per unordered pair; slot writes keep any schedule bit-identical.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    parallel_for(pairs.size(), jobs, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const double s = esec_similarity(items[i], items[j], cfg);
        m.values[i][j] = s;
        m.values[j][i] = s;
    });
    return m;
}

std::string matrix_to_csv(const SimilarityMatrix& m) {
    std::ostringstream out;
    out.precision(10);
    out << "label";
    for (const auto& l : m.labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.labels[i];
        for (std::size_t j = 0; j < m.size(); ++j) out << ',' << m.values[i][j];
        out << '\n';
    }
    return out.str();
}

SimilarityMatrix matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty matrix file");
    SimilarityMatrix m;
    {
        std::istringstream hs(line);
        std::string cell;
        bool first = true;
        while (std::getline(hs, cell, ',')) {
            if (first) {
                first = false;
                continue;
            }
            m.labels.push_back(cell);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ','); // row label
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != m.labels.size()) throw std::runtime_error("ragged matrix row");
        m.values.push_back(std::move(row));
    }
    if (m.values.size() != m.labels.size()) throw std::runtime_error("matrix row count does not match label count");
    return m;
}

void save_matrix(const SimilarityMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << matrix_to_csv(m);
}

SimilarityMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return matrix_from_csv(ss.str());
}

} // namespace esec
