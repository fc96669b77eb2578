#include "esec/clustering.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace esec {

namespace {

struct Cluster {
    std::unique_ptr<DendrogramNode> node;
    std::vector<int> members;
    bool active = true;
};

double merge_distance(Linkage linkage, double d_ac, double d_bc, std::size_t na, std::size_t nb) {
    switch (linkage) {
        case Linkage::Single: return std::min(d_ac, d_bc);
        case Linkage::Complete: return std::max(d_ac, d_bc);
        case Linkage::Average:
            return (d_ac * static_cast<double>(na) + d_bc * static_cast<double>(nb)) /
                   static_cast<double>(na + nb);
    }
    return d_ac;
}

void collect_flat(const DendrogramNode* node, double threshold, std::vector<std::vector<int>>& out) {
    if (!node) return;
    if (node->leaf()) {
        out.push_back({node->item});
        return;
    }
    if (node->height <= threshold) {
        // Whole subtree merged below the cut: one flat cluster.
        std::vector<int> members;
        std::vector<const DendrogramNode*> stack = {node};
        while (!stack.empty()) {
            const DendrogramNode* n = stack.back();
            stack.pop_back();
            if (n->leaf()) {
                members.push_back(n->item);
            } else {
                stack.push_back(n->left.get());
                stack.push_back(n->right.get());
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
        return;
    }
    collect_flat(node->left.get(), threshold, out);
    collect_flat(node->right.get(), threshold, out);
}

} // namespace

Dendrogram cluster_dendrogram(const SimilarityMatrix& matrix, double threshold, Linkage linkage) {
    const std::size_t n = matrix.size();
    if (n == 0) throw std::invalid_argument("empty similarity matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix.values[i].size() != n) throw std::invalid_argument("similarity matrix is not square");
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(matrix.values[i][j] - matrix.values[j][i]) > 1e-9)
                throw std::invalid_argument("similarity matrix is not symmetric");
    }

    // Working distance matrix, d = 1 - Sim/100.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = 1.0 - matrix.values[i][j] / 100.0;

    std::vector<Cluster> clusters(n);
    for (std::size_t i = 0; i < n; ++i) {
        clusters[i].node = std::make_unique<DendrogramNode>();
        clusters[i].node->item = static_cast<int>(i);
        clusters[i].members = {static_cast<int>(i)};
    }

    std::size_t active = n;
    while (active > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!clusters[i].active) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!clusters[j].active) continue;
                if (dist[i][j] < best) {
                    best = dist[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        auto merged = std::make_unique<DendrogramNode>();
        merged->height = best;
        merged->left = std::move(clusters[bi].node);
        merged->right = std::move(clusters[bj].node);

        for (std::size_t k = 0; k < n; ++k) {
            if (!clusters[k].active || k == bi || k == bj) continue;
            const double d = merge_distance(linkage, dist[bi][k], dist[bj][k],
                                            clusters[bi].members.size(), clusters[bj].members.size());
            dist[bi][k] = d;
            dist[k][bi] = d;
        }
        clusters[bi].node = std::move(merged);
        clusters[bi].members.insert(clusters[bi].members.end(), clusters[bj].members.begin(),
                                    clusters[bj].members.end());
        clusters[bj].active = false;
        --active;
    }

    Dendrogram out;
    out.labels = matrix.labels;
    out.threshold = threshold;
    for (auto& c : clusters) {
        if (c.active) {
            out.root = std::move(c.node);
            break;
        }
    }
    collect_flat(out.root.get(), threshold, out.flat_clusters);
    return out;
}

namespace {

json node_to_json(const DendrogramNode* node, const std::vector<std::string>& labels) {
    json j;
    if (node->leaf()) {
        j["label"] = labels[static_cast<std::size_t>(node->item)];
        j["item"] = node->item;
        return j;
    }
    j["height"] = node->height;
    j["left"] = node_to_json(node->left.get(), labels);
    j["right"] = node_to_json(node->right.get(), labels);
    return j;
}

void node_to_newick(const DendrogramNode* node, const std::vector<std::string>& labels,
                    double parent_height, std::ostringstream& out) {
    if (node->leaf()) {
        out << labels[static_cast<std::size_t>(node->item)] << ':' << parent_height;
        return;
    }
    out << '(';
    node_to_newick(node->left.get(), labels, node->height, out);
    out << ',';
    node_to_newick(node->right.get(), labels, node->height, out);
    out << "):" << std::max(0.0, parent_height - node->height);
}

} // namespace

std::string dendrogram_to_json(const Dendrogram& d) {
    json j;
    j["threshold"] = d.threshold;
    j["tree"] = node_to_json(d.root.get(), d.labels);
    json flats = json::array();
    for (const auto& cluster : d.flat_clusters) {
        json names = json::array();
        for (int idx : cluster) names.push_back(d.labels[static_cast<std::size_t>(idx)]);
        flats.push_back(names);
    }
    j["clusters"] = flats;
    return j.dump(2);
}

std::string dendrogram_to_newick(const Dendrogram& d) {
    std::ostringstream out;
    out.precision(10);
    if (d.root->leaf()) {
        out << d.labels[static_cast<std::size_t>(d.root->item)] << ";";
        return out.str();
    }
    out << '(';
    node_to_newick(d.root->left.get(), d.labels, d.root->height, out);
    out << ',';
    node_to_newick(d.root->right.get(), d.labels, d.root->height, out);
    out << ");";
    return out.str();
}

} // namespace esec
