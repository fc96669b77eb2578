#pragma once

#include "esec/similarity.hpp"

#include <memory>
#include <string>
#include <vector>

namespace esec {

enum class Linkage { Single, Complete, Average };

/// Binary merge tree; leaves carry an item index, inner nodes the merge height.
struct DendrogramNode {
    int item = -1; // leaf index into the matrix labels, -1 for inner nodes
    double height = 0.0;
    std::unique_ptr<DendrogramNode> left;
    std::unique_ptr<DendrogramNode> right;

    bool leaf() const { return item >= 0; }
};

struct Dendrogram {
    std::unique_ptr<DendrogramNode> root;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> flat_clusters; // cut at the requested threshold
    double threshold = 0.5;
};

/// Agglomerative clustering on distance d = 1 - Sim/100. The flat clusters
/// are the maximal subtrees merged at height <= threshold. Throws on a
/// non-symmetric matrix.
Dendrogram cluster_dendrogram(const SimilarityMatrix& matrix, double threshold = 0.5,
                              Linkage linkage = Linkage::Average);

std::string dendrogram_to_json(const Dendrogram& d);
std::string dendrogram_to_newick(const Dendrogram& d);

} // namespace esec
