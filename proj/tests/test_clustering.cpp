#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esec/clustering.hpp"

using namespace esec;

namespace {

SimilarityMatrix matrix(std::vector<std::string> labels, std::vector<std::vector<double>> values) {
    SimilarityMatrix m;
    m.labels = std::move(labels);
    m.values = std::move(values);
    return m;
}

} // namespace

TEST_CASE("two identical items merge at height zero") {
    const auto d = cluster_dendrogram(matrix({"a", "b"}, {{100, 100}, {100, 100}}), 0.5);
    CHECK(d.root->height == doctest::Approx(0.0));
    CHECK(d.flat_clusters.size() == 1);
}

TEST_CASE("two maximally distant items split at the default cut") {
    const auto d = cluster_dendrogram(matrix({"a", "b"}, {{100, 0}, {0, 100}}), 0.5);
    CHECK(d.root->height == doctest::Approx(1.0));
    CHECK(d.flat_clusters.size() == 2);
}

TEST_CASE("hand-run average linkage on three items") {
    // d(a,b)=0.2, d(a,c)=d(b,c)=0.8: a+b merge at 0.2, c joins at 0.8
    const auto m = matrix({"a", "b", "c"}, {{100, 80, 20}, {80, 100, 20}, {20, 20, 100}});
    const auto d = cluster_dendrogram(m, 0.5);
    CHECK(d.root->height == doctest::Approx(0.8));
    const auto* inner = d.root->left->leaf() ? d.root->right.get() : d.root->left.get();
    CHECK(inner->height == doctest::Approx(0.2));
    REQUIRE(d.flat_clusters.size() == 2);
    // clusters come out sorted by member index
    CHECK(d.flat_clusters[0] == std::vector<int>{0, 1});
    CHECK(d.flat_clusters[1] == std::vector<int>{2});
}

TEST_CASE("non-symmetric input is rejected") {
    CHECK_THROWS_AS(cluster_dendrogram(matrix({"a", "b"}, {{100, 10}, {40, 100}}), 0.5),
                    std::invalid_argument);
}

TEST_CASE("linkage choices order the join height") {
    // two tight pairs with asymmetric cross distances
    const auto m = matrix({"a", "b", "c", "d"}, {{100, 95, 40, 10},
                                                 {95, 100, 60, 30},
                                                 {40, 60, 100, 92},
                                                 {10, 30, 92, 100}});
    const auto single = cluster_dendrogram(m, 0.5, Linkage::Single);
    const auto average = cluster_dendrogram(m, 0.5, Linkage::Average);
    const auto complete = cluster_dendrogram(m, 0.5, Linkage::Complete);
    CHECK(single.root->height <= average.root->height);
    CHECK(average.root->height <= complete.root->height);
}

TEST_CASE("serializations carry every label") {
    const auto m = matrix({"a", "b", "c"}, {{100, 80, 20}, {80, 100, 20}, {20, 20, 100}});
    const auto d = cluster_dendrogram(m, 0.5);
    const std::string js = dendrogram_to_json(d);
    const std::string nw = dendrogram_to_newick(d);
    for (const auto& label : m.labels) {
        CHECK(js.find(label) != std::string::npos);
        CHECK(nw.find(label) != std::string::npos);
    }
    CHECK(nw.back() == ';');
}
