#pragma once

#include <random>
#include <vector>

#include "monotree/constructions.hpp"
#include "monotree/geom.hpp"
#include "monotree/tree.hpp"

namespace testsupport {

using namespace monotree;

inline DirectionSet random_dirs(std::mt19937_64& rng, int k) {
    std::uniform_real_distribution<double> u(0.0, kPi);
    while (true) {
        std::vector<double> a;
        for (int i = 0; i < k; ++i) a.push_back(u(rng));
        std::sort(a.begin(), a.end());
        bool spread = true;
        for (int i = 1; i < k; ++i) spread = spread && a[i] - a[i - 1] > 1e-3;
        if (k > 1) spread = spread && a[0] + kPi - a[k - 1] > 1e-3;
        if (spread) return direction_set_from_radians(a);
    }
}

inline std::vector<Edge> random_tree_edges(std::mt19937_64& rng, int n) {
    std::vector<Edge> edges;
    if (n < 2) return edges;
    if (n == 2) return {Edge{0, 1}};
    std::uniform_int_distribution<int> u(0, n - 1);
    std::vector<int> seq(static_cast<std::size_t>(n - 2));
    for (int& s : seq) s = u(rng);
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int s : seq) ++degree[s];
    for (int s : seq) {
        int leaf = 0;
        while (degree[leaf] != 1) ++leaf;
        edges.push_back(Edge::make(leaf, s));
        --degree[leaf];
        --degree[s];
    }
    int a = -1, b = -1;
    for (int x = 0; x < n; ++x) {
        if (degree[x] == 1) (a < 0 ? a : b) = x;
    }
    edges.push_back(Edge::make(a, b));
    return edges;
}

/// Random path-connected tree grown by attaching each new point to a random
/// earlier point; biased towards short, often monotone trees when the points
/// are sorted.
inline std::vector<Edge> random_attach_tree(std::mt19937_64& rng, int n) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> u(std::max(0, v - 2), v - 1);
        edges.push_back(Edge::make(u(rng), v));
    }
    return edges;
}

}  // namespace testsupport
