#include "monotree/hit.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace monotree {

std::vector<int> Hit::leaves() const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v) {
        if (is_leaf(v)) out.push_back(v);
    }
    return out;
}

std::vector<int> Hit::internal_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v) {
        if (degree(v) >= 2) out.push_back(v);
    }
    return out;
}

int Hit::leaf_count() const { return static_cast<int>(leaves().size()); }

std::vector<int> Hit::boundary_leaf_order() const {
    auto ls = leaves();
    if (ls.empty()) return {};
    std::vector<int> order{ls.front()};
    int prev = ls.front();
    int cur = rotation[prev][0];
    while (true) {
        if (is_leaf(cur)) {
            if (cur == ls.front()) break;
            order.push_back(cur);
            std::swap(prev, cur);
            continue;
        }
        const auto& rot = rotation[cur];
        auto it = std::find(rot.begin(), rot.end(), prev);
        std::size_t pos = static_cast<std::size_t>(it - rot.begin());
        int next = rot[(pos + 1) % rot.size()];
        prev = cur;
        cur = next;
    }
    return order;
}

std::string Hit::to_string() const {
    std::ostringstream os;
    for (int v = 0; v < vertex_count(); ++v) {
        if (v) os << ' ';
        os << v << ":[";
        for (std::size_t i = 0; i < rotation[v].size(); ++i) os << (i ? "," : "") << rotation[v][i];
        os << ']';
    }
    return os.str();
}

bool Hit::valid() const {
    const int n = vertex_count();
    if (n == 0) return false;
    std::size_t darts = 0;
    for (int v = 0; v < n; ++v) {
        if (degree(v) == 2) return false;
        for (int w : rotation[v]) {
            if (w < 0 || w >= n || w == v) return false;
            const auto& back = rotation[w];
            if (std::count(back.begin(), back.end(), v) != 1) return false;
        }
        darts += rotation[v].size();
    }
    if (darts != 2 * static_cast<std::size_t>(n - 1)) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : rotation[x]) {
            if (!seen[y]) {
                seen[y] = true;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == n;
}

namespace {

void encode(const Hit& h, int x, int parent, std::string& out) {
    out.push_back('(');
    const auto& rot = h.rotation[x];
    std::size_t start = 0;
    if (parent >= 0) {
        start = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), parent) - rot.begin()) + 1;
    }
    for (std::size_t i = 0; i < rot.size(); ++i) {
        int c = rot[(start + i) % rot.size()];
        if (c != parent) encode(h, c, x, out);
    }
    out.push_back(')');
}

}  // namespace

CanonicalCode canonical_code(const Hit& hit) {
    if (hit.vertex_count() == 1) return "()";
    CanonicalCode best;
    std::string code;
    for (int u = 0; u < hit.vertex_count(); ++u) {
        for (int v : hit.rotation[u]) {
            code.clear();
            code.push_back('(');
            encode(hit, v, u, code);
            encode(hit, u, v, code);
            code.push_back(')');
            if (best.empty() || code < best) best = code;
        }
    }
    return best;
}

namespace {

Hit star(int m) {
    Hit h;
    h.rotation.resize(static_cast<std::size_t>(m + 1));
    for (int i = 1; i <= m; ++i) {
        h.rotation[0].push_back(i);
        h.rotation[i] = {0};
    }
    return h;
}

}  // namespace

HitEnumerationStats enumerate_hits(int max_leaves, const std::function<void(const Hit&)>& sink) {
    HitEnumerationStats stats;
    if (max_leaves < 2) return stats;
    std::set<CanonicalCode> seen;
    std::deque<Hit> queue;
    auto offer = [&](Hit h) {
        ++stats.emitted;
        if (seen.insert(canonical_code(h)).second) {
            ++stats.unique;
            sink(h);
            queue.push_back(std::move(h));
        }
    };
    offer(star(1));
    for (int m = 3; m <= max_leaves; ++m) offer(star(m));
    while (!queue.empty()) {
        Hit h = std::move(queue.front());
        queue.pop_front();
        const int leaves = h.leaf_count();
        for (int x : h.leaves()) {
            for (int j = 2; leaves + j - 1 <= max_leaves; ++j) {
                Hit g = h;
                for (int i = 0; i < j; ++i) {
                    int id = g.vertex_count();
                    g.rotation.push_back({x});
                    g.rotation[x].push_back(id);
                }
                offer(std::move(g));
            }
        }
    }
    return stats;
}

std::vector<Hit> all_hits(int max_leaves) {
    std::vector<Hit> out;
    enumerate_hits(max_leaves, [&](const Hit& h) { out.push_back(h); });
    return out;
}

}  // namespace monotree
