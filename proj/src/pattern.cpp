#include "opschur/pattern.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace opschur::pattern {

Pattern Pattern::validated(int n, const std::vector<std::pair<int, int>>& raw_pairs) {
    if (n < 1) throw std::invalid_argument("pattern needs at least one index");
    std::vector<bool> adj(static_cast<std::size_t>(n) * n, false);
    for (auto& [x, y] : raw_pairs) {
        if (x < 0 || x >= n || y < 0 || y >= n)
            throw std::invalid_argument("pattern pair (" + std::to_string(x) + "," +
                                        std::to_string(y) + ") out of range");
        adj[static_cast<std::size_t>(x) * n + y] = true;
    }

    std::vector<int> missing_diagonal;
    std::vector<std::pair<int, int>> asymmetric;
    for (int x = 0; x < n; ++x)
        if (!adj[static_cast<std::size_t>(x) * n + x]) missing_diagonal.push_back(x);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (adj[static_cast<std::size_t>(x) * n + y] && !adj[static_cast<std::size_t>(y) * n + x])
                asymmetric.emplace_back(x, y);
    if (!missing_diagonal.empty() || !asymmetric.empty())
        throw DomainError(std::move(missing_diagonal), std::move(asymmetric));

    return Pattern(n, std::move(adj));
}

Pattern Pattern::full(int n) {
    if (n < 1) throw std::invalid_argument("pattern needs at least one index");
    return Pattern(n, std::vector<bool>(static_cast<std::size_t>(n) * n, true));
}

bool Pattern::is_full() const {
    return std::all_of(adj_.begin(), adj_.end(), [](bool b) { return b; });
}

std::vector<std::pair<int, int>> Pattern::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
            if (has(x, y)) out.emplace_back(x, y);
    return out;
}

std::vector<int> Pattern::neighbors(int x) const {
    std::vector<int> out;
    for (int y = 0; y < n_; ++y)
        if (y != x && has(x, y)) out.push_back(y);
    return out;
}

Pattern Pattern::with_pair(int x, int y) const {
    Pattern p = *this;
    p.adj_[static_cast<std::size_t>(x) * n_ + y] = true;
    p.adj_[static_cast<std::size_t>(y) * n_ + x] = true;
    return p;
}

namespace {

// Maximum cardinality search visit order; reversed it is a perfect elimination
// ordering whenever the graph is chordal.
std::vector<int> mcs_order(const Pattern& p) {
    const int n = p.n();
    std::vector<int> weight(n, 0);
    std::vector<bool> visited(n, false);
    std::vector<int> visit;
    visit.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!visited[v] && (best == -1 || weight[v] > weight[best])) best = v;
        visited[best] = true;
        visit.push_back(best);
        for (int u : p.neighbors(best))
            if (!visited[u]) ++weight[u];
    }
    std::reverse(visit.begin(), visit.end());
    return visit;  // elimination order
}

// Later neighbors of order[i] with respect to positions in `pos`.
std::vector<int> later_neighbors(const Pattern& p, const std::vector<int>& pos, int v) {
    std::vector<int> out;
    for (int u : p.neighbors(v))
        if (pos[u] > pos[v]) out.push_back(u);
    return out;
}

bool verify_peo(const Pattern& p, const std::vector<int>& order) {
    const int n = p.n();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (int i = 0; i < n; ++i) {
        const int v = order[i];
        std::vector<int> later = later_neighbors(p, pos, v);
        if (later.size() < 2) continue;
        const int u = *std::min_element(later.begin(), later.end(),
                                        [&](int a, int b) { return pos[a] < pos[b]; });
        for (int w : later)
            if (w != u && !p.has(u, w)) return false;
    }
    return true;
}

// Chordless cycle witness in a graph known to be non-chordal: for some vertex v
// with non-adjacent neighbors u, w, a shortest u-w path avoiding N[v]\{u,w}
// closes into a chordless cycle through v.
std::vector<int> find_chordless_cycle(const Pattern& p) {
    const int n = p.n();
    for (int v = 0; v < n; ++v) {
        const std::vector<int> nbrs = p.neighbors(v);
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                const int u = nbrs[a], w = nbrs[b];
                if (p.has(u, w)) continue;
                std::vector<bool> allowed(n, false);
                for (int z = 0; z < n; ++z) allowed[z] = (z != v && !p.has(v, z));
                allowed[u] = allowed[w] = true;

                std::vector<int> parent(n, -1);
                std::deque<int> queue{u};
                std::vector<bool> seen(n, false);
                seen[u] = true;
                while (!queue.empty()) {
                    const int cur = queue.front();
                    queue.pop_front();
                    if (cur == w) break;
                    for (int z : p.neighbors(cur)) {
                        if (!allowed[z] || seen[z]) continue;
                        seen[z] = true;
                        parent[z] = cur;
                        queue.push_back(z);
                    }
                }
                if (!seen[w]) continue;
                std::vector<int> path;
                for (int cur = w; cur != -1; cur = parent[cur]) path.push_back(cur);
                std::reverse(path.begin(), path.end());  // u ... w
                path.insert(path.begin(), v);
                return path;  // cycle v, u, ..., w (closing edge w-v)
            }
        }
    }
    return {};
}

}  // namespace

ChordalityResult is_chordal(const Pattern& p) {
    std::vector<int> order = mcs_order(p);
    if (verify_peo(p, order)) return {true, std::move(order), {}};
    return {false, {}, find_chordless_cycle(p)};
}

CliqueTree clique_tree(const Pattern& p) {
    ChordalityResult ch = is_chordal(p);
    if (!ch.chordal) throw NotChordalError(ch.cycle);
    const int n = p.n();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[ch.order[i]] = i;

    // candidate cliques {v} + later neighbors, keeping only the maximal ones
    std::vector<std::set<int>> cliques;
    for (int i = 0; i < n; ++i) {
        const int v = ch.order[i];
        std::set<int> cand;
        cand.insert(v);
        for (int u : later_neighbors(p, pos, v)) cand.insert(u);
        bool contained = false;
        for (const auto& c : cliques)
            if (std::includes(c.begin(), c.end(), cand.begin(), cand.end())) {
                contained = true;
                break;
            }
        if (!contained) cliques.push_back(std::move(cand));
    }

    const int m = static_cast<int>(cliques.size());
    CliqueTree tree;
    tree.order = ch.order;
    for (const auto& c : cliques) tree.cliques.emplace_back(c.begin(), c.end());

    // maximum-weight spanning tree on intersection sizes (Kruskal; weight-0
    // edges connect disconnected components)
    struct Candidate {
        int w, i, j;
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<int> inter;
            std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(),
                                  cliques[j].end(), std::back_inserter(inter));
            cands.push_back({static_cast<int>(inter.size()), i, j});
        }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.w != b.w) return a.w > b.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<int> comp(m);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (const Candidate& c : cands) {
        const int a = find(c.i), b = find(c.j);
        if (a == b) continue;
        comp[a] = b;
        tree.tree_edges.emplace_back(c.i, c.j);
    }

    // running intersection check: the cliques containing any vertex must form
    // a connected subtree
    for (int v = 0; v < n; ++v) {
        std::vector<int> holding;
        for (int i = 0; i < m; ++i)
            if (cliques[i].count(v)) holding.push_back(i);
        if (holding.size() <= 1) continue;
        std::set<int> reached{holding.front()};
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto& [i, j] : tree.tree_edges) {
                const bool vi = cliques[i].count(v) > 0, vj = cliques[j].count(v) > 0;
                if (!vi || !vj) continue;
                if (reached.count(i) && !reached.count(j)) reached.insert(j), grew = true;
                if (reached.count(j) && !reached.count(i)) reached.insert(i), grew = true;
            }
        }
        if (reached.size() != holding.size())
            throw Error("clique tree construction violated the running intersection property");
    }
    return tree;
}

FillResult fill_in(const Pattern& p) {
    const int n = p.n();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) adj[x][y] = p.has(x, y);

    std::vector<bool> eliminated(n, false);
    std::vector<std::pair<int, int>> added;
    Pattern result = p;

    for (int step = 0; step < n; ++step) {
        auto active_neighbors = [&](int v) {
            std::vector<int> out;
            for (int u = 0; u < n; ++u)
                if (u != v && !eliminated[u] && adj[v][u]) out.push_back(u);
            return out;
        };
        auto fill_count = [&](int v) {
            const std::vector<int> nb = active_neighbors(v);
            int missing = 0;
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    if (!adj[nb[a]][nb[b]]) ++missing;
            return missing;
        };

        // simplicial vertices are free; otherwise minimum degree decides
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (!eliminated[v] && fill_count(v) == 0) {
                pick = v;
                break;
            }
        if (pick == -1) {
            int best_deg = n + 1;
            for (int v = 0; v < n; ++v) {
                if (eliminated[v]) continue;
                const int deg = static_cast<int>(active_neighbors(v).size());
                if (deg < best_deg) best_deg = deg, pick = v;
            }
        }

        const std::vector<int> nb = active_neighbors(pick);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                const int x = std::min(nb[a], nb[b]), y = std::max(nb[a], nb[b]);
                if (adj[x][y]) continue;
                adj[x][y] = adj[y][x] = true;
                added.emplace_back(x, y);
                result = result.with_pair(x, y);
            }
        eliminated[pick] = true;
    }
    return {std::move(result), std::move(added)};
}

std::optional<FillStep> next_completion_step(const Pattern& p) {
    if (p.is_full()) return std::nullopt;
    const CliqueTree tree = clique_tree(p);

    // tree edge with the largest separator, ties broken by clique indices
    int best = -1, best_w = -1;
    std::vector<std::vector<int>> seps(tree.tree_edges.size());
    for (std::size_t e = 0; e < tree.tree_edges.size(); ++e) {
        const auto& [i, j] = tree.tree_edges[e];
        std::set_intersection(tree.cliques[i].begin(), tree.cliques[i].end(),
                              tree.cliques[j].begin(), tree.cliques[j].end(),
                              std::back_inserter(seps[e]));
        if (static_cast<int>(seps[e].size()) > best_w) {
            best_w = static_cast<int>(seps[e].size());
            best = static_cast<int>(e);
        }
    }
    if (best == -1) throw Error("pattern not full but clique tree has no edges");

    const auto& [ci, cj] = tree.tree_edges[best];
    auto first_exclusive = [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (int v : a)
            if (!std::binary_search(b.begin(), b.end(), v)) return v;
        throw Error("maximal cliques in a clique tree cannot contain each other");
    };
    int x = first_exclusive(tree.cliques[ci], tree.cliques[cj]);
    int y = first_exclusive(tree.cliques[cj], tree.cliques[ci]);
    if (x > y) std::swap(x, y);
    return FillStep{x, y, seps[best]};
}

std::vector<std::pair<int, int>> completion_sequence(const Pattern& p) {
    ChordalityResult ch = is_chordal(p);
    if (!ch.chordal) throw NotChordalError(ch.cycle);
    std::vector<std::pair<int, int>> seq;
    Pattern cur = p;
    while (auto step = next_completion_step(cur)) {
        seq.emplace_back(step->x, step->y);
        cur = cur.with_pair(step->x, step->y);
    }
    return seq;
}

}  // namespace opschur::pattern
