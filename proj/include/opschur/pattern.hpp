#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "opschur/errors.hpp"

namespace opschur::pattern {

// Symmetric reflexive relation kappa on {0, ..., n-1}. Immutable; the factory
// validates instead of repairing (missing diagonal points or asymmetric pairs
// are reported as a DomainError, never silently added).
class Pattern {
  public:
    static Pattern validated(int n, const std::vector<std::pair<int, int>>& raw_pairs);
    static Pattern full(int n);

    int n() const { return n_; }
    bool has(int x, int y) const { return adj_[static_cast<std::size_t>(x) * n_ + y]; }
    bool is_full() const;

    // All pairs (x, y) including the diagonal, lexicographically sorted.
    std::vector<std::pair<int, int>> pairs() const;

    // Off-diagonal neighbors of x, ascending.
    std::vector<int> neighbors(int x) const;

    Pattern with_pair(int x, int y) const;

  private:
    Pattern(int n, std::vector<bool> adj) : n_(n), adj_(std::move(adj)) {}
    int n_;
    std::vector<bool> adj_;  // n*n, row-major
};

inline Pattern validate_positivity_domain(int n, const std::vector<std::pair<int, int>>& raw) {
    return Pattern::validated(n, raw);
}

struct ChordalityResult {
    bool chordal;
    std::vector<int> order;  // perfect elimination ordering when chordal
    std::vector<int> cycle;  // chordless cycle of length >= 4 otherwise
};

// Maximum cardinality search (lowest index wins ties) followed by perfect
// elimination verification; on failure a chordless cycle witness is produced.
ChordalityResult is_chordal(const Pattern& p);

struct CliqueTree {
    std::vector<std::vector<int>> cliques;          // maximal cliques, each ascending
    std::vector<std::pair<int, int>> tree_edges;    // indices into cliques
    std::vector<int> order;                         // perfect elimination ordering
};

// Maximal cliques from the elimination ordering plus a maximum-weight spanning
// tree on intersection sizes. The running intersection property is verified
// before returning. Throws NotChordalError on non-chordal input.
CliqueTree clique_tree(const Pattern& p);

struct FillResult {
    Pattern pattern;
    std::vector<std::pair<int, int>> added;  // fill pairs (x < y) in elimination order
};

// Chordal supergraph via elimination: simplicial vertices are eliminated for
// free, otherwise minimum degree decides (lowest index wins ties). Chordal
// input comes back unchanged.
FillResult fill_in(const Pattern& p);

// One step of the entry-by-entry completion: a pair (x, y) whose addition
// keeps the pattern chordal, together with the separator (the intersection of
// the two cliques adjacent along the mediating clique-tree edge). Empty when
// the pattern is full.
struct FillStep {
    int x, y;
    std::vector<int> separator;
};
std::optional<FillStep> next_completion_step(const Pattern& p);

// Ordered list of unspecified pairs (x < y) whose one-at-a-time insertion
// keeps every intermediate pattern chordal and exhausts the complement.
std::vector<std::pair<int, int>> completion_sequence(const Pattern& p);

}  // namespace opschur::pattern
