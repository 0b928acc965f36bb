#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opschur {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Jacobi sweep limit reached before the off-diagonal mass dropped below tolerance.
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& what) : Error(what) {}
};

struct NotPsd : Error {
    double min_eig;
    explicit NotPsd(double min_eig_)
        : Error("matrix is not positive semidefinite (min eigenvalue " +
                std::to_string(min_eig_) + ")"),
          min_eig(min_eig_) {}
};

// Invalid pattern input: missing diagonal points and/or asymmetric pairs.
// The validator reports the defects instead of silently repairing them.
struct DomainError : Error {
    std::vector<int> missing_diagonal;
    std::vector<std::pair<int, int>> asymmetric_pairs;
    DomainError(std::vector<int> missing, std::vector<std::pair<int, int>> asym)
        : Error(describe(missing, asym)),
          missing_diagonal(std::move(missing)),
          asymmetric_pairs(std::move(asym)) {}

  private:
    static std::string describe(const std::vector<int>& missing,
                                const std::vector<std::pair<int, int>>& asym) {
        std::string s = "invalid pattern:";
        for (int x : missing) s += " missing diagonal (" + std::to_string(x) + "," + std::to_string(x) + ");";
        for (auto& [x, y] : asym)
            s += " pair (" + std::to_string(x) + "," + std::to_string(y) + ") lacks its mirror;";
        return s;
    }
};

struct NotChordalError : Error {
    std::vector<int> cycle;  // chordless cycle witness, may be empty
    explicit NotChordalError(std::vector<int> cycle_ = {})
        : Error("pattern is not chordal"), cycle(std::move(cycle_)) {}
};

struct NotAdmissible : Error {
    std::vector<int> clique;
    double min_eig;
    NotAdmissible(std::vector<int> clique_, double min_eig_)
        : Error("multiplier is not admissible (failing clique block, min eigenvalue " +
                std::to_string(min_eig_) + ")"),
          clique(std::move(clique_)),
          min_eig(min_eig_) {}
};

struct UnspecifiedEntry : Error {
    int x, y;
    UnspecifiedEntry(int x_, int y_)
        : Error("entry (" + std::to_string(x_) + "," + std::to_string(y_) +
                ") is not specified by the pattern"),
          x(x_), y(y_) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Final global eigencheck after completion failed beyond tolerance; the input
// was numerically marginal (or, on the heuristic non-chordal route, not extendable).
struct CompletionFailure : Error {
    double min_eig;
    explicit CompletionFailure(double min_eig_)
        : Error("completed multiplier failed the final positivity check (min eigenvalue " +
                std::to_string(min_eig_) + ")"),
          min_eig(min_eig_) {}
};

}  // namespace opschur
