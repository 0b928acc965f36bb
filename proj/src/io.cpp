#include "opschur/io.hpp"

#include <filesystem>
#include <fstream>
#include <functional>

namespace opschur::io {

namespace {

using linalg::Complex;
using linalg::ComplexMatrix;

const json& require(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw Error(std::string("missing field '") + key + "'");
    return *it;
}

int require_int(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) throw Error(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error("complex values must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

ComplexMatrix entries_from_json(const json& rows, int expect_rows, int expect_cols,
                                const char* what) {
    if (!rows.is_array() || rows.empty()) throw Error(std::string(what) + " must be a 2-d array");
    const std::size_t r = rows.size();
    const std::size_t c = rows[0].is_array() ? rows[0].size() : 0;
    if (c == 0) throw Error(std::string(what) + " must be a 2-d array");
    if (expect_rows >= 0 && (r != static_cast<std::size_t>(expect_rows) ||
                             c != static_cast<std::size_t>(expect_cols)))
        throw Error(std::string(what) + " has wrong shape");
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
            throw Error(std::string(what) + " rows have inconsistent lengths");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = complex_from_json(rows[i][k]);
    }
    return m;
}

json entries_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

json to_json(const ComplexMatrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries_to_json(m)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    const int rows = require_int(j, "rows");
    const int cols = require_int(j, "cols");
    return entries_from_json(require(j, "entries"), rows, cols, "matrix entries");
}

json to_json(const pattern::Pattern& p) {
    json pairs = json::array();
    for (auto& [x, y] : p.pairs()) pairs.push_back(json::array({x, y}));
    return {{"n", p.n()}, {"pairs", std::move(pairs)}};
}

pattern::Pattern pattern_from_json(const json& j) {
    const int n = require_int(j, "n");
    const json& pairs = require(j, "pairs");
    if (!pairs.is_array()) throw Error("field 'pairs' must be an array of [x, y] pairs");
    std::vector<std::pair<int, int>> raw;
    for (const json& p : pairs) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw Error("pattern pairs must be [x, y] integer pairs");
        raw.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    return pattern::validate_positivity_domain(n, raw);
}

namespace {

json multiplier_pairs_to_json(int n, const std::function<bool(int, int)>& has,
                              const std::function<const ComplexMatrix&(int, int)>& block) {
    json pairs = json::array();
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y)
            if (has(x, y))
                pairs.push_back({{"x", x}, {"y", y}, {"block", entries_to_json(block(x, y))}});
    return pairs;
}

}  // namespace

json to_json(const multiplier::PartialBlockMultiplier& phi) {
    return {{"n", phi.n()},
            {"d", phi.d()},
            {"pairs", multiplier_pairs_to_json(
                          phi.n(), [&](int x, int y) { return phi.specified(x, y); },
                          [&](int x, int y) -> const ComplexMatrix& { return phi.block(x, y); })}};
}

json to_json(const multiplier::BlockMultiplier& phi) {
    return {{"n", phi.n()},
            {"d", phi.d()},
            {"pairs", multiplier_pairs_to_json(
                          phi.n(), [](int, int) { return true; },
                          [&](int x, int y) -> const ComplexMatrix& { return phi.block(x, y); })}};
}

multiplier::PartialBlockMultiplier multiplier_from_json(const json& j) {
    const int n = require_int(j, "n");
    const int d = require_int(j, "d");
    const json& pairs = require(j, "pairs");
    if (!pairs.is_array()) throw Error("field 'pairs' must be an array");

    std::vector<std::pair<int, int>> raw;
    std::map<std::pair<int, int>, ComplexMatrix> blocks;
    for (const json& p : pairs) {
        const int x = require_int(p, "x");
        const int y = require_int(p, "y");
        blocks[{x, y}] = entries_from_json(require(p, "block"), d, d, "block");
        raw.emplace_back(x, y);
        if (x != y) raw.emplace_back(y, x);
    }
    pattern::Pattern pat = pattern::validate_positivity_domain(n, raw);
    return {std::move(pat), d, blocks};
}

json to_json(const multiplier::ScalarKernel& k) {
    return {{"n", k.n}, {"entries", entries_to_json(k.entries)}};
}

multiplier::ScalarKernel kernel_from_json(const json& j) {
    const int n = require_int(j, "n");
    return {n, entries_from_json(require(j, "entries"), n, n, "kernel entries")};
}

json to_json(const completion::CompletionResult& res) {
    json out = to_json(res.psi);
    json filled = json::array();
    for (auto& [x, y, block] : res.filled)
        filled.push_back({{"x", x}, {"y", y}, {"block", entries_to_json(block)}});
    out["filled"] = std::move(filled);
    out["min_eig"] = res.min_eig;
    return out;
}

json to_json(const completion::GramFactorization& f) {
    json table = json::array();
    for (int i = 0; i < f.m; ++i)
        for (std::size_t x = 0; x < f.blocks[i].size(); ++x)
            table.push_back({{"i", i}, {"x", x}, {"block", entries_to_json(f.blocks[i][x])}});
    return {{"m", f.m}, {"A", std::move(table)}};
}

namespace {

// shared shape of the A/B block tables: [{"i", "x" or "y", "block"}, ...]
std::vector<std::vector<ComplexMatrix>> block_table_from_json(const json& table,
                                                              const char* space_key) {
    if (!table.is_array()) throw Error("block table must be an array");
    int summands = 0, space = 0;
    for (const json& row : table) {
        summands = std::max(summands, require_int(row, "i") + 1);
        space = std::max(space, require_int(row, space_key) + 1);
    }
    std::vector<std::vector<ComplexMatrix>> out(summands, std::vector<ComplexMatrix>(space));
    for (const json& row : table)
        out[require_int(row, "i")][require_int(row, space_key)] =
            entries_from_json(require(row, "block"), -1, -1, "block");
    return out;
}

}  // namespace

completion::GramFactorization gram_factorization_from_json(const json& j) {
    completion::GramFactorization f;
    f.m = require_int(j, "m");
    f.blocks = block_table_from_json(require(j, "A"), "x");
    if (static_cast<int>(f.blocks.size()) != f.m) throw Error("summand table does not match 'm'");
    f.d = f.blocks.empty() || f.blocks[0].empty() ? 0
                                                  : static_cast<int>(f.blocks[0][0].rows());
    const int n = f.blocks.empty() ? 0 : static_cast<int>(f.blocks[0].size());
    double bound = 0.0;
    for (int x = 0; x < n; ++x) {
        ComplexMatrix sum(f.d, f.d);
        for (int i = 0; i < f.m; ++i) sum += f.blocks[i][x] * f.blocks[i][x].adjoint();
        bound = std::max(bound, linalg::operator_norm(sum));
    }
    f.row_bound = bound;
    return f;
}

factorization::TwoSidedFactorization factorization_from_json(const json& j) {
    factorization::TwoSidedFactorization f;
    f.m = require_int(j, "m");
    f.a = block_table_from_json(require(j, "A"), "x");
    f.b = block_table_from_json(require(j, "B"), "y");
    if (static_cast<int>(f.a.size()) != f.m || static_cast<int>(f.b.size()) != f.m)
        throw Error("summand tables do not match 'm'");
    f.d = f.a.empty() || f.a[0].empty() ? 0 : static_cast<int>(f.a[0][0].rows());
    f.row_bound = require(j, "row_bound").get<double>();
    f.col_bound = require(j, "col_bound").get<double>();
    f.symmetric = require(j, "symmetric").get<bool>();
    return f;
}

json to_json(const completion::ExtensionReport& rep) {
    return {{"restriction_exact", rep.restriction_exact},
            {"assembled_psd", rep.assembled_psd},
            {"min_eig", rep.min_eig},
            {"kernel_trials", rep.kernel_trials},
            {"kernel_violations", rep.kernel_violations},
            {"ampliation_trials", rep.ampliation_trials},
            {"ampliation_violations", rep.ampliation_violations},
            {"pass", rep.pass}};
}

json to_json(const completion::C4Demonstration& demo) {
    return {{"edge_values", demo.edge_values},
            {"edge_blocks_psd", demo.edge_blocks_psd},
            {"grid_points", demo.grid_points},
            {"grid_max_min_eig", demo.grid_max_min_eig},
            {"epsilon", demo.epsilon},
            {"phase_grid_points", demo.phase_grid_points},
            {"phase_max_min_eig", demo.phase_max_min_eig}};
}

json to_json(const factorization::TwoSidedFactorization& f) {
    json a = json::array(), b = json::array();
    for (int i = 0; i < f.m; ++i)
        for (std::size_t x = 0; x < f.a[i].size(); ++x) {
            a.push_back({{"i", i}, {"x", x}, {"block", entries_to_json(f.a[i][x])}});
            b.push_back({{"i", i}, {"y", x}, {"block", entries_to_json(f.b[i][x])}});
        }
    return {{"m", f.m},          {"A", std::move(a)},
            {"B", std::move(b)}, {"row_bound", f.row_bound},
            {"col_bound", f.col_bound}, {"cb_norm_upper", factorization::cb_norm_upper(f)},
            {"symmetric", f.symmetric}};
}

json to_json(const cones::ConeEquivalenceReport& rep) {
    return {{"trials", rep.trials}, {"breaches", rep.breaches}, {"max_err", rep.max_err}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("JSON parse error in '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot open output file '" + tmp.string() + "'");
        out << dump(j);
    }
    std::filesystem::rename(tmp, target);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace opschur::io
