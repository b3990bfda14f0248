#include "dail/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dail::oracle {

std::string Violation::describe() const {
    std::string s = "rect " + std::to_string(rect_a) + " symbol " +
                    std::to_string(symbol_a) + " vs rect " +
                    std::to_string(rect_b) + " symbol " +
                    std::to_string(symbol_b) + ": overlap " +
                    std::to_string(overlap) + " at";
    for (auto [i, j] : cells)
        s += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
    return s;
}

TheoremCheckReport exhaustive_theorem_check_raw(
    const std::vector<std::vector<int>>& grids, int rows, int cols, int q) {
    TheoremCheckReport report;
    for (const auto& g : grids)
        if (g.size() != static_cast<std::size_t>(rows) * cols)
            throw std::invalid_argument("grid size does not match dimensions");

    // direct superimposition counts, independent of pattern_of
    std::vector<int> counts(static_cast<std::size_t>(q) * q);
    for (std::size_t a = 0; a < grids.size(); ++a) {
        for (std::size_t b = a; b < grids.size(); ++b) {
            std::fill(counts.begin(), counts.end(), 0);
            for (int i = 0; i < rows * cols; ++i)
                ++counts[grids[a][i] * q + grids[b][i]];
            int limit = (a == b) ? 0 : 1;
            for (int u = 0; u < q; ++u)
                for (int v = 0; v < q; ++v) {
                    if (a == b && u >= v) continue;  // unordered, u != v
                    ++report.pairs_checked;
                    int c = counts[u * q + v];
                    if (c <= limit) continue;
                    Violation viol{static_cast<int>(a), u,
                                   static_cast<int>(b), v, c};
                    for (int i = 0; i < rows; ++i)
                        for (int j = 0; j < cols; ++j)
                            if (grids[a][i * cols + j] == u &&
                                grids[b][i * cols + j] == v)
                                viol.cells.emplace_back(i, j);
                    report.violations.push_back(std::move(viol));
                }
        }
    }
    return report;
}

TheoremCheckReport exhaustive_theorem_check(
    const std::vector<LatinRectangle>& rects) {
    if (rects.empty()) return {};
    int rows = rects[0].rows(), cols = rects[0].cols();
    int q = rects[0].alphabet_size();
    std::vector<std::vector<int>> grids;
    grids.reserve(rects.size());
    for (const auto& r : rects) {
        if (r.rows() != rows || r.cols() != cols || r.alphabet_size() != q)
            throw std::invalid_argument("rectangles must share dimensions");
        std::vector<int> g(static_cast<std::size_t>(rows) * cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) g[i * cols + j] = r.at(i, j);
        grids.push_back(std::move(g));
    }
    return exhaustive_theorem_check_raw(grids, rows, cols, q);
}

TheoremCheckReport exhaustive_theorem_check(const OrthogonalFamily& family,
                                            int rows, int cols) {
    std::vector<LatinRectangle> rects;
    rects.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        rects.push_back(cut_rectangle(family.square(i), rows, cols,
                                      static_cast<int>(i)));
    return exhaustive_theorem_check(rects);
}

namespace {

struct PatternUniverse {
    int q = 0;
    int rows = 0;
    int n_patterns = 0;  // Z = K * m
    // hop cells per pattern, pattern id = rect * K + symbol
    std::vector<std::vector<int>> cells_of;
    // pattern ids containing each cell
    std::vector<std::vector<int>> patterns_at;
    int n_cells = 0;
};

PatternUniverse build_universe(const AnalyticalParams& p) {
    p.validate();
    int q = next_prime_at_least(std::max(p.M, p.K));
    if (p.m > q - 1)
        throw std::invalid_argument(
            "family size m exceeds the q-1 squares available at order " +
            std::to_string(q));
    OrthogonalFamily family = generate_mols(q);
    int rows = std::min(p.M, q);

    PatternUniverse u;
    u.q = q;
    u.rows = rows;
    u.n_patterns = p.K * p.m;
    u.n_cells = rows * p.K;
    u.cells_of.resize(u.n_patterns);
    u.patterns_at.resize(u.n_cells);
    for (int r = 0; r < p.m; ++r) {
        LatinRectangle rect = cut_rectangle(family.square(r), rows, p.K, r);
        for (int sym = 0; sym < p.K; ++sym) {
            int id = r * p.K + sym;
            for (const Hop& h : pattern_of(rect, sym).hops) {
                int cell = h.channel * p.K + h.slot;
                u.cells_of[id].push_back(cell);
                u.patterns_at[cell].push_back(id);
            }
        }
    }
    for (const auto& cells : u.cells_of)
        if (cells.empty())
            throw std::invalid_argument(
                "a symbol pattern is empty under this (M, K) cut");
    return u;
}

double log_falling_ratio(long long top, long long bottom, int x) {
    // log of C(top, x) / C(bottom, x)
    double v = 0.0;
    for (int i = 0; i < x; ++i)
        v += std::log(static_cast<double>(top - i)) -
             std::log(static_cast<double>(bottom - i));
    return v;
}

}  // namespace

double exact_lambda(const AnalyticalParams& p) {
    PatternUniverse u = build_universe(p);
    long long Z = u.n_patterns;

    // avg over tagged patterns and hops of P(x distinct draws from the
    // Z-1 others all avoid the bad(c*) patterns covering the tagged cell)
    double lambda = 0.0;
    for (int x = 0; x <= p.Q; ++x) {
        double lw = log_binomial(p.Q, x);
        if (x > 0) {
            if (p.omega == 0.0) continue;
            lw += x * std::log(p.omega);
        }
        if (p.Q - x > 0) {
            if (p.omega == 1.0) continue;
            lw += (p.Q - x) * std::log1p(-p.omega);
        }
        double weight = std::exp(lw);

        // tagged pattern uniform, then observed hop uniform within it
        double avoid = 0.0;
        for (int id = 0; id < Z; ++id) {
            double per_pattern = 0.0;
            for (int cell : u.cells_of[id]) {
                int bad = static_cast<int>(u.patterns_at[cell].size()) - 1;
                long long good = Z - 1 - bad;
                per_pattern +=
                    (x <= good)
                        ? std::exp(log_falling_ratio(good, Z - 1, x))
                        : 0.0;
            }
            avoid += per_pattern / static_cast<double>(u.cells_of[id].size());
        }
        lambda += weight * (avoid / static_cast<double>(Z));
    }
    return lambda;
}

MonteCarloResult monte_carlo_lambda(const OracleConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const AnalyticalParams& p = cfg.params;
    PatternUniverse u = build_universe(p);
    int Z = u.n_patterns;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick_pattern(0, Z - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<int> pool(Z);
    long long successes = 0;
    for (long long t = 0; t < cfg.trials; ++t) {
        int tagged = pick_pattern(rng);
        const auto& cells = u.cells_of[tagged];
        int cell = cells[static_cast<std::size_t>(
            unit(rng) * static_cast<double>(cells.size()))];

        int x = 0;
        for (int n = 0; n < p.Q; ++n)
            if (unit(rng) < p.omega) ++x;

        // draw x distinct patterns from the Z-1 non-tagged ones
        pool.clear();
        bool collided = false;
        if (x > 0) {
            pool.resize(Z);
            std::iota(pool.begin(), pool.end(), 0);
            std::swap(pool[tagged], pool[Z - 1]);  // exclude tagged
            int avail = Z - 1;
            for (int d = 0; d < x; ++d) {
                std::uniform_int_distribution<int> pick(0, avail - 1 - d);
                int idx = pick(rng);
                int chosen = pool[idx];
                std::swap(pool[idx], pool[avail - 1 - d]);
                const auto& at = u.patterns_at[cell];
                if (std::find(at.begin(), at.end(), chosen) != at.end()) {
                    collided = true;
                    break;
                }
            }
        }
        if (!collided) ++successes;
    }

    MonteCarloResult result;
    result.trials = cfg.trials;
    result.estimate =
        static_cast<double>(successes) / static_cast<double>(cfg.trials);
    result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) /
                                 static_cast<double>(cfg.trials));
    result.low_precision = cfg.trials < 10'000;
    return result;
}

}  // namespace dail::oracle
