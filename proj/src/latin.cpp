#include "dail/latin.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dail {

namespace {

void check_symbol_range(const std::vector<int>& grid, int alphabet) {
    for (int v : grid) {
        if (v < 0 || v >= alphabet) {
            throw std::invalid_argument("symbol " + std::to_string(v) +
                                        " outside alphabet {0.." +
                                        std::to_string(alphabet - 1) + "}");
        }
    }
}

void check_distinct_lines(int rows, int cols, int alphabet,
                          const std::vector<int>& grid) {
    std::vector<char> seen(alphabet);
    for (int i = 0; i < rows; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < cols; ++j) {
            int v = grid[i * cols + j];
            if (seen[v])
                throw std::invalid_argument("duplicate symbol in row " +
                                            std::to_string(i));
            seen[v] = 1;
        }
    }
    for (int j = 0; j < cols; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int i = 0; i < rows; ++i) {
            int v = grid[i * cols + j];
            if (seen[v])
                throw std::invalid_argument("duplicate symbol in column " +
                                            std::to_string(j));
            seen[v] = 1;
        }
    }
}

}  // namespace

LatinSquare::LatinSquare(int order, std::vector<int> grid)
    : order_(order), grid_(std::move(grid)) {
    if (order_ < 1) throw std::invalid_argument("order must be >= 1");
    if (grid_.size() != static_cast<std::size_t>(order_) * order_)
        throw std::invalid_argument("grid size does not match order");
    check_symbol_range(grid_, order_);
    check_distinct_lines(order_, order_, order_, grid_);
}

OrthogonalFamily::OrthogonalFamily(int order, std::vector<LatinSquare> squares)
    : order_(order), squares_(std::move(squares)) {
    for (const auto& s : squares_) {
        if (s.order() != order_)
            throw std::invalid_argument("family squares must share one order");
    }
    for (std::size_t i = 0; i < squares_.size(); ++i) {
        for (std::size_t j = i + 1; j < squares_.size(); ++j) {
            if (!are_orthogonal(squares_[i], squares_[j]))
                throw std::invalid_argument(
                    "squares " + std::to_string(i) + " and " +
                    std::to_string(j) + " are not orthogonal");
        }
    }
    if (static_cast<int>(squares_.size()) > order_ - 1)
        throw std::invalid_argument("family size exceeds order-1 bound");
}

LatinRectangle::LatinRectangle(int rows, int cols, int alphabet_size,
                               std::vector<int> grid, int source_index)
    : rows_(rows),
      cols_(cols),
      alphabet_size_(alphabet_size),
      grid_(std::move(grid)),
      source_index_(source_index) {
    if (rows_ < 1 || cols_ < 1)
        throw std::invalid_argument("rectangle dimensions must be >= 1");
    if (rows_ > alphabet_size_ || cols_ > alphabet_size_)
        throw std::invalid_argument("rectangle dimensions exceed alphabet size");
    if (grid_.size() != static_cast<std::size_t>(rows_) * cols_)
        throw std::invalid_argument("grid size does not match dimensions");
    check_symbol_range(grid_, alphabet_size_);
    check_distinct_lines(rows_, cols_, alphabet_size_, grid_);
}

bool LatinRectangle::operator==(const LatinRectangle& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           alphabet_size_ == other.alphabet_size_ && grid_ == other.grid_;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int next_prime_at_least(int n) {
    int p = std::max(n, 2);
    while (!is_prime(p)) ++p;
    return p;
}

OrthogonalFamily generate_mols(int q) {
    if (!is_prime(q)) {
        throw std::invalid_argument(
            "order " + std::to_string(q) +
            " is not prime; smallest prime >= " + std::to_string(q) + " is " +
            std::to_string(next_prime_at_least(q)));
    }
    std::vector<LatinSquare> squares;
    squares.reserve(q - 1);
    for (int a = 1; a < q; ++a) {
        std::vector<int> grid(static_cast<std::size_t>(q) * q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                grid[i * q + j] = (a * i + j) % q;
        squares.emplace_back(q, std::move(grid));
    }
    return OrthogonalFamily(q, std::move(squares));
}

bool are_orthogonal(const LatinSquare& e, const LatinSquare& f) {
    if (e.order() != f.order())
        throw std::invalid_argument("orthogonality check requires equal orders");
    int q = e.order();
    std::vector<char> seen(static_cast<std::size_t>(q) * q, 0);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            int idx = e.at(i, j) * q + f.at(i, j);
            if (seen[idx]) return false;
            seen[idx] = 1;
        }
    }
    return true;
}

LatinRectangle cut_rectangle(const LatinSquare& s, int channels, int slots,
                             int source_index) {
    if (channels > s.order() || slots > s.order())
        throw std::invalid_argument("cut dimensions exceed square order");
    std::vector<int> grid(static_cast<std::size_t>(channels) * slots);
    for (int i = 0; i < channels; ++i)
        for (int j = 0; j < slots; ++j)
            grid[i * slots + j] = s.at(i, j);
    return LatinRectangle(channels, slots, s.order(), std::move(grid),
                          source_index);
}

TransmissionPattern pattern_of(const LatinRectangle& r, int symbol) {
    if (symbol < 0 || symbol >= r.alphabet_size())
        throw std::invalid_argument("symbol " + std::to_string(symbol) +
                                    " outside alphabet of size " +
                                    std::to_string(r.alphabet_size()));
    TransmissionPattern p{symbol, r.rows(), r.cols(), {}};
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j)
            if (r.at(i, j) == symbol) p.hops.push_back({i, j});
    // row-major scan already yields channel-sorted hops
    return p;
}

int overlap_count(const TransmissionPattern& p1, const TransmissionPattern& p2) {
    if (p1.rows != p2.rows || p1.cols != p2.cols)
        throw std::invalid_argument(
            "patterns drawn from rectangles of different dimensions");
    int count = 0;
    for (const Hop& a : p1.hops)
        for (const Hop& b : p2.hops)
            if (a == b) ++count;
    return count;
}

void write_rectangle(std::ostream& out, const LatinRectangle& r) {
    out << r.alphabet_size() << ' ' << r.rows() << ' ' << r.cols() << ' '
        << r.source_index() << '\n';
    for (int i = 0; i < r.rows(); ++i) {
        for (int j = 0; j < r.cols(); ++j) {
            if (j) out << ' ';
            out << r.at(i, j);
        }
        out << '\n';
    }
}

LatinRectangle read_rectangle(std::istream& in) {
    int q, rows, cols, index;
    if (!(in >> q >> rows >> cols >> index))
        throw std::runtime_error("malformed rectangle header");
    std::vector<int> grid(static_cast<std::size_t>(rows) * cols);
    for (auto& v : grid) {
        if (!(in >> v)) throw std::runtime_error("truncated rectangle body");
    }
    return LatinRectangle(rows, cols, q, std::move(grid), index);
}

void write_family_rectangles(std::ostream& out, const OrthogonalFamily& family,
                             int channels, int slots) {
    for (std::size_t i = 0; i < family.size(); ++i)
        write_rectangle(out, cut_rectangle(family.square(i), channels, slots,
                                           static_cast<int>(i)));
}

std::vector<LatinRectangle> read_rectangles(std::istream& in) {
    std::vector<LatinRectangle> out;
    while (true) {
        in >> std::ws;
        if (in.eof() || in.peek() == std::char_traits<char>::eof()) break;
        out.push_back(read_rectangle(in));
    }
    return out;
}

}  // namespace dail
