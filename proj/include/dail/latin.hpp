#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dail {

// Order-q grid where every row and every column is a permutation of {0..q-1}.
class LatinSquare {
public:
    LatinSquare(int order, std::vector<int> grid);

    int order() const { return order_; }
    int at(int row, int col) const { return grid_[row * order_ + col]; }
    const std::vector<int>& grid() const { return grid_; }

    bool operator==(const LatinSquare& other) const = default;

private:
    int order_;
    std::vector<int> grid_;  // row-major, order_ x order_
};

// Pairwise-orthogonal set of Latin squares sharing one order.
class OrthogonalFamily {
public:
    OrthogonalFamily(int order, std::vector<LatinSquare> squares);

    int order() const { return order_; }
    std::size_t size() const { return squares_.size(); }
    const LatinSquare& square(std::size_t i) const { return squares_.at(i); }
    const std::vector<LatinSquare>& squares() const { return squares_; }

private:
    int order_;
    std::vector<LatinSquare> squares_;
};

// M' x FL cut of a Latin square; symbols still range over {0..q-1}.
class LatinRectangle {
public:
    LatinRectangle(int rows, int cols, int alphabet_size, std::vector<int> grid,
                   int source_index = -1);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int alphabet_size() const { return alphabet_size_; }
    int at(int row, int col) const { return grid_[row * cols_ + col]; }
    int source_index() const { return source_index_; }

    bool operator==(const LatinRectangle& other) const;

private:
    int rows_;
    int cols_;
    int alphabet_size_;
    std::vector<int> grid_;  // row-major
    int source_index_;       // index within the generating family, -1 if detached
};

struct Hop {
    int channel;  // row index
    int slot;     // column index
    bool operator==(const Hop&) const = default;
    auto operator<=>(const Hop&) const = default;
};

// All (channel, slot) positions of one symbol in a rectangle, sorted by channel.
struct TransmissionPattern {
    int symbol;
    int rows;  // dimensions of the source rectangle
    int cols;
    std::vector<Hop> hops;
};

// Complete family of q-1 MOLS over prime order q: square a has
// grid[i][j] = (a*i + j) mod q.  Throws std::invalid_argument for
// non-prime q, naming the smallest prime >= q in the message.
OrthogonalFamily generate_mols(int q);

bool is_prime(int n);
int next_prime_at_least(int n);

// True iff the q^2 superimposed ordered pairs are all distinct.
// Throws std::invalid_argument on order mismatch.
bool are_orthogonal(const LatinSquare& e, const LatinSquare& f);

// Top-left channels x slots sub-array. Throws if either exceeds the order.
LatinRectangle cut_rectangle(const LatinSquare& s, int channels, int slots,
                             int source_index = -1);

// Hop list of one symbol. Throws if symbol is outside {0..alphabet_size-1}.
TransmissionPattern pattern_of(const LatinRectangle& r, int symbol);

// Number of (channel, slot) cells shared by two patterns. Throws on
// mismatched rectangle dimensions.
int overlap_count(const TransmissionPattern& p1, const TransmissionPattern& p2);

// Line-oriented text format: header "q M' FL index", then M' rows of FL
// space-separated symbols. Round-trips bit-exactly.
void write_rectangle(std::ostream& out, const LatinRectangle& r);
LatinRectangle read_rectangle(std::istream& in);
void write_family_rectangles(std::ostream& out,
                             const OrthogonalFamily& family,
                             int channels, int slots);
std::vector<LatinRectangle> read_rectangles(std::istream& in);

}  // namespace dail
