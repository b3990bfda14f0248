#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "dail/latin.hpp"

using namespace dail;

namespace {

// The three reference 4x4 squares used throughout the worked examples,
// shifted to the 0-based alphabet.
LatinSquare square_e() {
    return LatinSquare(4, {0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 2});
}
LatinSquare square_f() {
    return LatinSquare(4, {3, 0, 1, 2, 0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1});
}
LatinSquare square_j() {
    return LatinSquare(4, {2, 3, 0, 1, 3, 0, 1, 2, 0, 1, 2, 3, 1, 2, 3, 0});
}

// Count distinct superimposed ordered pairs directly.
int distinct_pairs(const LatinSquare& a, const LatinSquare& b) {
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j)
            seen.insert({a.at(i, j), b.at(i, j)});
    return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("latin square validation") {
    CHECK_NOTHROW(LatinSquare(1, {0}));
    CHECK_NOTHROW(LatinSquare(2, {0, 1, 1, 0}));
    // repeated symbol in a row
    CHECK_THROWS_AS(LatinSquare(2, {0, 0, 1, 1}), std::invalid_argument);
    // rows fine, second column repeats
    CHECK_THROWS_AS(LatinSquare(3, {0, 1, 2, 1, 2, 0, 0, 2, 1}),
                    std::invalid_argument);
    // out-of-range symbol
    CHECK_THROWS_AS(LatinSquare(2, {0, 3, 3, 0}), std::invalid_argument);
    // wrong grid size
    CHECK_THROWS_AS(LatinSquare(2, {0, 1, 1}), std::invalid_argument);
}

TEST_CASE("primality helpers") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(4));
    CHECK(is_prime(17));
    CHECK_FALSE(is_prime(25));
    CHECK(next_prime_at_least(16) == 17);
    CHECK(next_prime_at_least(17) == 17);
    CHECK(next_prime_at_least(18) == 19);
    CHECK(next_prime_at_least(2) == 2);
    CHECK(next_prime_at_least(1) == 2);
}

TEST_CASE("generate_mols builds the complete family for prime orders") {
    for (int q : {2, 3, 5, 7, 11, 13, 17}) {
        CAPTURE(q);
        OrthogonalFamily fam = generate_mols(q);
        CHECK(fam.order() == q);
        CHECK(static_cast<int>(fam.size()) == q - 1);
        // affine form: square a has (a*i + j) mod q
        for (std::size_t a = 1; a <= fam.size(); ++a) {
            const LatinSquare& s = fam.square(a - 1);
            for (int i = 0; i < q; ++i)
                for (int j = 0; j < q; ++j)
                    CHECK(s.at(i, j) ==
                          static_cast<int>((a * i + j) % q));
        }
        for (std::size_t u = 0; u < fam.size(); ++u)
            for (std::size_t v = u + 1; v < fam.size(); ++v)
                CHECK(are_orthogonal(fam.square(u), fam.square(v)));
    }
}

TEST_CASE("generate_mols rejects non-primes and names the next prime") {
    for (auto [q, next] : std::vector<std::pair<int, int>>{
             {4, 5}, {6, 7}, {9, 11}, {12, 13}, {16, 17}}) {
        CAPTURE(q);
        try {
            generate_mols(q);
            FAIL("expected invalid_argument for q=", q);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(std::to_string(next)) !=
                  std::string::npos);
        }
    }
}

TEST_CASE("are_orthogonal on the reference 4x4 squares") {
    LatinSquare e = square_e(), f = square_f(), j = square_j();
    CHECK_FALSE(are_orthogonal(e, e));
    // E, F and J are cyclic shifts of one another, so each superimposition
    // yields only 4 distinct ordered pairs out of 16.
    CHECK(distinct_pairs(e, f) == 4);
    CHECK(distinct_pairs(e, j) == 4);
    CHECK(distinct_pairs(f, j) == 4);
    CHECK_FALSE(are_orthogonal(e, f));
    CHECK_FALSE(are_orthogonal(e, j));
    CHECK_FALSE(are_orthogonal(f, j));
}

TEST_CASE("are_orthogonal positive cases from the affine family") {
    OrthogonalFamily fam = generate_mols(5);
    CHECK(are_orthogonal(fam.square(0), fam.square(1)));
    CHECK(are_orthogonal(fam.square(1), fam.square(3)));
    CHECK(distinct_pairs(fam.square(0), fam.square(3)) == 25);
    CHECK_FALSE(are_orthogonal(fam.square(2), fam.square(2)));
    CHECK_THROWS_AS(are_orthogonal(fam.square(0), square_e()),
                    std::invalid_argument);
}

TEST_CASE("cut_rectangle basics") {
    LatinSquare e = square_e();
    LatinRectangle r = cut_rectangle(e, 2, 4);
    CHECK(r.rows() == 2);
    CHECK(r.cols() == 4);
    CHECK(r.alphabet_size() == 4);
    std::vector<int> expect = {0, 1, 2, 3, 1, 2, 3, 0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) CHECK(r.at(i, j) == expect[i * 4 + j]);

    // full cut reproduces the square
    LatinRectangle full = cut_rectangle(e, 4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(full.at(i, j) == e.at(i, j));

    CHECK_THROWS_AS(cut_rectangle(e, 5, 4), std::invalid_argument);
    CHECK_THROWS_AS(cut_rectangle(e, 4, 5), std::invalid_argument);
    CHECK_THROWS_AS(cut_rectangle(e, 0, 4), std::invalid_argument);
}

TEST_CASE("cut_rectangle 16x12 from the order-17 family") {
    OrthogonalFamily fam = generate_mols(17);
    for (std::size_t a = 0; a < fam.size(); ++a) {
        LatinRectangle r = cut_rectangle(fam.square(a), 16, 12,
                                         static_cast<int>(a));
        CHECK(r.rows() == 16);
        CHECK(r.cols() == 12);
        CHECK(r.source_index() == static_cast<int>(a));
        // rows distinct, columns distinct (Latin property survives the cut)
        for (int i = 0; i < 16; ++i) {
            std::set<int> row;
            for (int j = 0; j < 12; ++j) row.insert(r.at(i, j));
            CHECK(row.size() == 12);
        }
        for (int j = 0; j < 12; ++j) {
            std::set<int> col;
            for (int i = 0; i < 16; ++i) col.insert(r.at(i, j));
            CHECK(col.size() == 16);
        }
    }
}

TEST_CASE("pattern_of symbol 1 in E") {
    LatinRectangle r = cut_rectangle(square_e(), 4, 4);
    TransmissionPattern p = pattern_of(r, 1);
    CHECK(p.symbol == 1);
    std::vector<Hop> expect = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
    CHECK(p.hops == expect);
}

TEST_CASE("pattern_of covers each symbol q times in a full square") {
    OrthogonalFamily fam = generate_mols(7);
    LatinRectangle r = cut_rectangle(fam.square(3), 7, 7);
    std::set<std::pair<int, int>> cells;
    for (int s = 0; s < 7; ++s) {
        TransmissionPattern p = pattern_of(r, s);
        CHECK(p.hops.size() == 7);
        CHECK(std::is_sorted(p.hops.begin(), p.hops.end()));
        for (const Hop& h : p.hops) cells.insert({h.channel, h.slot});
    }
    // patterns of distinct symbols partition the grid
    CHECK(cells.size() == 49);
    CHECK_THROWS_AS(pattern_of(r, 7), std::invalid_argument);
    CHECK_THROWS_AS(pattern_of(r, -1), std::invalid_argument);
}

TEST_CASE("pattern sizes in a truncated rectangle") {
    OrthogonalFamily fam = generate_mols(17);
    LatinRectangle r = cut_rectangle(fam.square(0), 16, 12);
    int total = 0;
    for (int s = 0; s < 17; ++s) {
        TransmissionPattern p = pattern_of(r, s);
        // each of the 16 rows holds the symbol at most once
        CHECK(p.hops.size() <= 16);
        total += static_cast<int>(p.hops.size());
    }
    CHECK(total == 16 * 12);
}

TEST_CASE("overlap_count on worked example patterns") {
    LatinRectangle re = cut_rectangle(square_e(), 4, 4);
    LatinRectangle rf = cut_rectangle(square_f(), 4, 4);
    LatinRectangle rj = cut_rectangle(square_j(), 4, 4);
    TransmissionPattern pu = pattern_of(re, 1);  // B in E
    TransmissionPattern pv = pattern_of(rf, 2);  // R in F
    TransmissionPattern pw = pattern_of(rj, 0);  // G in J
    CHECK(overlap_count(pu, pv) == 0);
    CHECK(overlap_count(pu, pw) == 0);
    CHECK(overlap_count(pv, pw) == 0);
    CHECK(overlap_count(pu, pu) == 4);
}

TEST_CASE("overlap_count across a genuine orthogonal pair is at most 1") {
    OrthogonalFamily fam = generate_mols(5);
    LatinRectangle ra = cut_rectangle(fam.square(0), 5, 5);
    LatinRectangle rb = cut_rectangle(fam.square(2), 5, 5);
    for (int s = 0; s < 5; ++s)
        for (int t = 0; t < 5; ++t) {
            // full squares: cross-rectangle patterns meet in exactly one cell
            CHECK(overlap_count(pattern_of(ra, s), pattern_of(rb, t)) == 1);
            if (s != t)
                CHECK(overlap_count(pattern_of(ra, s), pattern_of(ra, t)) == 0);
        }
    TransmissionPattern small = pattern_of(cut_rectangle(fam.square(0), 4, 3), 0);
    CHECK_THROWS_AS(overlap_count(small, pattern_of(ra, 0)),
                    std::invalid_argument);
}

TEST_CASE("rectangle serialization round-trips bit-exactly") {
    OrthogonalFamily fam = generate_mols(17);
    LatinRectangle r = cut_rectangle(fam.square(4), 16, 12, 4);
    std::ostringstream out;
    write_rectangle(out, r);
    std::string text = out.str();

    // header carries "q M' FL index"
    std::istringstream header(text);
    int q, rows, cols, index;
    header >> q >> rows >> cols >> index;
    CHECK(q == 17);
    CHECK(rows == 16);
    CHECK(cols == 12);
    CHECK(index == 4);

    std::istringstream in(text);
    LatinRectangle back = read_rectangle(in);
    CHECK(back == r);
    CHECK(back.source_index() == 4);

    std::ostringstream out2;
    write_rectangle(out2, back);
    CHECK(out2.str() == text);
}

TEST_CASE("family serialization round-trips") {
    OrthogonalFamily fam = generate_mols(7);
    std::ostringstream out;
    write_family_rectangles(out, fam, 6, 5);
    std::istringstream in(out.str());
    std::vector<LatinRectangle> rects = read_rectangles(in);
    REQUIRE(rects.size() == 6);
    for (std::size_t a = 0; a < rects.size(); ++a)
        CHECK(rects[a] == cut_rectangle(fam.square(a), 6, 5,
                                        static_cast<int>(a)));
}

TEST_CASE("read_rectangle rejects malformed input") {
    std::istringstream truncated("5 2 3 0\n0 1 2\n0 1");
    CHECK_THROWS_AS(read_rectangle(truncated), std::runtime_error);
    std::istringstream bad_symbol("3 2 2 0\n0 1\n1 9\n");
    CHECK_THROWS_AS(read_rectangle(bad_symbol), std::invalid_argument);
    std::istringstream repeated_row("3 2 2 0\n0 0\n1 1\n");
    CHECK_THROWS_AS(read_rectangle(repeated_row), std::invalid_argument);
}
