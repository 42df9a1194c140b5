#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "qmc/errors.hpp"
#include "qmc/net.hpp"
#include "qmc/pointsets.hpp"
#include "qmc/rng.hpp"

using qmc::BitMatrix;
using qmc::GeneratorMatrixSet;
using qmc::PointSet;
using qmc::Rational;

namespace {

GeneratorMatrixSet square_set(std::vector<BitMatrix> ms, int n) {
    GeneratorMatrixSet g;
    g.d = static_cast<int>(ms.size());
    g.n = n;
    g.alpha = 1;
    g.matrices = std::move(ms);
    return g;
}

BitMatrix crop(const BitMatrix& m, int n) {
    BitMatrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.set(r, c, m.get(r, c));
    return out;
}

// next composition of `total` into parts.size() nonnegative parts
bool next_composition(std::vector<int>& parts, int total) {
    int d = static_cast<int>(parts.size());
    for (int i = d - 2; i >= 0; --i) {
        if (parts[i] > 0) {
            --parts[i];
            int tail = 0;
            for (int j = i + 1; j < d; ++j) {
                tail += parts[j];
                parts[j] = 0;
            }
            parts[i + 1] = tail + 1;
            return true;
        }
    }
    return false;
}

bool boxes_uniform(const PointSet& p, int n, int t) {
    const int d = p.dim();
    std::vector<int> parts(d, 0);
    parts[0] = n - t;
    do {
        std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::vector<std::uint64_t> box(d);
            for (int c = 0; c < d; ++c) box[c] = qmc::scaled_floor_pow2(p.at(i, c), parts[c]);
            ++counts[box];
        }
        const std::uint64_t want = std::uint64_t{1} << t;
        std::uint64_t boxes = std::uint64_t{1} << (n - t);
        if (counts.size() != boxes) return false;
        for (const auto& [box, cnt] : counts)
            if (cnt != want) return false;
    } while (next_composition(parts, n - t));
    return true;
}

// smallest t whose elementary boxes all hold exactly 2^t points
int box_count_t(const PointSet& p, int n) {
    for (int t = 0; t < n; ++t)
        if (boxes_uniform(p, n, t)) return t;
    return n;
}

// test-only inverse of digit interlacing
PointSet deinterlace(const PointSet& p, int alpha, int n) {
    PointSet out(p.dim() * alpha);
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<Rational> pt;
        for (int c = 0; c < p.dim(); ++c) {
            std::uint64_t bits = qmc::scaled_floor_pow2(p.at(i, c), alpha * n);
            for (int s = 1; s <= alpha; ++s) {
                std::uint64_t v = 0;
                for (int l = 1; l <= n; ++l) {
                    int pos = (l - 1) * alpha + s;  // 1-indexed from the point
                    std::uint64_t digit = (bits >> (alpha * n - pos)) & 1;
                    v |= digit << (n - l);
                }
                pt.push_back(Rational::dyadic(v, static_cast<unsigned>(n)));
            }
        }
        out.append(std::move(pt));
    }
    return out;
}

PointSet one_point(std::vector<Rational> coords) {
    PointSet p(static_cast<int>(coords.size()));
    p.append(std::move(coords));
    return p;
}

}  // namespace

TEST_CASE("net points from the identity matrix follow van der Corput") {
    GeneratorMatrixSet g = square_set({BitMatrix::identity(3)}, 3);
    PointSet p = qmc::net_points(g);
    REQUIRE(p.size() == 8);
    CHECK(p.at(1, 0) == Rational(1, 2));
    CHECK(p.at(3, 0) == Rational(3, 4));  // digits 1,1,0 -> 0.110
    for (std::uint64_t k = 0; k < 8; ++k) CHECK(p.at(k, 0) == qmc::van_der_corput(k, 3));
}

TEST_CASE("identity and reversal give the Halton pair") {
    GeneratorMatrixSet g = square_set({BitMatrix::identity(6), BitMatrix::reversal(6)}, 6);
    PointSet p = qmc::net_points(g);
    CHECK(p.same_multiset(qmc::halton2d(6)));

    // swapped order pairs k/64 with vdc(k) in generation order
    GeneratorMatrixSet h = square_set({BitMatrix::reversal(6), BitMatrix::identity(6)}, 6);
    CHECK(qmc::net_points(h) == qmc::halton2d(6));
}

TEST_CASE("net point denominators divide 2^(alpha n)") {
    GeneratorMatrixSet base = square_set({BitMatrix::identity(4), BitMatrix::reversal(4)}, 4);
    GeneratorMatrixSet g = qmc::interlace_matrices(base, 2);
    PointSet p = qmc::net_points(g);
    Rational scale = qmc::pow(Rational(2), 8);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int c = 0; c < p.dim(); ++c) CHECK((p.at(i, c) * scale).den_is_one());
}

TEST_CASE("interlace merges digit streams") {
    CHECK(qmc::interlace(one_point({Rational(1, 2), Rational(1, 2)}), 2) ==
          one_point({Rational(3, 4)}));
    CHECK(qmc::interlace(one_point({Rational(1, 2), Rational(0)}), 2) ==
          one_point({Rational(1, 2)}));

    PointSet p = qmc::halton2d(3);
    CHECK(qmc::interlace(p, 1) == p);

    CHECK_THROWS_AS(qmc::interlace(one_point({Rational(1, 3), Rational(0)}), 2),
                    qmc::ConfigError);
    CHECK_THROWS_AS(qmc::interlace(qmc::halton2d(2), 3), qmc::ConfigError);
}

TEST_CASE("matrix interlacing matches point interlacing") {
    qmc::SplitMix64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 3, alpha = 2, d = 2;
        GeneratorMatrixSet base;
        base.d = alpha * d;
        base.n = n;
        base.alpha = 1;
        for (int i = 0; i < base.d; ++i) {
            BitMatrix m(n, n);
            for (int r = 0; r < n; ++r) m.set_row_word(r, rng.next_below(1u << n));
            base.matrices.push_back(m);
        }
        GeneratorMatrixSet inter = qmc::interlace_matrices(base, alpha);
        CHECK(inter.alpha == alpha);
        CHECK(inter.d == d);
        CHECK(inter.matrices[0].rows() == static_cast<std::size_t>(alpha * n));
        CHECK(qmc::net_points(inter) == qmc::interlace(qmc::net_points(base), alpha));
    }
}

TEST_CASE("deinterlacing inverts interlacing") {
    GeneratorMatrixSet base = square_set(
        {BitMatrix::identity(4), BitMatrix::reversal(4), BitMatrix::identity(4),
         BitMatrix::reversal(4)},
        4);
    PointSet p = qmc::net_points(base);
    PointSet merged = qmc::interlace(p, 2);
    CHECK(deinterlace(merged, 2, 4) == p);
}

TEST_CASE("digit truncation floors to the grid") {
    CHECK(qmc::truncate_digits(Rational(7, 10), 2) == Rational(1, 2));
    CHECK(qmc::truncate_digits(Rational(3, 8), 3) == Rational(3, 8));
    CHECK(qmc::truncate_digits(Rational(1, 3), 2) == Rational(1, 4));
}

TEST_CASE("sequence_to_net appends the counter coordinate") {
    PointSet p(1);
    p.append({Rational(0)});
    p.append({Rational(1, 2)});
    PointSet lifted = qmc::sequence_to_net(p, 1);
    REQUIRE(lifted.dim() == 2);
    CHECK(lifted.at(0, 0) == Rational(0));
    CHECK(lifted.at(0, 1) == Rational(0));
    CHECK(lifted.at(1, 0) == Rational(1, 2));
    CHECK(lifted.at(1, 1) == Rational(1, 2));

    PointSet vdc(1);
    for (std::uint64_t k = 0; k < 4; ++k) vdc.append({qmc::van_der_corput(k, 2)});
    PointSet ham = qmc::sequence_to_net(vdc, 2);
    for (std::uint64_t k = 0; k < 4; ++k) {
        CHECK(ham.at(k, 0) == qmc::van_der_corput(k, 2));
        CHECK(ham.at(k, 1) == Rational(static_cast<long>(k), 4));
    }

    PointSet three(1);
    three.append({Rational(0)});
    three.append({Rational(1, 4)});
    three.append({Rational(1, 2)});
    CHECK_THROWS_AS(qmc::sequence_to_net(three, 2), qmc::ConfigError);
}

TEST_CASE("minimal_t on reference matrices") {
    CHECK(qmc::minimal_t(square_set({BitMatrix::identity(4)}, 4)) == 0);
    CHECK(qmc::minimal_t(square_set({BitMatrix::identity(6)}, 6)) == 0);
    CHECK(qmc::minimal_t(square_set({BitMatrix::identity(4), BitMatrix::reversal(4)}, 4)) == 0);
    CHECK(qmc::minimal_t(square_set({BitMatrix(2, 2)}, 2)) == 2);  // all-zero rows
}

TEST_CASE("minimal_t refuses past the search budget") {
    GeneratorMatrixSet big = square_set({BitMatrix::identity(25)}, 25);
    CHECK_THROWS_AS(qmc::minimal_t(big), qmc::BudgetError);
}

TEST_CASE("minimal_t equals the elementary box count for plain nets") {
    GeneratorMatrixSet sob = qmc::load_matrix_file(QMC_DATA_DIR "/sobol_d6_n16.txt");
    for (int n = 2; n <= 8; n += 2) {
        for (int d = 1; d <= 3; ++d) {
            std::vector<BitMatrix> ms;
            for (int i = 0; i < d; ++i) ms.push_back(crop(sob.matrices[i], n));
            GeneratorMatrixSet g = square_set(std::move(ms), n);
            CHECK(qmc::minimal_t(g) == box_count_t(qmc::net_points(g), n));
        }
    }
    // a deliberately poor matrix pair must agree too
    GeneratorMatrixSet bad =
        square_set({BitMatrix::identity(4), BitMatrix::identity(4)}, 4);
    CHECK(qmc::minimal_t(bad) == box_count_t(qmc::net_points(bad), 4));
}

TEST_CASE("interlaced t stays within the closed-form bound") {
    GeneratorMatrixSet sob = qmc::load_matrix_file(QMC_DATA_DIR "/sobol_d6_n16.txt");
    for (int n = 4; n <= 6; n += 2) {
        for (int d = 1; d <= 2; ++d) {
            std::vector<BitMatrix> ms;
            for (int i = 0; i < 2 * d; ++i) ms.push_back(crop(sob.matrices[i], n));
            GeneratorMatrixSet base = square_set(std::move(ms), n);
            int t_tilde = qmc::minimal_t(base);
            GeneratorMatrixSet inter = qmc::interlace_matrices(base, 2);
            CHECK(qmc::minimal_t(inter) <= qmc::interlaced_t_bound(t_tilde, 2, d));
        }
    }
}

TEST_CASE("interlaced_t_bound closed form") {
    CHECK(qmc::interlaced_t_bound(0, 2, 3) == 3);
    CHECK(qmc::interlaced_t_bound(5, 1, 7) == 5);
    CHECK(qmc::interlaced_t_bound(1, 3, 2) == 9);
}

TEST_CASE("matrix files round trip") {
    GeneratorMatrixSet base = square_set({BitMatrix::identity(4), BitMatrix::reversal(4)}, 4);
    GeneratorMatrixSet g = qmc::interlace_matrices(base, 2);
    std::ostringstream os;
    qmc::write_matrix_file(os, g, "round trip check");
    std::istringstream is(os.str());
    GeneratorMatrixSet back = qmc::parse_matrix_file(is);
    CHECK(back.d == g.d);
    CHECK(back.n == g.n);
    CHECK(back.alpha == g.alpha);
    for (int i = 0; i < g.d; ++i) CHECK(back.matrices[i] == g.matrices[i]);
}

TEST_CASE("matrix file parser rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return qmc::parse_matrix_file(is);
    };
    CHECK_NOTHROW(parse("# ok\n1 2 1\n\n10\n01\n"));
    CHECK_THROWS_AS(parse(""), qmc::ConfigError);                      // no header
    CHECK_THROWS_AS(parse("1 2\n10\n01\n"), qmc::ConfigError);         // short header
    CHECK_THROWS_AS(parse("1 2 1 9\n10\n01\n"), qmc::ConfigError);     // long header
    CHECK_THROWS_AS(parse("1 2 1\n101\n010\n"), qmc::ConfigError);     // wrong row length
    CHECK_THROWS_AS(parse("1 2 1\n10\n0x\n"), qmc::ConfigError);       // bad character
    CHECK_THROWS_AS(parse("1 2 1\n10\n"), qmc::ConfigError);           // truncated block
    CHECK_THROWS_AS(parse("1 2 1\n10\n# mid\n01\n"), qmc::ConfigError);  // comment in block
    CHECK_THROWS_AS(parse("1 2 1\n10\n01\n11\n"), qmc::ConfigError);   // trailing rows
    CHECK_THROWS_AS(parse("2 2 1\n10\n01\n"), qmc::ConfigError);       // missing matrix
}

TEST_CASE("scaled_floor_pow2 basics") {
    CHECK(qmc::scaled_floor_pow2(Rational(1, 3), 2) == 1);  // floor(4/3)
    CHECK(qmc::scaled_floor_pow2(Rational(3, 4), 2) == 3);
    CHECK(qmc::scaled_floor_pow2(Rational(0), 5) == 0);
    CHECK(qmc::scaled_floor_pow2(Rational(1), 3) == 8);
}
