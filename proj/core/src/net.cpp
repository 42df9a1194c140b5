#include "qmc/net.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qmc/errors.hpp"

namespace qmc {

void GeneratorMatrixSet::validate() const {
    if (d < 1 || n < 1 || alpha < 1) throw ConfigError("matrix set: need d, n, alpha >= 1");
    if (n > 64) throw ConfigError("matrix set: n > 64 not supported");
    if (static_cast<int>(matrices.size()) != d)
        throw ConfigError("matrix set: expected " + std::to_string(d) + " matrices");
    for (const auto& m : matrices)
        if (m.rows() != static_cast<std::size_t>(alpha * n) ||
            m.cols() != static_cast<std::size_t>(n))
            throw ConfigError("matrix set: every matrix must be (alpha*n) x n");
}

namespace {

enum class LineKind { Header, MatrixRow, Skip };

LineKind classify(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        if (c == '#') return LineKind::Skip;
        return LineKind::MatrixRow;  // may still be the header; caller decides
    }
    return LineKind::Skip;
}

std::string strip(const std::string& line) {
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return line.substr(b, e - b + 1);
}

}  // namespace

GeneratorMatrixSet parse_matrix_file(std::istream& in) {
    GeneratorMatrixSet g;
    std::string line;
    bool have_header = false;
    int rows_needed = 0;
    std::vector<std::string> current;
    int line_no = 0;

    auto fail = [&](const std::string& what) {
        throw ConfigError("matrix file, line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (classify(line) == LineKind::Skip) {
            if (!current.empty()) fail("comment or blank line inside a matrix block");
            continue;
        }
        const std::string body = strip(line);
        if (!have_header) {
            std::istringstream hs(body);
            if (!(hs >> g.d >> g.n >> g.alpha)) fail("expected header 'd n alpha'");
            std::string rest;
            if (hs >> rest) fail("trailing content after header");
            if (g.d < 1 || g.n < 1 || g.alpha < 1) fail("d, n, alpha must be >= 1");
            if (g.n > 64) fail("n > 64 not supported");
            have_header = true;
            rows_needed = g.alpha * g.n;
            continue;
        }
        if (static_cast<int>(g.matrices.size()) == g.d) fail("content after the last matrix");
        if (static_cast<int>(body.size()) != g.n) fail("matrix row must have exactly n characters");
        if (body.find_first_not_of("01") != std::string::npos)
            fail("matrix row may contain only 0 and 1");
        current.push_back(body);
        if (static_cast<int>(current.size()) == rows_needed) {
            g.matrices.push_back(BitMatrix::from_strings(current));
            current.clear();
        }
    }
    if (!have_header) throw ConfigError("matrix file: missing header");
    if (!current.empty())
        throw ConfigError("matrix file: truncated matrix block (" +
                          std::to_string(current.size()) + " of " + std::to_string(rows_needed) +
                          " rows)");
    if (static_cast<int>(g.matrices.size()) != g.d)
        throw ConfigError("matrix file: expected " + std::to_string(g.d) + " matrices, found " +
                          std::to_string(g.matrices.size()));
    g.validate();
    return g;
}

GeneratorMatrixSet load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file: " + path);
    return parse_matrix_file(in);
}

void write_matrix_file(std::ostream& out, const GeneratorMatrixSet& g, const std::string& comment) {
    g.validate();
    if (!comment.empty()) out << "# " << comment << '\n';
    out << g.d << ' ' << g.n << ' ' << g.alpha << '\n';
    for (int i = 0; i < g.d; ++i) {
        out << '\n';
        const auto& m = g.matrices[i];
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) out << (m.get(r, c) ? '1' : '0');
            out << '\n';
        }
    }
}

PointSet net_points(const GeneratorMatrixSet& g) {
    g.validate();
    if (g.n > 26) throw BudgetError("net_points: 2^n points with n > 26 refused");
    const int m = g.alpha * g.n;
    const std::uint64_t N = std::uint64_t{1} << g.n;

    std::vector<std::vector<std::uint64_t>> rows(g.d);
    for (int i = 0; i < g.d; ++i) {
        rows[i].resize(m);
        for (int j = 0; j < m; ++j) rows[i][j] = g.matrices[i].row_word(j);
    }

    PointSet out(g.d);
    out.reserve(N);
    std::vector<Rational> pt(g.d);
    for (std::uint64_t k = 0; k < N; ++k) {
        for (int i = 0; i < g.d; ++i) {
            Rational& x = pt[i];
            mpq_set_ui(x.raw(), 0, 1);
            mpz_ptr num = mpq_numref(x.raw());
            for (int j = 1; j <= m; ++j) {
                // digit j of coordinate i: parity of row j against the index digits
                if (std::popcount(rows[i][j - 1] & k) & 1)
                    mpz_setbit(num, static_cast<mp_bitcnt_t>(m - j));
            }
            mpz_ptr den = mpq_denref(x.raw());
            mpz_set_ui(den, 1);
            mpz_mul_2exp(den, den, static_cast<mp_bitcnt_t>(m));
            mpq_canonicalize(x.raw());
        }
        out.append(pt);
    }
    return out;
}

namespace {

// Digit expansion of a dyadic rational in [0,1): digits[l-1] is digit l.
std::vector<bool> dyadic_digits(const Rational& x) {
    if (x.sign() < 0 || x >= Rational(1))
        throw ConfigError("interlace: coordinate outside [0,1)");
    mpz_srcptr den = mpq_denref(x.raw());
    if (mpz_popcount(den) != 1) throw ConfigError("interlace: non-dyadic coordinate");
    const auto e = static_cast<std::size_t>(mpz_sizeinbase(den, 2) - 1);
    mpz_srcptr num = mpq_numref(x.raw());
    std::vector<bool> digits(e, false);
    for (std::size_t l = 1; l <= e; ++l)
        digits[l - 1] = mpz_tstbit(num, static_cast<mp_bitcnt_t>(e - l)) != 0;
    return digits;
}

}  // namespace

PointSet interlace(const PointSet& p, int alpha) {
    if (alpha < 1) throw ConfigError("interlace: alpha must be >= 1");
    if (p.dim() % alpha != 0)
        throw ConfigError("interlace: column count not divisible by alpha");
    const int d_out = p.dim() / alpha;

    PointSet out(d_out);
    out.reserve(p.size());
    std::vector<Rational> pt(d_out);
    for (std::size_t k = 0; k < p.size(); ++k) {
        for (int i = 0; i < d_out; ++i) {
            std::size_t max_digits = 0;
            std::vector<std::vector<bool>> streams(alpha);
            for (int s = 1; s <= alpha; ++s) {
                streams[s - 1] = dyadic_digits(p.at(k, i * alpha + s - 1));
                max_digits = std::max(max_digits, streams[s - 1].size());
            }
            const std::size_t m_out = max_digits * static_cast<std::size_t>(alpha);
            Rational& x = pt[i];
            mpq_set_ui(x.raw(), 0, 1);
            mpz_ptr num = mpq_numref(x.raw());
            for (int s = 1; s <= alpha; ++s) {
                const auto& digits = streams[s - 1];
                for (std::size_t l = 1; l <= digits.size(); ++l) {
                    if (!digits[l - 1]) continue;
                    const std::size_t pos = (l - 1) * alpha + s;
                    mpz_setbit(num, static_cast<mp_bitcnt_t>(m_out - pos));
                }
            }
            if (m_out > 0) {
                mpz_ptr den = mpq_denref(x.raw());
                mpz_set_ui(den, 1);
                mpz_mul_2exp(den, den, static_cast<mp_bitcnt_t>(m_out));
                mpq_canonicalize(x.raw());
            }
        }
        out.append(pt);
    }
    return out;
}

GeneratorMatrixSet interlace_matrices(const GeneratorMatrixSet& base, int alpha) {
    base.validate();
    if (base.alpha != 1) throw ConfigError("interlace_matrices: base must have alpha = 1");
    if (alpha < 1 || base.d % alpha != 0)
        throw ConfigError("interlace_matrices: d not divisible by alpha");
    GeneratorMatrixSet g;
    g.d = base.d / alpha;
    g.n = base.n;
    g.alpha = alpha;
    for (int i = 1; i <= g.d; ++i) {
        BitMatrix m(static_cast<std::size_t>(alpha) * base.n, base.n);
        for (int l = 1; l <= base.n; ++l)
            for (int s = 1; s <= alpha; ++s) {
                const auto& src = base.matrices[(i - 1) * alpha + s - 1];
                const std::size_t r_out = static_cast<std::size_t>((l - 1) * alpha + s - 1);
                for (int c = 0; c < base.n; ++c)
                    m.set(r_out, c, src.get(l - 1, c));
            }
        g.matrices.push_back(std::move(m));
    }
    return g;
}

Rational truncate_digits(const Rational& x, int n) {
    if (n < 0) throw ConfigError("truncate_digits: negative digit count");
    Rational r;
    mpz_ptr num = mpq_numref(r.raw());
    mpz_mul_2exp(num, mpq_numref(x.raw()), static_cast<mp_bitcnt_t>(n));
    mpz_fdiv_q(num, num, mpq_denref(x.raw()));
    mpz_ptr den = mpq_denref(r.raw());
    mpz_set_ui(den, 1);
    mpz_mul_2exp(den, den, static_cast<mp_bitcnt_t>(n));
    mpq_canonicalize(r.raw());
    return r;
}

PointSet truncate_digits(const PointSet& p, int n) {
    PointSet out(p.dim());
    out.reserve(p.size());
    std::vector<Rational> pt(p.dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (int c = 0; c < p.dim(); ++c) pt[c] = truncate_digits(p.at(i, c), n);
        out.append(pt);
    }
    return out;
}

PointSet sequence_to_net(const PointSet& p, int n) {
    if (n < 0 || n > 62) throw ConfigError("sequence_to_net: n out of range");
    if (p.size() != (std::uint64_t{1} << n))
        throw ConfigError("sequence_to_net: point count must be exactly 2^n");
    PointSet out(p.dim() + 1);
    out.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        std::vector<Rational> pt;
        pt.reserve(p.dim() + 1);
        for (int c = 0; c < p.dim(); ++c) pt.push_back(truncate_digits(p.at(k, c), n));
        pt.push_back(Rational::dyadic(k, static_cast<unsigned>(n)));
        out.append(std::move(pt));
    }
    return out;
}

int interlaced_t_bound(int t_tilde, int alpha, int d) {
    if (t_tilde < 0 || d < 0 || alpha < 1)
        throw ConfigError("interlaced_t_bound: bad arguments");
    return alpha * t_tilde + d * alpha * (alpha - 1) / 2;
}

namespace {

struct Selection {
    int weight = 0;
    std::vector<int> rows;  // 1-based row indices
};

// Canonical reduced selections for one coordinate: either fewer than alpha
// descending indices (all of them count toward the weight), or exactly alpha
// top indices followed by the forced consecutive tail j_alpha-1, ..., capped
// at n rows total. When the full tail does not fit, every maximal tail is
// enumerated (the forced-tail shortcut needs the full run to be dominant).
std::vector<Selection> coordinate_selections(int alpha, int n) {
    const int m = alpha * n;
    std::vector<Selection> out;
    out.push_back({});  // empty: skip this coordinate

    std::vector<int> tuple;
    auto descending_tuples = [&](auto&& self, int count, int max_index, int weight) -> void {
        if (count == 0) {
            if (static_cast<int>(tuple.size()) < alpha) {
                out.push_back({weight, tuple});
                return;
            }
            // exactly alpha indices: attach the forced tail below j_alpha
            const int j_alpha = tuple.back();
            const int avail = j_alpha - 1;
            const int budget = n - alpha;
            if (avail <= budget) {
                Selection sel{weight, tuple};
                for (int r = avail; r >= 1; --r) sel.rows.push_back(r);
                out.push_back(std::move(sel));
            } else {
                // choose which avail-budget of the candidates to drop
                std::vector<int> keep;
                auto choose = [&](auto&& chooser, int from, int need) -> void {
                    if (need == 0) {
                        Selection sel{weight, tuple};
                        sel.rows.insert(sel.rows.end(), keep.begin(), keep.end());
                        out.push_back(std::move(sel));
                        return;
                    }
                    for (int r = from; r >= need; --r) {
                        keep.push_back(r);
                        chooser(chooser, r - 1, need - 1);
                        keep.pop_back();
                    }
                };
                choose(choose, avail, budget);
            }
            return;
        }
        for (int j = max_index; j >= count; --j) {
            if (weight + j > m) continue;
            tuple.push_back(j);
            self(self, count - 1, j - 1, weight + j);
            tuple.pop_back();
        }
    };

    // nu < alpha: plain tuples (all indices weigh in); nu = alpha: tuples
    // with forced tails. nu > alpha adds only dominated selections.
    const int max_nu = std::min(alpha, n);
    for (int nu = 1; nu <= max_nu; ++nu) descending_tuples(descending_tuples, nu, m, 0);

    std::sort(out.begin(), out.end(),
              [](const Selection& a, const Selection& b) { return a.weight < b.weight; });
    return out;
}

}  // namespace

int minimal_t(const GeneratorMatrixSet& g) {
    g.validate();
    const int m = g.alpha * g.n;
    if (m > 24) throw BudgetError("minimal_t: alpha*n > 24 exceeds the search budget");

    const auto sels = coordinate_selections(g.alpha, g.n);

    // row words per matrix
    std::vector<std::vector<std::uint64_t>> rows(g.d);
    for (int i = 0; i < g.d; ++i) {
        rows[i].resize(m);
        for (int j = 0; j < m; ++j) rows[i][j] = g.matrices[i].row_word(j);
    }

    int best = m + 1;  // lowest weight of a dependent selection found so far
    Gf2Basis basis;
    std::uint64_t pushes = 0;
    constexpr std::uint64_t kPushBudget = 200'000'000;

    auto dfs = [&](auto&& self, int coord, int weight) -> void {
        if (coord == g.d) return;
        for (const auto& sel : sels) {
            const int w2 = weight + sel.weight;
            if (w2 >= best || w2 > m) break;  // selections are weight-sorted
            if (sel.rows.empty()) {
                self(self, coord + 1, w2);
                continue;
            }
            int pushed = 0;
            bool dependent = false;
            for (int j : sel.rows) {
                if (++pushes > kPushBudget)
                    throw BudgetError("minimal_t: search budget exceeded");
                if (basis.push(rows[coord][j - 1])) {
                    ++pushed;
                } else {
                    dependent = true;
                    break;
                }
            }
            if (dependent) {
                best = w2;
            } else {
                self(self, coord + 1, w2);
            }
            while (pushed-- > 0) basis.pop();
        }
    };
    dfs(dfs, 0, 0);

    return best > m ? 0 : m - best + 1;
}

std::uint64_t scaled_floor_pow2(const Rational& x, int n) {
    if (n < 0 || n > 63) throw ConfigError("scaled_floor_pow2: n out of range");
    mpz_t t;
    mpz_init(t);
    mpz_mul_2exp(t, mpq_numref(x.raw()), static_cast<mp_bitcnt_t>(n));
    mpz_fdiv_q(t, t, mpq_denref(x.raw()));
    if (mpz_sgn(t) < 0 || mpz_sizeinbase(t, 2) > 64) {
        mpz_clear(t);
        throw ConfigError("scaled_floor_pow2: value out of range");
    }
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, 1, sizeof(r), 0, 0, t);
    mpz_clear(t);
    return r;
}

}  // namespace qmc
