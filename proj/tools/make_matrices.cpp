// Emits the generator matrix files shipped under data/: a 6-dimensional
// order-1 Sobol set and the order-2 interlaced family used by the
// convergence experiments. Run with the output directory as the only
// argument.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qmc/bitmatrix.hpp"
#include "qmc/net.hpp"

namespace {

// Primitive polynomial degree s, interior coefficient bits a, and the first
// s odd initial direction numbers, for Sobol dimensions 2..6.
struct SobolSpec {
    int s;
    unsigned a;
    std::vector<std::uint64_t> m;
};

const SobolSpec kSobol[] = {
    {1, 0, {1}},           // dim 2: x + 1
    {2, 1, {1, 3}},        // dim 3: x^2 + x + 1
    {3, 1, {1, 3, 1}},     // dim 4: x^3 + x + 1
    {3, 2, {1, 1, 1}},     // dim 5: x^3 + x^2 + 1
    {4, 1, {1, 1, 3, 3}},  // dim 6: x^4 + x + 1
};

// Column k-1 holds the n binary digits of m_k / 2^k, most significant first.
qmc::BitMatrix sobol_matrix(int dim, int n) {
    if (dim == 1) return qmc::BitMatrix::identity(n);
    const SobolSpec& sp = kSobol[dim - 2];
    std::vector<std::uint64_t> m(sp.m);
    for (int k = sp.s + 1; k <= n; ++k) {
        std::uint64_t v = (m[k - sp.s - 1] << sp.s) ^ m[k - sp.s - 1];
        for (int i = 1; i < sp.s; ++i)
            if ((sp.a >> (sp.s - 1 - i)) & 1) v ^= m[k - i - 1] << i;
        m.push_back(v);
    }
    qmc::BitMatrix c(n, n);
    for (int k = 1; k <= n; ++k) {
        std::uint64_t vk = m[k - 1] << (n - k);
        for (int r = 0; r < n; ++r) c.set(r, k - 1, (vk >> (n - 1 - r)) & 1);
    }
    return c;
}

void write_file(const std::filesystem::path& path, const qmc::GeneratorMatrixSet& g,
                const std::string& comment) {
    g.validate();
    std::ofstream os(path);
    if (!os) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(1);
    }
    qmc::write_matrix_file(os, g, comment);
    std::cout << "wrote " << path.string() << "  (d = " << g.d << ", n = " << g.n
              << ", alpha = " << g.alpha << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path outdir = argc > 1 ? argv[1] : ".";
    std::filesystem::create_directories(outdir);

    {
        qmc::GeneratorMatrixSet g;
        g.d = 6;
        g.n = 16;
        g.alpha = 1;
        for (int dim = 1; dim <= 6; ++dim) g.matrices.push_back(sobol_matrix(dim, g.n));
        write_file(outdir / "sobol_d6_n16.txt", g,
                   "Sobol generator matrices, dimensions 1-6 (dimension 1 = identity)");
    }

    for (int n = 6; n <= 12; ++n) {
        qmc::GeneratorMatrixSet base;
        base.d = 4;
        base.n = n;
        base.alpha = 1;
        base.matrices.push_back(sobol_matrix(1, n));
        base.matrices.push_back(sobol_matrix(2, n));
        base.matrices.push_back(sobol_matrix(3, n));
        base.matrices.push_back(qmc::BitMatrix::reversal(n));
        qmc::GeneratorMatrixSet g = qmc::interlace_matrices(base, 2);
        char name[32];
        std::snprintf(name, sizeof name, "order2_d2_n%02d.txt", n);
        write_file(outdir / name, g,
                   "order-2 digit interlacing of [identity, Sobol dim 2, Sobol dim 3, "
                   "digit reversal]");
    }

    {
        qmc::GeneratorMatrixSet g;
        g.d = 2;
        g.n = 4;
        g.alpha = 1;
        g.matrices.push_back(qmc::BitMatrix::identity(4));
        g.matrices.push_back(qmc::BitMatrix::reversal(4));
        write_file(outdir / "example_d2_n04.txt", g,
                   "small example: van der Corput paired with the binary counter");
    }
    return 0;
}
