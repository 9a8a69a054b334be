#pragma once

#include <cmath>
#include <cstdint>

#include "gfusion/numerics.hpp"

namespace testing
{
using gfusion::Complex;
using gfusion::Matrix;
using gfusion::Vector;

// splitmix64: a test-only generator, independent of the library Rng.
class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double real(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int integer(int lo, int hi)
    {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Complex complex() { return {real(-1, 1), real(-1, 1)}; }
    Matrix matrix(int rows, int cols)
    {
        Matrix m(rows, cols);
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r)
                m(r, c) = complex();
        return m;
    }
    Vector vector(int n) { return matrix(n, 1).col(0); }
    Matrix hermitian(int n)
    {
        Matrix m = matrix(n, n);
        return m + m.adjoint();
    }

  private:
    std::uint64_t state_;
};

// Cyclic shift e_j -> e_{j+1 mod n}, built entrywise.
inline Matrix shift(int n, int power = 1)
{
    Matrix c = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
    {
        int const i = ((j + power) % n + n) % n;
        c(i, j) = 1;
    }
    return c;
}

// Largest eigenvalue of a Hermitian PSD matrix by power iteration.
inline double power_iteration(Matrix const& s, int iterations = 2000)
{
    Gen gen(7);
    Vector v = gen.vector(static_cast<int>(s.rows()));
    v.normalize();
    double lambda = 0;
    for (int i = 0; i < iterations; ++i)
    {
        Vector w = s * v;
        double const norm = w.norm();
        if (norm == 0)
            return 0;
        lambda = v.dot(w).real();
        v = w / norm;
    }
    return lambda;
}

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace testing
