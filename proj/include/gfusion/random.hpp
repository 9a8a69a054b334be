#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "numerics.hpp"

namespace gfusion
{

//! Seed used for probe-based contracts unless the caller supplies one.
inline constexpr std::uint64_t kDefaultSeed = 42;
//! Number of random unit probes used by reconstruction contracts.
inline constexpr int kProbeCount = 100;

//! Seeded source of complex Gaussian samples; deterministic in the seed.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal();
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);  // inclusive
    Complex complex_normal();

    Vector gaussian_vector(int n);
    Vector unit_vector(int n);
    Matrix gaussian_matrix(int rows, int cols);
    //! Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
    Matrix unitary(int n);

  private:
    std::mt19937_64 engine_;
};

//! `count` random unit vectors of length n drawn from a fresh Rng(seed).
std::vector<Vector> probe_vectors(int n, int count, std::uint64_t seed);

}  // namespace gfusion
