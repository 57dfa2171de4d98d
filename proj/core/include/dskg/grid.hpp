#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dskg {

/// Periodic box [0,L)^n sampled on N points per axis.
///
/// Lattice points are x_j = j L / N and wavenumbers xi_k = 2 pi k / L with
/// k in {-N/2, ..., N/2 - 1} per axis. The box stands in for R^n: with the
/// extent rule L >= 2 (r_support + c T sup_t e^{-Ht}), finite propagation
/// speed keeps supports from wrapping within the simulated horizon.
struct Grid {
    int n = 1;        // dimension, 1..3
    int N = 64;       // points per axis, even, >= 4
    double L = 1.0;   // box extent per axis

    void validate() const;
    std::size_t size() const;            // N^n
    double dx() const { return L / N; }
    double cell_volume() const;          // (L/N)^n
    // signed integer index along one axis for flat position i in [0,N)
    int axis_wave_index(int i) const { return i < N / 2 ? i : i - N; }

    bool operator==(const Grid&) const = default;
};

/// Real-valued lattice samples of a field u(t, .).
struct Field {
    Grid grid;
    std::vector<double> samples;  // size grid.size()

    static Field zeros(const Grid& g);
    bool all_finite() const;
};

/// Fourier coefficients of a real field; Hermitian-symmetric by construction
/// since every physical field here is real-valued.
struct SpectralField {
    Grid grid;
    std::vector<std::complex<double>> coeffs;  // size grid.size(), FFTW layout

    static SpectralField zeros(const Grid& g);
};

}  // namespace dskg
