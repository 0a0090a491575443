#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace backfrac::spectral {

// Uniform tensor grid on (0,pi)^dim with composite-trapezoid quadrature
// weights. 1D grids leave `ys` empty; 2D fields are stored row-major,
// node index = ix * ys.size() + iy.
struct Grid {
    int dim = 1;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> weights;  // flattened, one per node

    std::size_t nodes() const { return weights.size(); }
};

struct Mode {
    int n = 0;       // x-index (1-based)
    int m = 0;       // y-index, 0 in 1D
    double lambda = 0.0;
};

// Dirichlet Laplacian eigensystem on (0,pi) or (0,pi)^2, closed-form
// eigenpairs, modes sorted by (lambda, n, m). Immutable after construction.
class EigenSystem {
  public:
    EigenSystem(std::shared_ptr<const Grid> grid, std::vector<Mode> modes);

    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
    const std::vector<Mode>& modes() const { return modes_; }
    std::size_t mode_count() const { return modes_.size(); }
    double lambda(std::size_t k) const { return modes_[k].lambda; }

    // phi_k evaluated at flattened grid node `node`.
    double eigenfunction(std::size_t k, std::size_t node) const;

  private:
    std::shared_ptr<const Grid> grid_;
    std::vector<Mode> modes_;
    // sin(n x_i) tables per distinct order, indexed [n-1][i]
    std::vector<std::vector<double>> sin_x_, sin_y_;
};

std::shared_ptr<const EigenSystem> laplacian_1d(int n_modes, int n_grid = 201);
std::shared_ptr<const EigenSystem> laplacian_2d(int n_max, int m_max, int n_grid = 101);

struct GridField {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
};

struct SpectralCoeffs {
    std::shared_ptr<const EigenSystem> sys;
    std::vector<double> values;  // c_k = <g, phi_k>, k over sorted modes

    std::size_t count() const { return values.size(); }
};

// Quadrature inner products against the first n eigenfunctions.
SpectralCoeffs project(const GridField& field, const std::shared_ptr<const EigenSystem>& sys,
                       std::size_t n);

// Sum c_k phi_k on the grid.
GridField synthesize(const SpectralCoeffs& coeffs);

// Fractional-power norm (sum lambda_k^{2p} c_k^2)^{1/2}; p = 0 recovers the
// plain l2 norm of the truncated expansion.
double norm_p(const SpectralCoeffs& coeffs, double p);

// Quadrature L2 norm of a grid field.
double l2_norm(const GridField& field);

double coeff_norm(const SpectralCoeffs& coeffs);

SpectralCoeffs truncated(const SpectralCoeffs& coeffs, std::size_t n);

}  // namespace backfrac::spectral
