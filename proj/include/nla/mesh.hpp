#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>

#include "nla/numeric.hpp"

namespace nla {

// Interior-node values of a function vanishing on the boundary. Boundary
// values are implicit zeros; the owning Mesh defines the layout.
using Field = Eigen::VectorXd;

struct MeshSpec {
    int dim = 1;
    double extent_x = 1.0;
    double extent_y = 1.0;
    int nx = 1024;
    int ny = 0;  // ignored in 1D
};

// Uniform tensor grid on an interval or axis-aligned rectangle with
// homogeneous Dirichlet data. Holds the 3-point (1D) / 5-point (2D) stencil
// of the NEGATIVE Laplacian and its factorization; immutable once built, so
// instances may be shared freely across threads.
class Mesh {
public:
    static Mesh interval(double length, int n);
    static Mesh rectangle(double lx, double ly, int nx, int ny);

    int dimension() const { return dim_; }
    int size() const { return dim_ == 1 ? nx_ : nx_ * ny_; }
    int nodes(int axis) const { return axis == 0 ? nx_ : ny_; }
    double extent(int axis) const { return axis == 0 ? lx_ : ly_; }
    double spacing(int axis) const { return axis == 0 ? hx_ : hy_; }
    double measure() const { return dim_ == 1 ? lx_ : lx_ * ly_; }

    // Uniform interior quadrature weight (h in 1D, hx*hy in 2D). The full
    // trapezoid rule adds half-weights on the boundary, where fields vanish.
    double quad_weight() const { return dim_ == 1 ? hx_ : hx_ * hy_; }
    // Total mass of the trapezoid rule over the closed grid; equals the
    // domain measure up to rounding.
    double quadrature_mass() const;

    double coord_x(int k) const { return ((k % nx_) + 1) * hx_; }
    double coord_y(int k) const { return (k / nx_ + 1) * hy_; }

    const Eigen::SparseMatrix<double>& neg_laplacian() const { return lap_; }

    // Direct solve of (-Laplacian) u = rhs with iterative refinement.
    Field solve(const Field& rhs) const;

private:
    Mesh() = default;
    void build();

    int dim_ = 1;
    int nx_ = 0, ny_ = 0;
    double lx_ = 0, ly_ = 0;
    double hx_ = 0, hy_ = 0;
    Eigen::SparseMatrix<double> lap_;
    std::shared_ptr<const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> solver_;
};

struct EigenPair {
    double lambda1 = 0.0;
    Field phi1;  // normalized so that max phi1 = 1
};

Mesh build_mesh(const MeshSpec& spec);

Field apply_laplacian(const Mesh& mesh, const Field& u);
Field solve_poisson(const Mesh& mesh, const Field& rhs);
EigenPair principal_eigenpair(const Mesh& mesh, double tol_eig = 1e-10,
                              int max_iters = 10000);
double integrate(const Mesh& mesh, const Field& pointwise);
Field gradient_magnitude(const Mesh& mesh, const Field& u);

// Quadrature of u * (-Laplacian u); positive for u != 0.
double dirichlet_form(const Mesh& mesh, const Field& u);

}  // namespace nla
