#include "nla/mesh.hpp"

#include <vector>

namespace nla {

namespace {

void check_field(const Mesh& mesh, const Field& u, const char* where) {
    if (u.size() != mesh.size())
        throw std::invalid_argument(std::string(where) +
                                    ": field size does not match mesh");
}

}  // namespace

Mesh Mesh::interval(double length, int n) {
    if (!(length > 0.0)) throw std::invalid_argument("Mesh: extent must be positive");
    if (n < 10) throw std::invalid_argument("Mesh: need at least 10 interior nodes per axis");
    Mesh m;
    m.dim_ = 1;
    m.nx_ = n;
    m.lx_ = length;
    m.hx_ = length / (n + 1);
    m.build();
    return m;
}

Mesh Mesh::rectangle(double lx, double ly, int nx, int ny) {
    if (!(lx > 0.0) || !(ly > 0.0))
        throw std::invalid_argument("Mesh: extents must be positive");
    if (nx < 10 || ny < 10)
        throw std::invalid_argument("Mesh: need at least 10 interior nodes per axis");
    Mesh m;
    m.dim_ = 2;
    m.nx_ = nx;
    m.ny_ = ny;
    m.lx_ = lx;
    m.ly_ = ly;
    m.hx_ = lx / (nx + 1);
    m.hy_ = ly / (ny + 1);
    m.build();
    return m;
}

void Mesh::build() {
    const int n = size();
    std::vector<Eigen::Triplet<double>> trip;
    if (dim_ == 1) {
        const double c = 1.0 / (hx_ * hx_);
        trip.reserve(3 * n);
        for (int i = 0; i < n; ++i) {
            trip.emplace_back(i, i, 2.0 * c);
            if (i > 0) trip.emplace_back(i, i - 1, -c);
            if (i + 1 < n) trip.emplace_back(i, i + 1, -c);
        }
    } else {
        const double cx = 1.0 / (hx_ * hx_);
        const double cy = 1.0 / (hy_ * hy_);
        trip.reserve(5 * n);
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
                const int k = j * nx_ + i;
                trip.emplace_back(k, k, 2.0 * (cx + cy));
                if (i > 0) trip.emplace_back(k, k - 1, -cx);
                if (i + 1 < nx_) trip.emplace_back(k, k + 1, -cx);
                if (j > 0) trip.emplace_back(k, k - nx_, -cy);
                if (j + 1 < ny_) trip.emplace_back(k, k + nx_, -cy);
            }
        }
    }
    lap_.resize(n, n);
    lap_.setFromTriplets(trip.begin(), trip.end());
    auto solver = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
    solver->compute(lap_);
    if (solver->info() != Eigen::Success)
        throw NumericError("Mesh: factorization of the Dirichlet Laplacian failed");
    solver_ = std::move(solver);
}

double Mesh::quadrature_mass() const {
    // Tensor trapezoid rule: interior weight h, boundary weight h/2 per axis.
    const double mx = hx_ * (nx_ + 1);
    if (dim_ == 1) return mx;
    return mx * (hy_ * (ny_ + 1));
}

Field Mesh::solve(const Field& rhs) const {
    check_field(*this, rhs, "solve_poisson");
    Field x = solver_->solve(rhs);
    const double scale = rhs.lpNorm<Eigen::Infinity>();
    if (scale == 0.0) return Field::Zero(size());
    for (int round = 0; round < 3; ++round) {
        const Field r = rhs - lap_ * x;
        if (r.lpNorm<Eigen::Infinity>() <= 1e-12 * scale) return x;
        x += solver_->solve(r);
    }
    const double res = (rhs - lap_ * x).lpNorm<Eigen::Infinity>();
    if (res > 1e-12 * scale)
        throw NumericError("solve_poisson: residual " + std::to_string(res) +
                           " above tolerance after refinement (3 rounds)");
    return x;
}

Mesh build_mesh(const MeshSpec& spec) {
    if (spec.dim == 1) return Mesh::interval(spec.extent_x, spec.nx);
    if (spec.dim == 2) return Mesh::rectangle(spec.extent_x, spec.extent_y, spec.nx, spec.ny);
    throw std::invalid_argument("build_mesh: dimension must be 1 or 2");
}

Field apply_laplacian(const Mesh& mesh, const Field& u) {
    check_field(mesh, u, "apply_laplacian");
    return mesh.neg_laplacian() * u;
}

Field solve_poisson(const Mesh& mesh, const Field& rhs) { return mesh.solve(rhs); }

EigenPair principal_eigenpair(const Mesh& mesh, double tol_eig, int max_iters) {
    const int n = mesh.size();
    Field u = Field::Ones(n);
    u /= u.norm();
    double lambda = 0.0;
    double lambda_prev = kInf;
    for (int it = 0; it < max_iters; ++it) {
        Field v = mesh.solve(u);
        v /= v.norm();
        lambda = v.dot(mesh.neg_laplacian() * v);
        u = std::move(v);
        if (std::abs(lambda - lambda_prev) <= 1e-12 * lambda) {
            if (u.maxCoeff() < 0.0) u = -u;
            const double peak = u.maxCoeff();
            Field phi = u / peak;
            const double res =
                (mesh.neg_laplacian() * phi - lambda * phi).lpNorm<Eigen::Infinity>();
            if (res > tol_eig * lambda)
                throw NumericError("principal_eigenpair: residual above tolerance");
            if (phi.minCoeff() <= 0.0)
                throw NumericError("principal_eigenpair: eigenfunction not positive");
            return {lambda, std::move(phi)};
        }
        lambda_prev = lambda;
    }
    throw NumericError("principal_eigenpair: no convergence after " +
                       std::to_string(max_iters) + " iterations");
}

double integrate(const Mesh& mesh, const Field& pointwise) {
    check_field(mesh, pointwise, "integrate");
    return mesh.quad_weight() * pointwise.sum();
}

Field gradient_magnitude(const Mesh& mesh, const Field& u) {
    check_field(mesh, u, "gradient_magnitude");
    const int n = mesh.size();
    Field g(n);
    if (mesh.dimension() == 1) {
        const double inv2h = 0.5 / mesh.spacing(0);
        for (int i = 0; i < n; ++i) {
            const double left = i > 0 ? u[i - 1] : 0.0;
            const double right = i + 1 < n ? u[i + 1] : 0.0;
            g[i] = std::abs((right - left) * inv2h);
        }
    } else {
        const int nx = mesh.nodes(0), ny = mesh.nodes(1);
        const double inv2hx = 0.5 / mesh.spacing(0);
        const double inv2hy = 0.5 / mesh.spacing(1);
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const int k = j * nx + i;
                const double l = i > 0 ? u[k - 1] : 0.0;
                const double r = i + 1 < nx ? u[k + 1] : 0.0;
                const double b = j > 0 ? u[k - nx] : 0.0;
                const double t = j + 1 < ny ? u[k + nx] : 0.0;
                g[k] = std::hypot((r - l) * inv2hx, (t - b) * inv2hy);
            }
        }
    }
    return g;
}

double dirichlet_form(const Mesh& mesh, const Field& u) {
    check_field(mesh, u, "dirichlet_form");
    return mesh.quad_weight() * u.dot(mesh.neg_laplacian() * u);
}

}  // namespace nla
