#include "platecell/pcp.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "hex_element.hpp"
#include "platecell/errors.hpp"

namespace platecell {

namespace {

// Union-find over master node ids, used to detect meshes that void
// elements have split into disconnected pieces.
struct UnionFind {
    std::vector<std::int64_t> parent;
    explicit UnionFind(std::int64_t n) : parent(std::size_t(n)) {
        std::iota(parent.begin(), parent.end(), std::int64_t(0));
    }
    std::int64_t find(std::int64_t a) {
        while (parent[std::size_t(a)] != a) {
            parent[std::size_t(a)] = parent[std::size_t(parent[std::size_t(a)])];
            a = parent[std::size_t(a)];
        }
        return a;
    }
    void unite(std::int64_t a, std::int64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::size_t(b)] = a;
    }
};

}  // namespace

struct CellProblem::Preconditioner {
    Eigen::IncompleteCholesky<double, Eigen::Lower, Eigen::AMDOrdering<int>> ic;
    Eigen::VectorXd jacobi_inv;
    bool use_ic = false;

    Eigen::VectorXd apply(const Eigen::VectorXd& r) const {
        if (use_ic) return ic.solve(r);
        return jacobi_inv.cwiseProduct(r);
    }
};

CellProblem::CellProblem(const HexMesh& mesh, const std::vector<ElasticityTensor>& phase_tensors,
                         SolverOptions opts)
    : mesh_(mesh), tensors_(phase_tensors), opts_(opts) {
    if (tensors_.size() != mesh_.phase_names.size())
        throw ValidationError("cell problem: one elasticity tensor per mesh phase required");
    assemble();
}

CellProblem::CellProblem(const HexMesh& mesh,
                         const std::map<std::string, ElasticityTensor>& materials,
                         SolverOptions opts)
    : CellProblem(mesh, phase_tensors_for(mesh, materials), opts) {}

CellProblem::~CellProblem() = default;
CellProblem::CellProblem(CellProblem&&) noexcept = default;

std::vector<ElasticityTensor> phase_tensors_for(
    const HexMesh& mesh, const std::map<std::string, ElasticityTensor>& materials) {
    std::vector<ElasticityTensor> tensors;
    tensors.reserve(mesh.phase_names.size());
    for (const std::string& name : mesh.phase_names) {
        const auto it = materials.find(name);
        if (it == materials.end())
            throw ValidationError("cell problem: no elasticity tensor for phase '" + name + "'");
        tensors.push_back(it->second);
    }
    return tensors;
}

void CellProblem::assemble() {
    const std::int64_t n_nodes = mesh_.node_count();
    const int n1 = mesh_.n1(), n2 = mesh_.n2();

    master_of_node_.resize(std::size_t(n_nodes));
    for (std::int64_t n = 0; n < n_nodes; ++n) {
        const auto g = mesh_.node_grid(n);
        master_of_node_[std::size_t(n)] = mesh_.node_id(g[0] % n1, g[1] % n2, g[2]);
    }

    // Activity and connectivity over non-void elements.
    std::vector<std::uint8_t> active(std::size_t(n_nodes), 0);
    UnionFind uf(n_nodes);
    for (std::int64_t e = 0; e < mesh_.element_count(); ++e) {
        if (mesh_.is_void(e)) continue;
        const auto nodes = mesh_.element_nodes(e);
        const std::int64_t m0 = master_of_node_[std::size_t(nodes[0])];
        for (const std::int64_t n : nodes) {
            const std::int64_t m = master_of_node_[std::size_t(n)];
            active[std::size_t(m)] = 1;
            uf.unite(m0, m);
        }
    }

    reduced_of_master_.assign(std::size_t(n_nodes), -1);
    n_reduced_ = 0;
    std::int64_t root = -1;
    bool connected = true;
    for (std::int64_t n = 0; n < n_nodes; ++n) {
        if (!active[std::size_t(n)]) continue;
        if (master_of_node_[std::size_t(n)] != n) continue;
        reduced_of_master_[std::size_t(n)] = n_reduced_++;
        const std::int64_t r = uf.find(n);
        if (root < 0) root = r;
        if (r != root) connected = false;
    }
    if (n_reduced_ == 0) throw SolverError("cell problem: no active degrees of freedom");
    if (!connected)
        throw SolverError("cell problem: void elements disconnect the mesh");

    // Element stiffness cache: in-plane spacing is uniform, so the element
    // matrix depends only on the z layer and the phase.
    const int n_phases = int(mesh_.phase_names.size());
    std::unordered_map<std::int64_t, detail::Mat24> ke_cache;
    auto ke_for = [&](std::int64_t e) -> const detail::Mat24& {
        const auto g = mesh_.element_grid(e);
        const std::int64_t key = std::int64_t(g[2]) * n_phases + mesh_.phase[std::size_t(e)];
        auto it = ke_cache.find(key);
        if (it == ke_cache.end()) {
            it = ke_cache
                     .emplace(key, detail::box_stiffness(
                                       mesh_.element_size(e),
                                       tensors_[std::size_t(mesh_.phase[std::size_t(e)])].matrix()))
                     .first;
        }
        return it->second;
    };

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(std::size_t(mesh_.element_count()) * 576);
    std::array<std::int64_t, 8> rdof{};
    for (std::int64_t e = 0; e < mesh_.element_count(); ++e) {
        if (mesh_.is_void(e)) continue;
        const auto nodes = mesh_.element_nodes(e);
        for (int a = 0; a < 8; ++a)
            rdof[std::size_t(a)] =
                3 * reduced_of_master_[std::size_t(master_of_node_[std::size_t(nodes[std::size_t(a)])])];
        const detail::Mat24& ke = ke_for(e);
        for (int a = 0; a < 24; ++a) {
            const int ra = int(rdof[std::size_t(a / 3)]) + a % 3;
            for (int b = 0; b < 24; ++b)
                triplets.emplace_back(ra, int(rdof[std::size_t(b / 3)]) + b % 3, ke(a, b));
        }
    }

    stiffness_.resize(3 * n_reduced_, 3 * n_reduced_);
    stiffness_.setFromTriplets(triplets.begin(), triplets.end());
    triplets.clear();
    triplets.shrink_to_fit();
    stiffness_.makeCompressed();

    precond_ = std::make_unique<Preconditioner>();
    precond_->ic.compute(stiffness_);
    precond_->use_ic = precond_->ic.info() == Eigen::Success;
    if (!precond_->use_ic) {
        precond_->jacobi_inv = stiffness_.diagonal().cwiseMax(1e-300).cwiseInverse();
    }
}

CorrectorField CellProblem::solve(MacroMode mode) const {
    const AffineField xi(MacroMode{mode.pair, mode.nu, 1.0});
    const std::int64_t n_nodes = mesh_.node_count();
    const std::int64_t n = 3 * n_reduced_;

    auto node_jump = [&](std::int64_t node) -> Vec3 {
        const std::int64_t m = master_of_node_[std::size_t(node)];
        if (m == node) return Vec3::Zero();
        return mode.magnitude * (xi.evaluate(mesh_.node_position(node)) -
                                 xi.evaluate(mesh_.node_position(m)));
    };

    // Right-hand side from the affine jumps; only elements owning a slave
    // node contribute.
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    const int n1 = mesh_.n1(), n2 = mesh_.n2();
    std::unordered_map<std::int64_t, detail::Mat24> ke_cache;
    const int n_phases = int(mesh_.phase_names.size());
    for (std::int64_t e = 0; e < mesh_.element_count(); ++e) {
        if (mesh_.is_void(e)) continue;
        const auto g = mesh_.element_grid(e);
        if (g[0] != n1 - 1 && g[1] != n2 - 1) continue;
        const auto nodes = mesh_.element_nodes(e);
        detail::Vec24 ge;
        bool any = false;
        for (int a = 0; a < 8; ++a) {
            const Vec3 j = node_jump(nodes[std::size_t(a)]);
            ge.segment<3>(3 * a) = j;
            any = any || j.squaredNorm() > 0.0;
        }
        if (!any) continue;
        const std::int64_t key = std::int64_t(g[2]) * n_phases + mesh_.phase[std::size_t(e)];
        auto it = ke_cache.find(key);
        if (it == ke_cache.end())
            it = ke_cache
                     .emplace(key, detail::box_stiffness(
                                       mesh_.element_size(e),
                                       tensors_[std::size_t(mesh_.phase[std::size_t(e)])].matrix()))
                     .first;
        const detail::Vec24 fe = it->second * ge;
        for (int a = 0; a < 8; ++a) {
            const std::int64_t r =
                3 * reduced_of_master_[std::size_t(master_of_node_[std::size_t(nodes[std::size_t(a)])])];
            b.segment<3>(r) -= fe.segment<3>(3 * a);
        }
    }

    // Remove the translation components (the stiffness null space).
    auto project = [&](Eigen::VectorXd& v) {
        for (int c = 0; c < 3; ++c) {
            double mean = 0.0;
            for (std::int64_t i = c; i < n; i += 3) mean += v[i];
            mean /= double(n_reduced_);
            for (std::int64_t i = c; i < n; i += 3) v[i] -= mean;
        }
    };
    project(b);

    SolverReport report;
    report.reduced_dofs = n;
    const double bnorm = b.norm();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);

    if (bnorm > 0.0) {
        const int cap = opts_.max_iterations > 0
                            ? opts_.max_iterations
                            : std::max(100, int(50.0 * std::sqrt(double(n))));
        Eigen::VectorXd r = b;
        Eigen::VectorXd z = precond_->apply(r);
        project(z);
        Eigen::VectorXd p = z;
        double rz = r.dot(z);
        Eigen::VectorXd q(n);
        for (int it = 0; it < cap; ++it) {
            q.noalias() = stiffness_ * p;
            const double pq = p.dot(q);
            if (!(pq > 0.0))
                throw SolverError("cell problem: stiffness is singular or indefinite");
            const double alpha = rz / pq;
            x += alpha * p;
            r -= alpha * q;
            report.iterations = it + 1;
            if (r.norm() <= opts_.tolerance * bnorm) {
                report.converged = true;
                break;
            }
            z = precond_->apply(r);
            project(z);
            const double rz_new = r.dot(z);
            p = z + (rz_new / rz) * p;
            rz = rz_new;
        }
        report.relative_residual = (b - stiffness_ * x).norm() / bnorm;
        if (!report.converged)
            throw SolverError("cell problem: no convergence after " +
                              std::to_string(report.iterations) +
                              " iterations (relative residual " +
                              std::to_string(report.relative_residual) + ")");
        project(x);
    } else {
        report.converged = true;
    }

    CorrectorField field;
    field.mode = mode;
    field.report = report;
    field.displacement.setZero(n_nodes, 3);
    field.node_active.assign(std::size_t(n_nodes), 0);
    for (std::int64_t node = 0; node < n_nodes; ++node) {
        const std::int64_t m = master_of_node_[std::size_t(node)];
        const std::int64_t red = reduced_of_master_[std::size_t(m)];
        if (red < 0) continue;
        field.node_active[std::size_t(node)] = 1;
        field.displacement.row(node) =
            x.segment<3>(3 * red).transpose() + node_jump(node).transpose();
    }

    // Zero volume-average displacement over the non-void cell volume.
    Vec3 mean = Vec3::Zero();
    double vol = 0.0;
    for (std::int64_t e = 0; e < mesh_.element_count(); ++e) {
        if (mesh_.is_void(e)) continue;
        const auto nodes = mesh_.element_nodes(e);
        Vec3 avg = Vec3::Zero();
        for (const std::int64_t nn : nodes) avg += field.displacement.row(nn).transpose();
        const double ve = mesh_.element_volume(e);
        mean += ve * avg / 8.0;
        vol += ve;
    }
    mean /= vol;
    for (std::int64_t node = 0; node < n_nodes; ++node)
        if (field.node_active[std::size_t(node)])
            field.displacement.row(node) -= mean.transpose();
    return field;
}

CorrectorField solve_pcp(const HexMesh& mesh,
                         const std::map<std::string, ElasticityTensor>& materials, MacroMode mode,
                         SolverOptions opts) {
    return CellProblem(mesh, materials, opts).solve(mode);
}

Eigen::Matrix<double, Eigen::Dynamic, 3> recover_periodic_part(const CorrectorField& corrector,
                                                               const HexMesh& mesh) {
    if (corrector.mode.magnitude == 0.0)
        throw ValidationError("periodic part: corrector magnitude is zero");
    const AffineField xi(MacroMode{corrector.mode.pair, corrector.mode.nu, 1.0});
    Eigen::Matrix<double, Eigen::Dynamic, 3> part = corrector.displacement / corrector.mode.magnitude;
    for (std::int64_t n = 0; n < mesh.node_count(); ++n) {
        if (!corrector.node_active[std::size_t(n)]) continue;
        part.row(n) -= xi.evaluate(mesh.node_position(n)).transpose();
    }
    return part;
}

Eigen::Matrix<double, Eigen::Dynamic, 3> reconstruct_displacement(
    const std::array<double, 6>& entries, const std::vector<const CorrectorField*>& correctors,
    const HexMesh& mesh, double epsilon) {
    Eigen::Matrix<double, Eigen::Dynamic, 3> out =
        Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(mesh.node_count(), 3);
    for (int idx = 0; idx < 6; ++idx) {
        if (entries[std::size_t(idx)] == 0.0) continue;
        const CorrectorField* match = nullptr;
        for (const CorrectorField* c : correctors)
            if (c && c->mode.index() == idx) {
                match = c;
                break;
            }
        if (!match)
            throw ValidationError("reconstruct_displacement: missing corrector for mode index " +
                                  std::to_string(idx));
        out += epsilon * entries[std::size_t(idx)] * recover_periodic_part(*match, mesh);
    }
    return out;
}

}  // namespace platecell
