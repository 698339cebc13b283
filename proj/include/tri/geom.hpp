#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tri/error.hpp"
#include "tri/skeleton.hpp"
#include "tri/triangulation.hpp"

namespace tri {

using Complex = std::complex<double>;
using ShapeVector = std::vector<Complex>;

/// Complex dihedral angle of shape type k for shape z:
/// 0 -> z, 1 -> (z-1)/z, 2 -> 1/(1-z).
inline Complex corner_value(Complex z, int type) {
    switch (type) {
    case 0: return z;
    case 1: return (z - 1.0) / z;
    default: return 1.0 / (1.0 - z);
    }
}

/// d/dz of log(corner_value(z, type)).
inline Complex corner_log_derivative(Complex z, int type) {
    switch (type) {
    case 0: return 1.0 / z;
    case 1: return 1.0 / (z - 1.0) - 1.0 / z;
    default: return 1.0 / (1.0 - z);
    }
}

struct Corner {
    int tet = 0;
    int type = 0;  // shape type carried by this corner
};

/// Edge equations: for each edge class, the corners around it. Tetrahedra
/// are oriented coherently; on negatively labelled tetrahedra the shape
/// types of pairs 1 and 2 are exchanged so every z lives in the same frame.
struct GluingSystem {
    int tetrahedra = 0;
    std::vector<std::vector<Corner>> edges;
    std::vector<int> orientation;  // +1 / -1 per tetrahedron

    /// Shape type carried by opposite-edge pair k of tetrahedron t.
    int shape_type(int t, int pair) const noexcept {
        if (pair == 0 || orientation[t] > 0) return pair;
        return 3 - pair;
    }
};

/// Coherent orientation of the tetrahedra, or nullopt if non-orientable.
inline std::optional<std::vector<int>> orient_tetrahedra(const Triangulation& tri) {
    std::vector<int> s(tri.size(), 0);
    for (int root = 0; root < tri.size(); ++root) {
        if (s[root]) continue;
        s[root] = 1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                const auto& g = tri.gluing(t, f);
                if (!g) continue;
                const int want = -s[t] * g->perm.sign();
                if (s[g->tet] == 0) {
                    s[g->tet] = want;
                    stack.push_back(g->tet);
                } else if (s[g->tet] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return s;
}

inline GluingSystem gluing_system(const Triangulation& tri, const Skeleton& sk) {
    if (!tri.is_closed()) throw Error(Errc::HasBoundaryFaces, "gluing equations need every face glued");
    if (classify(tri, sk) != TriClass::Ideal) throw Error(Errc::NotIdeal, "gluing equations need an ideal triangulation");
    auto orient = orient_tetrahedra(tri);
    if (!orient) throw Error(Errc::NonOrientable, "gluing equations need an orientable triangulation");
    GluingSystem sys;
    sys.tetrahedra = tri.size();
    sys.orientation = std::move(*orient);
    for (const auto& ec : sk.edges) {
        std::vector<Corner> cs;
        for (const auto& s : ec.slots) cs.push_back({s.tet, sys.shape_type(s.tet, edge_pair(s.edge()))});
        sys.edges.push_back(std::move(cs));
    }
    return sys;
}

inline GluingSystem gluing_system(const Triangulation& tri) {
    if (!tri.is_closed()) throw Error(Errc::HasBoundaryFaces, "gluing equations need every face glued");
    return gluing_system(tri, skeleton(tri));
}

inline constexpr double kDegenerateTolerance = 1e-12;

inline bool is_degenerate(const ShapeVector& z) {
    return std::any_of(z.begin(), z.end(), [](Complex w) {
        return std::abs(w) < kDegenerateTolerance || std::abs(w - 1.0) < kDegenerateTolerance ||
               !std::isfinite(w.real()) || !std::isfinite(w.imag());
    });
}

inline void check_shapes(const GluingSystem& sys, const ShapeVector& z) {
    if (static_cast<int>(z.size()) != sys.tetrahedra) throw Error(Errc::LengthMismatch, "shape vector length");
    if (is_degenerate(z)) throw Error(Errc::DegenerateShape, "a shape parameter is 0 or 1");
}

struct EdgeResiduals {
    std::vector<double> residual;      // |product of corners - 1|
    std::vector<Complex> log_defect;   // sum of principal logs - 2 pi i
    double max_residual() const { return residual.empty() ? 0.0 : *std::max_element(residual.begin(), residual.end()); }
    double max_log_defect() const {
        double m = 0;
        for (auto d : log_defect) m = std::max(m, std::abs(d));
        return m;
    }
};

inline EdgeResiduals evaluate(const GluingSystem& sys, const ShapeVector& z) {
    check_shapes(sys, z);
    EdgeResiduals r;
    for (const auto& edge : sys.edges) {
        Complex prod = 1.0, logsum = 0.0;
        for (const auto& c : edge) {
            const Complex v = corner_value(z[c.tet], c.type);
            prod *= v;
            logsum += std::log(v);
        }
        r.residual.push_back(std::abs(prod - 1.0));
        r.log_defect.push_back(logsum - Complex(0, 2 * std::numbers::pi));
    }
    return r;
}

inline Eigen::VectorXcd log_defect(const GluingSystem& sys, const ShapeVector& z) {
    const auto r = evaluate(sys, z);
    Eigen::VectorXcd f(r.log_defect.size());
    for (std::size_t i = 0; i < r.log_defect.size(); ++i) f[i] = r.log_defect[i];
    return f;
}

/// Jacobian of the log-form edge equations with respect to the shapes.
inline Eigen::MatrixXcd log_jacobian(const GluingSystem& sys, const ShapeVector& z) {
    check_shapes(sys, z);
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sys.edges.size()), sys.tetrahedra);
    for (std::size_t e = 0; e < sys.edges.size(); ++e)
        for (const auto& c : sys.edges[e]) j(static_cast<Eigen::Index>(e), c.tet) += corner_log_derivative(z[c.tet], c.type);
    return j;
}

inline Complex regular_ideal_shape() { return {0.5, std::sqrt(3.0) / 2.0}; }

struct SolveOptions {
    double tolerance = 1e-10;
    int max_iterations = 100;
    unsigned seed = 0x5eed;
};

struct GeometricVerdict {
    enum class Status { Converged, DidNotConverge, Degenerate };
    Status status = Status::DidNotConverge;
    bool solved = false;
    ShapeVector shapes;
    double residual = 0;
    bool positively_oriented = false;
    int iterations = 0;
    bool restarted = false;
};

/// Flat tetrahedra (shapes on the real line up to rounding) do not count.
inline constexpr double kOrientationTolerance = 1e-9;

inline bool positively_oriented(const ShapeVector& z) {
    return std::all_of(z.begin(), z.end(), [](Complex w) {
        for (int k = 0; k < 3; ++k)
            if (corner_value(w, k).imag() <= kOrientationTolerance) return false;
        return true;
    });
}

/// Damped Gauss-Newton on the log-form edge equations.
inline GeometricVerdict solve(const GluingSystem& sys, std::optional<ShapeVector> init = std::nullopt,
                              const SolveOptions& opt = {}) {
    ShapeVector start = init ? *init : ShapeVector(sys.tetrahedra, regular_ideal_shape());
    check_shapes(sys, start);
    std::mt19937 rng(opt.seed);
    GeometricVerdict best;
    best.shapes = start;
    best.residual = evaluate(sys, start).max_residual();

    for (int attempt = 0; attempt < 2; ++attempt) {
        ShapeVector z = start;
        GeometricVerdict v;
        v.restarted = attempt > 0;
        bool stuck = false;
        for (int it = 0;; ++it) {
            const auto r = evaluate(sys, z);
            const double res = r.max_residual();
            v.iterations = it;
            v.shapes = z;
            v.residual = res;
            if (res < opt.tolerance && r.max_log_defect() < 1e-6) {
                v.status = GeometricVerdict::Status::Converged;
                v.solved = true;
                v.positively_oriented = positively_oriented(z);
                return v;
            }
            if (it == opt.max_iterations) break;
            const Eigen::VectorXcd f = log_defect(sys, z);
            const Eigen::MatrixXcd jac = log_jacobian(sys, z);
            const Eigen::VectorXcd step = jac.completeOrthogonalDecomposition().solve(-f);
            const double norm0 = f.norm();
            double lambda = 1.0;
            bool accepted = false;
            for (int k = 0; k < 40 && !accepted; ++k, lambda *= 0.5) {
                ShapeVector trial = z;
                for (int t = 0; t < sys.tetrahedra; ++t) trial[t] += lambda * step[t];
                if (is_degenerate(trial)) continue;
                if (log_defect(sys, trial).norm() < norm0) {
                    z = std::move(trial);
                    accepted = true;
                }
            }
            if (!accepted) {
                stuck = true;
                break;
            }
        }
        v.status = stuck ? GeometricVerdict::Status::Degenerate : GeometricVerdict::Status::DidNotConverge;
        if (attempt == 0 || v.residual < best.residual) best = v;
        // Retry once from a jittered start.
        std::normal_distribution<double> jitter(0.0, 0.05);
        start = init ? *init : ShapeVector(sys.tetrahedra, regular_ideal_shape());
        for (auto& w : start) w += Complex(jitter(rng), jitter(rng));
        if (is_degenerate(start)) break;
    }
    best.restarted = true;
    best.positively_oriented = positively_oriented(best.shapes);
    return best;
}

inline GeometricVerdict solve(const Triangulation& tri, std::optional<ShapeVector> init = std::nullopt,
                              const SolveOptions& opt = {}) {
    return solve(gluing_system(tri), std::move(init), opt);
}

inline bool is_geometric_candidate(const Triangulation& tri, const SolveOptions& opt = {}) {
    const auto v = solve(tri, std::nullopt, opt);
    return v.solved && v.positively_oriented;
}

/// Arguments of the complex angles divided by pi, in angle-structure column order.
inline std::vector<double> argument_angles(const GluingSystem& sys, const ShapeVector& z) {
    std::vector<double> out(3 * sys.tetrahedra);
    for (int t = 0; t < sys.tetrahedra; ++t)
        for (int k = 0; k < 3; ++k) out[3 * t + k] = std::arg(corner_value(z[t], sys.shape_type(t, k))) / std::numbers::pi;
    return out;
}

}  // namespace tri
