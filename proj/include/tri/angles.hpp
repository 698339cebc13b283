#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tri/error.hpp"
#include "tri/lp.hpp"
#include "tri/skeleton.hpp"
#include "tri/triangulation.hpp"

namespace tri {

/// 3n angles in units of pi; entry 3t+k sits on opposite-edge pair k of
/// tetrahedron t (pair 0 = 01/23, 1 = 02/13, 2 = 03/12).
using AngleVector = std::vector<Rational>;

enum class AngleKind { Generalised, Semi, Strict, Taut };

constexpr std::string_view angle_kind_name(AngleKind k) noexcept {
    switch (k) {
    case AngleKind::Generalised: return "generalised";
    case AngleKind::Semi: return "semi";
    case AngleKind::Strict: return "strict";
    case AngleKind::Taut: return "taut";
    }
    return "generalised";
}

/// Rows 0..n-1: one per tetrahedron (angles sum to 1). Rows n..n+E-1: one per
/// edge class (angles around the edge sum to 2).
struct AngleSystem {
    int tetrahedra = 0;
    int edges = 0;
    std::vector<std::vector<int>> matrix;
    std::vector<int> rhs;

    int columns() const noexcept { return 3 * tetrahedra; }
};

inline AngleSystem angle_system(const Triangulation& tri, const Skeleton& sk) {
    if (!tri.is_closed()) throw Error(Errc::HasBoundaryFaces, "angle structures need every face glued");
    AngleSystem sys;
    sys.tetrahedra = tri.size();
    sys.edges = static_cast<int>(sk.edges.size());
    const int cols = sys.columns();
    sys.matrix.assign(sys.tetrahedra + sys.edges, std::vector<int>(cols, 0));
    sys.rhs.assign(sys.tetrahedra + sys.edges, 0);
    for (int t = 0; t < sys.tetrahedra; ++t) {
        for (int k = 0; k < 3; ++k) sys.matrix[t][3 * t + k] = 1;
        sys.rhs[t] = 1;
    }
    for (int e = 0; e < sys.edges; ++e) {
        for (const auto& s : sk.edges[e].slots) ++sys.matrix[sys.tetrahedra + e][3 * s.tet + edge_pair(s.edge())];
        sys.rhs[sys.tetrahedra + e] = 2;
    }
    return sys;
}

inline AngleSystem angle_system(const Triangulation& tri) {
    if (!tri.is_closed()) throw Error(Errc::HasBoundaryFaces, "angle structures need every face glued");
    return angle_system(tri, skeleton(tri));
}

namespace detail {

inline RationalMatrix rational_rows(const AngleSystem& sys) {
    RationalMatrix a;
    for (const auto& row : sys.matrix) a.emplace_back(row.begin(), row.end());
    return a;
}

inline RationalVector rational_rhs(const AngleSystem& sys) { return {sys.rhs.begin(), sys.rhs.end()}; }

/// max eps s.t. the equalities hold and eps <= x_i <= 1 - eps (eps fixed if given).
inline LpResult margin_lp(const AngleSystem& sys, std::optional<Rational> fixed_eps) {
    const int cols = sys.columns();
    RationalMatrix aeq = rational_rows(sys);
    RationalVector beq = rational_rhs(sys);
    RationalMatrix ale;
    RationalVector ble;
    if (fixed_eps) {
        for (int i = 0; i < cols; ++i) {
            RationalVector lo(cols, 0), hi(cols, 0);
            lo[i] = -1;
            hi[i] = 1;
            ale.push_back(lo);
            ble.push_back(-*fixed_eps);
            ale.push_back(hi);
            ble.push_back(1 - *fixed_eps);
        }
        return solve_lp(aeq, beq, ale, ble, RationalVector(cols, 0));
    }
    for (auto& row : aeq) row.push_back(0);
    for (int i = 0; i < cols; ++i) {
        RationalVector lo(cols + 1, 0), hi(cols + 1, 0);
        lo[i] = -1;
        lo[cols] = 1;
        hi[i] = 1;
        hi[cols] = 1;
        ale.push_back(lo);
        ble.push_back(0);
        ale.push_back(hi);
        ble.push_back(1);
    }
    RationalVector c(cols + 1, 0);
    c[cols] = 1;
    return solve_lp(aeq, beq, ale, ble, c);
}

}  // namespace detail

/// Exact check of the equations plus the range condition of `kind`.
inline bool verify(const AngleSystem& sys, std::span<const Rational> v, AngleKind kind) {
    if (static_cast<int>(v.size()) != sys.columns())
        throw Error(Errc::LengthMismatch, "angle vector has length " + std::to_string(v.size()) + ", expected " +
                                              std::to_string(sys.columns()));
    for (std::size_t r = 0; r < sys.matrix.size(); ++r) {
        Rational sum = 0;
        for (int c = 0; c < sys.columns(); ++c)
            if (sys.matrix[r][c]) sum += sys.matrix[r][c] * v[c];
        if (sum != sys.rhs[r]) return false;
    }
    for (const auto& x : v) {
        switch (kind) {
        case AngleKind::Generalised: break;
        case AngleKind::Semi:
            if (x < 0 || x > 1) return false;
            break;
        case AngleKind::Strict:
            if (x <= 0 || x >= 1) return false;
            break;
        case AngleKind::Taut:
            if (x != 0 && x != 1) return false;
            break;
        }
    }
    return true;
}

inline bool verify(const Triangulation& tri, std::span<const Rational> v, AngleKind kind) {
    return verify(angle_system(tri), v, kind);
}

/// Floating-point variant with absolute tolerance `tol` on every condition.
inline bool verify_approx(const AngleSystem& sys, std::span<const double> v, AngleKind kind, double tol) {
    if (static_cast<int>(v.size()) != sys.columns()) throw Error(Errc::LengthMismatch, "angle vector length");
    for (std::size_t r = 0; r < sys.matrix.size(); ++r) {
        double sum = 0;
        for (int c = 0; c < sys.columns(); ++c) sum += sys.matrix[r][c] * v[c];
        if (std::abs(sum - sys.rhs[r]) > tol) return false;
    }
    for (double x : v) {
        if (kind == AngleKind::Semi && (x < -tol || x > 1 + tol)) return false;
        if (kind == AngleKind::Strict && (x <= 0 || x >= 1)) return false;
        if (kind == AngleKind::Taut && std::abs(x) > tol && std::abs(x - 1) > tol) return false;
    }
    return true;
}

inline std::optional<AngleVector> find_generalised(const AngleSystem& sys) {
    return solve_linear_system(detail::rational_rows(sys), detail::rational_rhs(sys));
}

inline std::optional<AngleVector> find_generalised(const Triangulation& tri) {
    return find_generalised(angle_system(tri));
}

struct StrictResult {
    std::optional<AngleVector> vector;  // set iff a strict structure exists
    std::optional<Rational> margin;     // optimal eps; nullopt when even 0 <= x <= 1 is infeasible

    bool found() const noexcept { return vector.has_value(); }
};

inline StrictResult find_strict(const AngleSystem& sys) {
    const auto lp = detail::margin_lp(sys, std::nullopt);
    StrictResult out;
    if (lp.status != LpResult::Status::Optimal) return out;
    out.margin = lp.objective;
    if (lp.objective > 0) out.vector = AngleVector(lp.x.begin(), lp.x.begin() + sys.columns());
    return out;
}

inline StrictResult find_strict(const Triangulation& tri) { return find_strict(angle_system(tri)); }

/// Feasibility of eps <= x_i <= 1 - eps together with the equations.
inline bool feasible_with_margin(const AngleSystem& sys, const Rational& eps) {
    return detail::margin_lp(sys, eps).status == LpResult::Status::Optimal;
}

inline std::optional<AngleVector> find_semi(const AngleSystem& sys) {
    const auto lp = detail::margin_lp(sys, Rational(0));
    if (lp.status != LpResult::Status::Optimal) return std::nullopt;
    return lp.x;
}

inline std::optional<AngleVector> find_semi(const Triangulation& tri) { return find_semi(angle_system(tri)); }

/// Every taut structure, in lexicographic order of the per-tetrahedron choice
/// of which pair carries the angle pi.
inline std::vector<AngleVector> find_taut(const AngleSystem& sys) {
    const int n = sys.tetrahedra, edges = sys.edges;
    // coef[t][k][e]: contribution to edge e when tetrahedron t puts pi on pair k.
    std::vector<std::array<std::vector<int>, 3>> coef(n);
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 3; ++k) {
            coef[t][k].resize(edges);
            for (int e = 0; e < edges; ++e) coef[t][k][e] = sys.matrix[n + e][3 * t + k];
        }
    // remaining[t][e]: the most tetrahedra t.. can still add to edge e.
    std::vector<std::vector<int>> remaining(n + 1, std::vector<int>(edges, 0));
    for (int t = n - 1; t >= 0; --t)
        for (int e = 0; e < edges; ++e)
            remaining[t][e] =
                remaining[t + 1][e] + std::max({coef[t][0][e], coef[t][1][e], coef[t][2][e]});

    std::vector<AngleVector> out;
    std::vector<int> choice(n, 0), sum(edges, 0);
    auto rec = [&](auto&& self, int t) -> void {
        if (t == n) {
            if (std::all_of(sum.begin(), sum.end(), [](int s) { return s == 2; })) {
                AngleVector v(3 * n, 0);
                for (int i = 0; i < n; ++i) v[3 * i + choice[i]] = 1;
                out.push_back(std::move(v));
            }
            return;
        }
        for (int k = 0; k < 3; ++k) {
            bool ok = true;
            for (int e = 0; e < edges; ++e) {
                sum[e] += coef[t][k][e];
                if (sum[e] > 2 || sum[e] + remaining[t + 1][e] < 2) ok = false;
            }
            if (ok) {
                choice[t] = k;
                self(self, t + 1);
            }
            for (int e = 0; e < edges; ++e) sum[e] -= coef[t][k][e];
        }
    };
    if (n > 0) rec(rec, 0);
    return out;
}

inline std::vector<AngleVector> find_taut(const Triangulation& tri) { return find_taut(angle_system(tri)); }

}  // namespace tri
