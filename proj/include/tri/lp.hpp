#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tri {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// "p/q", or "p" when the denominator is 1.
inline std::string fraction_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline Rational parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                    boost::multiprecision::cpp_int(s.substr(slash + 1)));
}

/// Solves  A x = b (exactly) and reports one solution with free variables set
/// to zero, or nullopt if the system is inconsistent.
inline std::optional<RationalVector> solve_linear_system(RationalMatrix a, RationalVector b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    RationalVector x(cols, 0);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    RationalVector x;
    Rational objective = 0;
};

/// Exact two-phase primal simplex with Bland's rule:
///   maximize c.x  subject to  Aeq x = beq,  Ale x <= ble,  x >= 0.
inline LpResult solve_lp(const RationalMatrix& aeq, const RationalVector& beq, const RationalMatrix& ale,
                         const RationalVector& ble, const RationalVector& c) {
    const std::size_t nv = c.size();
    const std::size_t meq = aeq.size(), mle = ale.size();
    const std::size_t m = meq + mle;
    // Columns: structural | slack (one per <= row) | artificial (one per row) | rhs.
    const std::size_t slack0 = nv, art0 = nv + mle, rhs = nv + mle + m;
    RationalMatrix t(m, RationalVector(rhs + 1, 0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool eq = i < meq;
        const RationalVector& row = eq ? aeq[i] : ale[i - meq];
        Rational rhs_v = eq ? beq[i] : ble[i - meq];
        Rational sgn = rhs_v < 0 ? -1 : 1;
        for (std::size_t j = 0; j < nv; ++j) t[i][j] = sgn * row[j];
        if (!eq) t[i][slack0 + (i - meq)] = sgn;
        t[i][rhs] = sgn * rhs_v;
        if (!eq && sgn > 0) {
            basis[i] = slack0 + (i - meq);
        } else {
            t[i][art0 + i] = 1;
            basis[i] = art0 + i;
        }
    }

    // Reduced-cost row z (maximisation: entering column has z_j < 0).
    auto run = [&](const RationalVector& cost, std::size_t ncols) -> bool {
        RationalVector z(rhs + 1, 0);
        for (std::size_t j = 0; j < ncols; ++j) z[j] = -cost[j];
        for (std::size_t i = 0; i < m; ++i) {
            const Rational cb = basis[i] < ncols ? cost[basis[i]] : Rational(0);
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= rhs; ++j) z[j] += cb * t[i][j];
        }
        while (true) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j)
                if (z[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols) return true;
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                const Rational ratio = t[i][rhs] / t[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            const Rational inv = 1 / t[leave][enter];
            for (auto& v : t[leave]) v *= inv;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == leave || t[i][enter] == 0) continue;
                const Rational f = t[i][enter];
                for (std::size_t j = 0; j <= rhs; ++j) t[i][j] -= f * t[leave][j];
            }
            if (z[enter] != 0) {
                const Rational f = z[enter];
                for (std::size_t j = 0; j <= rhs; ++j) z[j] -= f * t[leave][j];
            }
            basis[leave] = enter;
        }
    };

    // Phase 1: maximize -(sum of artificials).
    RationalVector phase1(rhs, 0);
    for (std::size_t i = 0; i < m; ++i) phase1[art0 + i] = -1;
    run(phase1, rhs);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= art0 && t[i][rhs] != 0) return {};

    // Drive remaining (zero-valued) artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < art0) continue;
        std::size_t j = 0;
        while (j < art0 && t[i][j] == 0) ++j;
        if (j == art0) {
            for (auto& v : t[i]) v = 0;
            continue;
        }
        const Rational inv = 1 / t[i][j];
        for (auto& v : t[i]) v *= inv;
        for (std::size_t k = 0; k < m; ++k) {
            if (k == i || t[k][j] == 0) continue;
            const Rational f = t[k][j];
            for (std::size_t q = 0; q <= rhs; ++q) t[k][q] -= f * t[i][q];
        }
        basis[i] = j;
    }

    RationalVector cost(art0, 0);
    for (std::size_t j = 0; j < nv; ++j) cost[j] = c[j];
    // Zeroed redundant rows keep an artificial in the basis with value 0; they
    // never admit a positive pivot, so phase 2 ignores them.
    LpResult res;
    if (!run(cost, art0)) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    res.status = LpResult::Status::Optimal;
    res.x.assign(nv, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < nv) res.x[basis[i]] = t[i][rhs];
    for (std::size_t j = 0; j < nv; ++j) res.objective += c[j] * res.x[j];
    return res;
}

}  // namespace tri
