#pragma once

// Component-interval contraction between level solves.
//
// Once level p-1 has been solved on its own, the cascade narrows the ranges
// of that level's decision components around the values x̂ they took in the
// level's optimum, before level p is solved. All contractions are affine
// endpoint maps applied to the bound vectors:
//
//   lower_map  L   : [a1,a2] -> [a1,t]   anchor from above
//   upper_map  U   : [a1,a2] -> [t,a2]   anchor from below
//   lower_alpha_map L^a : [l,u] -> [l,u-a]  trim a margin off the top
//   upper_alpha_map U^a : [l,u] -> [l+a,u]  trim a margin off the bottom
//
// Which map applies to a component depends on where its level optimum sits
// in the current range: strictly inside, the anchored map pulls the range
// toward x̂ from the side its own objective pushes against (psi), gated off
// entirely when either the owning level's or the next level's objective
// ignores the component (nu). On the boundary, anchoring would collapse the
// range to a point, so a margin map keeps a width-alpha corridor instead
// (psi_hat, with nu_hat its gated variant). xi routes every component of a
// bound vector to the right treatment and leaves other levels' components
// untouched; reduce_bounds applies it to both bound vectors at once.

#include "mllp/numeric.hpp"
#include "mllp/problem.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mllp {

/// Affine map of [a1,a2] onto [a1,t]: fixes a1, sends a2 to t.
template <typename T>
inline T lower_map(const T& a1, const T& a2, const T& t, const T& x) {
    if (!(a1 < a2)) throw std::invalid_argument("lower_map: degenerate interval");
    if (!(a1 < t && t < a2)) throw std::invalid_argument("lower_map: anchor outside the open interval");
    return ((t - a1) * x + a1 * (a2 - t)) / (a2 - a1);
}

/// Affine map of [a1,a2] onto [t,a2]: sends a1 to t, fixes a2.
template <typename T>
inline T upper_map(const T& a1, const T& a2, const T& t, const T& x) {
    if (!(a1 < a2)) throw std::invalid_argument("upper_map: degenerate interval");
    if (!(a1 < t && t < a2)) throw std::invalid_argument("upper_map: anchor outside the open interval");
    return ((a2 - t) * x + a2 * (t - a1)) / (a2 - a1);
}

/// Affine map of [l,u] onto [l,u-a]: fixes l, pulls u down by the margin.
template <typename T>
inline T lower_alpha_map(const T& l, const T& u, const T& a, const T& x) {
    if (!(a < u - l)) throw std::invalid_argument("lower_alpha_map: margin at least the width");
    return ((u - (l + a)) * x + a * l) / (u - l);
}

/// Affine map of [l,u] onto [l+a,u]: pushes l up by the margin, fixes u.
template <typename T>
inline T upper_alpha_map(const T& l, const T& u, const T& a, const T& x) {
    if (!(a < u - l)) throw std::invalid_argument("upper_alpha_map: margin at least the width");
    return ((u - (l + a)) * x + a * u) / (u - l);
}

/// Everything the contraction of iteration p needs to see: the problem (for
/// objective coefficients), every level's independent optimum, the bounds
/// being contracted, and the margin choices. `alpha` holds absolute
/// per-component overrides keyed by 1-based (level, position); components
/// without an override use alpha_fraction times their current width.
template <typename T>
struct RangeReductionContext {
    const MultilevelProblem<T>* problem = nullptr;
    std::vector<Vector<T>> level_optima;  ///< x̂^1..x̂^P, full structural points
    Vector<T> lower;                      ///< current lower bounds, flat
    Vector<T> upper;                      ///< current upper bounds, flat
    std::map<std::pair<int, int>, T> alpha;
    T alpha_fraction = T(1) / T(4);
    int p = 2;                            ///< iteration the context is prepared for
    Tolerances<T> tol = Tolerances<T>::defaults();
};

/// Margin for component (i, j): the explicit override when present, zero on
/// zero-width components, else the default fraction of the current width.
template <typename T>
inline T resolve_alpha(const RangeReductionContext<T>& ctx, int i, int j) {
    if (auto it = ctx.alpha.find({i, j}); it != ctx.alpha.end()) return it->second;
    if (!ctx.problem) throw std::invalid_argument("range reduction context has no problem attached");
    const int f = flat_index(ctx.problem->n_sizes, {i, j}) - 1;
    const T width = ctx.upper[f] - ctx.lower[f];
    if (sign_of(width, ctx.tol.sign) == 0) return T{};
    return ctx.alpha_fraction * width;
}

/// Where a level-(p-1) component's optimum sits in its current range, as the
/// sign pair (a, b) = (sign(u - x̂), sign(x̂ - l)) and the derived one-hot
/// selectors: `boundary` = 2 - a^2 - b^2 picks the margin treatment,
/// `interior` = (a*b)^2 the anchored one.
struct CaseSelectors {
    int a = 0;
    int b = 0;
    int boundary = 0;
    int interior = 0;
};

namespace detail {

/// 0-based storage index of component (i, j) into the flat vectors and
/// objective columns (flat_index itself is 1-based like the rest of the
/// public coordinates).
template <typename T>
inline int component_index(const RangeReductionContext<T>& ctx, int i, int j) {
    if (!ctx.problem) throw std::invalid_argument("range reduction context has no problem attached");
    return flat_index(ctx.problem->n_sizes, {i, j}) - 1;
}

/// Sign pair/selectors for component (p-1, j) against its own level optimum.
template <typename T>
inline CaseSelectors selectors_impl(const RangeReductionContext<T>& ctx, int p, int j) {
    const int f = component_index(ctx, p - 1, j);
    const T& anchor = ctx.level_optima.at(p - 2)[f];
    const T da = ctx.upper[f] - anchor;
    const T db = anchor - ctx.lower[f];
    CaseSelectors s;
    s.a = sign_of(da, ctx.tol.sign);
    s.b = sign_of(db, ctx.tol.sign);
    if (s.a < 0 || s.b < 0)
        throw std::invalid_argument("level optimum outside the current bounds for component " +
                                    to_string(LevelIndex{p - 1, j}));
    s.boundary = 2 - s.a * s.a - s.b * s.b;
    s.interior = (s.a * s.b) * (s.a * s.b);
    return s;
}

/// Anchored contraction for component (p-1, j): the lower map when the
/// owning objective pushes the component down, the upper map when it pushes
/// up, their mean when it is indifferent.
template <typename T>
inline T psi_impl(const RangeReductionContext<T>& ctx, int p, int j, const T& x) {
    const int f = component_index(ctx, p - 1, j);
    const T& l = ctx.lower[f];
    const T& u = ctx.upper[f];
    const T& anchor = ctx.level_optima.at(p - 2)[f];
    const int own = sign_of(ctx.problem->C(p - 2, f), ctx.tol.sign);
    const int t_minus = 1 - own;  // weight on the lower map
    const int t_plus = 1 + own;   // weight on the upper map
    T val{};
    if (t_minus != 0) val += T(t_minus) * lower_map(l, u, anchor, x);
    if (t_plus != 0) val += T(t_plus) * upper_map(l, u, anchor, x);
    return val / T(2);
}

/// The gate shared by nu and nu_hat: 1 exactly when both the owning level
/// and the next level have a nonzero coefficient on component (p-1, j).
template <typename T>
inline int gate_impl(const RangeReductionContext<T>& ctx, int p, int j) {
    const int f = component_index(ctx, p - 1, j);
    const int own = sign_of(ctx.problem->C(p - 2, f), ctx.tol.sign);
    const int next = sign_of(ctx.problem->C(p - 1, f), ctx.tol.sign);
    return (own * next) * (own * next);
}

template <typename T>
inline T nu_impl(const RangeReductionContext<T>& ctx, int p, int j, const T& x) {
    return gate_impl(ctx, p, j) == 1 ? psi_impl(ctx, p, j, x) : x;
}

/// Margin contraction for component (p-1, j) whose optimum rests on a bound:
/// trim the top of the range when it sits at the upper end, the bottom when
/// at the lower end. Literal selector algebra; a selector of zero skips its
/// map entirely (so a zero-width component yields zero rather than a
/// division error -- callers route those to the identity beforehand).
template <typename T>
inline T psi_hat_impl(const RangeReductionContext<T>& ctx, int p, int j, const T& x) {
    const int f = component_index(ctx, p - 1, j);
    const T& l = ctx.lower[f];
    const T& u = ctx.upper[f];
    const CaseSelectors s = selectors_impl(ctx, p, j);
    const T a = resolve_alpha(ctx, p - 1, j);
    T val{};
    if (s.b == 1) val += lower_alpha_map(l, u, a, x);
    if (s.a == 1) val += upper_alpha_map(l, u, a, x);
    return val;
}

template <typename T>
inline T nu_hat_impl(const RangeReductionContext<T>& ctx, int p, int j, const T& x) {
    return gate_impl(ctx, p, j) == 1 ? psi_hat_impl(ctx, p, j, x) : x;
}

}  // namespace detail

/// Anchored contraction map for component (ctx.p - 1, j); see psi_impl.
template <typename T>
inline T psi(const RangeReductionContext<T>& ctx, int j, const T& x) {
    return detail::psi_impl(ctx, ctx.p, j, x);
}

/// psi gated by objective interest: the identity unless both the owning and
/// the following level put nonzero weight on the component.
template <typename T>
inline T nu(const RangeReductionContext<T>& ctx, int j, const T& x) {
    return detail::nu_impl(ctx, ctx.p, j, x);
}

/// Margin contraction map for boundary components; see psi_hat_impl.
template <typename T>
inline T psi_hat(const RangeReductionContext<T>& ctx, int j, const T& x) {
    return detail::psi_hat_impl(ctx, ctx.p, j, x);
}

/// psi_hat behind the same gate as nu.
template <typename T>
inline T nu_hat(const RangeReductionContext<T>& ctx, int j, const T& x) {
    return detail::nu_hat_impl(ctx, ctx.p, j, x);
}

/// Case selectors for component (ctx.p - 1, j) against its level optimum.
template <typename T>
inline CaseSelectors case_selectors(const RangeReductionContext<T>& ctx, int j) {
    return detail::selectors_impl(ctx, ctx.p, j);
}

/// The full per-component transform of iteration p applied to a value x of
/// component (i, j):
///   - the identity before any level has been solved (p <= 1),
///   - the identity off the level being contracted (i != p-1),
///   - the identity on zero-width components,
///   - the margin map when the level optimum rests on a bound,
///   - the gated anchored map when it lies strictly inside.
/// The boundary test runs before the interior one, so a component within
/// sign tolerance of a bound is treated as resting on it.
template <typename T>
inline T xi(const RangeReductionContext<T>& ctx, int p, int i, int j, const T& x) {
    if (p <= 1) return x;
    if (i != p - 1) return x;
    const int f = detail::component_index(ctx, i, j);
    const T width = ctx.upper[f] - ctx.lower[f];
    if (sign_of(width, ctx.tol.sign) == 0) return x;
    const CaseSelectors s = detail::selectors_impl(ctx, p, j);
    if (s.a == 0 && s.b == 0) return x;  // range within tolerance of a point
    if (s.boundary == 1) return detail::psi_hat_impl(ctx, p, j, x);
    return detail::nu_impl(ctx, p, j, x);
}

/// Contract both bound vectors for iteration p. Every level-(p-1) component
/// with positive width has its resolved margin validated against the
/// strict-width constraint (0 <= alpha < width) before any map runs.
template <typename T>
inline std::pair<Vector<T>, Vector<T>> reduce_bounds(const RangeReductionContext<T>& ctx, int p) {
    if (!ctx.problem) throw std::invalid_argument("range reduction context has no problem attached");
    const auto& sizes = ctx.problem->n_sizes;
    if (p < 2 || p > ctx.problem->levels())
        throw std::out_of_range("reduction iteration " + std::to_string(p) + " outside 2.." +
                                std::to_string(ctx.problem->levels()));
    for (int j = 1; j <= sizes[p - 2]; ++j) {
        const int f = flat_index(sizes, {p - 1, j}) - 1;
        const T width = ctx.upper[f] - ctx.lower[f];
        if (sign_of(width, ctx.tol.sign) == 0) continue;
        const T a = resolve_alpha(ctx, p - 1, j);
        if (a < T{} || !(a < width))
            throw std::invalid_argument("margin for component " + to_string(LevelIndex{p - 1, j}) +
                                        " must lie in [0, " + scalar_to_string(width) + ")");
    }
    Vector<T> lo = ctx.lower;
    Vector<T> hi = ctx.upper;
    for (int j = 1; j <= sizes[p - 2]; ++j) {
        const int f = flat_index(sizes, {p - 1, j}) - 1;
        lo[f] = xi(ctx, p, p - 1, j, ctx.lower[f]);
        hi[f] = xi(ctx, p, p - 1, j, ctx.upper[f]);
    }
    return {std::move(lo), std::move(hi)};
}

}  // namespace mllp
