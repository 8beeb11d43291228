#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "meridian/axial.hpp"
#include "meridian/errors.hpp"
#include "meridian/grid.hpp"

namespace meridian::contour {

// Axis-aligned rectangle in the (x0, second-coordinate) plane.
struct Window {
    double x0_lo = -1.0;
    double x0_hi = 1.0;
    double second_lo = 0.25;
    double second_hi = 2.0;

    void validate() const {
        if (!(std::isfinite(x0_lo) && std::isfinite(x0_hi) && std::isfinite(second_lo) &&
              std::isfinite(second_hi)))
            throw InvalidParams("window bounds must be finite");
        if (!(x0_lo < x0_hi) || !(second_lo < second_hi))
            throw InvalidParams("window bounds must satisfy lo < hi");
    }
};

// Connected piece of a zero set. Vertices are (x0, second) pairs stored as
// AxialPair; a closed piece does not repeat its first vertex.
struct ContourPolyline {
    std::string label;
    std::vector<AxialPair> points;
    bool closed = false;
};

using Field2 = std::function<double(double, double)>;

namespace detail {

// Bisection on the segment [a, b] with f(a) >= 0 > f(b); 40 halvings, then
// the bracket endpoint with the smaller |f|.
inline AxialPair refine(const Field2& f, AxialPair a, double fa, AxialPair b, double fb) {
    for (int it = 0; it < 40; ++it) {
        const AxialPair m{0.5 * (a.u0 + b.u0), 0.5 * (a.urho + b.urho)};
        const double fm = f(m.u0, m.urho);
        if (!std::isfinite(fm)) throw NonFiniteSample("non-finite sample in contour refinement");
        if (fm >= 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return std::fabs(fa) <= std::fabs(fb) ? a : b;
}

}  // namespace detail

// Marching squares over a resolution x resolution grid. A node with f >= 0 is
// "inside"; every crossing edge gets one bisection-refined vertex shared by
// both adjacent cells, so chains stitch bit-identically. Sampling is
// parallelized by row; cell sweep and stitching are serial and deterministic.
inline std::vector<ContourPolyline> trace_zero_set(const Field2& f, const Window& w,
                                                   int resolution, const std::string& label) {
    w.validate();
    if (resolution < 8) throw ResolutionTooLow("contour resolution must be at least 8");
    const std::size_t n = static_cast<std::size_t>(resolution);
    const double dx = (w.x0_hi - w.x0_lo) / static_cast<double>(n - 1);
    const double dy = (w.second_hi - w.second_lo) / static_cast<double>(n - 1);
    const auto X = [&](std::size_t i) { return w.x0_lo + dx * static_cast<double>(i); };
    const auto Y = [&](std::size_t j) { return w.second_lo + dy * static_cast<double>(j); };

    std::vector<double> v(n * n);
    parallel_index(n, [&](std::size_t j) {
        for (std::size_t i = 0; i < n; ++i) v[j * n + i] = f(X(i), Y(j));
    });
    for (const double s : v)
        if (!std::isfinite(s)) throw NonFiniteSample("non-finite sample on contour grid");

    const auto inside = [](double s) { return s >= 0.0; };

    // One vertex per crossing edge, memoized by (node, orientation).
    std::vector<AxialPair> pts;
    std::vector<int> edge_pt(2 * n * n, -1);
    const auto vertex = [&](std::size_t i, std::size_t j, int orient) {
        const std::size_t key = 2 * (j * n + i) + static_cast<std::size_t>(orient);
        if (edge_pt[key] >= 0) return edge_pt[key];
        const std::size_t i2 = orient == 0 ? i + 1 : i;
        const std::size_t j2 = orient == 0 ? j : j + 1;
        AxialPair a{X(i), Y(j)};
        AxialPair b{X(i2), Y(j2)};
        double fa = v[j * n + i];
        double fb = v[j2 * n + i2];
        if (!inside(fa)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
        pts.push_back(detail::refine(f, a, fa, b, fb));
        edge_pt[key] = static_cast<int>(pts.size()) - 1;
        return edge_pt[key];
    };

    std::vector<std::array<int, 2>> segs;
    const auto emit = [&](int pa, int pb) {
        if (pa != pb) segs.push_back({pa, pb});
    };

    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const int mask = (inside(v[j * n + i]) ? 1 : 0) | (inside(v[j * n + i + 1]) ? 2 : 0) |
                             (inside(v[(j + 1) * n + i + 1]) ? 4 : 0) |
                             (inside(v[(j + 1) * n + i]) ? 8 : 0);
            if (mask == 0 || mask == 15) continue;
            const auto B = [&] { return vertex(i, j, 0); };
            const auto R = [&] { return vertex(i + 1, j, 1); };
            const auto T = [&] { return vertex(i, j + 1, 0); };
            const auto L = [&] { return vertex(i, j, 1); };
            switch (mask) {
                case 1:
                case 14:
                    emit(L(), B());
                    break;
                case 2:
                case 13:
                    emit(B(), R());
                    break;
                case 4:
                case 11:
                    emit(R(), T());
                    break;
                case 8:
                case 7:
                    emit(T(), L());
                    break;
                case 3:
                case 12:
                    emit(L(), R());
                    break;
                case 6:
                case 9:
                    emit(B(), T());
                    break;
                case 5:
                case 10: {
                    // Saddle: the cell-center sample picks the diagonal band.
                    const double c = f(X(i) + 0.5 * dx, Y(j) + 0.5 * dy);
                    if (!std::isfinite(c))
                        throw NonFiniteSample("non-finite sample at contour cell center");
                    const bool band = inside(c);
                    if (mask == 5) {
                        if (band) {
                            emit(T(), L());
                            emit(B(), R());
                        } else {
                            emit(L(), B());
                            emit(R(), T());
                        }
                    } else {
                        if (band) {
                            emit(L(), B());
                            emit(R(), T());
                        } else {
                            emit(B(), R());
                            emit(T(), L());
                        }
                    }
                    break;
                }
                default:
                    break;
            }
        }
    }

    // Stitch: vertex degree is at most 2, so components are chains or loops.
    std::vector<std::vector<std::pair<int, int>>> adj(pts.size());
    for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
        adj[static_cast<std::size_t>(segs[static_cast<std::size_t>(s)][0])].push_back(
            {segs[static_cast<std::size_t>(s)][1], s});
        adj[static_cast<std::size_t>(segs[static_cast<std::size_t>(s)][1])].push_back(
            {segs[static_cast<std::size_t>(s)][0], s});
    }
    std::vector<char> used(segs.size(), 0);
    std::vector<ContourPolyline> out;

    const auto walk = [&](int start, bool loop) {
        ContourPolyline line;
        line.label = label;
        line.closed = loop;
        int cur = start;
        line.points.push_back(pts[static_cast<std::size_t>(cur)]);
        for (;;) {
            int next = -1;
            int via = -1;
            for (const auto& [nb, s] : adj[static_cast<std::size_t>(cur)])
                if (!used[static_cast<std::size_t>(s)] && (via == -1 || s < via)) {
                    next = nb;
                    via = s;
                }
            if (via == -1) break;
            used[static_cast<std::size_t>(via)] = 1;
            cur = next;
            if (loop && cur == start) break;
            line.points.push_back(pts[static_cast<std::size_t>(cur)]);
        }
        out.push_back(std::move(line));
    };

    const auto unused_degree = [&](int vtx) {
        int d = 0;
        for (const auto& [nb, s] : adj[static_cast<std::size_t>(vtx)]) {
            (void)nb;
            if (!used[static_cast<std::size_t>(s)]) ++d;
        }
        return d;
    };
    for (int vtx = 0; vtx < static_cast<int>(pts.size()); ++vtx)
        if (unused_degree(vtx) == 1) walk(vtx, false);
    for (int s = 0; s < static_cast<int>(segs.size()); ++s)
        if (!used[static_cast<std::size_t>(s)])
            walk(std::min(segs[static_cast<std::size_t>(s)][0], segs[static_cast<std::size_t>(s)][1]),
                 true);
    return out;
}

}  // namespace meridian::contour
