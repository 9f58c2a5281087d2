#include "kse/analysis.hpp"

#include "kse/imexrk4.hpp"
#include "kse/kse_system.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace kse::analysis {

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b, const char* what) {
    if (a.size() != b.size()) {
        throw linalg::DimensionError(std::string(what) + ": length mismatch (" +
                                     std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                     ")");
    }
}

// Relative distance of z from a root of z^2 + bz + c.
bool near_root(Complex z, double b, double c) {
    const Complex q = z * z + b * z + c;
    return std::abs(q) <= 1e-10 * (c + std::abs(z) * (std::abs(z) + b));
}

constexpr int kNoSegment = -1;

}  // namespace

double max_norm_error(std::span<const double> exact, std::span<const double> numeric) {
    require_same_length(exact, numeric, "max_norm_error");
    double m = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) m = std::max(m, std::abs(exact[i] - numeric[i]));
    return m;
}

double gre(std::span<const double> exact, std::span<const double> numeric) {
    require_same_length(exact, numeric, "gre");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        num += std::abs(exact[i] - numeric[i]);
        den += std::abs(exact[i]);
    }
    if (den == 0.0) throw std::domain_error("gre: exact solution is identically zero");
    return num / den;
}

double observed_order(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw std::domain_error("observed_order: errors must be positive");
    }
    return std::log2(e_coarse / e_fine);
}

double self_difference_error(std::span<const double> u_k, std::span<const double> u_2k) {
    require_same_length(u_k, u_2k, "self_difference_error");
    return max_norm_error(u_k, u_2k);
}

std::vector<TruncationSample> linear_truncation_check(double l, double r,
                                                      std::span<const double> k_list) {
    const LinearSplitSystem system(RealMatrix(1, 1, l), RealMatrix(1, 1, r));
    std::vector<TruncationSample> out;
    out.reserve(k_list.size());
    for (double k : k_list) {
        imex::StepperWorkspace ws(system, k);
        double u = 1.0;
        ws.advance(std::span<double>(&u, 1), 0.0);
        out.push_back({k, std::abs(u - std::exp((r - l) * k))});
    }
    return out;
}

Complex amplification_factor(Complex x, Complex y) {
    const Complex z = -y;
    if (near_root(z, 6.0, 12.0) || near_root(z, 12.0, 48.0)) {
        throw PoleProximityError("amplification_factor: y is at a pole of the step rationals");
    }
    return imex::scalar_amplification(z, x);
}

double StabilityField::re_at(std::size_t i) const {
    return window.re_min + (window.re_max - window.re_min) * static_cast<double>(i) /
                               static_cast<double>(nx - 1);
}

double StabilityField::im_at(std::size_t j) const {
    return window.im_min + (window.im_max - window.im_min) * static_cast<double>(j) /
                               static_cast<double>(ny - 1);
}

StabilityField stability_scan(Complex y, const Window& window, std::size_t nx, std::size_t ny,
                              Execution exec) {
    if (nx < kMinScanResolution || ny < kMinScanResolution) {
        throw std::invalid_argument("stability_scan: resolution must be at least 16 per axis");
    }
    if (!(window.re_max > window.re_min) || !(window.im_max > window.im_min)) {
        throw std::invalid_argument("stability_scan: empty window");
    }
    amplification_factor(0.0, y);  // pole check once; r is polynomial in x

    StabilityField field;
    field.y = y;
    field.window = window;
    field.nx = nx;
    field.ny = ny;
    field.magnitudes.assign(nx * ny, 0.0);

    const Complex z = -y;
    auto excess = [z](Point p) { return std::abs(imex::scalar_amplification(z, {p.re, p.im})) - 1.0; };
    const bool par = exec == Execution::kParallel;
    const auto sny = static_cast<std::ptrdiff_t>(ny);

#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t sj = 0; sj < sny; ++sj) {
        const auto j = static_cast<std::size_t>(sj);
        const double im = field.im_at(j);
        for (std::size_t i = 0; i < nx; ++i) {
            field.magnitudes[j * nx + i] =
                std::abs(imex::scalar_amplification(z, {field.re_at(i), im}));
        }
    }

    std::size_t inside_count = 0;
    for (double m : field.magnitudes)
        if (m <= 1.0) ++inside_count;
    field.stable_area = window.area() * static_cast<double>(inside_count) /
                        static_cast<double>(nx * ny);
    field.empty = inside_count == 0;

    auto inside = [&](std::size_t i, std::size_t j) { return field.magnitude(i, j) <= 1.0; };

    // Edge crossings, refined by bisection on |r| - 1 along the edge.
    const std::size_t n_horizontal = (nx - 1) * ny;
    const std::size_t n_edges = n_horizontal + nx * (ny - 1);
    std::vector<Point> crossing(n_edges);
    std::vector<char> has_crossing(n_edges, 0);
    auto horizontal_id = [nx](std::size_t i, std::size_t j) { return j * (nx - 1) + i; };
    auto vertical_id = [nx, n_horizontal](std::size_t i, std::size_t j) {
        return n_horizontal + j * nx + i;
    };

    auto refine = [&](Point p0, Point p1, bool inside0) {
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 64 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            const Point pm{p0.re + mid * (p1.re - p0.re), p0.im + mid * (p1.im - p0.im)};
            if ((excess(pm) <= 0.0) == inside0) lo = mid; else hi = mid;
        }
        const double t = 0.5 * (lo + hi);
        return Point{p0.re + t * (p1.re - p0.re), p0.im + t * (p1.im - p0.im)};
    };

#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t sj = 0; sj < sny; ++sj) {
        const auto j = static_cast<std::size_t>(sj);
        for (std::size_t i = 0; i < nx; ++i) {
            const Point p{field.re_at(i), field.im_at(j)};
            if (i + 1 < nx && inside(i, j) != inside(i + 1, j)) {
                const auto id = horizontal_id(i, j);
                crossing[id] = refine(p, {field.re_at(i + 1), p.im}, inside(i, j));
                has_crossing[id] = 1;
            }
            if (j + 1 < ny && inside(i, j) != inside(i, j + 1)) {
                const auto id = vertical_id(i, j);
                crossing[id] = refine(p, {p.re, field.im_at(j + 1)}, inside(i, j));
                has_crossing[id] = 1;
            }
        }
    }

    // Segments per cell; saddle cells are split by the value at the cell center.
    std::vector<std::array<std::size_t, 2>> segments;
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            const std::size_t bottom = horizontal_id(i, j);
            const std::size_t right = vertical_id(i + 1, j);
            const std::size_t top = horizontal_id(i, j + 1);
            const std::size_t left = vertical_id(i, j);
            std::array<std::size_t, 4> cut{};
            std::size_t n_cut = 0;
            for (std::size_t e : {bottom, right, top, left})
                if (has_crossing[e]) cut[n_cut++] = e;
            if (n_cut == 2) {
                segments.push_back({cut[0], cut[1]});
            } else if (n_cut == 4) {
                const Point center{0.5 * (field.re_at(i) + field.re_at(i + 1)),
                                   0.5 * (field.im_at(j) + field.im_at(j + 1))};
                if ((excess(center) <= 0.0) == inside(i, j)) {
                    // Corners (i,j) and (i+1,j+1) connect through the center.
                    segments.push_back({bottom, right});
                    segments.push_back({top, left});
                } else {
                    segments.push_back({left, bottom});
                    segments.push_back({right, top});
                }
            }
        }
    }

    // Chain segments sharing an edge crossing into polylines.
    std::vector<std::array<int, 2>> at_edge(n_edges, {kNoSegment, kNoSegment});
    for (std::size_t s = 0; s < segments.size(); ++s) {
        for (std::size_t e : segments[s]) {
            auto& slot = at_edge[e];
            (slot[0] == kNoSegment ? slot[0] : slot[1]) = static_cast<int>(s);
        }
    }
    std::vector<char> used(segments.size(), 0);
    auto other_segment = [&](std::size_t edge, int seg) {
        const auto& slot = at_edge[edge];
        return slot[0] == seg ? slot[1] : slot[0];
    };
    auto walk = [&](int seg, std::size_t from_edge, std::vector<std::size_t>& edges) {
        while (seg != kNoSegment && !used[static_cast<std::size_t>(seg)]) {
            used[static_cast<std::size_t>(seg)] = 1;
            const auto& sg = segments[static_cast<std::size_t>(seg)];
            const std::size_t next = sg[0] == from_edge ? sg[1] : sg[0];
            edges.push_back(next);
            seg = other_segment(next, seg);
            from_edge = next;
        }
    };

    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (used[s]) continue;
        const int seg = static_cast<int>(s);
        used[s] = 1;
        std::vector<std::size_t> forward{segments[s][0], segments[s][1]};
        walk(other_segment(segments[s][1], seg), segments[s][1], forward);
        std::vector<std::size_t> backward;
        walk(other_segment(segments[s][0], seg), segments[s][0], backward);
        Polyline line;
        line.reserve(forward.size() + backward.size());
        for (auto it = backward.rbegin(); it != backward.rend(); ++it) line.push_back(crossing[*it]);
        for (std::size_t e : forward) line.push_back(crossing[e]);
        field.boundary.push_back(std::move(line));
    }
    return field;
}

void write_field_csv(std::ostream& out, const StabilityField& field) {
    char buf[96];
    out << "re_x,im_x,abs_r\n";
    for (std::size_t j = 0; j < field.ny; ++j) {
        for (std::size_t i = 0; i < field.nx; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", field.re_at(i), field.im_at(j),
                          field.magnitude(i, j));
            out << buf;
        }
    }
}

void write_boundary_csv(std::ostream& out, const StabilityField& field) {
    char buf[96];
    out << "curve,re_x,im_x\n";
    for (std::size_t c = 0; c < field.boundary.size(); ++c) {
        for (const Point& p : field.boundary[c]) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", c, p.re, p.im);
            out << buf;
        }
    }
}

}  // namespace kse::analysis
