#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cloud.hpp"
#include "space.hpp"

namespace chaoscope {

struct Viewport {
    double xmin = 0.0, xmax = 1.0;
    double ymin = 0.0, ymax = 1.0;
    int width = 512, height = 512;
    bool autoscale = true;  // ignore the bounds above and fit the data
};

struct ImageGrid {
    int width = 0, height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, top row first, 255 = background

    bool operator==(const ImageGrid&) const = default;
};

struct RasterResult {
    ImageGrid image;
    std::size_t plotted = 0;  // points that landed inside the viewport
    std::size_t clipped = 0;  // points outside the viewport or off-chart
    Viewport used;            // viewport after autoscaling
};

/// Planar coordinates used for rendering. The circle embeds as (cos a,
/// sin a); projective points map through the z=1 chart, where points near
/// the line at infinity are dropped (counted by the caller as clipped).
inline std::vector<std::array<double, 2>> project_cloud(const PointCloud& s,
                                                        std::size_t* dropped = nullptr) {
    std::vector<std::array<double, 2>> xy;
    xy.reserve(s.points.size());
    std::size_t off_chart = 0;
    switch (s.space.kind) {
        case SpaceKind::euclidean:
        case SpaceKind::sequence:
            if (s.space.dim != 2)
                throw std::invalid_argument("render: need 2 coordinates, got " +
                                            std::to_string(s.space.dim));
            for (const SpacePoint& p : s.points) xy.push_back({p.coords[0], p.coords[1]});
            break;
        case SpaceKind::circle:
            for (const SpacePoint& p : s.points)
                xy.push_back({std::cos(p.coords[0]), std::sin(p.coords[0])});
            break;
        case SpaceKind::projective2:
            for (const SpacePoint& p : s.points) {
                if (auto q = chart_project(p))
                    xy.push_back(*q);
                else
                    ++off_chart;
            }
            break;
    }
    if (dropped) *dropped = off_chart;
    return xy;
}

namespace detail {

// Nearest-rank percentile on a sorted copy.
inline double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    auto idx = static_cast<std::size_t>(
        std::llround(q * static_cast<double>(v.size() - 1)));
    return v[std::min(idx, v.size() - 1)];
}

inline std::pair<double, double> autoscale_axis(const std::vector<double>& v) {
    double lo = percentile(v, 0.01), hi = percentile(v, 0.99);
    double center = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    half = half == 0.0 ? 0.5 : half * 1.05;  // 5% margin; degenerate axis widens to +-0.5
    return {center - half, center + half};
}

}  // namespace detail

/// Accumulates points into hit counts and tone-maps logarithmically:
/// intensity 255 - min(255, round(255 * log(1+hits)/log(1+max_hits))).
/// All points outside the viewport is not an error; the caller should treat
/// plotted == 0 as a blank-image warning.
inline RasterResult rasterize(const PointCloud& s, Viewport vp) {
    if (vp.width < 1 || vp.height < 1)
        throw std::invalid_argument("rasterize: image dimensions must be positive");
    std::size_t off_chart = 0;
    std::vector<std::array<double, 2>> xy = project_cloud(s, &off_chart);
    if (vp.autoscale && !xy.empty()) {
        std::vector<double> xs(xy.size()), ys(xy.size());
        for (std::size_t i = 0; i < xy.size(); ++i) {
            xs[i] = xy[i][0];
            ys[i] = xy[i][1];
        }
        auto [x0, x1] = detail::autoscale_axis(xs);
        auto [y0, y1] = detail::autoscale_axis(ys);
        vp.xmin = x0;
        vp.xmax = x1;
        vp.ymin = y0;
        vp.ymax = y1;
    }
    if (!(vp.xmax > vp.xmin) || !(vp.ymax > vp.ymin))
        throw std::invalid_argument("rasterize: empty viewport");
    RasterResult res;
    res.used = vp;
    res.clipped = off_chart;
    std::vector<std::uint32_t> hits(static_cast<std::size_t>(vp.width) * vp.height, 0);
    double sx = vp.width / (vp.xmax - vp.xmin);
    double sy = vp.height / (vp.ymax - vp.ymin);
    for (const auto& [x, y] : xy) {
        double fx = (x - vp.xmin) * sx;
        double fy = (vp.ymax - y) * sy;  // top row holds the largest y
        int px = static_cast<int>(std::floor(fx));
        int py = static_cast<int>(std::floor(fy));
        if (px == vp.width && x == vp.xmax) px = vp.width - 1;
        if (py == vp.height && y == vp.ymin) py = vp.height - 1;
        if (px < 0 || px >= vp.width || py < 0 || py >= vp.height) {
            ++res.clipped;
            continue;
        }
        ++hits[static_cast<std::size_t>(py) * vp.width + px];
        ++res.plotted;
    }
    std::uint32_t max_hits = 0;
    for (std::uint32_t h : hits) max_hits = std::max(max_hits, h);
    res.image.width = vp.width;
    res.image.height = vp.height;
    res.image.pixels.assign(hits.size(), 255);
    if (max_hits > 0) {
        double denom = std::log1p(static_cast<double>(max_hits));
        for (std::size_t i = 0; i < hits.size(); ++i) {
            if (hits[i] == 0) continue;
            double v = 255.0 * std::log1p(static_cast<double>(hits[i])) / denom;
            long lv = std::lround(v);
            res.image.pixels[i] =
                static_cast<std::uint8_t>(255 - std::min(255L, lv));
        }
    }
    return res;
}

/// Serializes the image as PGM: binary P5 by default, ASCII P2 on request.
/// The P5 header is exactly "P5\n<width> <height>\n255\n".
inline std::string pgm_bytes(const ImageGrid& img, bool ascii = false) {
    std::string out;
    out += ascii ? "P2\n" : "P5\n";
    out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    if (ascii) {
        for (int r = 0; r < img.height; ++r) {
            for (int c = 0; c < img.width; ++c) {
                if (c) out += ' ';
                out += std::to_string(img.pixels[static_cast<std::size_t>(r) * img.width + c]);
            }
            out += '\n';
        }
    } else {
        out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    }
    return out;
}

inline void write_pgm(const ImageGrid& img, const std::string& path, bool ascii = false) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::string bytes = pgm_bytes(img, ascii);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace chaoscope
