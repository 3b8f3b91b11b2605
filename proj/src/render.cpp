// Copyright 2026 mperc contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mperc/render.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace mperc
{
namespace
{
constexpr double canvas = 480;
constexpr double pad = 20;

char const* const homothet_dash[] = {"8,4", "2,3", "8,3,2,3"};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

std::string stroke_attrs(std::size_t homothet)
{
    std::string s = "fill=\"none\" stroke=\"#1f3a93\" stroke-width=\"1.5\"";
    auto const n = std::size(homothet_dash);
    s += " stroke-dasharray=\"";
    s += homothet_dash[std::min(homothet, n - 1)];
    s += '"';
    return s;
}

std::string header(double width, double height)
{
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
         fmt(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return s;
}

std::string polygon(Polytope const& poly, std::function<std::pair<double, double>(Vec const&)> const& to_px,
                    std::string const& attrs)
{
    std::string s = "<polygon points=\"";
    bool first = true;
    for (auto const& v : poly.vertices())
    {
        auto const [x, y] = to_px(v);
        if (!first)
            s += ' ';
        s += fmt(x) + "," + fmt(y);
        first = false;
    }
    s += "\" " + attrs + "/>\n";
    return s;
}

std::string render_planar(Chart const& chart, std::vector<double> const& lambdas,
                          std::vector<Polytope> const& shadows)
{
    Polytope const& delta = chart.delta();
    Vec const lo = delta.lower();
    Vec const hi = delta.upper();
    double const span = std::max(hi[0] - lo[0], hi[1] - lo[1]);
    double const scale = (canvas - 2 * pad) / span;
    double const width = 2 * pad + scale * (hi[0] - lo[0]);
    double const height = 2 * pad + scale * (hi[1] - lo[1]);
    auto to_px = [&](Vec const& v) {
        return std::pair{pad + scale * (v[0] - lo[0]), height - pad - scale * (v[1] - lo[1])};
    };

    std::string s = header(width, height);
    s += "<g id=\"shadows\">\n";
    for (auto const& sh : shadows)
    {
        if (sh.dim() != 2)
            throw std::invalid_argument("render_delta_svg: shadow dimension mismatch");
        s += polygon(sh, to_px, "fill=\"#9aa5b1\" fill-opacity=\"0.25\" stroke=\"#52606d\" "
                                "stroke-width=\"0.4\"");
    }
    s += "</g>\n";
    s += "<g id=\"delta\">\n";
    s += polygon(delta, to_px, "fill=\"none\" stroke=\"black\" stroke-width=\"2\"");
    s += "</g>\n";
    s += "<g id=\"homothets\">\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        s += polygon(delta.scaled_about(chart.center(), lambdas[i]), to_px, stroke_attrs(i));
    s += "</g>\n</svg>\n";
    return s;
}

std::string render_interval(Chart const& chart, std::vector<double> const& lambdas,
                            std::vector<Polytope> const& shadows)
{
    Polytope const& delta = chart.delta();
    double const a = delta.lower()[0];
    double const b = delta.upper()[0];
    double const scale = (canvas - 2 * pad) / (b - a);
    double const row = 24;
    std::size_t const rows = 1 + lambdas.size() + (shadows.empty() ? 0 : 1);
    double const height = 2 * pad + row * static_cast<double>(rows);
    auto x_px = [&](double x) { return pad + scale * (x - a); };

    auto segment = [&](double lo, double hi, double y, std::string const& attrs) {
        std::string s = "<line x1=\"" + fmt(x_px(lo)) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
                        fmt(x_px(hi)) + "\" y2=\"" + fmt(y) + "\" " + attrs + "/>\n";
        for (double x : {lo, hi})
            s += "<line x1=\"" + fmt(x_px(x)) + "\" y1=\"" + fmt(y - 5) + "\" x2=\"" +
                 fmt(x_px(x)) + "\" y2=\"" + fmt(y + 5) + "\" stroke=\"black\" "
                 "stroke-width=\"1\"/>\n";
        return s;
    };

    std::string s = header(canvas, height);
    double y = pad + row / 2;
    s += "<g id=\"delta\">\n";
    s += segment(a, b, y, "stroke=\"black\" stroke-width=\"2\"");
    s += "</g>\n<g id=\"homothets\">\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i)
    {
        y += row;
        Polytope const h = delta.scaled_about(chart.center(), lambdas[i]);
        std::string attrs = stroke_attrs(i);
        attrs.replace(0, std::string("fill=\"none\" ").size(), "");
        s += segment(h.lower()[0], h.upper()[0], y, attrs);
    }
    s += "</g>\n<g id=\"shadows\">\n";
    if (!shadows.empty())
    {
        y += row;
        for (auto const& sh : shadows)
        {
            if (sh.dim() != 1)
                throw std::invalid_argument("render_delta_svg: shadow dimension mismatch");
            s += segment(sh.lower()[0], sh.upper()[0], y,
                         "stroke=\"#52606d\" stroke-width=\"3\" stroke-opacity=\"0.5\"");
        }
    }
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace

std::string render_delta_svg(Chart const& chart, std::vector<double> const& lambdas,
                             std::vector<Polytope> const& shadows)
{
    for (double l : lambdas)
    {
        if (!(l > 0 && l <= 1))
            throw std::invalid_argument("render_delta_svg: lambda must lie in (0,1]");
    }
    std::vector<double> sorted = lambdas;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (chart.dim() == 2)
        return render_planar(chart, sorted, shadows);
    if (chart.dim() == 1)
        return render_interval(chart, sorted, shadows);
    throw UnsupportedDimension("render_delta_svg: k must be 1 or 2");
}

std::string coverage_ppm(CoverageReport const& report, int strip_height)
{
    int const k = static_cast<int>(report.grid_shape.size());
    if (report.cells.empty())
        throw std::invalid_argument("coverage_ppm: report has no cell data");
    if (k != 1 && k != 2)
        throw UnsupportedDimension("coverage_ppm: k must be 1 or 2");
    if (strip_height < 1)
        throw std::invalid_argument("coverage_ppm: strip_height must be positive");
    int const width = report.grid_shape[0];
    int const height = k == 2 ? report.grid_shape[1] : strip_height;
    static constexpr unsigned char palette[4][3] = {
        {255, 255, 255}, {215, 215, 215}, {70, 70, 70}, {200, 40, 40}};

    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    std::size_t const header_size = out.size();
    out.resize(header_size + std::size_t(width) * height * 3);
    auto* px = reinterpret_cast<unsigned char*>(out.data() + header_size);
    for (int row = 0; row < height; ++row)
    {
        for (int col = 0; col < width; ++col)
        {
            // grid index is row-major with the last axis fastest
            std::size_t const cell =
                k == 2 ? std::size_t(col) * report.grid_shape[1] + (height - 1 - row)
                       : std::size_t(col);
            auto const state = std::min<unsigned>(report.cells.at(cell), 3);
            for (int c = 0; c < 3; ++c)
                *px++ = palette[state][c];
        }
    }
    return out;
}

}  // namespace mperc
