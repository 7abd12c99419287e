// Copyright 2026 The clutter-mpc Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cmpc/harness.h"

namespace cmpc {
namespace {

constexpr double kScale = 250.0;   // px per meter
constexpr double kMargin = 0.15;   // m of space around the table
constexpr double kCaption = 18.0;  // px strip under each frame

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct FrameMap {
  double window_x;
  double window_y;
  double width;
  double height;

  explicit FrameMap(const TableSpec& table)
      : window_x(table.half_x + kMargin),
        window_y(table.half_y + kMargin),
        width(2.0 * window_x * kScale),
        height(2.0 * window_y * kScale + kCaption) {}

  double sx(double x) const { return (x + window_x) * kScale; }
  double sy(double y) const { return (window_y - y) * kScale; }
};

void emit_obb(std::ostringstream& svg, const FrameMap& m, const ObbCol& b,
              const std::string& fill, double opacity) {
  const double cx = m.sx(b.center.x);
  const double cy = m.sy(b.center.y);
  const double theta = std::atan2(b.axis.y, b.axis.x);
  const double deg = -theta * 180.0 / kPi;
  svg << "<rect x=\"" << num(cx - b.half.x * kScale) << "\" y=\""
      << num(cy - b.half.y * kScale) << "\" width=\""
      << num(2.0 * b.half.x * kScale) << "\" height=\""
      << num(2.0 * b.half.y * kScale) << "\" fill=\"" << fill
      << "\" opacity=\"" << num(opacity) << "\" transform=\"rotate("
      << num(deg) << ' ' << num(cx) << ' ' << num(cy) << ")\"/>\n";
}

void emit_frame(std::ostringstream& svg, const FrameMap& m,
                const WorldState& x, const SceneSpec& scene, int step,
                double offset_x) {
  svg << "<g class=\"frame\" transform=\"translate(" << num(offset_x)
      << " 0)\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << num(m.width) << "\" height=\""
      << num(m.height) << "\" fill=\"#ffffff\"/>\n";

  const TableSpec& t = scene.table;
  svg << "<rect x=\"" << num(m.sx(-t.half_x)) << "\" y=\"" << num(m.sy(t.half_y))
      << "\" width=\"" << num(2.0 * t.half_x * kScale) << "\" height=\""
      << num(2.0 * t.half_y * kScale)
      << "\" fill=\"#f0e6cf\" stroke=\"#8a6d3b\"/>\n";
  const double zx = t.half_x - t.safe_margin;
  const double zy = t.half_y - t.safe_margin;
  svg << "<rect x=\"" << num(m.sx(-zx)) << "\" y=\"" << num(m.sy(zy))
      << "\" width=\"" << num(2.0 * zx * kScale) << "\" height=\""
      << num(2.0 * zy * kScale)
      << "\" fill=\"none\" stroke=\"#b0a070\" stroke-dasharray=\"4 3\"/>\n";

  const int ti = scene.target_index();
  for (int i = 0; i < static_cast<int>(scene.objects.size()); ++i) {
    const double opacity = x.dropped[i] ? 0.25 : 1.0;
    const std::string fill = i == ti ? "#d9534f" : "#9aa0a6";
    const Collider c = object_collider(scene.objects[i].shape, x.objects[i]);
    if (const auto* circle = std::get_if<CircleCol>(&c)) {
      svg << "<circle cx=\"" << num(m.sx(circle->center.x)) << "\" cy=\""
          << num(m.sy(circle->center.y)) << "\" r=\""
          << num(circle->radius * kScale) << "\" fill=\"" << fill
          << "\" opacity=\"" << num(opacity) << "\"/>\n";
    } else {
      emit_obb(svg, m, std::get<ObbCol>(c), fill, opacity);
    }
  }

  for (const ObbCol& link : robot_links(x.robot, scene.robot)) {
    emit_obb(svg, m, link, "#4878c0", 0.9);
  }
  const Vec2 ref = gripper_reference_point(x.robot, scene.robot);
  svg << "<circle cx=\"" << num(m.sx(ref.x)) << "\" cy=\"" << num(m.sy(ref.y))
      << "\" r=\"2.5\" fill=\"#123a75\"/>\n";

  svg << "<text x=\"4\" y=\"" << num(m.height - 5.0)
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">t="
      << step << "</text>\n";
  svg << "</g>\n";
}

}  // namespace

std::string render_trace_svg(const ExecutionLog& log, const SceneSpec& scene,
                             int stride) {
  if (stride < 1) stride = 1;
  if (log.observed_states.empty()) {
    throw std::invalid_argument("render_trace_svg: log has no states");
  }
  const int steps = static_cast<int>(log.executed_controls.size());
  const FrameMap m(scene.table);
  const int frames = steps / stride + 1;
  const double width = m.width * frames;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(m.height) << "\" viewBox=\"0 0 " << num(width)
      << ' ' << num(m.height) << "\">\n";
  int frame = 0;
  for (int s = 0; s <= steps; s += stride, ++frame) {
    emit_frame(svg, m, log.observed_states[static_cast<std::size_t>(s)],
               scene, s, frame * m.width);
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_trace(const ExecutionLog& log, const SceneSpec& scene,
                  const std::string& path, int stride) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << render_trace_svg(log, scene, stride);
}

}  // namespace cmpc
