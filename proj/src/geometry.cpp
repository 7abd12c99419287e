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

#include "cmpc/geometry.h"

#include <algorithm>
#include <limits>

namespace cmpc {
namespace {

std::optional<ContactManifold> collide_circle_circle(const CircleCol& a,
                                                     const CircleCol& b) {
  const Vec2 d = b.center - a.center;
  const double r = a.radius + b.radius;
  const double d2 = norm2(d);
  if (d2 >= r * r) return std::nullopt;
  const double dist = std::sqrt(d2);
  if (dist < 1e-12) return ContactManifold{{1.0, 0.0}, r};  // coincident
  return ContactManifold{d * (1.0 / dist), r - dist};
}

// normal points from the box towards the circle.
std::optional<ContactManifold> collide_box_circle(const ObbCol& box,
                                                  const CircleCol& c) {
  const Vec2 u = box.axis;
  const Vec2 v = perp(u);
  const Vec2 d = c.center - box.center;
  const Vec2 local{dot(d, u), dot(d, v)};
  const Vec2 clamped{std::clamp(local.x, -box.half.x, box.half.x),
                     std::clamp(local.y, -box.half.y, box.half.y)};
  const Vec2 delta = local - clamped;
  const double d2 = norm2(delta);
  if (d2 > 0.0) {
    if (d2 >= c.radius * c.radius) return std::nullopt;
    const double dist = std::sqrt(d2);
    const Vec2 nl = delta * (1.0 / dist);
    return ContactManifold{u * nl.x + v * nl.y, c.radius - dist};
  }
  // center inside the box: exit through the nearest face
  const double dx = box.half.x - std::abs(local.x);
  const double dy = box.half.y - std::abs(local.y);
  Vec2 nl;
  double depth;
  if (dx <= dy) {
    nl = {local.x >= 0.0 ? 1.0 : -1.0, 0.0};
    depth = c.radius + dx;
  } else {
    nl = {0.0, local.y >= 0.0 ? 1.0 : -1.0};
    depth = c.radius + dy;
  }
  return ContactManifold{u * nl.x + v * nl.y, depth};
}

double projected_extent(const ObbCol& b, Vec2 axis) {
  return std::abs(dot(b.axis, axis)) * b.half.x +
         std::abs(dot(perp(b.axis), axis)) * b.half.y;
}

std::optional<ContactManifold> collide_box_box(const ObbCol& a,
                                               const ObbCol& b) {
  const Vec2 axes[4] = {a.axis, perp(a.axis), b.axis, perp(b.axis)};
  const Vec2 d = b.center - a.center;
  double best = std::numeric_limits<double>::infinity();
  Vec2 best_axis{1.0, 0.0};
  for (const Vec2& axis : axes) {
    const double overlap =
        projected_extent(a, axis) + projected_extent(b, axis) -
        std::abs(dot(d, axis));
    if (overlap <= 0.0) return std::nullopt;  // separating axis
    if (overlap < best) {
      best = overlap;
      best_axis = axis;
    }
  }
  if (dot(d, best_axis) < 0.0) best_axis = -best_axis;
  return ContactManifold{best_axis, best};
}

}  // namespace

std::optional<ContactManifold> collide(const Collider& a, const Collider& b) {
  if (const auto* ca = std::get_if<CircleCol>(&a)) {
    if (const auto* cb = std::get_if<CircleCol>(&b)) {
      return collide_circle_circle(*ca, *cb);
    }
    const auto& bb = std::get<ObbCol>(b);
    auto m = collide_box_circle(bb, *ca);  // normal: box -> circle = b -> a
    if (!m) return std::nullopt;
    return ContactManifold{-m->normal, m->depth};
  }
  const auto& ba = std::get<ObbCol>(a);
  if (const auto* cb = std::get_if<CircleCol>(&b)) {
    return collide_box_circle(ba, *cb);
  }
  return collide_box_box(ba, std::get<ObbCol>(b));
}

double penetration_depth(const Collider& a, const Collider& b) {
  const auto m = collide(a, b);
  return m ? m->depth : 0.0;
}

}  // namespace cmpc
