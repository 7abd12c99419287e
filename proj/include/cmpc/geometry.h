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

#pragma once

#include <cmath>
#include <optional>
#include <variant>

namespace cmpc {

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into (-pi, pi]. Values already in range pass through
// unchanged (bit for bit), which keeps zero-motion updates exact.
inline double normalize_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
inline Vec2 operator*(double s, Vec2 a) { return a * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

// Circle placed in the world.
struct CircleCol {
  Vec2 center;
  double radius = 0.0;
};

// Oriented box placed in the world; `axis` is the unit local x direction and
// `half` holds the half extents along (axis, perp(axis)).
struct ObbCol {
  Vec2 center;
  Vec2 axis{1.0, 0.0};
  Vec2 half;
};

using Collider = std::variant<CircleCol, ObbCol>;

// Minimum translation to separate: moving `b` by normal * depth resolves the
// overlap. `normal` is unit length and points from `a` towards `b`.
struct ContactManifold {
  Vec2 normal;
  double depth = 0.0;
};

// Returns the contact manifold if the colliders overlap strictly, nullopt for
// separated or exactly touching pairs.
std::optional<ContactManifold> collide(const Collider& a, const Collider& b);

// Overlap depth of the pair, 0 when separated.
double penetration_depth(const Collider& a, const Collider& b);

}  // namespace cmpc
